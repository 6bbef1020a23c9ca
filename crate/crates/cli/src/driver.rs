//! Parallel counting driver: fans the partitioned affine enumeration out
//! to a worker pool. Partial counts combine by integer addition, so the
//! result is identical for every worker count.

use nck3_core::counts::PointCountTable;
use nck3_core::cubic::{projective_from_affine, CountError, CountOptions, CountPlan, CubicForm};
use num_bigint::BigInt;

/// Worker-count resolution: explicit flag, then `NCK3_WORKERS`, then the
/// machine's available parallelism.
pub fn resolve_workers(flag: Option<usize>) -> usize {
    if let Some(w) = flag {
        return w.max(1);
    }
    if let Ok(env) = std::env::var("NCK3_WORKERS") {
        if let Ok(w) = env.trim().parse::<usize>() {
            return w.max(1);
        }
    }
    std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
}

pub fn count_affine_parallel(
    form: &CubicForm,
    n: u32,
    workers: usize,
    opts: CountOptions,
) -> Result<u128, CountError> {
    let plan = CountPlan::new(form, n, opts)?;
    let parts = plan.partitions();
    let workers = workers.clamp(1, parts.max(1) as usize);
    if workers == 1 {
        return Ok(plan.count_partition_range(0..parts));
    }
    let chunk = parts.div_ceil(workers as u64);
    let total = std::thread::scope(|scope| {
        let mut handles = Vec::with_capacity(workers);
        for w in 0..workers as u64 {
            let lo = w * chunk;
            let hi = (lo + chunk).min(parts);
            let plan = &plan;
            handles.push(scope.spawn(move || plan.count_partition_range(lo..hi)));
        }
        handles
            .into_iter()
            .map(|h| h.join().expect("worker panicked"))
            .sum::<u128>()
    });
    Ok(total)
}

pub fn count_projective_parallel(
    form: &CubicForm,
    n: u32,
    workers: usize,
    opts: CountOptions,
) -> Result<BigInt, CountError> {
    let affine = count_affine_parallel(form, n, workers, opts)?;
    projective_from_affine(form.p(), n, affine)
}

pub fn count_table_parallel(
    form: &CubicForm,
    n_max: u32,
    workers: usize,
    opts: CountOptions,
) -> Result<PointCountTable, CountError> {
    let mut table = PointCountTable::new(form.p() as u64);
    for n in 1..=n_max {
        let c = count_projective_parallel(form, n, workers, opts)?;
        table.counts.insert(n, c);
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use nck3_core::cubic::parse_cubic;

    #[test]
    fn worker_count_invariance() {
        let form = parse_cubic("1 2 1 0 0 0 0\n1 0 0 3 0 0 0\n1 0 1 1 0 1 0").unwrap();
        let opts = CountOptions::default();
        let t1 = count_table_parallel(&form, 3, 1, opts).unwrap();
        let t8 = count_table_parallel(&form, 3, 8, opts).unwrap();
        assert_eq!(t1, t8);
        let t3 = count_table_parallel(&form, 3, 3, opts).unwrap();
        assert_eq!(t1, t3);
    }

    #[test]
    fn more_workers_than_partitions() {
        let form = parse_cubic("1 3 0 0 0 0 0").unwrap();
        // q = 2 gives 4 partitions; 64 workers must clamp cleanly
        let a = count_affine_parallel(&form, 1, 64, CountOptions::default()).unwrap();
        assert_eq!(a, 32); // zeros of x1^3 over F_2: x1 = 0, rest free
    }
}
