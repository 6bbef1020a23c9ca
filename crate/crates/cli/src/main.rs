//! Command-line entry point. All numeric output is exact (integers and
//! rationals), byte-stable across runs and worker counts.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use nck3_cli::driver::{count_projective_parallel, count_table_parallel, resolve_workers};
use nck3_cli::formats::{read_counts_file, read_cubic_file, read_weil_file};
use nck3_cli::report::{picard_stats, record_line, run_batch, SuiteKind};
use nck3_core::category::{
    ack3_from_cubic, fano_counts, format_count, hilbert_square_counts, zeta_assemble,
};
use nck3_core::cubic::{singular_scan, CountOptions};
use nck3_core::cyclotomic::CyclotomicBasis;
use nck3_core::field::FieldSpec;
use nck3_core::filter::{ConditionSuite, FilterReport, Verdict};
use nck3_core::polygon::newton_polygon;
use nck3_core::polygon::{height_and_ordinarity, Height};
use nck3_core::rational::format_rat;
use nck3_core::weil::{format_weil_line, weil_from_counts, WEIL_DEGREE};

#[derive(Parser)]
#[command(
    name = "nck3",
    version,
    about = "Point counts, zeta functions, and Weil-polynomial filters for cubic fourfolds and their K3 categories over finite fields"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    K3,
    Cubic,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Human,
    Records,
}

#[derive(Args)]
struct CountingArgs {
    /// cubic form file (one term per line: coeff e1 e2 e3 e4 e5 e6)
    #[arg(long)]
    cubic: PathBuf,
    /// worker threads (default: NCK3_WORKERS, then available parallelism)
    #[arg(long)]
    workers: Option<usize>,
    /// lift the default q^n <= 64 enumeration cap
    #[arg(long)]
    allow_large: bool,
}

impl CountingArgs {
    fn options(&self) -> CountOptions {
        CountOptions {
            allow_large: self.allow_large,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print the modulus and full multiplication table of GF(p^k)
    FieldTable {
        #[arg(long, default_value_t = 2)]
        p: u32,
        #[arg(long)]
        k: u32,
    },
    /// Projective point count of a cubic over F_{p^n}
    Count {
        #[command(flatten)]
        counting: CountingArgs,
        /// extension degree n
        #[arg(long)]
        ext: u32,
    },
    /// Projective point counts for n = 1..=N
    CountTable {
        #[command(flatten)]
        counting: CountingArgs,
        #[arg(long = "max-ext")]
        max_ext: u32,
    },
    /// Cubic counts and the derived K3-category counts
    Ack3 {
        #[command(flatten)]
        counting: CountingArgs,
        #[arg(long = "max-ext")]
        max_ext: u32,
    },
    /// Obstruction report for an explicit cubic: integrality, count signs,
    /// extension growth
    GeomCheck {
        #[command(flatten)]
        counting: CountingArgs,
        #[arg(long = "max-ext")]
        max_ext: u32,
        /// exit 1 when a FAIL verdict occurs
        #[arg(long)]
        strict: bool,
        #[arg(long, value_enum, default_value = "human")]
        format: Format,
    },
    /// Scan projective points over F_{p^n}, n <= N, where the form and all
    /// six partials vanish (exhaustive: about q^{5n} evaluations at the
    /// largest extension)
    SingularScan {
        #[arg(long)]
        cubic: PathBuf,
        #[arg(long = "max-ext")]
        max_ext: u32,
    },
    /// Hilbert-square identities
    Hilb {
        #[command(subcommand)]
        command: HilbCommand,
    },
    /// Zeta function and its log expansion
    Zeta {
        #[arg(long)]
        weil: PathBuf,
        /// expansion order
        #[arg(long, default_value_t = 8)]
        terms: u32,
        /// input lines carry the degree-21 integer form
        #[arg(long)]
        ks: bool,
    },
    /// Weil-polynomial tooling
    Weil {
        #[command(subcommand)]
        command: WeilCommand,
    },
    /// Run a condition suite over a Weil-polynomial file
    Filter {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long)]
        input: PathBuf,
        /// write the record stream here (default: stdout)
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long)]
        strict: bool,
        #[arg(long)]
        ks: bool,
    },
    /// Statistics over a Weil-polynomial file
    Stats {
        #[command(subcommand)]
        command: StatsCommand,
    },
}

#[derive(Subcommand)]
enum HilbCommand {
    /// Compare Fano-variety counts with the K3-category Hilbert-square
    /// counts on the brute-force table
    Check {
        #[command(flatten)]
        counting: CountingArgs,
        #[arg(long = "max-ext")]
        max_ext: u32,
        #[arg(long)]
        strict: bool,
    },
}

#[derive(Subcommand)]
enum WeilCommand {
    /// Recover degree-22 candidates from a K3-category count file
    /// (counts for n = 1..=11; n = 12 disambiguates when present)
    Reconstruct {
        #[arg(long)]
        counts: PathBuf,
    },
    /// Expand K3-category counts from Weil polynomials
    Expand {
        #[arg(long)]
        weil: PathBuf,
        #[arg(long = "max-ext")]
        max_ext: u32,
        #[arg(long)]
        ks: bool,
    },
    /// Structural checks: degree, constant term, functional-equation sign,
    /// unit circle
    Check {
        #[arg(long)]
        weil: PathBuf,
        #[arg(long)]
        ks: bool,
    },
    /// Cyclotomic/transcendental split with Picard ranks
    Split {
        #[arg(long)]
        weil: PathBuf,
        #[arg(long)]
        ks: bool,
    },
    /// Newton polygon of the transcendental factor, height, ordinarity
    Newton {
        #[arg(long)]
        weil: PathBuf,
        #[arg(long)]
        ks: bool,
    },
    /// Convert to the degree-21 integer form q L(T)/(1 - T)
    ConvertKs {
        #[arg(long)]
        weil: PathBuf,
    },
}

#[derive(Subcommand)]
enum StatsCommand {
    /// Histograms of arithmetic and geometric Picard ranks
    Picard {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        ks: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::FieldTable { p, k } => field_table(p, k),
        Command::Count { counting, ext } => {
            let form = read_cubic_file(&counting.cubic)?;
            let workers = resolve_workers(counting.workers);
            let count = count_projective_parallel(&form, ext, workers, counting.options())?;
            println!("{count}");
            Ok(ExitCode::SUCCESS)
        }
        Command::CountTable { counting, max_ext } => {
            let form = read_cubic_file(&counting.cubic)?;
            let workers = resolve_workers(counting.workers);
            let table = count_table_parallel(&form, max_ext, workers, counting.options())?;
            println!("# n X");
            for (n, x) in &table.counts {
                println!("{n} {x}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Ack3 { counting, max_ext } => {
            let form = read_cubic_file(&counting.cubic)?;
            let workers = resolve_workers(counting.workers);
            let table = count_table_parallel(&form, max_ext, workers, counting.options())?;
            let a =
                ack3_from_cubic(&table).map_err(|e| anyhow!("deriving K3-category counts: {e}"))?;
            println!("# n X A");
            for (n, x) in &table.counts {
                println!("{n} {x} {}", a.get(*n).expect("same range"));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::GeomCheck {
            counting,
            max_ext,
            strict,
            format,
        } => {
            let form = read_cubic_file(&counting.cubic)?;
            let suite = ConditionSuite::new();
            let mut report = suite.geom_check(&form, max_ext, counting.options())?;
            report.id = counting.cubic.display().to_string();
            match format {
                Format::Records => println!("{}", record_line(&report)),
                Format::Human => print_report_human(&report),
            }
            Ok(strict_exit(strict, report.overall() == Verdict::Fail))
        }
        Command::SingularScan { cubic, max_ext } => {
            let form = read_cubic_file(&cubic)?;
            let points = singular_scan(&form, max_ext)?;
            if points.is_empty() {
                println!("no singular points over F_{{p^n}} for n <= {max_ext}");
            } else {
                for pt in points {
                    let coords: Vec<String> = pt.coords.iter().map(|c| c.to_string()).collect();
                    println!("n={} point=({})", pt.ext, coords.join(","));
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Hilb { command } => match command {
            HilbCommand::Check {
                counting,
                max_ext,
                strict,
            } => {
                let form = read_cubic_file(&counting.cubic)?;
                let workers = resolve_workers(counting.workers);
                let table = count_table_parallel(&form, 2 * max_ext, workers, counting.options())?;
                let fano = fano_counts(&table, max_ext).map_err(|e| anyhow!("Fano counts: {e}"))?;
                let a = ack3_from_cubic(&table).map_err(|e| anyhow!("K3-category counts: {e}"))?;
                let hilb = hilbert_square_counts(&a, max_ext)
                    .map_err(|e| anyhow!("Hilbert-square counts: {e}"))?;
                println!("# n fano hilbert verdict");
                let mut any_fail = false;
                for n in 1..=max_ext {
                    let f = &fano[&n];
                    let h = &hilb[&n];
                    let verdict = if f == h { "PASS" } else { "FAIL" };
                    any_fail |= f != h;
                    println!("{n} {} {} {verdict}", format_count(f), format_count(h));
                }
                println!("overall: {}", if any_fail { "FAIL" } else { "PASS" });
                Ok(strict_exit(strict, any_fail))
            }
        },
        Command::Zeta { weil, terms, ks } => {
            let entries = read_weil_file(&weil, ks)?;
            for entry in entries {
                let w = entry
                    .result
                    .map_err(|e| anyhow!("line {}: {}", entry.line, e))?;
                let z = zeta_assemble(&w);
                println!("# line {}", entry.line);
                println!("Z(T) = 1 / ((1-T) * L(qT) * (1-q^2 T)), q = {}", z.q);
                println!("denominator: {}", z.denominator);
                println!("# n a_n n*a_n");
                let logs = z.log_coefficients(terms);
                for n in 1..=terms {
                    let a_n = &logs[(n - 1) as usize];
                    let count = a_n * nck3_core::rational::rat_int(n as i64);
                    println!("{n} {} {}", format_rat(a_n), format_rat(&count));
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Weil { command } => weil_command(command),
        Command::Filter {
            suite,
            input,
            report,
            strict,
            ks,
        } => {
            let entries = read_weil_file(&input, ks)?;
            let kind = match suite {
                Suite::K3 => SuiteKind::K3,
                Suite::Cubic => SuiteKind::CubicCategory,
            };
            let condition_suite = ConditionSuite::new();
            let (mut lines, summary) = run_batch(&condition_suite, kind, &entries);
            lines.extend(summary.lines());
            let text = lines.join("\n") + "\n";
            match report {
                Some(path) => {
                    std::fs::write(&path, &text)?;
                    for line in summary.lines() {
                        println!("{line}");
                    }
                }
                None => print!("{text}"),
            }
            Ok(strict_exit(strict, summary.fail > 0))
        }
        Command::Stats { command } => match command {
            StatsCommand::Picard { input, ks } => {
                let entries = read_weil_file(&input, ks)?;
                let suite = ConditionSuite::new();
                let stats = picard_stats(&suite, &entries);
                for line in stats.lines() {
                    println!("{line}");
                }
                Ok(ExitCode::SUCCESS)
            }
        },
    }
}

fn strict_exit(strict: bool, any_fail: bool) -> ExitCode {
    if strict && any_fail {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

fn print_report_human(report: &FilterReport) {
    println!("# {}", report.id);
    for c in &report.conditions {
        match &c.witness {
            Some(w) => println!("{:<22} {:<8} {}", c.name, c.verdict.to_string(), w),
            None => println!("{:<22} {}", c.name, c.verdict),
        }
    }
    println!("overall: {}", report.overall());
}

fn field_table(p: u32, k: u32) -> Result<ExitCode> {
    let field = FieldSpec::new(p, k)?;
    println!("GF({}^{}) = GF({})", p, k, field.q());
    println!("modulus: {}", field.modulus_string());
    println!("# multiplication table, row a column b -> a*b");
    let q = field.q() as u16;
    let width = (q - 1).to_string().len();
    for a in 0..q {
        let row: Vec<String> = (0..q)
            .map(|b| format!("{:>width$}", field.mul(a, b), width = width))
            .collect();
        println!("{}", row.join(" "));
    }
    Ok(ExitCode::SUCCESS)
}

fn weil_command(command: WeilCommand) -> Result<ExitCode> {
    match command {
        WeilCommand::Reconstruct { counts } => {
            let table = read_counts_file(&counts)?;
            let rec = weil_from_counts(&table).map_err(|e| anyhow!("{e}"))?;
            if rec.candidates.is_empty() {
                println!(
                    "no candidates: {}",
                    rec.note.unwrap_or_else(|| String::from("unknown reason"))
                );
            } else {
                for w in &rec.candidates {
                    println!("{}", format_weil_line(w));
                }
                if rec.ambiguous {
                    println!("# ambiguous: both functional-equation closures pass (a count at n = 12 disambiguates)");
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        WeilCommand::Expand { weil, max_ext, ks } => {
            for entry in read_weil_file(&weil, ks)? {
                let w = entry
                    .result
                    .map_err(|e| anyhow!("line {}: {}", entry.line, e))?;
                let counts = w.counts(max_ext).map_err(|e| anyhow!("{e}"))?;
                println!("# line {} (q={})", entry.line, w.q());
                println!("# n count");
                for (n, c) in &counts.counts {
                    println!("{n} {c}");
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        WeilCommand::Check { weil, ks } => {
            for entry in read_weil_file(&weil, ks)? {
                match entry.result {
                    Ok(w) => {
                        let sign = match w.self_inversive_sign() {
                            Some(1) => "+1",
                            Some(-1) => "-1",
                            _ => "none",
                        };
                        let circle = if w.roots_on_unit_circle() {
                            "PASS"
                        } else {
                            "FAIL"
                        };
                        println!(
                            "line {} q={} degree={} constant=1 self-inversive={} unit-circle={}",
                            entry.line,
                            w.q(),
                            WEIL_DEGREE,
                            sign,
                            circle
                        );
                    }
                    Err(e) => println!("line {} invalid: {}", entry.line, e),
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        WeilCommand::Split { weil, ks } => {
            let basis = CyclotomicBasis::new(WEIL_DEGREE as u64);
            for entry in read_weil_file(&weil, ks)? {
                let w = entry
                    .result
                    .map_err(|e| anyhow!("line {}: {}", entry.line, e))?;
                let split = w.cyclotomic_split_with(&basis);
                let factors: Vec<String> = split
                    .factors
                    .iter()
                    .map(|(n, m)| {
                        if *m == 1 {
                            format!("C_{n}")
                        } else {
                            format!("C_{n}^{m}")
                        }
                    })
                    .collect();
                println!("# line {}", entry.line);
                println!("rho {} rho-bar {}", split.rho, split.rho_bar);
                println!(
                    "algebraic factor: {}",
                    if factors.is_empty() {
                        String::from("1")
                    } else {
                        factors.join(" ")
                    }
                );
                println!("transcendental factor: {}", split.trc);
            }
            Ok(ExitCode::SUCCESS)
        }
        WeilCommand::Newton { weil, ks } => {
            let basis = CyclotomicBasis::new(WEIL_DEGREE as u64);
            for entry in read_weil_file(&weil, ks)? {
                let w = entry
                    .result
                    .map_err(|e| anyhow!("line {}: {}", entry.line, e))?;
                let split = w.cyclotomic_split_with(&basis);
                println!("# line {}", entry.line);
                if split.trc.is_constant() {
                    println!("supersingular: transcendental factor is 1");
                    println!("height infinity ordinary false");
                    continue;
                }
                let np = newton_polygon(&split.trc, w.p()).map_err(|e| anyhow!("{e}"))?;
                let vertices: Vec<String> = np
                    .vertices
                    .iter()
                    .map(|(x, y)| format!("({x},{y})"))
                    .collect();
                let slopes: Vec<String> = np.slopes.iter().map(format_rat).collect();
                println!("vertices: {}", vertices.join(" "));
                println!("slopes: {}", slopes.join(" "));
                let (height, ordinary) = height_and_ordinarity(&split, w.p());
                let h = match height {
                    Height::Finite(h) => h.to_string(),
                    Height::Infinite => String::from("infinity"),
                    Height::Unknown => String::from("unknown"),
                };
                println!("height {} ordinary {}", h, ordinary);
            }
            Ok(ExitCode::SUCCESS)
        }
        WeilCommand::ConvertKs { weil } => {
            for entry in read_weil_file(&weil, false)? {
                let w = entry
                    .result
                    .map_err(|e| anyhow!("line {}: {}", entry.line, e))?;
                let k = w
                    .ks_convert()
                    .map_err(|e| anyhow!("line {}: {}", entry.line, e))?;
                println!("q={}; {}", w.q(), k);
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}
