//! Cubic forms in six variables and exhaustive point counting over
//! extension fields of the prime base field.
//!
//! Counting runs over the affine cone. The projective count is
//! `(affine - 1) / (q^n - 1)`, and every call checks both the divisibility
//! and the congruence `|X| = 1 (mod q^n)` forced by the Chevalley-Warning-Ax
//! theorem; a failure of either is an internal arithmetic error and is never
//! reported silently.
//!
//! The enumeration is partitioned on the two outermost coordinates so that
//! parallel drivers can fan partitions out to workers; partial counts
//! combine by integer addition, making the result independent of
//! scheduling. On the fast path (`q <= 64`) the inner loop evaluates the
//! form as a cubic in the last variable and resolves the root count of that
//! cubic by one lookup in a precomputed table indexed by its four
//! coefficients.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Range;

use num_bigint::BigInt;
use thiserror::Error;

use crate::counts::PointCountTable;
use crate::field::{is_prime, FieldError, FieldSpec};

/// Default cap on the extension field size for exhaustive counting:
/// `q^n <= 64` keeps the affine enumeration under ~7e10 evaluations.
pub const DEFAULT_FIELD_CAP: u64 = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubicForm {
    p: u32,
    terms: Vec<(u32, [u8; 6])>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CubicFormError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("monomial {index} has degree {degree}, expected 3")]
    NonCubicTerm { index: usize, degree: u32 },
    #[error("form has no nonzero terms after reduction mod {p}")]
    EmptyForm { p: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CubicParseError {
    #[error("line {line}: expected `coeff e1 e2 e3 e4 e5 e6`, got {found} fields")]
    WrongArity { line: usize, found: usize },
    #[error("line {line}: invalid number `{token}`")]
    BadToken { line: usize, token: String },
    #[error("line {line}: monomial degree {degree}, expected 3")]
    NonCubicTerm { line: usize, degree: u32 },
    #[error("invalid base prime: {source}")]
    BadPrime {
        #[source]
        source: CubicFormError,
    },
    #[error("{0}")]
    Form(#[from] CubicFormError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CountError {
    #[error(transparent)]
    Field(FieldError),
    #[error("field size {q}^{n} = {qn} exceeds the cap {cap}; raise the cap to proceed")]
    ResourceLimit { q: u32, n: u32, qn: u64, cap: u64 },
    #[error("internal consistency failure: {0}")]
    Inconsistency(String),
}

impl From<FieldError> for CountError {
    fn from(e: FieldError) -> Self {
        CountError::Field(e)
    }
}

impl CubicForm {
    /// Validates degrees, reduces coefficients mod p, combines duplicate
    /// monomials, and sorts into canonical order.
    pub fn new(p: u32, raw: &[(i128, [u8; 6])]) -> Result<CubicForm, CubicFormError> {
        if !is_prime(p) {
            return Err(CubicFormError::NotPrime(p));
        }
        let mut combined: BTreeMap<[u8; 6], u32> = BTreeMap::new();
        for (index, (coeff, exps)) in raw.iter().enumerate() {
            let degree: u32 = exps.iter().map(|&e| e as u32).sum();
            if degree != 3 {
                return Err(CubicFormError::NonCubicTerm { index, degree });
            }
            let c = coeff.rem_euclid(p as i128) as u32;
            let slot = combined.entry(*exps).or_insert(0);
            *slot = (*slot + c) % p;
        }
        let terms: Vec<(u32, [u8; 6])> = combined
            .into_iter()
            .filter(|&(_, c)| c != 0)
            .map(|(e, c)| (c, e))
            .collect();
        if terms.is_empty() {
            return Err(CubicFormError::EmptyForm { p });
        }
        Ok(CubicForm { p, terms })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn terms(&self) -> &[(u32, [u8; 6])] {
        &self.terms
    }

    /// Formal partial derivative with respect to variable `var` (0-based),
    /// as a monomial list over GF(p). May be empty (e.g. squares in
    /// characteristic 2).
    pub fn partial_derivative(&self, var: usize) -> Vec<(u32, [u8; 6])> {
        let mut out = Vec::new();
        for &(c, exps) in &self.terms {
            let e = exps[var] as u32;
            if e == 0 {
                continue;
            }
            let nc = (c * e) % self.p;
            if nc == 0 {
                continue;
            }
            let mut ne = exps;
            ne[var] -= 1;
            out.push((nc, ne));
        }
        out
    }

    /// The form composed with the linear substitution `x_i -> sum_j m[i][j] y_j`.
    ///
    /// Point counts are invariant under invertible substitutions; this
    /// exists so that invariance can be exercised directly.
    pub fn substitute_linear(&self, m: &[[u32; 6]; 6]) -> Result<CubicForm, CubicFormError> {
        let p = self.p as u64;
        let mut acc: BTreeMap<[u8; 6], u64> = BTreeMap::new();
        for &(c, exps) in &self.terms {
            // product of the e_i copies of row i
            let mut partial: BTreeMap<[u8; 6], u64> = BTreeMap::new();
            partial.insert([0; 6], c as u64 % p);
            for (i, &e) in exps.iter().enumerate() {
                for _ in 0..e {
                    let mut next: BTreeMap<[u8; 6], u64> = BTreeMap::new();
                    for (mono, coeff) in &partial {
                        for (j, &mij) in m[i].iter().enumerate() {
                            if mij % self.p == 0 {
                                continue;
                            }
                            let mut ne = *mono;
                            ne[j] += 1;
                            let slot = next.entry(ne).or_insert(0);
                            *slot = (*slot + coeff * (mij as u64)) % p;
                        }
                    }
                    partial = next;
                }
            }
            for (mono, coeff) in partial {
                let slot = acc.entry(mono).or_insert(0);
                *slot = (*slot + coeff) % p;
            }
        }
        let raw: Vec<(i128, [u8; 6])> = acc
            .into_iter()
            .filter(|&(_, c)| c != 0)
            .map(|(e, c)| (c as i128, e))
            .collect();
        CubicForm::new(self.p, &raw)
    }
}

impl fmt::Display for CubicForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "p={}", self.p)?;
        for (c, e) in &self.terms {
            writeln!(
                f,
                "{} {} {} {} {} {} {}",
                c, e[0], e[1], e[2], e[3], e[4], e[5]
            )?;
        }
        Ok(())
    }
}

/// Parses the one-term-per-line format: `coeff e1 e2 e3 e4 e5 e6`, `#`
/// comment lines ignored, optional leading header `p=<prime>` (default 2).
///
/// ```
/// use nck3_core::cubic::{count_projective, parse_cubic, CountOptions};
///
/// let fermat = parse_cubic(
///     "1 3 0 0 0 0 0\n1 0 3 0 0 0 0\n1 0 0 3 0 0 0\n\
///      1 0 0 0 3 0 0\n1 0 0 0 0 3 0\n1 0 0 0 0 0 3",
/// )
/// .unwrap();
/// let count = count_projective(&fermat, 1, CountOptions::default()).unwrap();
/// assert_eq!(count, 31.into());
/// ```
pub fn parse_cubic(text: &str) -> Result<CubicForm, CubicParseError> {
    let mut p: u32 = 2;
    let mut raw: Vec<(i128, [u8; 6])> = Vec::new();
    let mut seen_term = false;
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(val) = line.strip_prefix("p=") {
            if seen_term {
                return Err(CubicParseError::BadToken {
                    line: line_no,
                    token: line.to_string(),
                });
            }
            p = val
                .trim()
                .parse::<u32>()
                .map_err(|_| CubicParseError::BadToken {
                    line: line_no,
                    token: val.to_string(),
                })?;
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 7 {
            return Err(CubicParseError::WrongArity {
                line: line_no,
                found: fields.len(),
            });
        }
        let coeff = fields[0]
            .parse::<i128>()
            .map_err(|_| CubicParseError::BadToken {
                line: line_no,
                token: fields[0].to_string(),
            })?;
        let mut exps = [0u8; 6];
        for (i, tok) in fields[1..].iter().enumerate() {
            exps[i] = tok.parse::<u8>().map_err(|_| CubicParseError::BadToken {
                line: line_no,
                token: tok.to_string(),
            })?;
        }
        let degree: u32 = exps.iter().map(|&e| e as u32).sum();
        if degree != 3 {
            return Err(CubicParseError::NonCubicTerm {
                line: line_no,
                degree,
            });
        }
        raw.push((coeff, exps));
        seen_term = true;
    }
    CubicForm::new(p, &raw).map_err(|e| match e {
        CubicFormError::NotPrime(_) => CubicParseError::BadPrime { source: e },
        other => CubicParseError::Form(other),
    })
}

/// Options controlling the exhaustive counting kernels.
#[derive(Debug, Clone, Copy, Default)]
pub struct CountOptions {
    /// Lift the default `q^n <= 64` cap (the table-backed field limit of
    /// 2^16 still applies).
    pub allow_large: bool,
}

/// A compiled counting job for one form over one extension field, safe to
/// share across worker threads.
pub struct CountPlan {
    q: u64,
    kind: PlanKind,
}

enum PlanKind {
    Fast(FastPlan),
    Slow(SlowPlan),
}

impl CountPlan {
    pub fn new(form: &CubicForm, n: u32, opts: CountOptions) -> Result<CountPlan, CountError> {
        let p = form.p();
        let qn = (p as u64).checked_pow(n).unwrap_or(u64::MAX);
        if !opts.allow_large && qn > DEFAULT_FIELD_CAP {
            return Err(CountError::ResourceLimit {
                q: p,
                n,
                qn,
                cap: DEFAULT_FIELD_CAP,
            });
        }
        let field = FieldSpec::new(p, n)?;
        let kind = if field.q() as u64 <= DEFAULT_FIELD_CAP {
            PlanKind::Fast(FastPlan::new(form, field))
        } else {
            PlanKind::Slow(SlowPlan::new(form, field))
        };
        Ok(CountPlan { q: qn, kind })
    }

    /// Number of partitions of the affine enumeration: the plane of the two
    /// outermost coordinates, one partition per point.
    pub fn partitions(&self) -> u64 {
        self.q * self.q
    }

    /// Zeros of the form over the coordinates of the given partitions.
    /// Summing over any cover of `0..partitions()` by disjoint ranges gives
    /// the affine count.
    pub fn count_partition_range(&self, range: Range<u64>) -> u128 {
        match &self.kind {
            PlanKind::Fast(f) => f.count_range(range),
            PlanKind::Slow(s) => s.count_range(range),
        }
    }
}

struct FastPlan {
    q: usize,
    mul: Vec<u16>,
    add: Vec<u16>,
    // root_count[((c3 q + c2) q + c1) q + c0] = #{x : c3 x^3 + c2 x^2 + c1 x + c0 = 0}
    root_count: Vec<u8>,
    // (coeff, e1..e4, e5, e6) with the coefficient embedded as a field index
    terms: Vec<(u16, [u8; 4], u8, u8)>,
}

impl FastPlan {
    fn new(form: &CubicForm, field: FieldSpec) -> FastPlan {
        let q = field.q() as usize;
        let mut mul = vec![0u16; q * q];
        let mut add = vec![0u16; q * q];
        for a in 0..q as u16 {
            for b in 0..q as u16 {
                mul[a as usize * q + b as usize] = field.mul(a, b);
                add[a as usize * q + b as usize] = field.add(a, b);
            }
        }
        let mut neg = vec![0u16; q];
        for a in 0..q as u16 {
            neg[a as usize] = field.neg(a);
        }
        // histogram of -(c3 x^3 + c2 x^2 + c1 x) over all triples and x
        let mut root_count = vec![0u8; q * q * q * q];
        for c3 in 0..q {
            for c2 in 0..q {
                for c1 in 0..q {
                    let base = ((c3 * q + c2) * q + c1) * q;
                    for x in 0..q {
                        let mut v = mul[c3 * q + x] as usize;
                        v = add[v * q + c2] as usize;
                        v = mul[v * q + x] as usize;
                        v = add[v * q + c1] as usize;
                        v = mul[v * q + x] as usize;
                        root_count[base + neg[v] as usize] += 1;
                    }
                }
            }
        }
        let terms = form
            .terms()
            .iter()
            .map(|&(c, e)| {
                (
                    c as u16, // prime-subfield constants are their own index
                    [e[0], e[1], e[2], e[3]],
                    e[4],
                    e[5],
                )
            })
            .collect();
        FastPlan {
            q,
            mul,
            add,
            root_count,
            terms,
        }
    }

    #[inline]
    fn pows(&self, x: u16) -> [usize; 4] {
        let q = self.q;
        let x2 = self.mul[x as usize * q + x as usize];
        let x3 = self.mul[x2 as usize * q + x as usize];
        [1, x as usize, x2 as usize, x3 as usize]
    }

    fn count_range(&self, range: Range<u64>) -> u128 {
        let q = self.q;
        let mul = &self.mul;
        let add = &self.add;
        let rc = &self.root_count;
        let mut total: u128 = 0;
        for part in range {
            let x1 = (part / q as u64) as u16;
            let x2 = (part % q as u64) as u16;
            let p1 = self.pows(x1);
            let p2 = self.pows(x2);
            let mut sub: u64 = 0;
            for x3 in 0..q as u16 {
                let p3 = self.pows(x3);
                for x4 in 0..q as u16 {
                    let p4 = self.pows(x4);
                    // coefficient of x5^j x6^b, as a field index
                    let mut coef = [[0usize; 4]; 4];
                    for (c, e14, e5, e6) in &self.terms {
                        let mut v = *c as usize;
                        v = mul[v * q + p1[e14[0] as usize]] as usize;
                        v = mul[v * q + p2[e14[1] as usize]] as usize;
                        v = mul[v * q + p3[e14[2] as usize]] as usize;
                        v = mul[v * q + p4[e14[3] as usize]] as usize;
                        let slot = &mut coef[*e6 as usize][*e5 as usize];
                        *slot = add[*slot * q + v] as usize;
                    }
                    for x5 in 0..q {
                        // Horner in x5 for each x6-degree bucket
                        let mut d0 = mul[coef[0][3] * q + x5] as usize;
                        d0 = add[d0 * q + coef[0][2]] as usize;
                        d0 = mul[d0 * q + x5] as usize;
                        d0 = add[d0 * q + coef[0][1]] as usize;
                        d0 = mul[d0 * q + x5] as usize;
                        d0 = add[d0 * q + coef[0][0]] as usize;
                        let mut d1 = mul[coef[1][2] * q + x5] as usize;
                        d1 = add[d1 * q + coef[1][1]] as usize;
                        d1 = mul[d1 * q + x5] as usize;
                        d1 = add[d1 * q + coef[1][0]] as usize;
                        let mut d2 = mul[coef[2][1] * q + x5] as usize;
                        d2 = add[d2 * q + coef[2][0]] as usize;
                        let d3 = coef[3][0];
                        sub += rc[((d3 * q + d2) * q + d1) * q + d0] as u64;
                    }
                }
            }
            total += sub as u128;
        }
        total
    }
}

struct SlowPlan {
    field: FieldSpec,
    terms: Vec<(u16, [u8; 6])>,
}

impl SlowPlan {
    fn new(form: &CubicForm, field: FieldSpec) -> SlowPlan {
        let terms = form.terms().iter().map(|&(c, e)| (c as u16, e)).collect();
        SlowPlan { field, terms }
    }

    fn count_range(&self, range: Range<u64>) -> u128 {
        let f = &self.field;
        let q = f.q() as u64;
        let mut total: u128 = 0;
        for part in range {
            let mut point = [0u16; 6];
            point[0] = (part / q) as u16;
            point[1] = (part % q) as u16;
            // odometer over the remaining four coordinates
            'points: loop {
                if eval_terms(f, &self.terms, &point) == 0 {
                    total += 1;
                }
                let mut i = 5;
                loop {
                    point[i] += 1;
                    if (point[i] as u32) < f.q() {
                        break;
                    }
                    point[i] = 0;
                    if i == 2 {
                        break 'points;
                    }
                    i -= 1;
                }
            }
        }
        total
    }
}

/// Evaluates a monomial list at a point, all in field indices.
pub fn eval_terms(field: &FieldSpec, terms: &[(u16, [u8; 6])], point: &[u16; 6]) -> u16 {
    let mut acc = 0u16;
    for (c, exps) in terms {
        let mut v = *c;
        for (i, &e) in exps.iter().enumerate() {
            if e > 0 {
                v = field.mul(v, field.pow(point[i], e as u64));
            }
        }
        acc = field.add(acc, v);
    }
    acc
}

/// Number of zeros of the form in affine 6-space over `F_{p^n}`, including
/// the origin. Single-threaded; parallel drivers should use [`CountPlan`].
pub fn count_affine(form: &CubicForm, n: u32, opts: CountOptions) -> Result<u128, CountError> {
    let plan = CountPlan::new(form, n, opts)?;
    Ok(plan.count_partition_range(0..plan.partitions()))
}

/// Projective count `(affine - 1) / (q^n - 1)`, with the divisibility and
/// the `= 1 (mod q^n)` congruence asserted.
pub fn count_projective(
    form: &CubicForm,
    n: u32,
    opts: CountOptions,
) -> Result<BigInt, CountError> {
    let affine = count_affine(form, n, opts)?;
    projective_from_affine(form.p(), n, affine)
}

/// Shared postprocessing for affine counts (also used by parallel drivers).
pub fn projective_from_affine(p: u32, n: u32, affine: u128) -> Result<BigInt, CountError> {
    let qn = (p as u128).pow(n);
    if affine < 1 {
        return Err(CountError::Inconsistency(
            "affine count misses the origin".to_string(),
        ));
    }
    if qn > 2 && !(affine - 1).is_multiple_of(qn - 1) {
        return Err(CountError::Inconsistency(alloc::format!(
            "affine count {} - 1 not divisible by q^n - 1 = {}",
            affine,
            qn - 1
        )));
    }
    let proj = (affine - 1) / (qn - 1).max(1);
    if proj % qn != 1 {
        return Err(CountError::Inconsistency(alloc::format!(
            "projective count {} violates the Ax congruence mod {}",
            proj,
            qn
        )));
    }
    Ok(BigInt::from(proj))
}

/// Projective counts for `n = 1..=n_max`.
pub fn count_table(
    form: &CubicForm,
    n_max: u32,
    opts: CountOptions,
) -> Result<PointCountTable, CountError> {
    let mut table = PointCountTable::new(form.p() as u64);
    for n in 1..=n_max {
        let c = count_projective(form, n, opts)?;
        table.counts.insert(n, c);
    }
    Ok(table)
}

/// A projective point over `F_{p^ext}` where the form and all six partial
/// derivatives vanish.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularPoint {
    pub ext: u32,
    pub coords: [u16; 6],
}

/// Scans all projective points over `F_{p^n}`, `n <= n_max`, for common
/// zeros of the form and its six partials. An empty result is
/// necessary-but-not-sufficient evidence of smoothness.
pub fn singular_scan(form: &CubicForm, n_max: u32) -> Result<Vec<SingularPoint>, CountError> {
    let mut found = Vec::new();
    let partials: Vec<Vec<(u16, [u8; 6])>> = (0..6)
        .map(|i| {
            form.partial_derivative(i)
                .into_iter()
                .map(|(c, e)| (c as u16, e))
                .collect()
        })
        .collect();
    let terms: Vec<(u16, [u8; 6])> = form.terms().iter().map(|&(c, e)| (c as u16, e)).collect();
    for n in 1..=n_max {
        let field = FieldSpec::new(form.p(), n)?;
        let q = field.q() as u64;
        // representatives: first nonzero coordinate normalized to 1
        for lead in 0..6usize {
            let free = 5 - lead;
            let total = q.pow(free as u32);
            for enc in 0..total {
                let mut point = [0u16; 6];
                point[lead] = 1;
                let mut rest = enc;
                for slot in point.iter_mut().skip(lead + 1) {
                    *slot = (rest % q) as u16;
                    rest /= q;
                }
                if eval_terms(&field, &terms, &point) != 0 {
                    continue;
                }
                if partials.iter().all(|d| eval_terms(&field, d, &point) == 0) {
                    found.push(SingularPoint {
                        ext: n,
                        coords: point,
                    });
                }
            }
        }
    }
    Ok(found)
}
