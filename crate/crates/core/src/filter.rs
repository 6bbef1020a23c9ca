//! Condition suites over Weil polynomials and cubic forms: the K3-type
//! tests, the cubic-K3-category tests, and the count-based obstruction
//! report for an explicit cubic.
//!
//! Verdicts are tri-state. A FAIL or PASS is never wrong: conditions whose
//! full decision procedure is out of reach (rational or p-adic
//! irreducibility) report UNKNOWN instead of guessing. Every FAIL carries a
//! witness that reproduces the violation by direct recomputation.
//!
//! Count conditions quantified over all `n` reduce to finite ranges via the
//! 22-root unit-circle bound `|p_n| <= 22`: nonnegativity of K3 counts is
//! automatic once `q^n >= 22`, and growth is automatic once
//! `q^m - q^n >= 22`. The cubic and Hilbert-square conditions use the
//! configurable default depth of 8 at q = 2, which dominates the
//! corresponding bounds with the Fano Betti masses.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_traits::{One, Signed};
use thiserror::Error;

use crate::category::ack3_from_cubic;
use crate::cubic::{count_table, CountError, CountOptions, CubicForm};
use crate::cyclotomic::CyclotomicBasis;
use crate::irred::{perfect_power_and_irreducibility, CertStatus};
use crate::polygon::{height_and_ordinarity, newton_above_hodge, Height, HodgeComparison};
use crate::rational::{format_rat, is_square, Rat};
use crate::weil::{rational_counts, CyclotomicSplit, WeilPolynomial, WEIL_DEGREE};

use num_bigint::BigInt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    Unknown,
}

impl core::fmt::Display for Verdict {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Verdict::Pass => write!(f, "PASS"),
            Verdict::Fail => write!(f, "FAIL"),
            Verdict::Unknown => write!(f, "UNKNOWN"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Condition {
    pub name: &'static str,
    pub verdict: Verdict,
    /// failing witness, or a short detail on PASS/UNKNOWN
    pub witness: Option<String>,
}

impl Condition {
    fn new(name: &'static str, verdict: Verdict) -> Self {
        Condition {
            name,
            verdict,
            witness: None,
        }
    }

    fn with(name: &'static str, verdict: Verdict, witness: String) -> Self {
        Condition {
            name,
            verdict,
            witness: Some(witness),
        }
    }
}

/// Per-input report: every enabled condition exactly once, witnesses
/// reproducible; overall FAIL if any FAIL, else UNKNOWN if any UNKNOWN.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FilterReport {
    pub id: String,
    pub conditions: Vec<Condition>,
}

impl FilterReport {
    pub fn overall(&self) -> Verdict {
        let mut unknown = false;
        for c in &self.conditions {
            match c.verdict {
                Verdict::Fail => return Verdict::Fail,
                Verdict::Unknown => unknown = true,
                Verdict::Pass => {}
            }
        }
        if unknown {
            Verdict::Unknown
        } else {
            Verdict::Pass
        }
    }

    pub fn condition(&self, name: &str) -> Option<&Condition> {
        self.conditions.iter().find(|c| c.name == name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FilterError {
    #[error("the cubic-category suite requires prime q, got {0}")]
    CompositeQ(u64),
}

/// Extensions that still need an explicit K3-count nonnegativity check:
/// `{n : q^n < 22}`.
pub fn nonneg_range(q: u64) -> Vec<u32> {
    let mut out = Vec::new();
    let mut power = q;
    let mut n = 1u32;
    while power < 22 {
        out.push(n);
        n += 1;
        power = power.saturating_mul(q);
    }
    out
}

/// Divisibility pairs (n, m), n | m, that still need an explicit K3-count
/// growth check: `{(n, m) : q^m - q^n < 22}`.
pub fn growth_pairs(q: u64) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for n in 1u32..16 {
        let qn = match q.checked_pow(n) {
            Some(v) if v < 22 + q => v,
            _ => break,
        };
        for m in (2 * n..=16).step_by(n as usize) {
            let qm = match q.checked_pow(m) {
                Some(v) => v,
                None => break,
            };
            if qm.saturating_sub(qn) < 22 {
                out.push((n, m));
            }
        }
    }
    out
}

/// Condition suite with the cyclotomic basis prepared once, reusable
/// across a whole batch.
pub struct ConditionSuite {
    basis: CyclotomicBasis,
    /// depth of the cubic/Hilbert-square count checks
    cubic_depth: u32,
}

impl Default for ConditionSuite {
    fn default() -> Self {
        ConditionSuite::new()
    }
}

impl ConditionSuite {
    pub fn new() -> Self {
        ConditionSuite {
            basis: CyclotomicBasis::new(WEIL_DEGREE as u64),
            cubic_depth: 8,
        }
    }

    pub fn with_cubic_depth(depth: u32) -> Self {
        ConditionSuite {
            basis: CyclotomicBasis::new(WEIL_DEGREE as u64),
            cubic_depth: depth.max(2),
        }
    }

    pub fn basis(&self) -> &CyclotomicBasis {
        &self.basis
    }

    /// The K3-type suite: unit circle, projectivity, p-integrality,
    /// crystalline split conditions, count nonnegativity and growth over
    /// the finite sufficient ranges, and the Artin-Tate square condition.
    ///
    /// A unit-circle failure short-circuits: no later condition can
    /// contribute UNKNOWN contamination.
    pub fn check_k3_type(&self, w: &WeilPolynomial) -> FilterReport {
        self.check_k3_type_with_id(w, String::new())
    }

    pub fn check_k3_type_with_id(&self, w: &WeilPolynomial, id: String) -> FilterReport {
        let mut conditions = Vec::new();
        if !w.roots_on_unit_circle() {
            conditions.push(Condition::new("unit-circle", Verdict::Fail));
            return FilterReport { id, conditions };
        }
        conditions.push(Condition::new("unit-circle", Verdict::Pass));

        conditions.push(projectivity_condition(w));
        conditions.push(p_integrality_condition(w));

        let split = w.cyclotomic_split_with(&self.basis);
        let (nh, trans) = self.crystalline_conditions(&split, w.p());
        conditions.push(nh);
        conditions.push(trans);

        let counts = rational_counts(w, 16);
        conditions.push(nonneg_condition(
            "nonnegativity",
            &counts,
            &nonneg_range(w.q()),
        ));
        conditions.push(growth_condition("growth", &counts, &growth_pairs(w.q())));

        conditions.push(artin_tate_condition(w));
        FilterReport { id, conditions }
    }

    fn crystalline_conditions(&self, split: &CyclotomicSplit, p: u64) -> (Condition, Condition) {
        if split.trc.is_constant() {
            let nh = Condition::with("newton-hodge", Verdict::Pass, String::from("supersingular"));
            let trans = Condition::with(
                "transcendental",
                Verdict::Pass,
                String::from("supersingular"),
            );
            return (nh, trans);
        }
        let nh = match newton_above_hodge(split, p) {
            Ok(HodgeComparison::Pass) => Condition::new("newton-hodge", Verdict::Pass),
            Ok(HodgeComparison::SupersingularVacuous) => unreachable!("nonconstant trc"),
            Ok(HodgeComparison::Fail { x, newton, hodge }) => Condition::with(
                "newton-hodge",
                Verdict::Fail,
                format!(
                    "x={},newton={},hodge={}",
                    x,
                    format_rat(&newton),
                    format_rat(&hodge)
                ),
            ),
            Err(e) => Condition::with("newton-hodge", Verdict::Unknown, e.to_string()),
        };
        let trans = match perfect_power_and_irreducibility(&split.trc, p, &self.basis) {
            Ok(pp) => {
                let verdict = match pp.status {
                    CertStatus::Pass => Verdict::Pass,
                    CertStatus::Fail => Verdict::Fail,
                    CertStatus::Unknown => Verdict::Unknown,
                };
                Condition::with("transcendental", verdict, pp.detail)
            }
            Err(e) => Condition::with("transcendental", Verdict::Unknown, e.to_string()),
        };
        (nh, trans)
    }

    /// The cubic-K3-category suite (q prime): p-integrality, nonnegativity
    /// and growth of the derived cubic-fourfold and Hilbert-square counts,
    /// and Artin-Tate.
    pub fn check_cubic_category_type(
        &self,
        w: &WeilPolynomial,
    ) -> Result<FilterReport, FilterError> {
        self.check_cubic_category_type_with_id(w, String::new())
    }

    pub fn check_cubic_category_type_with_id(
        &self,
        w: &WeilPolynomial,
        id: String,
    ) -> Result<FilterReport, FilterError> {
        if w.q() != w.p() {
            return Err(FilterError::CompositeQ(w.q()));
        }
        let mut conditions = Vec::new();
        if !w.roots_on_unit_circle() {
            conditions.push(Condition::new("unit-circle", Verdict::Fail));
            return Ok(FilterReport { id, conditions });
        }
        conditions.push(Condition::new("unit-circle", Verdict::Pass));
        conditions.push(p_integrality_condition(w));

        let depth = self.cubic_depth;
        let q = BigInt::from(w.q());
        let a_counts = rational_counts(w, 2 * depth);
        let x_counts: Vec<(u32, Rat)> = a_counts
            .iter()
            .map(|(n, a)| {
                let x = Rat::one()
                    + Rat::from_integer(q.pow(*n)) * a
                    + Rat::from_integer(q.pow(2 * n))
                    + Rat::from_integer(q.pow(4 * n));
                (*n, x)
            })
            .collect();
        let two = Rat::from_integer(BigInt::from(2));
        let h_counts: Vec<(u32, Rat)> = (1..=depth)
            .map(|n| {
                let a_n = &a_counts[(n - 1) as usize].1;
                let a_2n = &a_counts[(2 * n - 1) as usize].1;
                let h = a_n * (a_n - Rat::one()) / &two
                    + Rat::from_integer(q.pow(n) + BigInt::one()) * a_n
                    + (a_2n - a_n) / &two;
                (n, h)
            })
            .collect();

        let all_n: Vec<u32> = (1..=depth).collect();
        let pairs: Vec<(u32, u32)> = (1..=depth)
            .flat_map(|n| (2 * n..=depth).step_by(n as usize).map(move |m| (n, m)))
            .collect();
        conditions.push(nonneg_condition("cubic-nonnegativity", &x_counts, &all_n));
        conditions.push(growth_condition("cubic-growth", &x_counts, &pairs));
        conditions.push(nonneg_condition("hilbert-nonnegativity", &h_counts, &all_n));
        conditions.push(growth_condition("hilbert-growth", &h_counts, &pairs));
        conditions.push(artin_tate_condition(w));
        Ok(FilterReport { id, conditions })
    }

    /// Counts the cubic, derives the K3-category counts, and reports
    /// integrality plus any negative count or growth violation among the
    /// computable pairs. An all-PASS report is an absence of obstructions,
    /// never a geometricity certificate.
    pub fn geom_check(
        &self,
        form: &CubicForm,
        n_max: u32,
        opts: CountOptions,
    ) -> Result<FilterReport, CountError> {
        let table = count_table(form, n_max, opts)?;
        let mut conditions = Vec::new();
        let a = match ack3_from_cubic(&table) {
            Ok(a) => {
                conditions.push(Condition::new("integrality", Verdict::Pass));
                a
            }
            Err(e) => {
                conditions.push(Condition::with("integrality", Verdict::Fail, e.to_string()));
                return Ok(FilterReport {
                    id: String::new(),
                    conditions,
                });
            }
        };
        let counts: Vec<(u32, Rat)> = a
            .counts
            .iter()
            .map(|(n, c)| (*n, Rat::from_integer(c.clone())))
            .collect();
        let all_n: Vec<u32> = (1..=n_max).collect();
        let pairs: Vec<(u32, u32)> = (1..=n_max)
            .flat_map(|n| (2 * n..=n_max).step_by(n as usize).map(move |m| (n, m)))
            .collect();
        conditions.push(nonneg_condition("nonnegativity", &counts, &all_n));
        conditions.push(growth_condition("growth", &counts, &pairs));
        Ok(FilterReport {
            id: String::new(),
            conditions,
        })
    }

    /// Picard ranks (rho, rho_bar) for inputs passing the p-integrality
    /// precheck; `None` otherwise.
    pub fn picard_entry(&self, w: &WeilPolynomial) -> Option<(u32, u32)> {
        if !p_integral(w) {
            return None;
        }
        let split = w.cyclotomic_split_with(&self.basis);
        Some((split.rho, split.rho_bar))
    }
}

fn projectivity_condition(w: &WeilPolynomial) -> Condition {
    let one_minus_t = crate::poly::RatPoly::from_i64(&[1, -1]);
    if w.poly().div_exact(&one_minus_t).is_some() {
        Condition::new("projectivity", Verdict::Pass)
    } else {
        Condition::with(
            "projectivity",
            Verdict::Fail,
            String::from("no (1-T) factor"),
        )
    }
}

fn p_integral(w: &WeilPolynomial) -> bool {
    let p = Rat::from_integer(BigInt::from(w.p()));
    w.poly().coeffs().iter().all(|c| (c * &p).denom().is_one())
}

fn p_integrality_condition(w: &WeilPolynomial) -> Condition {
    let p = Rat::from_integer(BigInt::from(w.p()));
    for (i, c) in w.poly().coeffs().iter().enumerate() {
        let scaled = c * &p;
        if !scaled.denom().is_one() {
            return Condition::with(
                "p-integrality",
                Verdict::Fail,
                format!("coeff={},value={}", i, format_rat(c)),
            );
        }
    }
    Condition::new("p-integrality", Verdict::Pass)
}

fn nonneg_condition(name: &'static str, counts: &[(u32, Rat)], range: &[u32]) -> Condition {
    for &n in range {
        if let Some((_, value)) = counts.iter().find(|(m, _)| *m == n) {
            if value.is_negative() {
                return Condition::with(
                    name,
                    Verdict::Fail,
                    format!("n={},count={}", n, format_rat(value)),
                );
            }
        }
    }
    Condition::new(name, Verdict::Pass)
}

fn growth_condition(name: &'static str, counts: &[(u32, Rat)], pairs: &[(u32, u32)]) -> Condition {
    for &(n, m) in pairs {
        let low = counts.iter().find(|(k, _)| *k == n);
        let high = counts.iter().find(|(k, _)| *k == m);
        if let (Some((_, low)), Some((_, high))) = (low, high) {
            if high < low {
                return Condition::with(
                    name,
                    Verdict::Fail,
                    format!(
                        "n={},m={},low={},high={}",
                        n,
                        m,
                        format_rat(low),
                        format_rat(high)
                    ),
                );
            }
        }
    }
    Condition::new(name, Verdict::Pass)
}

/// Artin-Tate: with `L = (1-T)^r L_1`, `L_1(1) != 0`, the value
/// `q L_1(-1)` must be a rational square (0 allowed).
fn artin_tate_condition(w: &WeilPolynomial) -> Condition {
    let one_minus_t = crate::poly::RatPoly::from_i64(&[1, -1]);
    let mut l1 = w.poly().clone();
    while let Some(q) = l1.div_exact(&one_minus_t) {
        l1 = q;
    }
    let value = l1.eval(&-Rat::one()) * Rat::from_integer(BigInt::from(w.q()));
    if is_square(&value) {
        Condition::with(
            "artin-tate",
            Verdict::Pass,
            format!("value={}", format_rat(&value)),
        )
    } else {
        Condition::with(
            "artin-tate",
            Verdict::Fail,
            format!("value={}", format_rat(&value)),
        )
    }
}

/// Formal height and ordinarity of a Weil polynomial, read off its
/// cyclotomic split (a display convenience for the CLI).
pub fn height_summary(w: &WeilPolynomial, basis: &CyclotomicBasis) -> (Height, bool) {
    let split = w.cyclotomic_split_with(basis);
    height_and_ordinarity(&split, w.p())
}
