//! Exact real-root counting on half-open intervals via Sturm sequences.
//!
//! The chain is always built on the squarefree part, so the count is over
//! distinct roots. Multiplicity-aware counting is done by the callers via
//! squarefree decomposition.

use alloc::vec::Vec;

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::poly::RatPoly;
use crate::rational::Rat;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SturmError {
    #[error("root counting requires a nonzero polynomial")]
    ZeroPolynomial,
    #[error("interval bounds must satisfy a < b")]
    EmptyInterval,
}

/// Number of distinct real roots of `p` in the half-open interval `(a, b]`.
pub fn real_roots_in_interval(p: &RatPoly, a: &Rat, b: &Rat) -> Result<usize, SturmError> {
    if p.is_zero() {
        return Err(SturmError::ZeroPolynomial);
    }
    if a >= b {
        return Err(SturmError::EmptyInterval);
    }
    let sf = p.squarefree_part().expect("nonzero");
    if sf.is_constant() {
        return Ok(0);
    }
    let chain = sturm_chain(&sf);
    Ok(sign_variations(&chain, a) - sign_variations(&chain, b))
}

fn sturm_chain(p: &RatPoly) -> Vec<RatPoly> {
    let mut chain = alloc::vec![p.clone(), p.derivative()];
    loop {
        let n = chain.len();
        if chain[n - 1].is_zero() {
            chain.pop();
            break;
        }
        let (_, r) = chain[n - 2].divrem(&chain[n - 1]).expect("nonzero divisor");
        if r.is_zero() {
            break;
        }
        chain.push(normalize_positive(-&r));
    }
    chain
}

// Divide by a positive constant to tame coefficient growth; the sign of the
// polynomial (what Sturm counting sees) is unchanged.
fn normalize_positive(p: RatPoly) -> RatPoly {
    match p.leading() {
        None => p,
        Some(lc) => {
            let scale = lc.abs().recip();
            p.scale(&scale)
        }
    }
}

fn sign_variations(chain: &[RatPoly], x: &Rat) -> usize {
    let mut last_sign = 0i8;
    let mut variations = 0usize;
    for p in chain {
        let v = p.eval(x);
        let s = if v.is_zero() {
            0
        } else if v.is_positive() {
            1
        } else {
            -1
        };
        if s != 0 {
            if last_sign != 0 && s != last_sign {
                variations += 1;
            }
            last_sign = s;
        }
    }
    variations
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};
    use proptest::prelude::*;

    #[test]
    fn quadratic_with_two_real_roots() {
        let p = RatPoly::from_i64(&[-2, 0, 1]); // T^2 - 2
        assert_eq!(
            real_roots_in_interval(&p, &rat_int(-2), &rat_int(2)).unwrap(),
            2
        );
    }

    #[test]
    fn quadratic_with_no_real_roots() {
        let p = RatPoly::from_i64(&[1, 0, 1]); // T^2 + 1
        assert_eq!(
            real_roots_in_interval(&p, &rat_int(-2), &rat_int(2)).unwrap(),
            0
        );
    }

    #[test]
    fn repeated_root_counted_once() {
        let p = RatPoly::from_i64(&[4, -4, 1]); // (T - 2)^2
        assert_eq!(
            real_roots_in_interval(&p, &rat_int(0), &rat_int(3)).unwrap(),
            1
        );
    }

    #[test]
    fn interval_is_half_open() {
        let p = RatPoly::from_i64(&[-1, 1]); // T - 1
        assert_eq!(
            real_roots_in_interval(&p, &rat_int(0), &rat_int(1)).unwrap(),
            1,
            "right endpoint included"
        );
        assert_eq!(
            real_roots_in_interval(&p, &rat_int(1), &rat_int(2)).unwrap(),
            0,
            "left endpoint excluded"
        );
    }

    #[test]
    fn errors() {
        assert_eq!(
            real_roots_in_interval(&RatPoly::zero(), &rat_int(0), &rat_int(1)),
            Err(SturmError::ZeroPolynomial)
        );
        let p = RatPoly::from_i64(&[1, 1]);
        assert_eq!(
            real_roots_in_interval(&p, &rat_int(1), &rat_int(1)),
            Err(SturmError::EmptyInterval)
        );
    }

    proptest! {
        // Invariance under scaling by a positive rational constant.
        #[test]
        fn scale_invariance(
            coeffs in proptest::collection::vec(-5i64..=5, 2..8),
            num in 1i64..=9,
            den in 1i64..=9,
        ) {
            let p = RatPoly::from_i64(&coeffs);
            prop_assume!(!p.is_zero());
            let scaled = p.scale(&rat(num, den));
            let a = rat_int(-10);
            let b = rat_int(10);
            prop_assert_eq!(
                real_roots_in_interval(&p, &a, &b).unwrap(),
                real_roots_in_interval(&scaled, &a, &b).unwrap()
            );
        }
    }
}
