//! Newton identities linking the coefficients of `P(T) = prod (1 - g_j T)`
//! to the power sums `p_n = sum g_j^n` of its inverse roots.
//!
//! With `P = sum a_i T^i`, `a_0 = 1`, the identity `n a_n = -sum_{i=1}^{n}
//! a_{n-i} p_i` converts in both directions by exact rational arithmetic.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::poly::RatPoly;
use crate::rational::Rat;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NewtonError {
    #[error("polynomial must have constant term 1")]
    ConstantTermNotOne,
    #[error("need at least {needed} power sums, got {got}")]
    NotEnoughPowerSums { needed: usize, got: usize },
}

/// Power sums `[p_1, ..., p_k_max]` of the inverse roots of `P`, `P(0) = 1`.
///
/// ```
/// use nck3_core::newton::power_sums;
/// use nck3_core::poly::RatPoly;
/// use nck3_core::rational::rat_int;
///
/// // 1 - 3T + 2T^2 = (1 - T)(1 - 2T) has inverse roots 1 and 2
/// let p = RatPoly::from_i64(&[1, -3, 2]);
/// assert_eq!(power_sums(&p, 2).unwrap(), vec![rat_int(3), rat_int(5)]);
/// ```
pub fn power_sums(p: &RatPoly, k_max: usize) -> Result<Vec<Rat>, NewtonError> {
    if !p.coeff(0).is_one() {
        return Err(NewtonError::ConstantTermNotOne);
    }
    let mut sums: Vec<Rat> = Vec::with_capacity(k_max);
    for n in 1..=k_max {
        // p_n = -n a_n - sum_{i=1}^{n-1} a_i p_{n-i}
        let mut s = -(p.coeff(n) * Rat::from_integer(BigInt::from(n)));
        for i in 1..n {
            let a_i = p.coeff(i);
            if a_i.is_zero() {
                continue;
            }
            s -= a_i * &sums[n - i - 1];
        }
        sums.push(s);
    }
    Ok(sums)
}

/// The unique `P` with `P(0) = 1` of the given degree whose first `deg`
/// power sums match `sums`. Inverse of [`power_sums`].
pub fn poly_from_power_sums(sums: &[Rat], deg: usize) -> Result<RatPoly, NewtonError> {
    if sums.len() < deg {
        return Err(NewtonError::NotEnoughPowerSums {
            needed: deg,
            got: sums.len(),
        });
    }
    let mut coeffs: Vec<Rat> = Vec::with_capacity(deg + 1);
    coeffs.push(Rat::one());
    for n in 1..=deg {
        // a_n = -(p_n + sum_{i=1}^{n-1} a_i p_{n-i}) / n
        let mut s = sums[n - 1].clone();
        for i in 1..n {
            if coeffs[i].is_zero() {
                continue;
            }
            s += &coeffs[i] * &sums[n - i - 1];
        }
        coeffs.push(-s / Rat::from_integer(BigInt::from(n)));
    }
    Ok(RatPoly::from_coeffs(coeffs))
}
