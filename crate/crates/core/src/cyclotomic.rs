//! Cyclotomic polynomials in the `prod (1 - zeta T)` normalization and the
//! basis used for root-of-unity factor detection.
//!
//! `C_1 = 1 - T`; for `n >= 2` the polynomial is palindromic with constant
//! term 1 and coincides with the classical cyclotomic polynomial. Generation
//! is by iterated exact division of `T^n - 1` by the divisors' factors.

use alloc::vec::Vec;

use crate::poly::RatPoly;
use crate::rational::{rat_int, Rat};

use num_traits::One;

pub fn euler_phi(n: u64) -> u64 {
    let mut result = n;
    let mut m = n;
    let mut d = 2u64;
    while d * d <= m {
        if m.is_multiple_of(d) {
            while m.is_multiple_of(d) {
                m /= d;
            }
            result -= result / d;
        }
        d += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// The n-th cyclotomic polynomial, normalized as `prod (1 - zeta T)` over
/// the primitive n-th roots of unity.
///
/// This is the coefficient reversal of the classical polynomial, a no-op
/// for `n >= 2` where the classical polynomial is palindromic.
pub fn cyclotomic(n: u64) -> RatPoly {
    assert!(n >= 1, "cyclotomic index must be positive");
    classical_cyclotomic(n).reversed()
}

// Classical Phi_n (monic, roots the primitive n-th roots of unity).
fn classical_cyclotomic(n: u64) -> RatPoly {
    let mut c = alloc::vec![rat_int(-1)];
    c.resize(n as usize, Rat::from_integer(0.into()));
    c.push(Rat::one());
    let mut num = RatPoly::from_coeffs(c);
    for d in 1..n {
        if n.is_multiple_of(d) {
            num = num
                .div_exact(&classical_cyclotomic(d))
                .expect("cyclotomic divides T^n - 1");
        }
    }
    num
}

/// All `(n, C_n)` with `phi(n) <= max_degree`, ascending in `n`.
///
/// Every cyclotomic factor of a polynomial of degree `<= max_degree` appears
/// in this list, so repeated trial division against it extracts the full
/// root-of-unity part.
#[derive(Clone)]
pub struct CyclotomicBasis {
    entries: Vec<(u64, RatPoly)>,
    pub max_degree: u64,
}

impl CyclotomicBasis {
    pub fn new(max_degree: u64) -> Self {
        // phi(n) >= sqrt(n/2) gives the scan bound n <= 2 (max_degree)^2.
        let bound = 2 * max_degree * max_degree + 1;
        let mut entries = Vec::new();
        for n in 1..=bound {
            if euler_phi(n) <= max_degree {
                entries.push((n, cyclotomic(n)));
            }
        }
        CyclotomicBasis {
            entries,
            max_degree,
        }
    }

    pub fn entries(&self) -> &[(u64, RatPoly)] {
        &self.entries
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat_int;

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic(1), RatPoly::from_i64(&[1, -1]));
        assert_eq!(cyclotomic(2), RatPoly::from_i64(&[1, 1]));
        assert_eq!(cyclotomic(3), RatPoly::from_i64(&[1, 1, 1]));
        assert_eq!(cyclotomic(4), RatPoly::from_i64(&[1, 0, 1]));
        assert_eq!(cyclotomic(6), RatPoly::from_i64(&[1, -1, 1]));
        assert_eq!(cyclotomic(12), RatPoly::from_i64(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn degree_is_phi() {
        for n in 1..=50u64 {
            assert_eq!(
                cyclotomic(n).degree().unwrap() as u64,
                euler_phi(n),
                "n = {n}"
            );
        }
    }

    #[test]
    fn product_over_divisors_is_one_minus_tn() {
        for n in 1..=30u64 {
            let mut prod = RatPoly::one();
            for d in 1..=n {
                if n % d == 0 {
                    prod = &prod * &cyclotomic(d);
                }
            }
            let mut expect = alloc::vec![rat_int(1)];
            expect.resize(n as usize, rat_int(0));
            expect.push(rat_int(-1));
            assert_eq!(prod, RatPoly::from_coeffs(expect), "n = {n}");
        }
    }

    #[test]
    fn phi_values() {
        let known = [
            (1, 1),
            (2, 1),
            (3, 2),
            (4, 2),
            (6, 2),
            (12, 4),
            (22, 10),
            (23, 22),
            (46, 22),
        ];
        for (n, phi) in known {
            assert_eq!(euler_phi(n), phi);
        }
    }

    #[test]
    fn basis_contents() {
        let basis = CyclotomicBasis::new(22);
        // 46 has phi = 22, and nothing larger qualifies past the bound.
        assert!(basis.entries().iter().any(|(n, _)| *n == 46));
        assert!(basis.entries().iter().all(|(n, _)| euler_phi(*n) <= 22));
        // spot check the largest index: phi(66) = 20 <= 22
        assert!(basis.entries().iter().any(|(n, _)| *n == 66));
        for (n, c) in basis.entries() {
            assert_eq!(c.degree().unwrap() as u64, euler_phi(*n));
        }
    }
}
