//! Newton polygons of rational polynomials at a prime, the Hodge-polygon
//! comparison for the transcendental factor of a Weil polynomial of K3
//! type, and the height/ordinarity dictionary.
//!
//! In the unit-circle normalization the Hodge polygon of an m-dimensional
//! transcendental lattice has slopes (-1, 0 x (m-2), +1); a finite height h
//! corresponds to least Newton slope -1/h, ordinarity to Newton = Hodge,
//! and a trivial transcendental factor to the supersingular case.

use alloc::vec::Vec;

use num_bigint::BigInt;
use thiserror::Error;

use crate::poly::RatPoly;
use crate::rational::{vp, Rat};
use crate::weil::CyclotomicSplit;

use num_traits::One;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolygonError {
    #[error("Newton polygon requires constant term 1")]
    ConstantTermNotOne,
    #[error("transcendental factor of degree {0} violates the conjugate-pair invariant")]
    Malformed(usize),
}

/// Lower convex hull of `(i, v_p(c_i))` over the nonzero coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonPolygon {
    /// hull vertices, x strictly increasing from 0 to the degree
    pub vertices: Vec<(usize, i64)>,
    /// one slope per unit of horizontal length, nondecreasing
    pub slopes: Vec<Rat>,
}

impl NewtonPolygon {
    /// Hull height at integer abscissa `x` (linear interpolation between
    /// vertices). Panics outside `0..=degree`.
    pub fn y_at(&self, x: usize) -> Rat {
        for pair in self.vertices.windows(2) {
            let (x0, y0) = pair[0];
            let (x1, y1) = pair[1];
            if x >= x0 && x <= x1 {
                let dx = (x1 - x0) as i64;
                let dy = y1 - y0;
                return Rat::new(
                    BigInt::from(y0 * dx + dy * (x - x0) as i64),
                    BigInt::from(dx),
                );
            }
        }
        assert_eq!(
            (x, self.vertices.len()),
            (0, 1),
            "abscissa outside the polygon"
        );
        Rat::from_integer(BigInt::from(self.vertices[0].1))
    }

    pub fn least_slope(&self) -> Option<&Rat> {
        self.slopes.first()
    }
}

/// Newton polygon of `P` at `p`; requires `P(0) = 1`.
pub fn newton_polygon(poly: &RatPoly, p: u64) -> Result<NewtonPolygon, PolygonError> {
    if !poly.coeff(0).is_one() {
        return Err(PolygonError::ConstantTermNotOne);
    }
    let points: Vec<(usize, i64)> = poly
        .coeffs()
        .iter()
        .enumerate()
        .filter_map(|(i, c)| vp(c, p).map(|v| (i, v)))
        .collect();
    // lower hull, left to right; cross product keeps right turns
    let mut hull: Vec<(usize, i64)> = Vec::new();
    for &(x, y) in &points {
        while hull.len() >= 2 {
            let (x1, y1) = hull[hull.len() - 2];
            let (x2, y2) = hull[hull.len() - 1];
            let cross = (x2 - x1) as i128 * (y - y1) as i128 - (y2 - y1) as i128 * (x - x1) as i128;
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push((x, y));
    }
    let mut slopes = Vec::new();
    for pair in hull.windows(2) {
        let (x0, y0) = pair[0];
        let (x1, y1) = pair[1];
        let slope = Rat::new(BigInt::from(y1 - y0), BigInt::from((x1 - x0) as i64));
        for _ in 0..(x1 - x0) {
            slopes.push(slope.clone());
        }
    }
    Ok(NewtonPolygon {
        vertices: hull,
        slopes,
    })
}

/// Outcome of the Newton-above-Hodge comparison.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HodgeComparison {
    Pass,
    /// vacuous: the transcendental factor is trivial (supersingular)
    SupersingularVacuous,
    Fail {
        x: usize,
        newton: Rat,
        hodge: Rat,
    },
}

/// Hodge-polygon height at `x` for a transcendental lattice of dimension m:
/// vertices (0,0), (1,-1), (m-1,-1), (m,0).
fn hodge_y(x: usize, m: usize) -> Rat {
    let v = if x == 0 {
        0
    } else if x < m {
        -1
    } else {
        0
    };
    Rat::from_integer(BigInt::from(v))
}

/// Checks that the Newton polygon of the transcendental factor lies on or
/// above its Hodge polygon at every integer abscissa.
pub fn newton_above_hodge(
    split: &CyclotomicSplit,
    p: u64,
) -> Result<HodgeComparison, PolygonError> {
    if split.trc.is_constant() {
        return Ok(HodgeComparison::SupersingularVacuous);
    }
    let m = split.trc.degree().expect("nonconstant");
    if m < 2 {
        return Err(PolygonError::Malformed(m));
    }
    let np = newton_polygon(&split.trc, p)?;
    for x in 0..=m {
        let newton = np.y_at(x);
        let hodge = hodge_y(x, m);
        if newton < hodge {
            return Ok(HodgeComparison::Fail { x, newton, hodge });
        }
    }
    Ok(HodgeComparison::Pass)
}

/// Formal height read off the least Newton slope.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Height {
    Finite(u64),
    Infinite,
    /// least slope not of the form -1/h: polygon inconsistent with
    /// K3-type expectations
    Unknown,
}

impl core::fmt::Display for Height {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Height::Finite(h) => write!(f, "{}", h),
            Height::Infinite => write!(f, "infinity"),
            Height::Unknown => write!(f, "unknown"),
        }
    }
}

/// Height h = -1/s for the least Newton slope s of the transcendental
/// factor (infinite when the factor is trivial or the polygon starts flat),
/// and ordinarity = Newton equals Hodge.
pub fn height_and_ordinarity(split: &CyclotomicSplit, p: u64) -> (Height, bool) {
    if split.trc.is_constant() {
        // supersingular
        return (Height::Infinite, false);
    }
    let m = split.trc.degree().expect("nonconstant");
    let np = match newton_polygon(&split.trc, p) {
        Ok(np) => np,
        Err(_) => return (Height::Unknown, false),
    };
    let ordinary = (0..=m).all(|x| np.y_at(x) == hodge_y(x, m));
    let least = np
        .least_slope()
        .cloned()
        .unwrap_or_else(|| Rat::from_integer(BigInt::from(0)));
    use num_traits::{Signed, Zero};
    let height = if least.is_zero() {
        Height::Infinite
    } else if least.is_positive() {
        Height::Unknown
    } else if least.numer() == &BigInt::from(-1) {
        // -1/h in lowest terms
        let denom = least.denom();
        Height::Finite(u64::try_from(denom.clone()).unwrap_or(u64::MAX))
    } else {
        Height::Unknown
    };
    (height, ordinary)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::CyclotomicBasis;
    use crate::rational::{rat, rat_int};
    use crate::weil::split_cyclotomic;
    use crate::weil::test_fixtures::special_weil;
    use alloc::vec;

    #[test]
    fn polygon_of_quadratic() {
        // 1 - (1/2) T + T^2 at p = 2: hull (0,0), (1,-1), (2,0)
        let p = RatPoly::from_coeffs(vec![rat_int(1), rat(-1, 2), rat_int(1)]);
        let np = newton_polygon(&p, 2).unwrap();
        assert_eq!(np.vertices, vec![(0, 0), (1, -1), (2, 0)]);
        assert_eq!(np.slopes, vec![rat_int(-1), rat_int(1)]);
    }

    #[test]
    fn polygon_of_linear() {
        let p = RatPoly::from_i64(&[1, -1]);
        let np = newton_polygon(&p, 5).unwrap();
        assert_eq!(np.slopes, vec![rat_int(0)]);
    }

    #[test]
    fn polygon_interpolation_skips_high_points() {
        // 1 + 4T + T^2 at p = 2: point (1, 2) lies above the hull
        let p = RatPoly::from_i64(&[1, 4, 1]);
        let np = newton_polygon(&p, 2).unwrap();
        assert_eq!(np.vertices, vec![(0, 0), (2, 0)]);
        assert_eq!(np.y_at(1), rat_int(0));
    }

    #[test]
    fn polygon_of_fixture_transcendental_part() {
        // g = f / (1 - T)^2 at p = 2: height-3 shape, slopes
        // -1/3 x 3, 0 x 14, 1/3 x 3 summing to zero
        let split = special_weil().cyclotomic_split();
        let np = newton_polygon(&split.trc, 2).unwrap();
        assert_eq!(np.vertices, vec![(0, 0), (3, -1), (17, -1), (20, 0)]);
        assert_eq!(np.slopes.len(), 20);
        assert_eq!(np.slopes[0], rat(-1, 3));
        assert_eq!(np.slopes[19], rat(1, 3));
        assert!(np.slopes[3..17].iter().all(|s| s == &rat_int(0)));
    }

    #[test]
    fn hodge_comparison_cases() {
        let basis = CyclotomicBasis::new(22);
        // supersingular branch
        let ss = split_cyclotomic(&RatPoly::from_i64(&[1, -1]).pow(4), &basis);
        assert_eq!(
            newton_above_hodge(&ss, 2).unwrap(),
            HodgeComparison::SupersingularVacuous
        );
        // m = 2 with valuations (0, -1, 0): Newton = Hodge
        let eq = CyclotomicSplit {
            alg: RatPoly::one(),
            trc: RatPoly::from_coeffs(vec![rat_int(1), rat(-1, 2), rat_int(1)]),
            rho: 0,
            rho_bar: 0,
            factors: vec![],
        };
        assert_eq!(newton_above_hodge(&eq, 2).unwrap(), HodgeComparison::Pass);
        // synthetic hull starting with slope -2 dips below Hodge
        let bad = CyclotomicSplit {
            alg: RatPoly::one(),
            trc: RatPoly::from_coeffs(vec![rat_int(1), rat(-1, 4), rat_int(1)]),
            rho: 0,
            rho_bar: 0,
            factors: vec![],
        };
        match newton_above_hodge(&bad, 2).unwrap() {
            HodgeComparison::Fail {
                x: 1,
                newton,
                hodge,
            } => {
                assert_eq!(newton, rat_int(-2));
                assert_eq!(hodge, rat_int(-1));
            }
            other => panic!("unexpected: {other:?}"),
        }
        // fixture passes
        let split = special_weil().cyclotomic_split();
        assert_eq!(
            newton_above_hodge(&split, 2).unwrap(),
            HodgeComparison::Pass
        );
    }

    #[test]
    fn heights() {
        let basis = CyclotomicBasis::new(22);
        // fixture: least slope -1/3 gives height 3, not ordinary
        let split = special_weil().cyclotomic_split();
        assert_eq!(height_and_ordinarity(&split, 2), (Height::Finite(3), false));
        // least slope -1: height 1, ordinary (Newton equals Hodge)
        let mut coeffs = vec![rat_int(0); 5];
        coeffs[0] = rat_int(1);
        coeffs[1] = rat(1, 2);
        coeffs[2] = rat(1, 2);
        coeffs[3] = rat(1, 2);
        coeffs[4] = rat_int(1);
        let ord = CyclotomicSplit {
            alg: RatPoly::one(),
            trc: RatPoly::from_coeffs(coeffs),
            rho: 0,
            rho_bar: 0,
            factors: vec![],
        };
        assert_eq!(height_and_ordinarity(&ord, 2), (Height::Finite(1), true));
        // supersingular
        let ss = split_cyclotomic(&RatPoly::from_i64(&[1, -1]).pow(4), &basis);
        assert_eq!(height_and_ordinarity(&ss, 2), (Height::Infinite, false));
        // least slope -1/7: height 7, non-ordinary (degree-14 synthetic
        // with a single 2 in the middle coefficient)
        let mut coeffs = vec![rat_int(0); 15];
        coeffs[0] = rat_int(1);
        coeffs[7] = rat(1, 2);
        coeffs[14] = rat_int(1);
        let h7 = CyclotomicSplit {
            alg: RatPoly::one(),
            trc: RatPoly::from_coeffs(coeffs),
            rho: 0,
            rho_bar: 0,
            factors: vec![],
        };
        assert_eq!(height_and_ordinarity(&h7, 2), (Height::Finite(7), false));
        // least slope -2/3 is not of the form -1/h
        let mut coeffs = vec![rat_int(0); 7];
        coeffs[0] = rat_int(1);
        coeffs[3] = rat(1, 4);
        coeffs[6] = rat_int(1);
        let odd = CyclotomicSplit {
            alg: RatPoly::one(),
            trc: RatPoly::from_coeffs(coeffs),
            rho: 0,
            rho_bar: 0,
            factors: vec![],
        };
        assert_eq!(height_and_ordinarity(&odd, 2).0, Height::Unknown);
    }
}
