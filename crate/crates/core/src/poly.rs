//! Dense univariate polynomials over the rationals.
//!
//! Coefficients are stored in ascending degree with no trailing zeros; the
//! zero polynomial is the empty list. The text form is a comma-separated
//! list of ascending coefficients, each `a` or `a/b`.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::rational::{format_rat, parse_rat, Rat, RatParseError};

#[derive(Clone, PartialEq, Eq)]
pub struct RatPoly {
    coeffs: Vec<Rat>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("operation requires a nonzero polynomial")]
    ZeroPolynomial,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyParseError {
    #[error("coefficient {index}: {source}")]
    Coefficient {
        index: usize,
        #[source]
        source: RatParseError,
    },
}

impl RatPoly {
    pub fn zero() -> Self {
        RatPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        RatPoly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        RatPoly::from_coeffs(vec![c])
    }

    /// Builds from ascending coefficients, trimming trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        RatPoly::from_coeffs(
            coeffs
                .iter()
                .map(|&c| crate::rational::rat_int(c))
                .collect(),
        )
    }

    /// `c * T^deg`.
    pub fn monomial(c: Rat, deg: usize) -> Self {
        if c.is_zero() {
            return RatPoly::zero();
        }
        let mut coeffs = vec![Rat::zero(); deg + 1];
        coeffs[deg] = c;
        RatPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Coefficient of `T^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> RatPoly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * Rat::from_integer(BigInt::from(i)))
            .collect();
        RatPoly::from_coeffs(coeffs)
    }

    pub fn scale(&self, c: &Rat) -> RatPoly {
        if c.is_zero() {
            return RatPoly::zero();
        }
        RatPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Coefficient reversal `T^deg * P(1/T)` with respect to the actual degree.
    pub fn reversed(&self) -> RatPoly {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        RatPoly::from_coeffs(coeffs)
    }

    pub fn pow(&self, e: u32) -> RatPoly {
        let mut acc = RatPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Leading coefficient scaled to 1; zero stays zero.
    pub fn monic(&self) -> RatPoly {
        match self.leading() {
            None => RatPoly::zero(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    /// Euclidean division; errors only when `divisor` is zero.
    pub fn divrem(&self, divisor: &RatPoly) -> Result<(RatPoly, RatPoly), PolyError> {
        let d = divisor.degree().ok_or(PolyError::DivisionByZero)?;
        let lc = divisor.leading().expect("nonzero divisor").clone();
        let mut rem = self.coeffs.clone();
        if rem.len() < d + 1 {
            return Ok((RatPoly::zero(), self.clone()));
        }
        let qlen = rem.len() - d;
        let mut quot = vec![Rat::zero(); qlen];
        for i in (0..qlen).rev() {
            let c = &rem[i + d] / &lc;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                let t = &c * dc;
                rem[i + j] = &rem[i + j] - &t;
            }
            quot[i] = c;
        }
        Ok((RatPoly::from_coeffs(quot), RatPoly::from_coeffs(rem)))
    }

    /// Exact quotient, or `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &RatPoly) -> Option<RatPoly> {
        let (q, r) = self.divrem(divisor).ok()?;
        r.is_zero().then_some(q)
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(a: &RatPoly, b: &RatPoly) -> RatPoly {
        let mut x = a.clone();
        let mut y = b.clone();
        while !y.is_zero() {
            let (_, r) = x.divrem(&y).expect("nonzero divisor");
            x = y;
            y = r;
        }
        x.monic()
    }

    /// Monic product of the distinct irreducible factors.
    pub fn squarefree_part(&self) -> Result<RatPoly, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        let g = RatPoly::gcd(self, &self.derivative());
        Ok(self.div_exact(&g).expect("gcd divides").monic())
    }

    /// Yun's squarefree decomposition: returns monic pairs `(factor, mult)`
    /// with `self = lc * prod factor^mult`, multiplicities ascending.
    pub fn squarefree_decomposition(&self) -> Result<Vec<(RatPoly, usize)>, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        let f = self.monic();
        let mut out = Vec::new();
        if f.is_constant() {
            return Ok(out);
        }
        let fp = f.derivative();
        let g = RatPoly::gcd(&f, &fp);
        let mut c = f.div_exact(&g).expect("gcd divides");
        let mut d = &fp.div_exact(&g).expect("gcd divides") - &c.derivative();
        let mut mult = 1usize;
        while !c.is_constant() {
            let a = RatPoly::gcd(&c, &d);
            if a.degree().unwrap_or(0) > 0 {
                out.push((a.clone(), mult));
            }
            c = c.div_exact(&a).expect("gcd divides");
            d = &d.div_exact(&a).expect("gcd divides") - &c.derivative();
            mult += 1;
        }
        Ok(out)
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.denom().is_one())
    }

    /// Primitive integer form: integer coefficients with content 1 and a
    /// positive leading coefficient, plus the rational multiplier `m` with
    /// `self = m * primitive`. Errors on the zero polynomial.
    pub fn primitive_integer_coeffs(&self) -> Result<(Vec<BigInt>, Rat), PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        let mut lcm = BigInt::one();
        for c in &self.coeffs {
            lcm = lcm.lcm(c.denom());
        }
        let scaled: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| {
                let r = c * Rat::from_integer(lcm.clone());
                debug_assert!(r.denom().is_one());
                r.numer().clone()
            })
            .collect();
        let mut content = BigInt::zero();
        for c in &scaled {
            content = content.gcd(c);
        }
        if scaled.last().expect("nonzero").is_negative() {
            content = -content;
        }
        let prim: Vec<BigInt> = scaled.iter().map(|c| c / &content).collect();
        let mult = Rat::new(content, lcm);
        Ok((prim, mult))
    }

    /// Parses a comma-separated ascending coefficient list.
    pub fn parse(text: &str) -> Result<RatPoly, PolyParseError> {
        let mut coeffs = Vec::new();
        for (index, piece) in text.split(',').enumerate() {
            let c =
                parse_rat(piece).map_err(|source| PolyParseError::Coefficient { index, source })?;
            coeffs.push(c);
        }
        Ok(RatPoly::from_coeffs(coeffs))
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.coeffs.iter().map(format_rat).collect();
        f.write_str(&parts.join(","))
    }
}

impl fmt::Debug for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatPoly[{}]", self)
    }
}

impl Add for &RatPoly {
    type Output = RatPoly;
    fn add(self, rhs: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) + rhs.coeff(i));
        }
        RatPoly::from_coeffs(coeffs)
    }
}

impl Sub for &RatPoly {
    type Output = RatPoly;
    fn sub(self, rhs: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) - rhs.coeff(i));
        }
        RatPoly::from_coeffs(coeffs)
    }
}

impl Mul for &RatPoly {
    type Output = RatPoly;
    fn mul(self, rhs: &RatPoly) -> RatPoly {
        if self.is_zero() || rhs.is_zero() {
            return RatPoly::zero();
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        RatPoly::from_coeffs(coeffs)
    }
}

impl Neg for &RatPoly {
    type Output = RatPoly;
    fn neg(self) -> RatPoly {
        RatPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}
