//! Perfect-power structure of the transcendental factor and sufficient
//! (never wrong) irreducibility certificates.
//!
//! The factor must be `Q^e` with `Q` irreducible over the rationals.
//! Squarefree decomposition pins `e` and a candidate `Q` exactly; the
//! remaining irreducibility question is answered by sufficient tests only:
//! a match against a cyclotomic, irreducibility modulo an auxiliary prime,
//! and the pure-slope criterion for the p-adic sub-condition. Whatever is
//! not certified is reported unknown, never guessed.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::cyclotomic::CyclotomicBasis;
use crate::poly::RatPoly;
use crate::polygon::newton_polygon;
use crate::rational::Rat;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IrredError {
    #[error("perfect-power extraction requires a nonzero polynomial")]
    ZeroPolynomial,
    #[error("polynomial must have nonzero constant term")]
    ZeroConstantTerm,
}

/// Tri-state certification outcome.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CertStatus {
    Pass,
    Fail,
    Unknown,
}

#[derive(Debug, Clone)]
pub struct PerfectPower {
    /// base normalized to constant term 1; `base^exponent` equals the input
    pub base: RatPoly,
    pub exponent: u32,
    pub status: CertStatus,
    /// what certified or what is missing
    pub detail: String,
}

/// Extracts the maximal `e` with `L = Q^e` and certifies irreducibility of
/// `Q` where a sufficient test applies.
///
/// `p` is the residue characteristic: it is excluded from the auxiliary
/// prime list and drives the p-adic pure-slope check.
pub fn perfect_power_and_irreducibility(
    l_trc: &RatPoly,
    p: u64,
    basis: &CyclotomicBasis,
) -> Result<PerfectPower, IrredError> {
    if l_trc.is_zero() {
        return Err(IrredError::ZeroPolynomial);
    }
    if l_trc.coeff(0).is_zero() {
        return Err(IrredError::ZeroConstantTerm);
    }
    if l_trc.is_constant() {
        return Ok(PerfectPower {
            base: RatPoly::one(),
            exponent: 1,
            status: CertStatus::Pass,
            detail: String::from("trivial factor"),
        });
    }
    let decomp = l_trc
        .squarefree_decomposition()
        .expect("nonzero polynomial");
    if decomp.len() > 1 {
        // distinct irreducible factors with unequal multiplicities: the
        // squarefree structure itself exhibits a nontrivial factorization
        let degrees: Vec<String> = decomp
            .iter()
            .map(|(f, m)| alloc::format!("deg {} mult {}", f.degree().unwrap_or(0), m))
            .collect();
        return Ok(PerfectPower {
            base: normalize_constant_one(&decomp[0].0),
            exponent: 1,
            status: CertStatus::Fail,
            detail: alloc::format!("squarefree structure splits: {}", degrees.join(", ")),
        });
    }
    let (factor, exponent) = (&decomp[0].0, decomp[0].1 as u32);
    let base = normalize_constant_one(factor);
    debug_assert_eq!(&base.pow(exponent), l_trc);

    // cyclotomic trial division: an exact match certifies irreducibility,
    // a proper divisor certifies reducibility
    for (n, c) in basis.entries() {
        if &base == c {
            let padic = padic_pure_slope(&base, p);
            return Ok(finish_with_padic(
                base.clone(),
                exponent,
                alloc::format!("cyclotomic C_{}", n),
                padic,
            ));
        }
        if base.div_exact(c).is_some() {
            return Ok(PerfectPower {
                base,
                exponent,
                status: CertStatus::Fail,
                detail: alloc::format!("divisible by cyclotomic C_{}", n),
            });
        }
    }

    // mod-l irreducibility over the first 25 auxiliary primes
    let mut rational_cert: Option<u64> = None;
    let (prim, _) = base.primitive_integer_coeffs().expect("nonzero polynomial");
    for ell in auxiliary_primes(p, 25) {
        let ellb = BigInt::from(ell);
        if (prim.last().expect("nonzero") % &ellb).is_zero() {
            continue; // degree would drop
        }
        let reduced: Vec<u64> = prim
            .iter()
            .map(|c| c.mod_floor(&ellb).to_u64().expect("residue fits"))
            .collect();
        if modp_irreducible(&reduced, ell) {
            rational_cert = Some(ell);
            break;
        }
    }
    match rational_cert {
        Some(ell) => {
            let padic = padic_pure_slope(&base, p);
            Ok(finish_with_padic(
                base,
                exponent,
                alloc::format!("irreducible mod {}", ell),
                padic,
            ))
        }
        None => Ok(PerfectPower {
            base,
            exponent,
            status: CertStatus::Unknown,
            detail: String::from("no auxiliary prime certified irreducibility"),
        }),
    }
}

fn finish_with_padic(
    base: RatPoly,
    exponent: u32,
    rational_detail: String,
    padic: Option<String>,
) -> PerfectPower {
    match padic {
        Some(padic_detail) => PerfectPower {
            base,
            exponent,
            status: CertStatus::Pass,
            detail: alloc::format!("{}; {}", rational_detail, padic_detail),
        },
        None => PerfectPower {
            base,
            exponent,
            status: CertStatus::Unknown,
            detail: alloc::format!(
                "{}; negative-slope p-adic factor not certified by pure slope",
                rational_detail
            ),
        },
    }
}

fn normalize_constant_one(f: &RatPoly) -> RatPoly {
    f.scale(&f.coeff(0).recip())
}

/// Pure-slope criterion: the negative-slope Newton segment certifies that
/// the p-adic factor carrying the `v_p < 0` roots is irreducible over Q_p
/// exactly when its slope `-a/b` in lowest terms spans a segment of length
/// `b`. Returns a description on success, `None` when uncertified. The
/// check is vacuous when no negative slope exists.
fn padic_pure_slope(base: &RatPoly, p: u64) -> Option<String> {
    let np = newton_polygon(base, p).ok()?;
    let negative: Vec<&Rat> = np.slopes.iter().filter(|s| s.is_negative()).collect();
    if negative.is_empty() {
        return Some(String::from("no negative-slope p-adic factor"));
    }
    let first = negative[0];
    if negative.iter().any(|s| *s != first) {
        return None; // several negative slopes: not a single pure segment
    }
    let b = first.denom();
    if BigInt::from(negative.len()) == *b {
        Some(alloc::format!(
            "pure negative slope {}/{} of length {}",
            first.numer(),
            first.denom(),
            negative.len()
        ))
    } else {
        None
    }
}

/// First `count` primes different from `p`.
fn auxiliary_primes(p: u64, count: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    let mut candidate = 2u64;
    while out.len() < count {
        if candidate != p && crate::field::is_prime(candidate as u32) {
            out.push(candidate);
        }
        candidate += 1;
    }
    out
}

// ---- dense polynomial arithmetic mod an auxiliary prime ----

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn mulmod(a: &[u64], b: &[u64], f: &[u64], ell: u64) -> Vec<u64> {
    let k = f.len() - 1;
    let mut conv = vec![0u64; a.len() + b.len()];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            conv[i + j] = (conv[i + j] + ai * bj) % ell;
        }
    }
    let lead_inv = inv_mod(f[k], ell);
    for d in (k..conv.len()).rev() {
        let c = conv[d] % ell;
        if c == 0 {
            continue;
        }
        conv[d] = 0;
        let scale = c * lead_inv % ell;
        for j in 0..k {
            conv[d - k + j] = (conv[d - k + j] + scale * (ell - f[j] % ell)) % ell;
        }
    }
    conv.truncate(k);
    trim(&mut conv);
    conv
}

fn powmod(base: &[u64], mut e: u64, f: &[u64], ell: u64) -> Vec<u64> {
    let mut result = vec![1u64];
    let mut b = base.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            result = mulmod(&result, &b, f, ell);
        }
        b = mulmod(&b, &b, f, ell);
        e >>= 1;
    }
    result
}

fn gcd_mod(a: &[u64], b: &[u64], ell: u64) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let lead_inv = inv_mod(*y.last().unwrap(), ell);
        while x.len() >= y.len() && !x.is_empty() {
            let shift = x.len() - y.len();
            let c = *x.last().unwrap() * lead_inv % ell;
            for (j, &yj) in y.iter().enumerate() {
                x[shift + j] = (x[shift + j] + (ell - c * yj % ell)) % ell;
            }
            trim(&mut x);
        }
        core::mem::swap(&mut x, &mut y);
    }
    x
}

fn inv_mod(a: u64, ell: u64) -> u64 {
    let mut result = 1u64;
    let mut base = a % ell;
    let mut e = ell - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % ell;
        }
        base = base * base % ell;
        e >>= 1;
    }
    result
}

fn sub_x(mut v: Vec<u64>, ell: u64) -> Vec<u64> {
    if v.len() < 2 {
        v.resize(2, 0);
    }
    v[1] = (v[1] + ell - 1) % ell;
    trim(&mut v);
    v
}

/// Rabin's test: `f` of degree k is irreducible over GF(ell) iff
/// `x^(ell^k) = x (mod f)` and `gcd(x^(ell^(k/r)) - x, f) = 1` for every
/// prime `r | k`. Frobenius powers are iterated ell-th powers, so the
/// exponent never materializes.
fn modp_irreducible(f: &[u64], ell: u64) -> bool {
    let mut f = f.to_vec();
    for c in f.iter_mut() {
        *c %= ell;
    }
    let k = f.len() - 1;
    if k == 0 {
        return false;
    }
    if k == 1 {
        return true;
    }
    let x = vec![0u64, 1];
    let frobenius = |start: &[u64], times: usize| -> Vec<u64> {
        let mut h = start.to_vec();
        for _ in 0..times {
            h = powmod(&h, ell, &f, ell);
        }
        h
    };
    let xqk = frobenius(&x, k);
    if !sub_x(xqk, ell).is_empty() {
        return false;
    }
    let mut primes_of_k = Vec::new();
    let mut m = k;
    let mut d = 2;
    while d * d <= m {
        if m.is_multiple_of(d) {
            primes_of_k.push(d);
            while m.is_multiple_of(d) {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        primes_of_k.push(m);
    }
    for r in primes_of_k {
        let h = frobenius(&x, k / r);
        let g = gcd_mod(&sub_x(h, ell), &f, ell);
        if g.len() != 1 {
            return false;
        }
    }
    true
}
