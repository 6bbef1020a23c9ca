//! Table-backed arithmetic in GF(p^k) for small prime p and k <= 16.
//!
//! Elements are indices in `[0, q)` encoding base-p digit vectors in the
//! polynomial basis of a fixed modulus (for p = 2 the index is the usual
//! bitmask). Multiplication goes through exponential/logarithm tables so the
//! bulk-evaluation kernels never touch polynomial arithmetic.
//!
//! Each (p, k) gets the lexicographically smallest monic irreducible
//! modulus, so constructions are reproducible across runs and platforms.
//! Embeddings between extensions are made mutually consistent by fixing, per
//! field, a primitive element whose minimal polynomial is compatible with
//! the chosen primitive elements of all subfields; the embedding then sends
//! generator power to generator power, which composes exactly along towers.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

/// Index of a field element in `[0, q)`.
pub type FieldElement = u16;

pub const MAX_FIELD_SIZE: u32 = 1 << 16;

/// Lexicographically smallest monic irreducible over GF(2), degrees 1..=16,
/// encoded as coefficient bitmasks (bit i = coefficient of x^i).
const GF2_MODULI: [u32; 16] = [
    0b10,                // x
    0b111,               // x^2 + x + 1
    0b1011,              // x^3 + x + 1
    0b10011,             // x^4 + x + 1
    0b100101,            // x^5 + x^2 + 1
    0b1000011,           // x^6 + x + 1
    0b10000011,          // x^7 + x + 1
    0b100011011,         // x^8 + x^4 + x^3 + x + 1
    0b1000000011,        // x^9 + x + 1
    0b10000001001,       // x^10 + x^3 + 1
    0b100000000101,      // x^11 + x^2 + 1
    0b1000000001001,     // x^12 + x^3 + 1
    0b10000000011011,    // x^13 + x^4 + x^3 + x + 1
    0b100000000100001,   // x^14 + x^5 + 1
    0b1000000000000011,  // x^15 + x + 1
    0b10000000000101011, // x^16 + x^5 + x^3 + x + 1
];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("extension degree {0} outside supported range 1..=16")]
    UnsupportedDegree(u32),
    #[error("field size {0} exceeds the table-backed limit 2^16")]
    FieldTooLarge(u64),
    #[error("modulus is not a monic degree-{k} irreducible over GF({p})")]
    BadModulus { p: u32, k: u32 },
    #[error("embedding requires equal characteristic and divisible degrees")]
    IncompatibleEmbedding,
    #[error("embedding requires canonically constructed fields")]
    NonCanonicalEmbedding,
}

#[derive(Clone)]
pub struct FieldSpec {
    p: u32,
    k: u32,
    q: u32,
    modulus: Vec<u32>,
    exp: Vec<u16>,
    log: Vec<u16>,
    generator: u16,
    gamma_log: u32,
    gamma_minpoly: Vec<u32>,
    canonical: bool,
}

impl core::fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(
            f,
            "FieldSpec(GF({}^{}), modulus {})",
            self.p,
            self.k,
            self.modulus_string()
        )
    }
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn distinct_prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// ---- dense polynomial arithmetic over GF(p), used only at construction ----

fn pol_trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn pol_mulmod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    let k = f.len() - 1;
    let mut conv = vec![0u64; a.len() + b.len()];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            conv[i + j] = (conv[i + j] + ai * bj) % p;
        }
    }
    for d in (k..conv.len()).rev() {
        let c = conv[d] % p;
        if c == 0 {
            continue;
        }
        conv[d] = 0;
        for j in 0..k {
            conv[d - k + j] = (conv[d - k + j] + c * (p - f[j] % p)) % p;
        }
    }
    conv.truncate(k);
    pol_trim(&mut conv);
    conv
}

// T^e mod f
fn pol_x_pow_mod(e: u32, f: &[u64], p: u64) -> Vec<u64> {
    let mut result = vec![1u64];
    let mut base = vec![0u64, 1];
    if f.len() == 2 {
        // degree-1 modulus: x reduces to a constant
        base = pol_mulmod(&[1], &base, f, p);
    }
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            result = pol_mulmod(&result, &base, f, p);
        }
        base = pol_mulmod(&base, &base, f, p);
        e >>= 1;
    }
    result
}

fn pol_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x: Vec<u64> = a.to_vec();
    let mut y: Vec<u64> = b.to_vec();
    pol_trim(&mut x);
    pol_trim(&mut y);
    while !y.is_empty() {
        // x mod y
        let lead_inv = mod_inv_u64(*y.last().unwrap(), p);
        while x.len() >= y.len() && !x.is_empty() {
            let shift = x.len() - y.len();
            let c = (*x.last().unwrap() * lead_inv) % p;
            for (j, &yj) in y.iter().enumerate() {
                let idx = shift + j;
                x[idx] = (x[idx] + (p - (c * yj) % p)) % p;
            }
            pol_trim(&mut x);
        }
        core::mem::swap(&mut x, &mut y);
    }
    x
}

fn mod_inv_u64(a: u64, p: u64) -> u64 {
    // Fermat: p prime, a != 0 mod p
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

/// Rabin irreducibility test for a monic polynomial over GF(p).
fn is_irreducible(f: &[u64], p: u64) -> bool {
    let k = f.len() - 1;
    if k == 0 {
        return false;
    }
    if k == 1 {
        return true;
    }
    let q: u64 = p.pow(k as u32);
    debug_assert!(q <= MAX_FIELD_SIZE as u64);
    // x^(p^k) == x mod f
    let xq = pol_x_pow_mod(q as u32, f, p);
    let mut diff = xq;
    // subtract x
    if diff.len() < 2 {
        diff.resize(2, 0);
    }
    diff[1] = (diff[1] + p - 1) % p;
    pol_trim(&mut diff);
    if !diff.is_empty() {
        return false;
    }
    for r in distinct_prime_factors(k as u32) {
        let e = p.pow(k as u32 / r) as u32;
        let mut d = pol_x_pow_mod(e, f, p);
        if d.len() < 2 {
            d.resize(2, 0);
        }
        d[1] = (d[1] + p - 1) % p;
        pol_trim(&mut d);
        let g = pol_gcd(&d, f, p);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

/// The lexicographically smallest monic irreducible of degree k over GF(p),
/// as ascending coefficients (length k+1, leading 1).
fn lex_smallest_irreducible(p: u32, k: u32) -> Vec<u32> {
    let pk = (p as u64).pow(k);
    for lower in 0..pk {
        let mut coeffs: Vec<u64> = Vec::with_capacity(k as usize + 1);
        let mut rest = lower;
        for _ in 0..k {
            coeffs.push(rest % p as u64);
            rest /= p as u64;
        }
        coeffs.push(1);
        if is_irreducible(&coeffs, p as u64) {
            return coeffs.into_iter().map(|c| c as u32).collect();
        }
    }
    unreachable!("an irreducible of each degree exists");
}

fn canonical_modulus(p: u32, k: u32) -> Vec<u32> {
    if p == 2 {
        let mask = GF2_MODULI[(k - 1) as usize];
        (0..=k).map(|i| (mask >> i) & 1).collect()
    } else {
        lex_smallest_irreducible(p, k)
    }
}

impl FieldSpec {
    /// The canonical GF(p^k): smallest modulus, compatible generator chain.
    pub fn new(p: u32, k: u32) -> Result<FieldSpec, FieldError> {
        Self::validate(p, k)?;
        let modulus = canonical_modulus(p, k);
        Self::build(p, k, modulus, true)
    }

    /// GF(p^k) under a caller-chosen irreducible modulus (ascending
    /// coefficients, monic). Counting results downstream do not depend on
    /// the modulus; this constructor exists to verify exactly that. Fields
    /// built this way cannot take part in [`FieldSpec::embed`].
    pub fn with_modulus(p: u32, k: u32, modulus: &[u32]) -> Result<FieldSpec, FieldError> {
        Self::validate(p, k)?;
        let ok = modulus.len() == k as usize + 1
            && modulus[k as usize] == 1
            && modulus.iter().all(|&c| c < p)
            && is_irreducible(
                &modulus.iter().map(|&c| c as u64).collect::<Vec<_>>(),
                p as u64,
            );
        if !ok {
            return Err(FieldError::BadModulus { p, k });
        }
        Self::build(p, k, modulus.to_vec(), false)
    }

    fn validate(p: u32, k: u32) -> Result<(), FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if !(1..=16).contains(&k) {
            return Err(FieldError::UnsupportedDegree(k));
        }
        let q = (p as u64)
            .checked_pow(k)
            .ok_or(FieldError::FieldTooLarge(u64::MAX))?;
        if q > MAX_FIELD_SIZE as u64 {
            return Err(FieldError::FieldTooLarge(q));
        }
        Ok(())
    }

    fn build(p: u32, k: u32, modulus: Vec<u32>, canonical: bool) -> Result<FieldSpec, FieldError> {
        let q = (p as u64).pow(k) as u32;
        let raw_mul = |a: u32, b: u32| -> u32 { raw_mul_idx(a, b, p, k, &modulus) };

        // smallest-index primitive element for the log/antilog tables
        let factors = distinct_prime_factors(q - 1);
        let mut generator = 0u32;
        'cand: for cand in 1..q {
            for &r in &factors {
                if raw_pow_idx(cand, ((q - 1) / r) as u64, p, k, &modulus) == 1 {
                    continue 'cand;
                }
            }
            generator = cand;
            break;
        }
        debug_assert!(generator != 0 || q == 2);
        if q == 2 {
            generator = 1;
        }

        let table_len = core::cmp::max(1, 2 * (q as usize - 1));
        let mut exp = vec![0u16; table_len];
        let mut log = vec![0u16; q as usize];
        let mut acc = 1u32;
        for (i, slot) in exp.iter_mut().take((q - 1) as usize).enumerate() {
            *slot = acc as u16;
            log[acc as usize] = i as u16;
            acc = raw_mul(acc, generator);
        }
        debug_assert_eq!(acc, 1, "generator order must be q - 1");
        for i in (q - 1) as usize..table_len {
            exp[i] = exp[i - (q as usize - 1)];
        }

        let mut spec = FieldSpec {
            p,
            k,
            q,
            modulus,
            exp,
            log,
            generator: generator as u16,
            gamma_log: 0,
            gamma_minpoly: Vec::new(),
            canonical,
        };

        if k == 1 {
            spec.gamma_log = if q == 2 { 0 } else { 1 };
            let g = spec.generator as u32;
            spec.gamma_minpoly = vec![(p - g % p) % p, 1];
            return Ok(spec);
        }

        // compatible primitive element: its image in each maximal subfield
        // must have the subfield's chosen minimal polynomial
        let mut sub_minpolys: Vec<(u32, Vec<u32>)> = Vec::new();
        for r in distinct_prime_factors(k) {
            let a = k / r;
            let sub = FieldSpec::new(p, a)?;
            sub_minpolys.push((a, sub.gamma_minpoly));
        }
        let order = (q - 1) as u64;
        let mut found = false;
        for j in 1..order {
            if gcd_u64(j, order) != 1 {
                continue;
            }
            let ok = sub_minpolys.iter().all(|(a, expected)| {
                let sub_order = (p as u64).pow(*a) - 1;
                let e = order / sub_order;
                let delta = spec.exp[((j * e) % order) as usize];
                spec.minimal_polynomial(delta) == *expected
            });
            if ok {
                spec.gamma_log = j as u32;
                spec.gamma_minpoly = spec.minimal_polynomial(spec.exp[j as usize]);
                found = true;
                break;
            }
        }
        debug_assert!(found, "compatible generator exists for every tower");
        if !found {
            // fall back to the table generator; embeddings will refuse
            spec.gamma_log = 1;
            spec.gamma_minpoly = spec.minimal_polynomial(spec.generator);
            spec.canonical = false;
        }
        Ok(spec)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn is_canonical(&self) -> bool {
        self.canonical
    }

    pub fn modulus_coeffs(&self) -> &[u32] {
        &self.modulus
    }

    pub fn modulus_string(&self) -> String {
        let mut parts: Vec<String> = Vec::new();
        for (i, &c) in self.modulus.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let var = match i {
                0 => String::from(""),
                1 => String::from("x"),
                _ => alloc::format!("x^{}", i),
            };
            let part = if i == 0 {
                alloc::format!("{}", c)
            } else if c == 1 {
                var
            } else {
                alloc::format!("{}{}", c, var)
            };
            parts.push(part);
        }
        parts.join(" + ")
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        0..self.q as u16
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.p == 2 {
            return a ^ b;
        }
        let mut out = 0u32;
        let mut mult = 1u32;
        let mut x = a as u32;
        let mut y = b as u32;
        while x != 0 || y != 0 {
            let s = (x % self.p + y % self.p) % self.p;
            out += s * mult;
            mult *= self.p;
            x /= self.p;
            y /= self.p;
        }
        out as u16
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        if self.p == 2 {
            return a;
        }
        let mut out = 0u32;
        let mut mult = 1u32;
        let mut x = a as u32;
        while x != 0 {
            let d = x % self.p;
            if d != 0 {
                out += (self.p - d) * mult;
            }
            mult *= self.p;
            x /= self.p;
        }
        out as u16
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a == 0 || b == 0 {
            return 0;
        }
        self.exp[self.log[a as usize] as usize + self.log[b as usize] as usize]
    }

    pub fn inv(&self, a: FieldElement) -> Option<FieldElement> {
        if a == 0 {
            return None;
        }
        let order = (self.q - 1) as usize;
        Some(self.exp[(order - self.log[a as usize] as usize) % order])
    }

    pub fn pow(&self, x: FieldElement, e: u64) -> FieldElement {
        if x == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        let order = (self.q - 1) as u64;
        let e = e % order;
        self.exp[((self.log[x as usize] as u64 * e) % order) as usize]
    }

    pub fn multiplicative_order(&self, x: FieldElement) -> Option<u32> {
        if x == 0 {
            return None;
        }
        let order = (self.q - 1) as u64;
        Some((order / gcd_u64(self.log[x as usize] as u64, order)) as u32)
    }

    /// Minimal polynomial over GF(p) of a field element, as ascending
    /// prime-field coefficients.
    pub fn minimal_polynomial(&self, x: FieldElement) -> Vec<u32> {
        let mut conjugates = vec![x];
        let mut cur = self.pow(x, self.p as u64);
        while cur != x {
            conjugates.push(cur);
            cur = self.pow(cur, self.p as u64);
        }
        let mut poly: Vec<u16> = vec![1];
        for &c in &conjugates {
            let nc = self.neg(c);
            let mut next = vec![0u16; poly.len() + 1];
            for (i, &pc) in poly.iter().enumerate() {
                next[i] = self.add(next[i], self.mul(pc, nc));
                next[i + 1] = self.add(next[i + 1], pc);
            }
            poly = next;
        }
        poly.iter()
            .map(|&c| {
                debug_assert!((c as u32) < self.p, "minpoly coefficients live in GF(p)");
                c as u32
            })
            .collect()
    }

    /// Image of `x` under the fixed embedding GF(p^k_small) -> GF(p^k_big).
    ///
    /// Embeddings compose exactly: for a | b | c the triangle commutes,
    /// because the image of the compatible generator is again a compatible
    /// generator power.
    pub fn embed(&self, into: &FieldSpec, x: FieldElement) -> Result<FieldElement, FieldError> {
        if self.p != into.p || !into.k.is_multiple_of(self.k) {
            return Err(FieldError::IncompatibleEmbedding);
        }
        if !self.canonical || !into.canonical {
            return Err(FieldError::NonCanonicalEmbedding);
        }
        if x == 0 {
            return Ok(0);
        }
        if self.k == into.k {
            return Ok(x);
        }
        let small_order = (self.q - 1) as u64;
        let big_order = (into.q - 1) as u64;
        // x = gamma_small^j
        let l = self.log[x as usize] as u64;
        let j = if small_order == 1 {
            0
        } else {
            l * mod_inverse(self.gamma_log as u64, small_order) % small_order
        };
        let e = big_order / small_order;
        let idx = (into.gamma_log as u64 % big_order) * (e % big_order) % big_order
            * (j % big_order)
            % big_order;
        Ok(into.exp[idx as usize])
    }
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn mod_inverse(a: u64, m: u64) -> u64 {
    // extended Euclid; gcd(a, m) == 1 expected
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let quot = old_r / r;
        let tmp_r = old_r - quot * r;
        old_r = r;
        r = tmp_r;
        let tmp_s = old_s - quot * s;
        old_s = s;
        s = tmp_s;
    }
    debug_assert_eq!(old_r, 1);
    old_s.rem_euclid(m as i128) as u64
}

// index-level polynomial-basis multiplication, used only while the tables
// are being built
fn raw_mul_idx(a: u32, b: u32, p: u32, k: u32, modulus: &[u32]) -> u32 {
    let p64 = p as u64;
    let mut ad = [0u64; 17];
    let mut bd = [0u64; 17];
    let mut x = a as u64;
    let mut y = b as u64;
    for i in 0..k as usize {
        ad[i] = x % p64;
        bd[i] = y % p64;
        x /= p64;
        y /= p64;
    }
    let mut conv = [0u64; 33];
    for i in 0..k as usize {
        if ad[i] == 0 {
            continue;
        }
        for j in 0..k as usize {
            conv[i + j] += ad[i] * bd[j];
        }
    }
    for d in (k as usize..=(2 * k as usize).saturating_sub(2)).rev() {
        let c = conv[d] % p64;
        conv[d] = 0;
        if c == 0 {
            continue;
        }
        for j in 0..k as usize {
            conv[d - k as usize + j] += c * ((p64 - modulus[j] as u64) % p64);
        }
    }
    let mut out = 0u64;
    let mut mult = 1u64;
    for digit in conv.iter().take(k as usize) {
        out += (digit % p64) * mult;
        mult *= p64;
    }
    out as u32
}

fn raw_pow_idx(x: u32, e: u64, p: u32, k: u32, modulus: &[u32]) -> u32 {
    let mut result = 1u32;
    let mut base = x;
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            result = raw_mul_idx(result, base, p, k, modulus);
        }
        base = raw_mul_idx(base, base, p, k, modulus);
        e >>= 1;
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn gf2_moduli_are_lex_smallest() {
        for k in 1..=16u32 {
            let computed = lex_smallest_irreducible(2, k);
            let embedded = canonical_modulus(2, k);
            assert_eq!(computed, embedded, "degree {k}");
        }
    }

    #[test]
    fn basic_fields() {
        let f2 = FieldSpec::new(2, 1).unwrap();
        assert_eq!(f2.q(), 2);
        assert_eq!(f2.add(1, 1), 0);
        assert_eq!(f2.mul(1, 1), 1);

        let f32 = FieldSpec::new(2, 5).unwrap();
        assert_eq!(f32.q(), 32);
        // nonzero elements form a cyclic group of prime order 31
        assert_eq!(f32.multiplicative_order(1), Some(1));
        for x in 2..32u16 {
            assert_eq!(f32.multiplicative_order(x), Some(31), "2^5 - 1 is prime");
        }

        let f9 = FieldSpec::new(3, 2).unwrap();
        assert_eq!(f9.q(), 9);
        assert_eq!(f9.add(1, 2), 0, "1 + 2 = 0 in characteristic 3");
    }

    #[test]
    fn construction_errors() {
        assert_eq!(FieldSpec::new(4, 1).unwrap_err(), FieldError::NotPrime(4));
        assert_eq!(
            FieldSpec::new(2, 17).unwrap_err(),
            FieldError::UnsupportedDegree(17)
        );
        assert_eq!(
            FieldSpec::new(3, 11).unwrap_err(),
            FieldError::FieldTooLarge(177147)
        );
    }

    #[test]
    fn fermat_exponent_identity() {
        for (p, k) in [(2, 1), (2, 4), (2, 8), (3, 2), (5, 2), (7, 1), (251, 2)] {
            let f = FieldSpec::new(p, k).unwrap();
            let q = f.q();
            for x in 1..q.min(600) as u16 {
                assert_eq!(f.pow(x, (q - 1) as u64), 1, "GF({p}^{k}), x = {x}");
            }
        }
    }

    #[test]
    fn embedding_of_prime_field() {
        let f2 = FieldSpec::new(2, 1).unwrap();
        let f4 = FieldSpec::new(2, 2).unwrap();
        assert_eq!(f2.embed(&f4, 0).unwrap(), 0);
        assert_eq!(f2.embed(&f4, 1).unwrap(), 1);
    }

    #[test]
    fn embedding_preserves_structure() {
        let f4 = FieldSpec::new(2, 2).unwrap();
        let f16 = FieldSpec::new(2, 4).unwrap();
        // ring map: preserves mul and add
        for a in f4.elements() {
            for b in f4.elements() {
                let ea = f4.embed(&f16, a).unwrap();
                let eb = f4.embed(&f16, b).unwrap();
                assert_eq!(f4.embed(&f16, f4.mul(a, b)).unwrap(), f16.mul(ea, eb));
                assert_eq!(f4.embed(&f16, f4.add(a, b)).unwrap(), f16.add(ea, eb));
            }
        }
        // multiplicative order preserved: order-3 elements map to order-3
        for a in f4.elements().filter(|&a| a != 0) {
            let img = f4.embed(&f16, a).unwrap();
            assert_eq!(f4.multiplicative_order(a), f16.multiplicative_order(img));
        }
    }

    #[test]
    fn embedding_composes_along_towers() {
        for (small, mid, big) in [
            (1u32, 2u32, 4u32),
            (2, 4, 8),
            (1, 3, 6),
            (2, 6, 12),
            (3, 6, 12),
        ] {
            let fs = FieldSpec::new(2, small).unwrap();
            let fm = FieldSpec::new(2, mid).unwrap();
            let fb = FieldSpec::new(2, big).unwrap();
            for x in fs.elements() {
                let direct = fs.embed(&fb, x).unwrap();
                let via_mid = fm.embed(&fb, fs.embed(&fm, x).unwrap()).unwrap();
                assert_eq!(
                    direct, via_mid,
                    "GF(2^{small}) -> GF(2^{mid}) -> GF(2^{big})"
                );
            }
        }
        // odd characteristic tower
        let f3 = FieldSpec::new(3, 1).unwrap();
        let f9 = FieldSpec::new(3, 2).unwrap();
        let f81 = FieldSpec::new(3, 4).unwrap();
        for x in f3.elements() {
            let direct = f3.embed(&f81, x).unwrap();
            let via = f9.embed(&f81, f3.embed(&f9, x).unwrap()).unwrap();
            assert_eq!(direct, via);
        }
    }

    #[test]
    fn embedding_rejects_bad_pairs() {
        let f4 = FieldSpec::new(2, 2).unwrap();
        let f8 = FieldSpec::new(2, 3).unwrap();
        assert_eq!(
            f4.embed(&f8, 1).unwrap_err(),
            FieldError::IncompatibleEmbedding
        );
        let f9 = FieldSpec::new(3, 2).unwrap();
        assert_eq!(
            f4.embed(&f9, 1).unwrap_err(),
            FieldError::IncompatibleEmbedding
        );
        let alt8 = FieldSpec::with_modulus(2, 3, &[1, 0, 1, 1]).unwrap();
        let f64 = FieldSpec::new(2, 6).unwrap();
        assert_eq!(
            alt8.embed(&f64, 1).unwrap_err(),
            FieldError::NonCanonicalEmbedding
        );
    }

    #[test]
    fn with_modulus_validates() {
        // x^3 + x^2 + 1 is the other irreducible cubic over GF(2)
        assert!(FieldSpec::with_modulus(2, 3, &[1, 0, 1, 1]).is_ok());
        // x^3 + 1 is reducible
        assert!(matches!(
            FieldSpec::with_modulus(2, 3, &[1, 0, 0, 1]),
            Err(FieldError::BadModulus { .. })
        ));
    }

    proptest! {
        #[test]
        fn field_axioms(
            pk in prop_oneof![Just((2u32, 6u32)), Just((2, 3)), Just((3, 3)), Just((5, 2)), Just((13, 1))],
            seeds in proptest::collection::vec(0u32..u32::MAX, 3),
        ) {
            let f = FieldSpec::new(pk.0, pk.1).unwrap();
            let q = f.q();
            let a = (seeds[0] % q) as u16;
            let b = (seeds[1] % q) as u16;
            let c = (seeds[2] % q) as u16;
            prop_assert_eq!(f.add(a, b), f.add(b, a));
            prop_assert_eq!(f.mul(a, b), f.mul(b, a));
            prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
            prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
            prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
            prop_assert_eq!(f.add(a, f.neg(a)), 0);
            if a != 0 {
                prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            }
        }
    }
}
