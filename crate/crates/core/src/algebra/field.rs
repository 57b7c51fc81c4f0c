//! Finite fields `F_{p^s} = F_p[u]/(m(u))` with a deterministic modulus.
//!
//! Every field is stored in absolute form over its prime field. The modulus
//! for `(p, s)` is the lexicographically smallest monic irreducible of degree
//! `s`, coefficient vectors compared from the constant term upward.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use rand::Rng;

use super::int::{is_prime, prime_divisors};
use crate::error::{Error, Result};

/// Polynomials over the prime field `F_p`, dense, low degree first.
pub(crate) mod fp {
    pub fn trim(v: &mut Vec<u64>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
        ((a as u128 * b as u128) % p as u128) as u64
    }

    pub fn inv_mod(a: u64, p: u64) -> u64 {
        pow_mod(a, p - 2, p)
    }

    pub fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
        let mut acc = 1 % p;
        a %= p;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul_mod(acc, a, p);
            }
            a = mul_mod(a, a, p);
            e >>= 1;
        }
        acc
    }

    pub fn add(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let n = a.len().max(b.len());
        let mut out: Vec<u64> = (0..n)
            .map(|i| {
                let s = a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0);
                if s >= p {
                    s - p
                } else {
                    s
                }
            })
            .collect();
        trim(&mut out);
        out
    }

    pub fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let n = a.len().max(b.len());
        let mut out: Vec<u64> = (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                if x >= y {
                    x - y
                } else {
                    x + p - y
                }
            })
            .collect();
        trim(&mut out);
        out
    }

    pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        // accumulate in u128 and reduce once per output slot
        let mut acc = vec![0u128; a.len() + b.len() - 1];
        let bound = u128::MAX / 2;
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                let slot = &mut acc[i + j];
                *slot += x as u128 * y as u128;
                if *slot > bound {
                    *slot %= p as u128;
                }
            }
        }
        let mut out: Vec<u64> = acc.into_iter().map(|c| (c % p as u128) as u64).collect();
        trim(&mut out);
        out
    }

    /// Remainder modulo a monic polynomial.
    pub fn rem_monic(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        let dm = m.len() - 1;
        let mut r = a.to_vec();
        trim(&mut r);
        while r.len() > dm {
            let lead = *r.last().unwrap();
            let shift = r.len() - 1 - dm;
            if lead != 0 {
                for (k, &c) in m.iter().enumerate() {
                    let t = mul_mod(lead, c, p);
                    let x = r[shift + k];
                    r[shift + k] = if x >= t { x - t } else { x + p - t };
                }
            }
            r.pop();
            trim(&mut r);
        }
        r
    }

    /// Division with remainder by a nonzero polynomial.
    pub fn divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
        let db = b.len() - 1;
        let inv = inv_mod(*b.last().unwrap(), p);
        let mut r = a.to_vec();
        trim(&mut r);
        if r.len() <= db {
            return (Vec::new(), r);
        }
        let mut q = vec![0u64; r.len() - db];
        while r.len() > db {
            let shift = r.len() - 1 - db;
            let c = mul_mod(*r.last().unwrap(), inv, p);
            q[shift] = c;
            for (k, &bk) in b.iter().enumerate() {
                let t = mul_mod(c, bk, p);
                let x = r[shift + k];
                r[shift + k] = if x >= t { x - t } else { x + p - t };
            }
            r.pop();
            trim(&mut r);
        }
        trim(&mut q);
        (q, r)
    }

    pub fn monic(a: &[u64], p: u64) -> Vec<u64> {
        match a.last() {
            None => Vec::new(),
            Some(&l) => {
                let inv = inv_mod(l, p);
                a.iter().map(|&c| mul_mod(c, inv, p)).collect()
            }
        }
    }

    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut a = a.to_vec();
        let mut b = b.to_vec();
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            let (_, r) = divrem(&a, &b, p);
            a = b;
            b = r;
        }
        monic(&a, p)
    }

    /// Returns `(g, s)` with `g = gcd(a, m)` monic and `s*a = g mod m`.
    pub fn ext_gcd(a: &[u64], m: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
        let (mut r0, mut r1) = (m.to_vec(), a.to_vec());
        trim(&mut r1);
        let (mut s0, mut s1): (Vec<u64>, Vec<u64>) = (Vec::new(), vec![1]);
        while !r1.is_empty() {
            let (q, r) = divrem(&r0, &r1, p);
            let s = sub(&s0, &mul(&q, &s1, p), p);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        let lead = *r0.last().unwrap();
        let inv = inv_mod(lead, p);
        let scale = |v: &[u64]| -> Vec<u64> { v.iter().map(|&c| mul_mod(c, inv, p)).collect() };
        (scale(&r0), scale(&s0))
    }

    pub fn pow_mod_poly(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
        let mut acc = vec![1u64];
        let mut b = rem_monic(base, m, p);
        while e > 0 {
            if e & 1 == 1 {
                acc = rem_monic(&mul(&acc, &b, p), m, p);
            }
            e >>= 1;
            if e > 0 {
                b = rem_monic(&mul(&b, &b, p), m, p);
            }
        }
        acc
    }

    /// Ben-Or irreducibility test for a monic polynomial over `F_p`.
    pub fn is_irreducible(f: &[u64], p: u64) -> bool {
        let d = f.len() - 1;
        if d == 0 {
            return false;
        }
        if d == 1 {
            return true;
        }
        if f[0] == 0 {
            return false;
        }
        let x = vec![0u64, 1];
        let mut h = x.clone();
        for _ in 0..d / 2 {
            h = pow_mod_poly(&h, p, f, p);
            let g = gcd(f, &sub(&h, &x, p), p);
            if g.len() > 1 {
                return false;
            }
        }
        true
    }
}

#[derive(Debug, PartialEq, Eq, Hash)]
struct FieldData {
    p: u64,
    degree: usize,
    /// Monic, length `degree + 1`.
    modulus: Vec<u64>,
}

/// A finite field `F_{p^s}`. Cloning is cheap.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteField {
    data: Arc<FieldData>,
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.data.p, self.data.degree)
    }
}

/// Element of a [`FiniteField`]: coefficients over `F_p` of a polynomial in
/// the generator `u`, low degree first, no trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement(Vec<u64>);

impl FieldElement {
    pub fn coeffs(&self) -> &[u64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Coefficient vector padded to `len`; the lexicographic order used for
    /// canonical choices compares these padded vectors.
    pub fn padded(&self, len: usize) -> Vec<u64> {
        let mut v = self.0.clone();
        v.resize(len.max(v.len()), 0);
        v
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0.len() {
            0 => f.write_str("0"),
            1 => write!(f, "{}", self.0[0]),
            _ => {
                let mut first = true;
                for (i, &c) in self.0.iter().enumerate().rev() {
                    if c == 0 {
                        continue;
                    }
                    if !first {
                        f.write_str("+")?;
                    }
                    first = false;
                    match (i, c) {
                        (0, _) => write!(f, "{c}")?,
                        (1, 1) => f.write_str("u")?,
                        (1, _) => write!(f, "{c}*u")?,
                        (_, 1) => write!(f, "u^{i}")?,
                        _ => write!(f, "{c}*u^{i}")?,
                    }
                }
                Ok(())
            }
        }
    }
}

/// Smallest monic irreducible of degree `s` over `F_p`, coefficients compared
/// from the constant term upward.
fn canonical_modulus(p: u64, s: usize) -> Vec<u64> {
    if s == 1 {
        return vec![0, 1];
    }
    // digits[0] is the most significant position (the constant term)
    let mut digits = vec![0u64; s];
    digits[0] = 1;
    loop {
        let mut f = digits.clone();
        f.push(1);
        if fp::is_irreducible(&f, p) {
            return f;
        }
        let mut i = s - 1;
        loop {
            digits[i] += 1;
            if digits[i] < p {
                break;
            }
            digits[i] = 0;
            assert!(i > 0, "no irreducible polynomial found");
            i -= 1;
        }
    }
}

impl FiniteField {
    /// The field with `p^s` elements and its canonical modulus.
    pub fn new(p: u64, s: usize) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Domain(format!("characteristic {p} is not prime")));
        }
        if p > u32::MAX as u64 {
            return Err(Error::Domain(format!("characteristic {p} too large")));
        }
        if s == 0 {
            return Err(Error::Domain("extension degree must be at least 1".into()));
        }
        Ok(Self::from_parts(p, s, canonical_modulus(p, s)))
    }

    /// `F_q` for a prime power `q`.
    pub fn with_order(q: u64) -> Result<Self> {
        let (p, s) = super::int::prime_power(q).ok_or_else(|| Error::Domain(format!("{q} is not a prime power")))?;
        Self::new(p, s as usize)
    }

    /// A field from an explicit monic irreducible modulus over `F_p`.
    pub fn with_modulus(p: u64, modulus: Vec<u64>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Domain(format!("characteristic {p} is not prime")));
        }
        let mut m: Vec<u64> = modulus.into_iter().map(|c| c % p).collect();
        fp::trim(&mut m);
        if m.len() < 2 || *m.last().unwrap() != 1 {
            return Err(Error::Domain("modulus must be monic of degree >= 1".into()));
        }
        if !fp::is_irreducible(&m, p) {
            return Err(Error::Domain("modulus is reducible".into()));
        }
        Ok(Self::from_parts(p, m.len() - 1, m))
    }

    fn from_parts(p: u64, degree: usize, modulus: Vec<u64>) -> Self {
        FiniteField {
            data: Arc::new(FieldData { p, degree, modulus }),
        }
    }

    pub fn characteristic(&self) -> u64 {
        self.data.p
    }

    /// Degree over the prime field.
    pub fn degree(&self) -> usize {
        self.data.degree
    }

    pub fn modulus(&self) -> &[u64] {
        &self.data.modulus
    }

    pub fn order(&self) -> BigUint {
        num_traits::pow(BigUint::from(self.data.p), self.data.degree)
    }

    /// Field order when it fits in a `u64`.
    pub fn order_u64(&self) -> Option<u64> {
        self.order().to_u64()
    }

    /// Whether `modulus` passes the irreducibility test (always true for
    /// constructed fields; exposed for verification).
    pub fn modulus_is_irreducible(&self) -> bool {
        fp::is_irreducible(&self.data.modulus, self.data.p)
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement(Vec::new())
    }

    pub fn one(&self) -> FieldElement {
        FieldElement(vec![1])
    }

    pub fn from_int(&self, c: i64) -> FieldElement {
        let p = self.data.p as i64;
        let r = c.rem_euclid(p) as u64;
        self.element(vec![r])
    }

    pub fn from_big(&self, c: &num_bigint::BigInt) -> FieldElement {
        let p = num_bigint::BigInt::from(self.data.p);
        let r = ((c % &p) + &p) % &p;
        self.element(vec![r.to_u64().unwrap()])
    }

    /// The generator `u` (zero in a prime field, whose modulus is `x`).
    pub fn generator(&self) -> FieldElement {
        self.element(vec![0, 1])
    }

    /// Element from arbitrary prime-field coefficients, reduced.
    pub fn element(&self, coeffs: Vec<u64>) -> FieldElement {
        let p = self.data.p;
        let mut v: Vec<u64> = coeffs.into_iter().map(|c| c % p).collect();
        fp::trim(&mut v);
        if v.len() > self.data.degree {
            v = fp::rem_monic(&v, &self.data.modulus, p);
        }
        FieldElement(v)
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FieldElement(fp::add(&a.0, &b.0, self.data.p))
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FieldElement(fp::sub(&a.0, &b.0, self.data.p))
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        FieldElement(fp::sub(&[], &a.0, self.data.p))
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let prod = fp::mul(&a.0, &b.0, self.data.p);
        if prod.len() <= self.data.degree {
            return FieldElement(prod);
        }
        FieldElement(fp::rem_monic(&prod, &self.data.modulus, self.data.p))
    }

    pub fn scale(&self, c: u64, a: &FieldElement) -> FieldElement {
        let p = self.data.p;
        let mut v: Vec<u64> = a.0.iter().map(|&x| fp::mul_mod(x, c % p, p)).collect();
        fp::trim(&mut v);
        FieldElement(v)
    }

    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::Domain("inverse of zero".into()));
        }
        let (g, s) = fp::ext_gcd(&a.0, &self.data.modulus, self.data.p);
        debug_assert_eq!(g, vec![1]);
        Ok(self.element(s))
    }

    pub fn div(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow_u64(&self, a: &FieldElement, mut e: u64) -> FieldElement {
        let mut acc = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    pub fn pow(&self, a: &FieldElement, e: &BigUint) -> FieldElement {
        let mut acc = self.one();
        for bit in (0..e.bits()).rev() {
            acc = self.mul(&acc, &acc);
            if e.bit(bit) {
                acc = self.mul(&acc, a);
            }
        }
        acc
    }

    /// `a^(p^k)`.
    pub fn frobenius_pow(&self, a: &FieldElement, k: usize) -> FieldElement {
        let mut x = a.clone();
        for _ in 0..k {
            x = self.pow_u64(&x, self.data.p);
        }
        x
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        let p = self.data.p;
        self.element((0..self.data.degree).map(|_| rng.random_range(0..p)).collect())
    }

    /// Element with base-`p` digit encoding `index` (constant term least significant).
    pub fn from_index(&self, mut index: u64) -> FieldElement {
        let p = self.data.p;
        let mut v = Vec::with_capacity(self.data.degree);
        for _ in 0..self.data.degree {
            v.push(index % p);
            index /= p;
        }
        self.element(v)
    }

    pub fn index_of(&self, a: &FieldElement) -> u64 {
        a.0.iter().rev().fold(0u64, |acc, &c| acc * self.data.p + c)
    }

    /// All elements in index order. Only for small fields.
    pub fn elements(&self) -> Result<impl Iterator<Item = FieldElement> + '_> {
        let n = self
            .order_u64()
            .filter(|&n| n <= 1 << 24)
            .ok_or_else(|| Error::Size(format!("{self:?} too large to enumerate")))?;
        Ok((0..n).map(move |i| self.from_index(i)))
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, a: &FieldElement) -> Result<BigUint> {
        if a.is_zero() {
            return Err(Error::Domain("order of zero".into()));
        }
        let n = self.order() - 1u32;
        let mut ord = n.clone();
        let small = n.to_u64();
        let factors: Vec<BigUint> = match small {
            Some(m) => prime_divisors(m).into_iter().map(BigUint::from).collect(),
            None => return Err(Error::Size("group order too large to factor".into())),
        };
        for r in factors {
            while (&ord % &r).is_zero() {
                let cand = &ord / &r;
                if self.pow(a, &cand) == self.one() {
                    ord = cand;
                } else {
                    break;
                }
            }
        }
        Ok(ord)
    }

    pub fn is_one(&self, a: &FieldElement) -> bool {
        a.0.len() == 1 && a.0[0] == 1
    }
}
