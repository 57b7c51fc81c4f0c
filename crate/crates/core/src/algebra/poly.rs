//! Dense univariate polynomials over a [`FiniteField`].

use std::fmt;

use num_bigint::BigUint;
use rand::Rng;

use super::field::{FieldElement, FiniteField};
use crate::error::{Error, Result};

/// Dense polynomial, low degree first; the zero polynomial is empty.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly {
    coeffs: Vec<FieldElement>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(FieldElement::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<FieldElement> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&FieldElement> {
        self.coeffs.last()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Format with the given variable name.
    pub fn display_with<'a>(&'a self, var: &'a str) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, var }
    }
}

pub struct PolyDisplay<'a> {
    poly: &'a Poly,
    var: &'a str,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.poly.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str("+")?;
            }
            first = false;
            let compound = c.coeffs().len() > 1;
            let unit = c.coeffs() == [1];
            if i == 0 {
                write!(f, "{c}")?;
                continue;
            }
            if !unit {
                if compound {
                    write!(f, "({c})*")?;
                } else {
                    write!(f, "{c}*")?;
                }
            }
            if i == 1 {
                f.write_str(self.var)?;
            } else {
                write!(f, "{}^{i}", self.var)?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.display_with("T").fmt(f)
    }
}

/// The ring `K[x]` for a finite field `K`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyRing {
    field: FiniteField,
}

impl PolyRing {
    pub fn new(field: FiniteField) -> Self {
        PolyRing { field }
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn one(&self) -> Poly {
        Poly::new(vec![self.field.one()])
    }

    pub fn x(&self) -> Poly {
        Poly::new(vec![self.field.zero(), self.field.one()])
    }

    pub fn constant(&self, c: FieldElement) -> Poly {
        Poly::new(vec![c])
    }

    /// `c * x^n`
    pub fn monomial(&self, c: FieldElement, n: usize) -> Poly {
        let mut v = vec![self.field.zero(); n + 1];
        v[n] = c;
        Poly::new(v)
    }

    /// Polynomial from small integer coefficients (prime-field constants).
    pub fn from_ints(&self, coeffs: &[i64]) -> Poly {
        Poly::new(coeffs.iter().map(|&c| self.field.from_int(c)).collect())
    }

    pub fn add(&self, a: &Poly, b: &Poly) -> Poly {
        let n = a.coeffs.len().max(b.coeffs.len());
        Poly::new((0..n).map(|i| self.field.add(&a.coeff(i), &b.coeff(i))).collect())
    }

    pub fn sub(&self, a: &Poly, b: &Poly) -> Poly {
        let n = a.coeffs.len().max(b.coeffs.len());
        Poly::new((0..n).map(|i| self.field.sub(&a.coeff(i), &b.coeff(i))).collect())
    }

    pub fn neg(&self, a: &Poly) -> Poly {
        Poly::new(a.coeffs.iter().map(|c| self.field.neg(c)).collect())
    }

    pub fn scale(&self, c: &FieldElement, a: &Poly) -> Poly {
        Poly::new(a.coeffs.iter().map(|x| self.field.mul(c, x)).collect())
    }

    pub fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        if a.is_zero() || b.is_zero() {
            return Poly::zero();
        }
        let k = &self.field;
        let mut out = vec![k.zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                out[i + j] = k.add(&out[i + j], &k.mul(x, y));
            }
        }
        Poly::new(out)
    }

    pub fn pow(&self, a: &Poly, mut e: u64) -> Poly {
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

    /// Division with remainder; errors on division by zero.
    pub fn divrem(&self, a: &Poly, b: &Poly) -> Result<(Poly, Poly)> {
        let db = b
            .degree()
            .ok_or_else(|| Error::Domain("polynomial division by zero".into()))?;
        let k = &self.field;
        let inv = k.inv(b.leading().unwrap())?;
        let mut r = a.coeffs.clone();
        if r.len() <= db {
            return Ok((Poly::zero(), a.clone()));
        }
        let mut q = vec![k.zero(); r.len() - db];
        while r.len() > db {
            let shift = r.len() - 1 - db;
            let c = k.mul(r.last().unwrap(), &inv);
            if !c.is_zero() {
                for (i, bi) in b.coeffs.iter().enumerate() {
                    r[shift + i] = k.sub(&r[shift + i], &k.mul(&c, bi));
                }
            }
            q[shift] = c;
            r.pop();
            while r.last().is_some_and(FieldElement::is_zero) {
                r.pop();
            }
        }
        Ok((Poly::new(q), Poly::new(r)))
    }

    pub fn rem(&self, a: &Poly, b: &Poly) -> Result<Poly> {
        Ok(self.divrem(a, b)?.1)
    }

    /// Exact quotient; errors when `b` does not divide `a`.
    pub fn div_exact(&self, a: &Poly, b: &Poly) -> Result<Poly> {
        let (q, r) = self.divrem(a, b)?;
        if !r.is_zero() {
            return Err(Error::Domain("inexact polynomial division".into()));
        }
        Ok(q)
    }

    pub fn mulmod(&self, a: &Poly, b: &Poly, m: &Poly) -> Result<Poly> {
        self.rem(&self.mul(a, b), m)
    }

    pub fn pow_mod(&self, a: &Poly, e: &BigUint, m: &Poly) -> Result<Poly> {
        let base = self.rem(a, m)?;
        let mut acc = self.rem(&self.one(), m)?;
        for bit in (0..e.bits()).rev() {
            acc = self.mulmod(&acc, &acc, m)?;
            if e.bit(bit) {
                acc = self.mulmod(&acc, &base, m)?;
            }
        }
        Ok(acc)
    }

    pub fn pow_mod_u64(&self, a: &Poly, e: u64, m: &Poly) -> Result<Poly> {
        self.pow_mod(a, &BigUint::from(e), m)
    }

    /// `a^(|K|) mod m`, computed as `deg K` successive `p`-th powers.
    pub fn frobenius_mod(&self, a: &Poly, m: &Poly) -> Result<Poly> {
        let p = self.field.characteristic();
        let mut x = self.rem(a, m)?;
        for _ in 0..self.field.degree() {
            x = self.pow_mod_u64(&x, p, m)?;
        }
        Ok(x)
    }

    pub fn monic(&self, a: &Poly) -> Result<Poly> {
        match a.leading() {
            None => Ok(Poly::zero()),
            Some(l) => {
                let inv = self.field.inv(l)?;
                Ok(self.scale(&inv, a))
            }
        }
    }

    pub fn is_monic(&self, a: &Poly) -> bool {
        a.leading().is_some_and(|l| self.field.is_one(l))
    }

    /// Monic gcd (zero if both inputs are zero).
    pub fn gcd(&self, a: &Poly, b: &Poly) -> Poly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = self.rem(&a, &b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        self.monic(&a).expect("nonzero leading coefficient")
    }

    pub fn derivative(&self, a: &Poly) -> Poly {
        Poly::new(
            a.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| self.field.scale(i as u64, c))
                .collect(),
        )
    }

    pub fn eval(&self, a: &Poly, x: &FieldElement) -> FieldElement {
        let k = &self.field;
        a.coeffs.iter().rev().fold(k.zero(), |acc, c| k.add(&k.mul(&acc, x), c))
    }

    /// Resultant over the field via the Euclidean recursion.
    pub fn resultant(&self, a: &Poly, b: &Poly) -> Result<FieldElement> {
        let k = &self.field;
        if a.is_zero() && b.is_zero() {
            return Err(Error::Domain("resultant of two zero polynomials".into()));
        }
        if a.is_zero() || b.is_zero() {
            return Ok(k.zero());
        }
        let mut acc = k.one();
        let (mut a, mut b) = (a.clone(), b.clone());
        loop {
            let da = a.degree().unwrap() as u64;
            let db = b.degree().unwrap() as u64;
            if db == 0 {
                return Ok(k.mul(&acc, &k.pow_u64(b.leading().unwrap(), da)));
            }
            let r = self.rem(&a, &b)?;
            if r.is_zero() {
                return Ok(k.zero());
            }
            let dr = r.degree().unwrap() as u64;
            if (da * db) % 2 == 1 {
                acc = k.neg(&acc);
            }
            acc = k.mul(&acc, &k.pow_u64(b.leading().unwrap(), da - dr));
            a = b;
            b = r;
        }
    }

    /// Random polynomial of degree below `n`.
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R, n: usize) -> Poly {
        Poly::new((0..n).map(|_| self.field.random(rng)).collect())
    }

    /// Random monic polynomial of exact degree `d`.
    pub fn random_monic<R: Rng + ?Sized>(&self, rng: &mut R, d: usize) -> Poly {
        let mut v: Vec<FieldElement> = (0..d).map(|_| self.field.random(rng)).collect();
        v.push(self.field.one());
        Poly::new(v)
    }

    /// Apply a coefficient map (for example a field embedding).
    pub fn map_coeffs(a: &Poly, f: impl Fn(&FieldElement) -> FieldElement) -> Poly {
        Poly::new(a.coeffs.iter().map(f).collect())
    }

    /// `p`-th root of a polynomial whose only nonzero terms have exponents
    /// divisible by `p`.
    pub(crate) fn pth_root(&self, a: &Poly) -> Poly {
        let k = &self.field;
        let p = k.characteristic() as usize;
        let s = k.degree();
        // c^(p^(s-1)) is the p-th root of c in F_{p^s}
        let root = |c: &FieldElement| k.frobenius_pow(c, s - 1);
        Poly::new(a.coeffs.iter().step_by(p).map(root).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn divrem_reconstructs() {
        let ring = PolyRing::new(FiniteField::with_order(9).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let a = ring.random(&mut rng, 9);
            let b = ring.random(&mut rng, 4);
            if b.is_zero() {
                continue;
            }
            let (q, r) = ring.divrem(&a, &b).unwrap();
            assert_eq!(ring.add(&ring.mul(&q, &b), &r), a);
            assert!(r.degree() < b.degree());
        }
    }

    #[test]
    fn resultant_zero_iff_common_factor() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for q in [2u64, 3, 4, 5] {
            let ring = PolyRing::new(FiniteField::with_order(q).unwrap());
            for _ in 0..50 {
                let a = ring.random(&mut rng, 5);
                let b = ring.random(&mut rng, 4);
                if a.is_zero() || b.is_zero() {
                    continue;
                }
                let res = ring.resultant(&a, &b).unwrap();
                let g = ring.gcd(&a, &b);
                assert_eq!(res.is_zero(), g.degree().unwrap() > 0, "{a} {b}");
            }
        }
    }

    #[test]
    fn display_formats() {
        let k = FiniteField::with_order(4).unwrap();
        let ring = PolyRing::new(k.clone());
        let u = k.generator();
        let f = Poly::new(vec![u.clone(), k.zero(), k.add(&u, &k.one())]);
        assert_eq!(f.to_string(), "(u+1)*T^2+u");
        let g = PolyRing::new(FiniteField::with_order(2).unwrap()).from_ints(&[1, 0, 0, 1, 0, 0, 1]);
        assert_eq!(g.to_string(), "T^6+T^3+1");
        assert_eq!(ring.x().display_with("x").to_string(), "x");
    }

    #[test]
    fn pth_root_inverts_frobenius() {
        let k = FiniteField::with_order(9).unwrap();
        let ring = PolyRing::new(k.clone());
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let f = ring.random(&mut rng, 4);
        let cube = ring.pow(&f, 3);
        assert_eq!(ring.pth_root(&cube), f);
    }
}
