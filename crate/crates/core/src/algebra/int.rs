//! Exact integer arithmetic: p-adic valuations, integer polynomials, the
//! subresultant resultant over ℤ and fraction-free determinants.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// `p`-adic valuation of an integer; zero has infinite valuation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(u64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<u64> {
        match self {
            Valuation::Finite(k) => Some(k),
            Valuation::Infinite => None,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(k) => write!(f, "{k}"),
            Valuation::Infinite => f.write_str("inf"),
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Distinct prime divisors in increasing order.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
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

/// If `q` is a prime power `p^s` return `(p, s)`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    let divs = prime_divisors(q);
    if divs.len() != 1 {
        return None;
    }
    let p = divs[0];
    let mut s = 0;
    let mut m = q;
    while m.is_multiple_of(p) {
        m /= p;
        s += 1;
    }
    Some((p, s))
}

/// Largest `k` with `p^k | n`.
pub fn valuation(n: &BigInt, p: u64) -> Result<Valuation> {
    if !is_prime(p) {
        return Err(Error::Domain(format!("{p} is not prime")));
    }
    if n.is_zero() {
        return Ok(Valuation::Infinite);
    }
    let p = BigInt::from(p);
    let mut k = 0;
    let mut m = n.abs();
    loop {
        let (quo, rem) = m.div_rem(&p);
        if !rem.is_zero() {
            return Ok(Valuation::Finite(k));
        }
        m = quo;
        k += 1;
    }
}

pub fn valuation_u64(n: u64, p: u64) -> u64 {
    debug_assert!(p > 1);
    if n == 0 {
        return u64::MAX;
    }
    let (mut n, mut k) = (n, 0);
    while n % p == 0 {
        n /= p;
        k += 1;
    }
    k
}

/// Dense integer polynomial, low degree first, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly {
            coeffs: vec![BigInt::one()],
        }
    }

    /// `x^n`
    pub fn monomial(c: BigInt, n: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[n] = c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Gcd of the coefficients, nonnegative.
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// Exact division of every coefficient by `d`.
    fn div_exact(&self, d: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c / d).collect())
    }

    /// Pseudo-remainder: `lc(b)^(deg a - deg b + 1) * a mod b`.
    pub fn pseudo_rem(&self, b: &Self) -> Self {
        let db = b.degree().expect("pseudo_rem by zero");
        let lb = b.leading();
        let mut r = self.clone();
        let Some(da) = r.degree() else {
            return r;
        };
        if da < db {
            return r;
        }
        let mut steps = da - db + 1;
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let lr = r.leading();
            let shift = IntPoly::monomial(lr, dr - db);
            r = r.scale(&lb).sub(&shift.mul(b));
            steps -= 1;
        }
        if steps > 0 {
            r = r.scale(&num_traits::pow(lb, steps));
        }
        r
    }

    pub fn shift_down(&self) -> Self {
        if self.coeffs.is_empty() {
            return Self::zero();
        }
        Self::new(self.coeffs[1..].to_vec())
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_int_poly(f, self, "T")
    }
}

pub(crate) fn write_int_poly(f: &mut impl fmt::Write, poly: &IntPoly, var: &str) -> fmt::Result {
    if poly.is_zero() {
        return f.write_str("0");
    }
    let mut first = true;
    for (i, c) in poly.coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        if first {
            if neg {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if neg { "-" } else { "+" })?;
        }
        first = false;
        let a = c.abs();
        match i {
            0 => write!(f, "{a}")?,
            _ => {
                if !a.is_one() {
                    write!(f, "{a}*")?;
                }
                if i == 1 {
                    f.write_str(var)?;
                } else {
                    write!(f, "{var}^{i}")?;
                }
            }
        }
    }
    Ok(())
}

/// Resultant of two integer polynomials by the subresultant algorithm.
///
/// `Res(a, b) = lc(a)^deg b * prod b(alpha)` over the roots of `a`.
pub fn resultant(a: &IntPoly, b: &IntPoly) -> Result<BigInt> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::Domain("resultant of two zero polynomials".into()));
    }
    if a.is_zero() || b.is_zero() {
        return Ok(BigInt::zero());
    }
    let (mut a, mut b) = (a.clone(), b.clone());
    let mut sign = BigInt::one();
    let (da, db) = (a.degree().unwrap(), b.degree().unwrap());
    if da < db {
        std::mem::swap(&mut a, &mut b);
        if da % 2 == 1 && db % 2 == 1 {
            sign = -sign;
        }
    }
    let ca = a.content();
    let cb = b.content();
    a = a.div_exact(&ca);
    b = b.div_exact(&cb);
    let t = num_traits::pow(ca, b.degree().unwrap()) * num_traits::pow(cb, a.degree().unwrap());
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    while b.degree().unwrap() > 0 {
        let (da, db) = (a.degree().unwrap(), b.degree().unwrap());
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            sign = -sign;
        }
        let r = a.pseudo_rem(&b);
        if r.is_zero() {
            return Ok(BigInt::zero());
        }
        a = b;
        let denom = &g * num_traits::pow(h.clone(), delta);
        b = r.div_exact(&denom);
        g = a.leading();
        // h <- g^delta / h^(delta-1)
        h = if delta == 0 {
            h
        } else {
            num_traits::pow(g.clone(), delta) / num_traits::pow(h.clone(), delta - 1)
        };
    }
    let da = a.degree().unwrap();
    let lb = b.leading();
    let h_final = if da == 0 {
        BigInt::one()
    } else {
        num_traits::pow(lb, da) / num_traits::pow(h, da - 1)
    };
    Ok(sign * t * h_final)
}

/// Square integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    n: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(n: usize) -> Self {
        IntMatrix {
            n,
            data: vec![BigInt::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.n + j] = v;
    }

    /// Companion matrix of a monic polynomial `c_0 + ... + c_{n-1} x^{n-1} + x^n`.
    pub fn companion(monic: &IntPoly) -> Result<Self> {
        let n = monic
            .degree()
            .ok_or_else(|| Error::Domain("companion of zero polynomial".into()))?;
        if !monic.leading().is_one() {
            return Err(Error::Domain("companion matrix needs a monic polynomial".into()));
        }
        let mut m = Self::zeros(n);
        for i in 1..n {
            m.set(i, i - 1, BigInt::one());
        }
        for i in 0..n {
            m.set(i, n - 1, -monic.coeff(i));
        }
        Ok(m)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let prod = a * other.get(k, j);
                    out.data[i * n + j] += prod;
                }
            }
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        IntMatrix {
            n: self.n,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    /// `self^e` by repeated squaring.
    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity(self.n);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Determinant by Bareiss fraction-free elimination.
    pub fn det(&self) -> BigInt {
        let n = self.n;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.data.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[k * n + k].is_zero() {
                let Some(swap) = (k + 1..n).find(|&i| !m[i * n + k].is_zero()) else {
                    return BigInt::zero();
                };
                for j in 0..n {
                    m.swap(k * n + j, swap * n + j);
                }
                sign = -sign;
            }
            let pivot = m[k * n + k].clone();
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &pivot * &m[i * n + j] - &m[i * n + k] * &m[k * n + j];
                    m[i * n + j] = v / &prev;
                }
                m[i * n + k] = BigInt::zero();
            }
            prev = pivot;
        }
        sign * m[n * n - 1].clone()
    }
}

/// Sylvester matrix of `a` and `b` (dimension `deg a + deg b`).
pub fn sylvester(a: &IntPoly, b: &IntPoly) -> IntMatrix {
    let (m, n) = (a.degree().unwrap_or(0), b.degree().unwrap_or(0));
    let size = m + n;
    let mut s = IntMatrix::zeros(size);
    for row in 0..n {
        for (k, c) in a.coeffs().iter().rev().enumerate() {
            s.set(row, row + k, c.clone());
        }
    }
    for row in 0..m {
        for (k, c) in b.coeffs().iter().rev().enumerate() {
            s.set(n + row, row + k, c.clone());
        }
    }
    s
}
