//! The Iwasawa algebra `Λ = Z_p[[T]]`: truncated power series, `μ`/`λ` of an
//! element, elementary torsion modules, the growth of `#(E/ω_n E)`, and
//! fitting `e_n = λn + μp^n + ν` to observed exponents.
//!
//! The topological generator `σ` of `Z_p` is identified with `1 + T`, so
//! `ω_n = (1+T)^{p^n} − 1` and `ν_n = ω_n / T`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::algebra::int::{is_prime, resultant, valuation, IntPoly, Valuation};
use crate::error::{Error, Result};

/// Working precision: `digits` `p`-adic digits and `T`-degree below `degree`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Precision {
    pub digits: u32,
    pub degree: usize,
}

impl Precision {
    pub const DEFAULT_DIGITS: u32 = 32;
    pub const DEFAULT_DEGREE: usize = 64;
    pub const MAX_ESCALATIONS: u32 = 3;

    /// Initial precision for an element of `T`-degree `needed`.
    pub fn initial(needed: usize) -> Self {
        Precision {
            digits: Self::DEFAULT_DIGITS,
            degree: needed.max(Self::DEFAULT_DEGREE),
        }
    }

    pub fn escalate(self) -> Self {
        Precision {
            digits: self.digits * 2,
            degree: self.degree * 2,
        }
    }
}

/// An element of `Z_p[[T]]` known modulo `(p^digits, T^degree)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IwasawaElement {
    p: u64,
    precision: Precision,
    coeffs: Vec<BigInt>,
}

impl IwasawaElement {
    pub fn from_poly(p: u64, f: &IntPoly, precision: Precision) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Domain(format!("{p} is not prime")));
        }
        if precision.digits == 0 || precision.degree == 0 {
            return Err(Error::Domain("precision must be positive".into()));
        }
        let mut e = IwasawaElement {
            p,
            precision,
            coeffs: f.coeffs().iter().take(precision.degree).cloned().collect(),
        };
        e.normalize();
        Ok(e)
    }

    fn modulus(&self) -> BigInt {
        num_traits::pow(BigInt::from(self.p), self.precision.digits as usize)
    }

    fn normalize(&mut self) {
        let m = self.modulus();
        for c in &mut self.coeffs {
            *c = c.mod_floor(&m);
        }
        self.coeffs.truncate(self.precision.degree);
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> Precision {
        self.precision
    }

    /// Coefficients as residues in `[0, p^digits)`.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    fn compatible(&self, other: &Self) -> Result<Precision> {
        if self.p != other.p {
            return Err(Error::Domain(format!("elements over Z_{} and Z_{}", self.p, other.p)));
        }
        Ok(Precision {
            digits: self.precision.digits.min(other.precision.digits),
            degree: self.precision.degree.min(other.precision.degree),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let precision = self.compatible(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = BigInt::zero();
        let coeffs = (0..n)
            .map(|i| self.coeffs.get(i).unwrap_or(&zero) + other.coeffs.get(i).unwrap_or(&zero))
            .collect();
        let mut e = IwasawaElement {
            p: self.p,
            precision,
            coeffs,
        };
        e.normalize();
        Ok(e)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let precision = self.compatible(other)?;
        let n = (self.coeffs.len() + other.coeffs.len())
            .saturating_sub(1)
            .min(precision.degree);
        let mut coeffs = vec![BigInt::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j < n {
                    coeffs[i + j] += a * b;
                }
            }
        }
        let mut e = IwasawaElement {
            p: self.p,
            precision,
            coeffs,
        };
        e.normalize();
        Ok(e)
    }
}

/// `(μ, λ)`: the least coefficient valuation and the least index attaining it.
pub fn mu_lambda(f: &IwasawaElement) -> Result<(u64, usize)> {
    let mut best: Option<(u64, usize)> = None;
    for (i, c) in f.coeffs.iter().enumerate() {
        if let Valuation::Finite(v) = valuation(c, f.p)? {
            if best.is_none_or(|(m, _)| v < m) {
                best = Some((v, i));
            }
        }
    }
    best.ok_or_else(|| {
        Error::Precision(format!(
            "all coefficients vanish modulo p^{} below degree {}",
            f.precision.digits, f.precision.degree
        ))
    })
}

/// `μ`/`λ` of an element produced at a requested precision, escalating the
/// precision whenever the answer is indeterminate.
pub fn mu_lambda_escalating(
    needed_degree: usize,
    make: impl Fn(Precision) -> Result<IwasawaElement>,
) -> Result<(u64, usize, Precision)> {
    let mut precision = Precision::initial(needed_degree);
    for attempt in 0..=Precision::MAX_ESCALATIONS {
        match mu_lambda(&make(precision)?) {
            Ok((mu, lambda)) => return Ok((mu, lambda, precision)),
            Err(Error::Precision(msg)) if attempt == Precision::MAX_ESCALATIONS => {
                return Err(Error::Precision(format!(
                    "{msg} after {} escalations",
                    Precision::MAX_ESCALATIONS
                )))
            }
            Err(Error::Precision(_)) => precision = precision.escalate(),
            Err(e) => return Err(e),
        }
    }
    unreachable!()
}

/// `(μ, λ)` of an exact integer polynomial.
pub fn mu_lambda_of_poly(p: u64, f: &IntPoly) -> Result<(u64, usize, Precision)> {
    let needed = f.degree().map_or(1, |d| d + 1);
    mu_lambda_escalating(needed, |prec| IwasawaElement::from_poly(p, f, prec))
}

/// `ω_n = (1+T)^{p^n} − 1`, exactly.
pub fn omega(p: u64, n: u32) -> Result<IntPoly> {
    let m = p
        .checked_pow(n)
        .and_then(|m| usize::try_from(m).ok())
        .filter(|&m| m <= 1 << 14)
        .ok_or_else(|| Error::Size(format!("p^n = {p}^{n} too large")))?;
    // binomial coefficients C(m, k)
    let mut coeffs = Vec::with_capacity(m + 1);
    let mut c = BigInt::one();
    coeffs.push(BigInt::zero());
    for k in 1..=m {
        c = c * BigInt::from(m - k + 1) / BigInt::from(k);
        coeffs.push(c.clone());
    }
    Ok(IntPoly::new(coeffs))
}

/// `ν_n = ω_n / T = 1 + σ + … + σ^{p^n − 1}`.
pub fn nu_n(p: u64, n: u32) -> Result<IntPoly> {
    Ok(omega(p, n)?.shift_down())
}

/// `⊕ Λ/(p^{μ_i}) ⊕ ⊕ Λ/(f_j)` with distinguished `f_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementaryModule {
    p: u64,
    mu_parts: Vec<u32>,
    lambda_parts: Vec<IntPoly>,
}

/// Monic of positive degree with all lower coefficients divisible by `p`.
pub fn is_distinguished(p: u64, f: &IntPoly) -> bool {
    let Some(d) = f.degree() else {
        return false;
    };
    let pb = BigInt::from(p);
    d >= 1 && f.leading().is_one() && f.coeffs()[..d].iter().all(|c| (c % &pb).is_zero())
}

impl ElementaryModule {
    pub fn new(p: u64, mu_parts: Vec<u32>, lambda_parts: Vec<IntPoly>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Domain(format!("{p} is not prime")));
        }
        if let Some(m) = mu_parts.iter().find(|&&m| m == 0) {
            return Err(Error::Domain(format!("μ-part {m} must be at least 1")));
        }
        if let Some(f) = lambda_parts.iter().find(|f| !is_distinguished(p, f)) {
            return Err(Error::Domain(format!("`{f}` is not distinguished at p = {p}")));
        }
        Ok(ElementaryModule {
            p,
            mu_parts,
            lambda_parts,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn mu_parts(&self) -> &[u32] {
        &self.mu_parts
    }

    pub fn lambda_parts(&self) -> &[IntPoly] {
        &self.lambda_parts
    }

    pub fn mu(&self) -> u64 {
        self.mu_parts.iter().map(|&m| m as u64).sum()
    }

    pub fn lambda(&self) -> usize {
        self.lambda_parts.iter().map(|f| f.degree().unwrap()).sum()
    }
}

/// `e_n = v_p #(E/ω_n E) = Σ μ_i p^n + Σ v_p Res(f_j, ω_n)`.
pub fn quotient_exponent(e: &ElementaryModule, n: u32) -> Result<u64> {
    let w = omega(e.p, n)?;
    let pn = e.p.pow(n);
    let mut total = e.mu() * pn;
    for f in &e.lambda_parts {
        let r = resultant(f, &w)?;
        match valuation(&r, e.p)? {
            Valuation::Finite(v) => total += v,
            Valuation::Infinite => return Err(Error::InfiniteQuotient(format!("`{f}` shares a zero with ω_{n}"))),
        }
    }
    Ok(total)
}

/// `e_0, …, e_{levels−1}` of an elementary module.
pub fn growth(e: &ElementaryModule, levels: u32) -> Result<Vec<u64>> {
    (0..levels).map(|n| quotient_exponent(e, n)).collect()
}

/// `e_n = λn + μp^n + ν` for all `n ≥ n0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantFit {
    pub lambda: u64,
    pub mu: u64,
    pub nu: i64,
    pub n0: usize,
    /// Whether the formula reproduces `e_n`, per level.
    pub residuals: Vec<bool>,
}

/// Solve for `(λ, μ, ν)` on the last three entries and find the onset `n0`.
pub fn fit_invariants(e: &[i64], p: u64) -> Result<InvariantFit> {
    if e.len() < 4 {
        return Err(Error::Precondition(format!(
            "need at least 4 levels to fit, got {}",
            e.len()
        )));
    }
    if !is_prime(p) {
        return Err(Error::Domain(format!("{p} is not prime")));
    }
    let a = e.len() - 3;
    let pb = BigInt::from(p);
    let pa = num_traits::pow(pb.clone(), a);
    let big = |i: usize| BigInt::from(e[i]);
    let d1 = big(a + 1) - big(a);
    let d2 = big(a + 2) - big(a + 1);
    let step = &pa * (&pb - 1u32);
    let denom = &step * (&pb - 1u32);
    let (mu, rem) = (&d2 - &d1).div_rem(&denom);
    let nonconforming = |why: String| Err(Error::NonConforming(format!("{e:?} at p = {p}: {why}")));
    if !rem.is_zero() {
        return nonconforming(format!("μ = {}/{} is not an integer", &d2 - &d1, denom));
    }
    if mu.is_negative() {
        return nonconforming(format!("μ = {mu} < 0"));
    }
    let lambda = &d1 - &mu * &step;
    if lambda.is_negative() {
        return nonconforming(format!("λ = {lambda} < 0"));
    }
    let nu = big(a) - &lambda * BigInt::from(a) - &mu * &pa;
    let predict = |n: usize| &lambda * BigInt::from(n) + &mu * num_traits::pow(pb.clone(), n) + &nu;
    let residuals: Vec<bool> = (0..e.len()).map(|n| predict(n) == big(n)).collect();
    let n0 = residuals.iter().rposition(|ok| !ok).map_or(0, |i| i + 1);
    let to_small = |x: &BigInt, what: &str| {
        x.to_i64()
            .ok_or_else(|| Error::NonConforming(format!("{what} = {x} out of range")))
    };
    Ok(InvariantFit {
        lambda: to_small(&lambda, "λ")? as u64,
        mu: to_small(&mu, "μ")? as u64,
        nu: to_small(&nu, "ν")?,
        n0,
        residuals,
    })
}
