//! Twisted polynomial rings `R{τ}` with commutation rule `τ·a = a^q·τ`.
//!
//! A skew polynomial `Σ c_i τ^i` acts on the coefficient ring as the
//! `F_q`-linear map `x ↦ Σ c_i x^{q^i}`.

use std::fmt;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::algebra::parse::parse_mpoly;
use crate::algebra::{FieldElement, FiniteField, Poly, PolyRing};
use crate::error::{Error, Result};

/// Commutative coefficient ring together with its `q`-power endomorphism.
pub trait TwistedRing {
    type Elem: Clone + PartialEq + fmt::Debug;

    /// The twist parameter `q`.
    fn twist(&self) -> u64;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// `a ↦ a^q`.
    fn frobenius(&self, a: &Self::Elem) -> Self::Elem;
}

/// `K[T]` with `a ↦ a^q` for a subfield `F_q ⊆ K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyCoefficients {
    ring: PolyRing,
    q: u64,
}

impl PolyCoefficients {
    /// `K[T]` twisted by `q`, which must be a power of `char K` whose
    /// field `F_q` is contained in `K`.
    pub fn new(field: FiniteField, q: u64) -> Result<Self> {
        check_twist(&field, q)?;
        Ok(PolyCoefficients {
            ring: PolyRing::new(field),
            q,
        })
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }
}

/// A finite field `K ⊇ F_q` with `a ↦ a^q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldCoefficients {
    field: FiniteField,
    q: u64,
    /// `q = p^steps`.
    steps: usize,
}

impl FieldCoefficients {
    pub fn new(field: FiniteField, q: u64) -> Result<Self> {
        let steps = check_twist(&field, q)?;
        Ok(FieldCoefficients { field, q, steps })
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }
}

/// Returns `log_p q` after checking that `F_q ⊆ K`.
fn check_twist(field: &FiniteField, q: u64) -> Result<usize> {
    let p = field.characteristic();
    let mut steps = 0usize;
    let mut m = q;
    while m > 1 && m.is_multiple_of(p) {
        m /= p;
        steps += 1;
    }
    if m != 1 || steps == 0 || !field.degree().is_multiple_of(steps) {
        return Err(Error::Domain(format!(
            "twist {q} is not the order of a subfield of {field:?}"
        )));
    }
    Ok(steps)
}

impl TwistedRing for PolyCoefficients {
    type Elem = Poly;

    fn twist(&self) -> u64 {
        self.q
    }
    fn zero(&self) -> Poly {
        Poly::zero()
    }
    fn one(&self) -> Poly {
        self.ring.one()
    }
    fn is_zero(&self, a: &Poly) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Poly, b: &Poly) -> Poly {
        self.ring.add(a, b)
    }
    fn sub(&self, a: &Poly, b: &Poly) -> Poly {
        self.ring.sub(a, b)
    }
    fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        self.ring.mul(a, b)
    }
    /// `(Σ c_i T^i)^q = Σ c_i^q T^{iq}` in characteristic `p`.
    fn frobenius(&self, a: &Poly) -> Poly {
        let k = self.ring.field();
        let q = self.q as usize;
        let Some(d) = a.degree() else {
            return Poly::zero();
        };
        let mut out = vec![k.zero(); d * q + 1];
        for (i, c) in a.coeffs().iter().enumerate() {
            out[i * q] = k.pow_u64(c, self.q);
        }
        Poly::new(out)
    }
}

impl TwistedRing for FieldCoefficients {
    type Elem = FieldElement;

    fn twist(&self) -> u64 {
        self.q
    }
    fn zero(&self) -> FieldElement {
        self.field.zero()
    }
    fn one(&self) -> FieldElement {
        self.field.one()
    }
    fn is_zero(&self, a: &FieldElement) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.field.add(a, b)
    }
    fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.field.sub(a, b)
    }
    fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.field.mul(a, b)
    }
    fn frobenius(&self, a: &FieldElement) -> FieldElement {
        self.field.frobenius_pow(a, self.steps)
    }
}

/// Element `Σ c_i τ^i` of a twisted polynomial ring, trimmed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewPoly<E> {
    q: u64,
    coeffs: Vec<E>,
}

impl<E> SkewPoly<E> {
    pub fn twist(&self) -> u64 {
        self.q
    }

    /// Coefficients of `τ^0, τ^1, ...`.
    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `deg_τ`, `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Option<&E> {
        self.coeffs.get(i)
    }
}

/// Linearized polynomial `Σ c_i x^{q^i}` in sparse form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Linearized<E> {
    /// `(exponent, coefficient)` with nonzero coefficients, exponents increasing.
    pub terms: Vec<(BigUint, E)>,
}

/// The ring `R{τ}` over a [`TwistedRing`].
#[derive(Clone, Debug)]
pub struct SkewRing<R> {
    base: R,
}

impl<R: TwistedRing> SkewRing<R> {
    pub fn new(base: R) -> Self {
        SkewRing { base }
    }

    pub fn base(&self) -> &R {
        &self.base
    }

    pub fn twist(&self) -> u64 {
        self.base.twist()
    }

    pub fn element(&self, mut coeffs: Vec<R::Elem>) -> SkewPoly<R::Elem> {
        while coeffs.last().is_some_and(|c| self.base.is_zero(c)) {
            coeffs.pop();
        }
        SkewPoly {
            q: self.base.twist(),
            coeffs,
        }
    }

    pub fn zero(&self) -> SkewPoly<R::Elem> {
        self.element(Vec::new())
    }

    pub fn one(&self) -> SkewPoly<R::Elem> {
        self.element(vec![self.base.one()])
    }

    /// `a·τ^0`.
    pub fn constant(&self, a: R::Elem) -> SkewPoly<R::Elem> {
        self.element(vec![a])
    }

    /// `τ`.
    pub fn tau(&self) -> SkewPoly<R::Elem> {
        self.element(vec![self.base.zero(), self.base.one()])
    }

    fn check(&self, f: &SkewPoly<R::Elem>) -> Result<()> {
        if f.q != self.base.twist() {
            return Err(Error::TwistMismatch {
                left: f.q,
                right: self.base.twist(),
            });
        }
        Ok(())
    }

    fn check_pair(&self, f: &SkewPoly<R::Elem>, g: &SkewPoly<R::Elem>) -> Result<()> {
        if f.q != g.q {
            return Err(Error::TwistMismatch { left: f.q, right: g.q });
        }
        self.check(f)
    }

    pub fn add(&self, f: &SkewPoly<R::Elem>, g: &SkewPoly<R::Elem>) -> Result<SkewPoly<R::Elem>> {
        self.check_pair(f, g)?;
        let n = f.coeffs.len().max(g.coeffs.len());
        let zero = self.base.zero();
        let out = (0..n)
            .map(|i| {
                let a = f.coeffs.get(i).unwrap_or(&zero);
                let b = g.coeffs.get(i).unwrap_or(&zero);
                self.base.add(a, b)
            })
            .collect();
        Ok(self.element(out))
    }

    pub fn sub(&self, f: &SkewPoly<R::Elem>, g: &SkewPoly<R::Elem>) -> Result<SkewPoly<R::Elem>> {
        self.check_pair(f, g)?;
        let n = f.coeffs.len().max(g.coeffs.len());
        let zero = self.base.zero();
        let out = (0..n)
            .map(|i| {
                let a = f.coeffs.get(i).unwrap_or(&zero);
                let b = g.coeffs.get(i).unwrap_or(&zero);
                self.base.sub(a, b)
            })
            .collect();
        Ok(self.element(out))
    }

    /// Left multiplication by a scalar `a·τ^0`.
    pub fn scale(&self, a: &R::Elem, f: &SkewPoly<R::Elem>) -> SkewPoly<R::Elem> {
        self.element(f.coeffs.iter().map(|c| self.base.mul(a, c)).collect())
    }

    /// Product under `τa = a^q τ`: `(Σ a_i τ^i)(Σ b_j τ^j) = Σ a_i b_j^{q^i} τ^{i+j}`.
    pub fn mul(&self, f: &SkewPoly<R::Elem>, g: &SkewPoly<R::Elem>) -> Result<SkewPoly<R::Elem>> {
        self.check_pair(f, g)?;
        if f.is_zero() || g.is_zero() {
            return Ok(self.zero());
        }
        let mut out = vec![self.base.zero(); f.coeffs.len() + g.coeffs.len() - 1];
        // twisted[j] = b_j^{q^i} for the current i
        let mut twisted: Vec<R::Elem> = g.coeffs.clone();
        for (i, a) in f.coeffs.iter().enumerate() {
            if i > 0 {
                twisted = twisted.iter().map(|b| self.base.frobenius(b)).collect();
            }
            if self.base.is_zero(a) {
                continue;
            }
            for (j, b) in twisted.iter().enumerate() {
                let t = self.base.mul(a, b);
                out[i + j] = self.base.add(&out[i + j], &t);
            }
        }
        Ok(self.element(out))
    }

    pub fn pow(&self, f: &SkewPoly<R::Elem>, e: u32) -> Result<SkewPoly<R::Elem>> {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, f)?;
        }
        Ok(acc)
    }

    /// Evaluate the action `x ↦ Σ c_i x^{q^i}`.
    pub fn apply(&self, f: &SkewPoly<R::Elem>, x: &R::Elem) -> Result<R::Elem> {
        self.check(f)?;
        let mut acc = self.base.zero();
        let mut power = x.clone();
        for (i, c) in f.coeffs.iter().enumerate() {
            if i > 0 {
                power = self.base.frobenius(&power);
            }
            acc = self.base.add(&acc, &self.base.mul(c, &power));
        }
        Ok(acc)
    }

    /// Sparse linearized polynomial `Σ c_i x^{q^i}`.
    pub fn linearized(&self, f: &SkewPoly<R::Elem>) -> Linearized<R::Elem> {
        let q = BigUint::from(f.q);
        let mut exp = BigUint::from(1u32);
        let mut terms = Vec::new();
        for c in &f.coeffs {
            if !self.base.is_zero(c) {
                terms.push((exp.clone(), c.clone()));
            }
            exp *= &q;
        }
        Linearized { terms }
    }

    /// Apply a coefficient map into another twisted ring with the same `q`.
    pub fn map_into<S: TwistedRing>(
        &self,
        f: &SkewPoly<R::Elem>,
        target: &SkewRing<S>,
        map: impl Fn(&R::Elem) -> S::Elem,
    ) -> Result<SkewPoly<S::Elem>> {
        self.check(f)?;
        if target.twist() != f.q {
            return Err(Error::TwistMismatch {
                left: f.q,
                right: target.twist(),
            });
        }
        Ok(target.element(f.coeffs.iter().map(map).collect()))
    }
}

/// Largest dense linearized form produced by [`linearized_form`].
pub const MAX_DENSE_DEGREE: u64 = 1 << 22;

impl SkewRing<FieldCoefficients> {
    /// Dense linearized polynomial `Σ c_i x^{q^i}` over the coefficient field.
    pub fn linearized_form(&self, f: &SkewPoly<FieldElement>) -> Result<Poly> {
        let k = self.base.field();
        let lin = self.linearized(f);
        let Some((top, _)) = lin.terms.last() else {
            return Ok(Poly::zero());
        };
        let top = top
            .to_u64()
            .filter(|&d| d <= MAX_DENSE_DEGREE)
            .ok_or_else(|| Error::Size(format!("linearized degree {top} too large")))?;
        let mut out = vec![k.zero(); top as usize + 1];
        for (e, c) in lin.terms {
            out[e.to_u64().unwrap() as usize] = c;
        }
        Ok(Poly::new(out))
    }
}

/// Format a skew polynomial over `K[T]` as `c0 + c1*t + c2*t^2`.
pub fn format_skew(f: &SkewPoly<Poly>) -> String {
    if f.is_zero() {
        return "0".into();
    }
    let mut parts = Vec::new();
    for (i, c) in f.coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let tau = match i {
            0 => String::new(),
            1 => "t".into(),
            _ => format!("t^{i}"),
        };
        let coeff = c.to_string();
        let part = if i == 0 {
            coeff
        } else if coeff == "1" {
            tau
        } else if coeff.contains('+') {
            format!("({coeff})*{tau}")
        } else {
            format!("{coeff}*{tau}")
        };
        parts.push(part);
    }
    parts.join(" + ")
}

impl fmt::Display for SkewPoly<Poly> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_skew(self))
    }
}

/// Parse `c0 + c1*t + c2*t^2` into `τ`-coefficients over `K[T]`.
pub fn parse_skew_coeffs(input: &str, field: &FiniteField) -> Result<Vec<Poly>> {
    let m = parse_mpoly(input, &['t', 'T', 'x', 'u'])?;
    let vars = m.variables();
    if vars.contains(&'T') && vars.contains(&'x') {
        return Err(Error::parse(input, "mixes variables `T` and `x`"));
    }
    let mut rows: Vec<Vec<FieldElement>> = Vec::new();
    let u = field.generator();
    for (mono, c) in m.terms() {
        let i = mono.get(&'t').copied().unwrap_or(0) as usize;
        let j = mono.get(&'T').or_else(|| mono.get(&'x')).copied().unwrap_or(0) as usize;
        let ue = mono.get(&'u').copied().unwrap_or(0) as u64;
        if rows.len() <= i {
            rows.resize(i + 1, Vec::new());
        }
        if rows[i].len() <= j {
            rows[i].resize(j + 1, field.zero());
        }
        let v = field.mul(&field.from_big(c), &field.pow_u64(&u, ue));
        rows[i][j] = field.add(&rows[i][j], &v);
    }
    Ok(rows.into_iter().map(Poly::new).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse::parse_poly;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn poly_ring(q: u64) -> SkewRing<PolyCoefficients> {
        let k = FiniteField::with_order(q).unwrap();
        SkewRing::new(PolyCoefficients::new(k, q).unwrap())
    }

    fn skew(r: &SkewRing<PolyCoefficients>, coeffs: &[&str]) -> SkewPoly<Poly> {
        let k = r.base().ring().field().clone();
        r.element(coeffs.iter().map(|c| parse_poly(c, &k).unwrap()).collect())
    }

    #[test]
    fn carlitz_square_over_f2() {
        let r = poly_ring(2);
        let f = skew(&r, &["T", "1"]);
        let sq = r.mul(&f, &f).unwrap();
        assert_eq!(sq, skew(&r, &["T^2", "T^2+T", "1"]));
        assert_eq!(sq.to_string(), "T^2 + (T^2+T)*t + t^2");
    }

    #[test]
    fn twist_law_on_monomials() {
        let r = poly_ring(3);
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..20 {
            let a = r.base().ring().random(&mut rng, 6);
            let lhs = r.mul(&r.tau(), &r.constant(a.clone())).unwrap();
            let aq = r.base().ring().pow(&a, 3);
            assert_eq!(lhs, r.element(vec![Poly::zero(), aq]));
        }
    }

    #[test]
    fn mismatched_twist_is_rejected() {
        let r2 = poly_ring(2);
        let k4 = FiniteField::with_order(4).unwrap();
        let r4 = SkewRing::new(PolyCoefficients::new(k4, 4).unwrap());
        let f = r2.tau();
        let g = r4.tau();
        assert!(matches!(
            r4.mul(&g, &f),
            Err(Error::TwistMismatch { left: 4, right: 2 })
        ));
        assert!(matches!(r2.apply(&g, &Poly::zero()), Err(Error::TwistMismatch { .. })));
        assert!(PolyCoefficients::new(FiniteField::with_order(2).unwrap(), 4).is_err());
        assert!(PolyCoefficients::new(FiniteField::with_order(9).unwrap(), 2).is_err());
    }

    #[test]
    fn linearized_forms() {
        let k = FiniteField::with_order(2).unwrap();
        let fr = SkewRing::new(FieldCoefficients::new(k.clone(), 2).unwrap());
        // T + τ at the residue T -> 1
        let f = fr.element(vec![k.one(), k.one()]);
        assert_eq!(fr.linearized_form(&f).unwrap().display_with("x").to_string(), "x^2+x");
        let x = k.one();
        assert!(fr.apply(&f, &x).unwrap().is_zero());
        let tau2 = fr.element(vec![k.zero(), k.zero(), k.one()]);
        assert_eq!(fr.linearized_form(&tau2).unwrap().degree(), Some(4));

        let r = poly_ring(2);
        let lin = r.linearized(&skew(&r, &["T", "1"]));
        let exps: Vec<u32> = lin.terms.iter().map(|(e, _)| e.to_u32().unwrap()).collect();
        assert_eq!(exps, vec![1, 2]);
        assert_eq!(lin.terms[0].1.to_string(), "T");
    }

    #[test]
    fn text_round_trip() {
        let k = FiniteField::with_order(2).unwrap();
        let r = poly_ring(2);
        let coeffs = parse_skew_coeffs("T + t + T(T+1)*t^2", &k).unwrap();
        let f = r.element(coeffs);
        assert_eq!(f.to_string(), "T + t + (T^2+T)*t^2");
        let again = r.element(parse_skew_coeffs(&f.to_string(), &k).unwrap());
        assert_eq!(f, again);
    }
}
