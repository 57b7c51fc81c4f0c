//! Places of `F_q(T)` and their behaviour in the constant tower
//! `F_n = F·F_{q^{p^n}}`.
//!
//! In a constant extension of degree `p^n` a place of degree `d` splits into
//! `gcd(d, p^n)` places of degree `d / gcd(d, p^n)`.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use crate::algebra::int::valuation_u64;
use crate::algebra::linalg::PrimeSpan;
use crate::algebra::parse::parse_poly;
use crate::algebra::{factor, is_irreducible, roots, Embedding, FieldElement, FiniteField, Poly, PolyRing};
use crate::error::{Error, Result};

/// A place of `F_q(T)`: the infinite place or a monic irreducible.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Place {
    Infinity,
    Finite(Poly),
}

impl Place {
    /// Finite place generated by `f`, normalized to be monic.
    pub fn finite(field: &FiniteField, f: &Poly) -> Result<Place> {
        let ring = PolyRing::new(field.clone());
        if f.is_constant() {
            return Err(Error::Domain(format!("`{f}` does not define a place")));
        }
        let monic = ring.monic(f)?;
        if !is_irreducible(&ring, &monic)? {
            return Err(Error::Domain(format!(
                "`{f}` is not irreducible over F_{}",
                field.order()
            )));
        }
        Ok(Place::Finite(monic))
    }

    /// `inf` or a polynomial in `T`.
    pub fn parse(input: &str, field: &FiniteField) -> Result<Place> {
        let s = input.trim();
        if s.eq_ignore_ascii_case("inf") || s == "∞" {
            return Ok(Place::Infinity);
        }
        let f = parse_poly(s, field)?;
        Place::finite(field, &f).map_err(|e| match e {
            Error::Domain(m) => Error::parse(input, m),
            other => other,
        })
    }

    /// Comma-separated list of places.
    pub fn parse_list(input: &str, field: &FiniteField) -> Result<Vec<Place>> {
        input
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| Place::parse(s, field))
            .collect()
    }

    pub fn degree(&self) -> usize {
        match self {
            Place::Infinity => 1,
            Place::Finite(f) => f.degree().unwrap_or(0),
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Place::Infinity)
    }

    pub fn poly(&self) -> Option<&Poly> {
        match self {
            Place::Infinity => None,
            Place::Finite(f) => Some(f),
        }
    }

    /// Residue field `F_q[T]/(v)` of a finite place.
    pub fn residue_field(&self, base: &FiniteField) -> Result<ResidueField> {
        match self {
            Place::Infinity => Err(Error::Precondition(
                "the infinite place has no residue field in this model".into(),
            )),
            Place::Finite(v) => ResidueField::new(base, v),
        }
    }
}

impl Ord for Place {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Place::Infinity, Place::Infinity) => Ordering::Equal,
            (Place::Infinity, _) => Ordering::Greater,
            (_, Place::Infinity) => Ordering::Less,
            (Place::Finite(a), Place::Finite(b)) => {
                a.degree().cmp(&b.degree()).then_with(|| a.coeffs().cmp(b.coeffs()))
            }
        }
    }
}

impl PartialOrd for Place {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Infinity => f.write_str("inf"),
            Place::Finite(p) => write!(f, "{p}"),
        }
    }
}

/// `F_v = F_q[T]/(v)` realized as an absolute field, with the embedding of
/// `F_q` and the image of `T` (the smallest root of `v`).
#[derive(Clone, Debug)]
pub struct ResidueField {
    modulus: Poly,
    field: FiniteField,
    base: Embedding,
    t_image: FieldElement,
    /// `F_p`-span of `c_l T^j` (`c_l = u^l` in `F_q`), inserted in the order
    /// `j` outer, `l` inner.
    span: PrimeSpan,
}

impl ResidueField {
    pub fn new(base: &FiniteField, v: &Poly) -> Result<Self> {
        let d = v
            .degree()
            .filter(|&d| d >= 1)
            .ok_or_else(|| Error::Domain("residue field of a constant".into()))?;
        let field = FiniteField::new(base.characteristic(), base.degree() * d)?;
        let emb = Embedding::canonical(base, &field)?;
        let ring = PolyRing::new(field.clone());
        let t_image = roots(&ring, &emb.apply_poly(v))?
            .into_iter()
            .next()
            .ok_or_else(|| Error::Domain(format!("`{v}` has no root in its residue field")))?;
        let s = base.degree();
        let dim = field.degree();
        let mut span = PrimeSpan::new(base.characteristic(), dim);
        let mut tj = field.one();
        for _ in 0..d {
            for l in 0..s {
                let mut e = vec![0u64; l + 1];
                e[l] = 1;
                let c = emb.apply(&base.element(e));
                if !span.insert(&field.mul(&c, &tj).padded(dim)) {
                    return Err(Error::Consistency("residue basis is dependent".into()));
                }
            }
            tj = field.mul(&tj, &t_image);
        }
        Ok(ResidueField {
            modulus: v.clone(),
            field,
            base: emb,
            t_image,
            span,
        })
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    /// The embedding `F_q → F_v`.
    pub fn base_embedding(&self) -> &Embedding {
        &self.base
    }

    pub fn t_image(&self) -> &FieldElement {
        &self.t_image
    }

    /// Image of `a(T)` in `F_v`.
    pub fn reduce(&self, a: &Poly) -> FieldElement {
        let k = &self.field;
        a.coeffs().iter().rev().fold(k.zero(), |acc, c| {
            k.add(&k.mul(&acc, &self.t_image), &self.base.apply(c))
        })
    }

    /// The representative of `x` of degree below `deg v`.
    pub fn lift(&self, x: &FieldElement) -> Poly {
        let base = self.base.source();
        let s = base.degree();
        let coords = self
            .span
            .coordinates(&x.padded(self.field.degree()))
            .expect("the residue basis spans F_v");
        Poly::new(coords.chunks(s).map(|chunk| base.element(chunk.to_vec())).collect())
    }
}

/// Decomposition of a place in the level-`n` constant extension.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Splitting {
    /// Number of places above `v`.
    pub count: u64,
    /// Common degree of those places over `F_{q^{p^n}}`.
    pub degree: u64,
}

/// `gcd(d, p^n)` without forming `p^n`.
fn gcd_with_prime_power(d: u64, p: u64, n: u32) -> u64 {
    let e = valuation_u64(d, p).min(n as u64);
    p.pow(e as u32)
}

/// Degree formula: `count = gcd(deg v, p^n)`, `degree = deg v / count`.
pub fn splitting_in_level(v: &Place, p: u64, n: u32) -> Splitting {
    let d = v.degree() as u64;
    let count = gcd_with_prime_power(d, p, n);
    Splitting {
        count,
        degree: d / count,
    }
}

/// The same decomposition obtained by factoring `v` over `F_{q^{p^n}}`.
pub fn splitting_by_factorization(v: &Place, base: &FiniteField, n: u32) -> Result<Splitting> {
    let Place::Finite(f) = v else {
        return Ok(Splitting { count: 1, degree: 1 });
    };
    let p = base.characteristic();
    let ext = p
        .checked_pow(n)
        .and_then(|m| usize::try_from(m).ok())
        .and_then(|m| m.checked_mul(base.degree()))
        .ok_or_else(|| Error::Size(format!("level {n} too deep to factor")))?;
    let target = FiniteField::new(p, ext)?;
    let emb = Embedding::canonical(base, &target)?;
    let ring = PolyRing::new(target);
    let fac = factor(&ring, &emb.apply_poly(f))?;
    let degrees = fac.degrees();
    let degree = degrees[0] as u64;
    if degrees.iter().any(|&d| d as u64 != degree) || fac.factors.iter().any(|(_, m)| *m != 1) {
        return Err(Error::Consistency(format!(
            "`{f}` does not split into distinct factors of equal degree"
        )));
    }
    Ok(Splitting {
        count: degrees.len() as u64,
        degree,
    })
}

/// `δ_n` for `n = 0..=n_max` and its stabilization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaSequence {
    pub places: Vec<Place>,
    pub values: Vec<u64>,
    pub stabilization_index: usize,
    pub stable_value: u64,
    /// Whether `n_max` reaches the level after which `δ_n` provably stays
    /// constant (all `p`-parts of the degrees are exhausted).
    pub certified: bool,
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `δ_n = gcd_{v ∈ S} deg(places above v at level n)`.
pub fn delta_sequence(s: &[Place], p: u64, n_max: u32) -> Result<DeltaSequence> {
    if s.is_empty() {
        return Err(Error::Domain("the place set S is empty".into()));
    }
    let places: Vec<Place> = s.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    let values: Vec<u64> = (0..=n_max)
        .map(|n| places.iter().map(|v| splitting_in_level(v, p, n).degree).fold(0, gcd))
        .collect();
    if values.windows(2).any(|w| w[1] > w[0]) {
        return Err(Error::Consistency(format!("δ sequence {values:?} increases")));
    }
    let last = *values.last().unwrap();
    let stabilization_index = values.iter().rposition(|&d| d != last).map_or(0, |i| i + 1);
    let certified = n_max >= totally_inert_level(&places, p)?;
    if certified && last.is_multiple_of(p) {
        return Err(Error::Consistency(format!("stable δ = {last} is divisible by p = {p}")));
    }
    Ok(DeltaSequence {
        places,
        values,
        stabilization_index,
        stable_value: last,
        certified,
    })
}

/// Least `n` from which every place of `S` stays inert: `max v_p(deg v)`.
pub fn totally_inert_level(s: &[Place], p: u64) -> Result<u32> {
    if s.is_empty() {
        return Err(Error::Domain("the place set S is empty".into()));
    }
    Ok(s.iter()
        .map(|v| valuation_u64(v.degree() as u64, p) as u32)
        .max()
        .unwrap_or(0))
}
