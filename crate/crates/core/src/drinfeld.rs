//! Drinfeld modules `φ: F_q[T] → F_q(T){τ}` given by `φ_T`, their reductions
//! at finite places, reduced `π`-torsion and the Frobenius action on it.

use std::collections::BTreeSet;

use num_bigint::BigUint;

use crate::algebra::linalg::{prime_kernel, PrimeSpan};
use crate::algebra::{factor, Embedding, FieldElement, FiniteField, Matrix, Poly, PolyRing};
use crate::error::{Error, Result};
use crate::skew::{parse_skew_coeffs, FieldCoefficients, PolyCoefficients, SkewPoly, SkewRing, TwistedRing};
use crate::tower::{Place, ResidueField};

/// Upper bound on the `F_p`-dimension of the field in which torsion is split.
pub const MAX_AMBIENT_DEGREE: usize = 4096;

/// A Drinfeld module over `F_q(T)` with integral `φ_T = T + a_1 τ + … + a_r τ^r`.
#[derive(Clone, Debug)]
pub struct DrinfeldModule {
    field: FiniteField,
    ring: SkewRing<PolyCoefficients>,
    phi_t: SkewPoly<Poly>,
}

/// `Σ c_i φ^i` by Horner's rule, constants `c_i` acting as `c_i τ^0`.
fn horner<R: TwistedRing>(
    ring: &SkewRing<R>,
    phi: &SkewPoly<R::Elem>,
    coeffs: &[R::Elem],
) -> Result<SkewPoly<R::Elem>> {
    let mut acc = ring.zero();
    for c in coeffs.iter().rev() {
        acc = ring.mul(&acc, phi)?;
        acc = ring.add(&acc, &ring.constant(c.clone()))?;
    }
    Ok(acc)
}

impl DrinfeldModule {
    /// Module with `τ`-coefficients `coeffs` (low to high) of `φ_T`.
    pub fn new(q: u64, coeffs: Vec<Poly>) -> Result<Self> {
        let field = FiniteField::with_order(q)?;
        let ring = SkewRing::new(PolyCoefficients::new(field.clone(), q)?);
        let phi_t = ring.element(coeffs);
        let t = ring.base().ring().x();
        if phi_t.coeff(0) != Some(&t) {
            return Err(Error::Domain(format!(
                "the τ^0 coefficient of φ_T must be T, got `{}`",
                phi_t.coeff(0).map_or("0".into(), ToString::to_string)
            )));
        }
        if phi_t.degree().unwrap_or(0) == 0 {
            return Err(Error::Domain("φ_T must have τ-degree at least 1".into()));
        }
        Ok(DrinfeldModule { field, ring, phi_t })
    }

    /// Parse `φ_T` from a comma-separated coefficient list (`"T,1"`) or the
    /// skew text form (`"T + t"`).
    pub fn parse(q: u64, model: &str) -> Result<Self> {
        let field = FiniteField::with_order(q)?;
        let coeffs = if model.contains('t') {
            parse_skew_coeffs(model, &field)?
        } else {
            model.split(',')
                .map(|c| crate::algebra::parse::parse_poly(c.trim(), &field))
                .collect::<Result<_>>()?
        };
        Self::new(q, coeffs)
    }

    /// Parse from a list of coefficient strings.
    pub fn from_strings<S: AsRef<str>>(q: u64, coeffs: &[S]) -> Result<Self> {
        let field = FiniteField::with_order(q)?;
        let coeffs = coeffs
            .iter()
            .map(|c| crate::algebra::parse::parse_poly(c.as_ref(), &field))
            .collect::<Result<_>>()?;
        Self::new(q, coeffs)
    }

    /// The Carlitz module `φ_T = T + τ`.
    pub fn carlitz(q: u64) -> Result<Self> {
        Self::from_strings(q, &["T", "1"])
    }

    pub fn q(&self) -> u64 {
        self.ring.twist()
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn ring(&self) -> &SkewRing<PolyCoefficients> {
        &self.ring
    }

    pub fn phi_t(&self) -> &SkewPoly<Poly> {
        &self.phi_t
    }

    pub fn rank(&self) -> usize {
        self.phi_t.degree().unwrap()
    }

    /// `φ_a = Σ c_i φ_T^i` for `a = Σ c_i T^i`.
    pub fn phi_of(&self, a: &Poly) -> Result<SkewPoly<Poly>> {
        let consts: Vec<Poly> = a.coeffs().iter().map(|c| Poly::new(vec![c.clone()])).collect();
        horner(&self.ring, &self.phi_t, &consts)
    }

    /// Finite places dividing the leading `τ`-coefficient of `φ_T`.
    pub fn bad_reduction_set(&self) -> Result<BTreeSet<Place>> {
        let lead = self.phi_t.coeffs().last().unwrap();
        if lead.is_constant() {
            return Ok(BTreeSet::new());
        }
        let ring = PolyRing::new(self.field.clone());
        Ok(factor(&ring, lead)?
            .factors
            .into_iter()
            .map(|(g, _)| Place::Finite(g))
            .collect())
    }

    /// `S = {π, ∞} ∪ {bad places}`.
    pub fn selmer_place_set(&self, pi: &Place) -> Result<BTreeSet<Place>> {
        if pi.is_infinite() {
            return Err(Error::Precondition("π must be a finite place".into()));
        }
        let mut s = self.bad_reduction_set()?;
        s.insert(pi.clone());
        s.insert(Place::Infinity);
        Ok(s)
    }

    /// Reduce the coefficients of `φ_T` modulo a finite place.
    pub fn reduce(&self, v: &Place) -> Result<Reduction> {
        let residue = v.residue_field(&self.field)?;
        let ring = SkewRing::new(FieldCoefficients::new(residue.field().clone(), self.q())?);
        let reduced = ring.element(self.phi_t.coeffs().iter().map(|c| residue.reduce(c)).collect());
        let reduced_rank = match reduced.degree() {
            Some(d) if d >= 1 => d,
            _ => return Err(Error::NotStable(format!("φ_T reduces into F_v at v = {v}"))),
        };
        let kind = if reduced_rank == self.rank() {
            ReductionKind::Good
        } else {
            ReductionKind::Bad
        };
        Ok(Reduction {
            report: ReductionReport {
                place: v.clone(),
                kind,
                reduced_rank,
            },
            residue,
            ring,
            reduced,
        })
    }

    /// The `F_π`-vector space of roots of the reduced `φ_π` at a good place `v ≠ π`.
    pub fn torsion_space(&self, v: &Place, pi: &Place) -> Result<TorsionSpace> {
        let Some(pi_poly) = pi.poly() else {
            return Err(Error::Precondition("π must be a finite place".into()));
        };
        if v.is_infinite() {
            return Err(Error::Precondition("v must be a finite place".into()));
        }
        if v == pi {
            return Err(Error::Precondition(format!("v = π = {pi}")));
        }
        let red = self.reduce(v)?;
        if red.report.kind == ReductionKind::Bad {
            return Err(Error::Precondition(format!("φ has bad reduction at {v}")));
        }
        let p = self.field.characteristic();
        let s = self.field.degree();
        let r = self.rank();
        let d_pi = pi.degree();
        let fv = red.residue.field().clone();

        // φ_π over F_v and its splitting field
        let pi_consts: Vec<FieldElement> = pi_poly
            .coeffs()
            .iter()
            .map(|c| red.residue.base_embedding().apply(c))
            .collect();
        let phi_pi_v = horner(&red.ring, &red.reduced, &pi_consts)?;
        let lin = red.ring.linearized_form(&phi_pi_v)?;
        let fac = factor(&PolyRing::new(fv.clone()), &lin)?;
        if fac.factors.iter().any(|(_, m)| *m != 1) {
            return Err(Error::Consistency(format!("reduced φ_π at {v} is inseparable")));
        }
        let k = fac.degrees().into_iter().fold(1usize, lcm);
        let ambient_degree = fv.degree() * k;
        if ambient_degree > MAX_AMBIENT_DEGREE {
            return Err(Error::Size(format!(
                "splitting field of degree {ambient_degree} over F_{p}"
            )));
        }
        let ambient = if k == 1 {
            fv.clone()
        } else {
            FiniteField::new(p, ambient_degree)?
        };
        let into_ambient = Embedding::canonical(&fv, &ambient)?;
        let base = red.residue.base_embedding().then(&into_ambient)?;
        let ring = SkewRing::new(FieldCoefficients::new(ambient.clone(), self.q())?);
        let phi_t = red.ring.map_into(&red.reduced, &ring, |c| into_ambient.apply(c))?;
        let phi_pi = red.ring.map_into(&phi_pi_v, &ring, |c| into_ambient.apply(c))?;

        // roots of φ_π: the kernel of an F_p-linear map on ambient
        let dim = ambient.degree();
        let columns: Vec<Vec<u64>> = (0..dim)
            .map(|j| {
                let mut e = vec![0u64; j + 1];
                e[j] = 1;
                ring.apply(&phi_pi, &ambient.element(e)).map(|y| y.padded(dim))
            })
            .collect::<Result<_>>()?;
        let kernel = prime_kernel(p, dim, &columns);
        let expected = s * r * d_pi;
        if kernel.len() != expected {
            return Err(Error::Consistency(format!(
                "root space of φ_π has F_p-dimension {}, expected {expected}",
                kernel.len()
            )));
        }

        // greedy F_π-basis: the F_π-line through b is the F_p-span of
        // c_l · φ_T^j(b) for an F_p-basis c_l of F_q and j < deg π
        let scalar = ResidueField::new(&self.field, pi_poly)?;
        let fq_basis: Vec<FieldElement> = (0..s)
            .map(|l| {
                let mut e = vec![0u64; l + 1];
                e[l] = 1;
                self.field.element(e)
            })
            .collect();
        let mut span = PrimeSpan::new(p, dim);
        let mut basis = Vec::new();
        for kv in kernel {
            let b = ambient.element(kv);
            if span.contains(&b.padded(dim)) {
                continue;
            }
            let mut y = b.clone();
            for j in 0..d_pi {
                if j > 0 {
                    y = ring.apply(&phi_t, &y)?;
                }
                for c in &fq_basis {
                    let z = ambient.mul(&base.apply(c), &y);
                    if !span.insert(&z.padded(dim)) {
                        return Err(Error::Consistency("torsion is not a free F_π-module".into()));
                    }
                }
            }
            basis.push(b);
        }
        if basis.len() != r {
            return Err(Error::Consistency(format!(
                "torsion has F_π-dimension {}, expected {r}",
                basis.len()
            )));
        }
        // images in F_π of the F_p-basis c_l T^j, in insertion order
        let fpi = scalar.field();
        let scalar_basis: Vec<FieldElement> = (0..d_pi)
            .flat_map(|j| {
                let tj = fpi.pow_u64(scalar.t_image(), j as u64);
                fq_basis
                    .iter()
                    .map(|c| fpi.mul(&scalar.base_embedding().apply(c), &tj))
                    .collect::<Vec<_>>()
            })
            .collect();
        Ok(TorsionSpace {
            place: v.clone(),
            pi: pi.clone(),
            residue: red.residue,
            ambient,
            splitting_degree: k,
            base,
            ring,
            phi_t,
            scalar,
            scalar_basis,
            basis,
            span,
            rank: r,
        })
    }

    /// Frobenius `x ↦ x^{#F_v}` on the reduced `π`-torsion, as a matrix over `F_π`.
    pub fn frobenius_data(&self, v: &Place, pi: &Place) -> Result<FrobeniusData> {
        let space = self.torsion_space(v, pi)?;
        space.frobenius_data()
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReductionKind {
    Good,
    Bad,
}

impl ReductionKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ReductionKind::Good => "good",
            ReductionKind::Bad => "bad",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionReport {
    pub place: Place,
    pub kind: ReductionKind,
    pub reduced_rank: usize,
}

/// The reduced module `φ̄_T ∈ F_v{τ}` together with its report.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub report: ReductionReport,
    pub residue: ResidueField,
    pub ring: SkewRing<FieldCoefficients>,
    pub reduced: SkewPoly<FieldElement>,
}

/// The reduced `π`-torsion `φ̄[π]` inside its splitting field.
#[derive(Clone, Debug)]
pub struct TorsionSpace {
    place: Place,
    pi: Place,
    residue: ResidueField,
    ambient: FiniteField,
    splitting_degree: usize,
    base: Embedding,
    ring: SkewRing<FieldCoefficients>,
    phi_t: SkewPoly<FieldElement>,
    scalar: ResidueField,
    scalar_basis: Vec<FieldElement>,
    basis: Vec<FieldElement>,
    span: PrimeSpan,
    rank: usize,
}

impl TorsionSpace {
    pub fn place(&self) -> &Place {
        &self.place
    }

    pub fn pi(&self) -> &Place {
        &self.pi
    }

    pub fn residue(&self) -> &ResidueField {
        &self.residue
    }

    /// The splitting field, an extension of `F_v`.
    pub fn ambient(&self) -> &FiniteField {
        &self.ambient
    }

    /// `[ambient : F_v]`.
    pub fn splitting_degree(&self) -> usize {
        self.splitting_degree
    }

    /// The scalar field `F_π = F_q[T]/(π)`.
    pub fn scalar_field(&self) -> &ResidueField {
        &self.scalar
    }

    pub fn basis(&self) -> &[FieldElement] {
        &self.basis
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// `#F_π^r`.
    pub fn cardinality(&self) -> BigUint {
        self.scalar.field().order().pow(self.basis.len() as u32)
    }

    /// The embedding `F_q → ambient`.
    pub fn base_embedding(&self) -> &Embedding {
        &self.base
    }

    /// `φ̄_a(x)` for `a ∈ F_q[T]`.
    pub fn act(&self, a: &Poly, x: &FieldElement) -> Result<FieldElement> {
        let consts: Vec<FieldElement> = a.coeffs().iter().map(|c| self.base.apply(c)).collect();
        let phi_a = horner(&self.ring, &self.phi_t, &consts)?;
        self.ring.apply(&phi_a, x)
    }

    /// `a mod π` in `F_π`.
    pub fn scalar(&self, a: &Poly) -> FieldElement {
        self.scalar.reduce(a)
    }

    pub fn contains(&self, x: &FieldElement) -> bool {
        self.span.contains(&x.padded(self.ambient.degree()))
    }

    /// `F_π`-coordinates of a torsion point in the basis.
    pub fn coordinates(&self, x: &FieldElement) -> Option<Vec<FieldElement>> {
        let raw = self.span.coordinates(&x.padded(self.ambient.degree()))?;
        let k = self.scalar.field();
        let per = self.scalar_basis.len();
        Some(
            raw.chunks(per)
                .map(|chunk| {
                    chunk
                        .iter()
                        .zip(&self.scalar_basis)
                        .fold(k.zero(), |acc, (&c, w)| k.add(&acc, &k.scale(c, w)))
                })
                .collect(),
        )
    }

    pub fn frobenius(&self, x: &FieldElement) -> FieldElement {
        let steps = self.residue.field().degree();
        self.ambient.frobenius_pow(x, steps)
    }

    pub fn frobenius_data(&self) -> Result<FrobeniusData> {
        let k = self.scalar.field();
        let r = self.basis.len();
        let columns: Vec<Vec<FieldElement>> = self
            .basis
            .iter()
            .map(|b| {
                self.coordinates(&self.frobenius(b))
                    .ok_or_else(|| Error::Consistency("Frobenius does not preserve the torsion".into()))
            })
            .collect::<Result<_>>()?;
        let matrix = Matrix::from_columns(r, &columns);
        if matrix.det(k).is_zero() {
            return Err(Error::Consistency("Frobenius matrix is singular".into()));
        }
        let char_poly = matrix.char_poly(k);
        let fixed = matrix.sub(k, &Matrix::identity(k, r));
        let h0_dim = r - fixed.rank(k);
        debug_assert!(h0_dim <= self.rank);
        Ok(FrobeniusData {
            scalar_field: k.clone(),
            matrix,
            char_poly,
            h0_dim,
        })
    }
}

/// Frobenius on `φ̄[π]` over `F_π`.
#[derive(Clone, Debug)]
pub struct FrobeniusData {
    pub scalar_field: FiniteField,
    pub matrix: Matrix,
    pub char_poly: Poly,
    /// `dim_{F_π}` of the Frobenius-fixed subspace.
    pub h0_dim: usize,
}
