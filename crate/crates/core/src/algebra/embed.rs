//! Field embeddings `F_{p^k} -> F_{p^m}` for `k | m`.
//!
//! The canonical embedding sends the generator of the source to the
//! lexicographically smallest root of the source modulus in the target.

use super::factor::roots;
use super::field::{FieldElement, FiniteField};
use super::poly::{Poly, PolyRing};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct Embedding {
    source: FiniteField,
    target: FiniteField,
    /// Images of `1, u, u^2, ...` of the source generator.
    powers: Vec<FieldElement>,
}

impl Embedding {
    pub fn identity(field: &FiniteField) -> Self {
        let powers = (0..field.degree())
            .map(|i| {
                let mut v = vec![0; i + 1];
                v[i] = 1;
                field.element(v)
            })
            .collect();
        Embedding {
            source: field.clone(),
            target: field.clone(),
            powers,
        }
    }

    /// Canonical embedding of `source` into `target`.
    pub fn canonical(source: &FiniteField, target: &FiniteField) -> Result<Self> {
        if source.characteristic() != target.characteristic() || !target.degree().is_multiple_of(source.degree()) {
            return Err(Error::Domain(format!("{source:?} does not embed into {target:?}")));
        }
        if source == target {
            return Ok(Self::identity(source));
        }
        let ring = PolyRing::new(target.clone());
        let modulus = Poly::new(source.modulus().iter().map(|&c| target.element(vec![c])).collect());
        let image = roots(&ring, &modulus)?
            .into_iter()
            .next()
            .ok_or_else(|| Error::Consistency("source modulus has no root in target".into()))?;
        Ok(Self::with_generator_image(source, target, image))
    }

    /// Embedding determined by an explicit image of the source generator,
    /// which must be a root of the source modulus.
    pub fn with_generator_image(source: &FiniteField, target: &FiniteField, image: FieldElement) -> Self {
        let mut powers = Vec::with_capacity(source.degree());
        let mut acc = target.one();
        for _ in 0..source.degree() {
            powers.push(acc.clone());
            acc = target.mul(&acc, &image);
        }
        Embedding {
            source: source.clone(),
            target: target.clone(),
            powers,
        }
    }

    pub fn source(&self) -> &FiniteField {
        &self.source
    }

    pub fn target(&self) -> &FiniteField {
        &self.target
    }

    pub fn generator_image(&self) -> FieldElement {
        if self.source.degree() == 1 {
            return self.target.zero();
        }
        self.powers[1].clone()
    }

    pub fn apply(&self, x: &FieldElement) -> FieldElement {
        let t = &self.target;
        x.coeffs()
            .iter()
            .zip(&self.powers)
            .fold(t.zero(), |acc, (&c, pw)| t.add(&acc, &t.scale(c, pw)))
    }

    pub fn apply_poly(&self, f: &Poly) -> Poly {
        PolyRing::map_coeffs(f, |c| self.apply(c))
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &Embedding) -> Result<Embedding> {
        if self.target != other.source {
            return Err(Error::Domain("embeddings do not compose".into()));
        }
        Ok(Embedding {
            source: self.source.clone(),
            target: other.target.clone(),
            powers: self.powers.iter().map(|x| other.apply(x)).collect(),
        })
    }
}
