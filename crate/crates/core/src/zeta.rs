//! L-polynomials of curves over `F_q` and class numbers along the constant
//! tower.
//!
//! With `L(u) = Π (1 − α_i u)`, the class number of the curve over
//! `F_{q^m}` is `Π (1 − α_i^m)`. Level `n` of the tower uses `m = p^n`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::algebra::int::{resultant, valuation, IntMatrix, IntPoly};
use crate::algebra::parse::parse_bivariate;
use crate::algebra::{Embedding, FieldElement, FiniteField, SmallField};
use crate::error::{Error, Result};

/// `1 + a_1 u + … + a_{2g} u^{2g}` with the functional equation
/// `a_{2g−i} = q^{g−i} a_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LPolynomial {
    q: u64,
    coeffs: Vec<BigInt>,
}

impl LPolynomial {
    pub fn new(q: u64, coeffs: Vec<BigInt>) -> Result<Self> {
        let l = LPolynomial { q, coeffs };
        l.validate().map_err(Error::Domain)?;
        Ok(l)
    }

    pub fn from_i64(q: u64, coeffs: &[i64]) -> Result<Self> {
        Self::new(q, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    fn validate(&self) -> std::result::Result<(), String> {
        if crate::algebra::int::prime_power(self.q).is_none() {
            return Err(format!("q = {} is not a prime power", self.q));
        }
        if self.coeffs.len().is_multiple_of(2) {
            return Err(format!(
                "L-polynomial must have odd length 2g+1, got {}",
                self.coeffs.len()
            ));
        }
        if !self.coeffs[0].is_one() {
            return Err("L-polynomial must have constant term 1".into());
        }
        let g = self.genus();
        let q = BigInt::from(self.q);
        for i in 0..g {
            let expected = num_traits::pow(q.clone(), g - i) * &self.coeffs[i];
            if self.coeffs[2 * g - i] != expected {
                return Err(format!(
                    "functional equation fails: a_{} = {} but q^{}·a_{} = {}",
                    2 * g - i,
                    self.coeffs[2 * g - i],
                    g - i,
                    i,
                    expected
                ));
            }
        }
        if !self.at_one().is_positive() {
            return Err(format!("L(1) = {} is not positive", self.at_one()));
        }
        Ok(())
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn genus(&self) -> usize {
        self.coeffs.len() / 2
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// `L(1)`, the class number of the curve over `F_q`.
    pub fn at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// `M(u) = u^{2g} L(1/u)`, monic with roots the inverse roots `α_i`.
    pub fn reciprocal(&self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().rev().cloned().collect())
    }
}

/// Reconstruct `L` from `N_1, …, N_g` via `k·a_k = Σ_{i=1}^{k} S_i a_{k−i}`,
/// `S_k = N_k − q^k − 1`, and the functional equation.
pub fn l_from_point_counts(q: u64, counts: &[u64]) -> Result<LPolynomial> {
    let g = counts.len();
    if g == 0 {
        return Err(Error::Domain("at least one point count is required".into()));
    }
    let qb = BigInt::from(q);
    let s: Vec<BigInt> = counts
        .iter()
        .enumerate()
        .map(|(k, &n)| BigInt::from(n) - num_traits::pow(qb.clone(), k + 1) - 1)
        .collect();
    let mut a = vec![BigInt::one()];
    for k in 1..=g {
        let num: BigInt = (1..=k).map(|i| &s[i - 1] * &a[k - i]).sum();
        let (quo, rem) = num.div_rem(&BigInt::from(k));
        if !rem.is_zero() {
            return Err(Error::InvalidCounts(format!("a_{k} = {num}/{k} is not an integer")));
        }
        a.push(quo);
    }
    for i in (0..g).rev() {
        a.push(num_traits::pow(qb.clone(), g - i) * &a[i]);
    }
    let l = LPolynomial { q, coeffs: a };
    l.validate().map_err(Error::InvalidCounts)?;
    Ok(l)
}

/// Largest `q^{2k}` for which [`PlaneCurve::count`] enumerates.
pub const MAX_ENUMERATION: u64 = 1 << 26;

/// An affine plane curve `f(x, y) = 0` over `F_q` with a declared number of
/// points at infinity on its smooth model.
#[derive(Clone, Debug)]
pub struct PlaneCurve {
    field: FiniteField,
    terms: Vec<((u32, u32), FieldElement)>,
    inf_correction: i64,
}

impl PlaneCurve {
    pub fn parse(q: u64, affine: &str, inf_correction: i64) -> Result<Self> {
        let field = FiniteField::with_order(q)?;
        let terms = parse_bivariate(affine, &field)?;
        Ok(PlaneCurve {
            field,
            terms,
            inf_correction,
        })
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    /// `N_k`: affine points over `F_{q^k}` plus the correction at infinity.
    pub fn count(&self, k: u32) -> Result<u64> {
        let q = self.field.order_u64().unwrap_or(u64::MAX);
        (k as u64)
            .checked_mul(2)
            .and_then(|e| u32::try_from(e).ok())
            .and_then(|e| q.checked_pow(e))
            .filter(|&n| n <= MAX_ENUMERATION && k >= 1)
            .ok_or_else(|| Error::Size(format!("q^(2k) = {q}^{} exceeds 2^26", 2 * k as u64)))?;
        let ext = FiniteField::new(self.field.characteristic(), self.field.degree() * k as usize)?;
        let emb = Embedding::canonical(&self.field, &ext)?;
        let table = SmallField::new(&ext)?;
        let order = table.order();
        let max_dx = self.terms.iter().map(|((dx, _), _)| *dx).max().unwrap_or(0);
        let max_dy = self.terms.iter().map(|((_, dy), _)| *dy).max().unwrap_or(0);
        let coeffs: Vec<((u32, u32), u32)> = self
            .terms
            .iter()
            .map(|(d, c)| (*d, table.index(&emb.apply(c))))
            .collect();
        let mut affine = 0u64;
        let mut x_pows = vec![0u32; max_dx as usize + 1];
        let mut by_y = vec![0u32; max_dy as usize + 1];
        for x in 0..order {
            x_pows[0] = 1;
            for i in 1..x_pows.len() {
                x_pows[i] = table.mul(x_pows[i - 1], x);
            }
            by_y.iter_mut().for_each(|c| *c = 0);
            for &((dx, dy), c) in &coeffs {
                let t = table.mul(c, x_pows[dx as usize]);
                by_y[dy as usize] = table.add(by_y[dy as usize], t);
            }
            for y in 0..order {
                let v = by_y.iter().rev().fold(0u32, |acc, &c| table.add(table.mul(acc, y), c));
                if v == 0 {
                    affine += 1;
                }
            }
        }
        let total = affine as i64 + self.inf_correction;
        u64::try_from(total).map_err(|_| Error::Domain(format!("negative point count {total} after correction")))
    }

    /// `L` from the counts `N_1, …, N_g`.
    pub fn l_polynomial(&self, genus: usize) -> Result<LPolynomial> {
        let q = self
            .field
            .order_u64()
            .ok_or_else(|| Error::Size("field too large".into()))?;
        if genus == 0 {
            return LPolynomial::from_i64(q, &[1]);
        }
        let counts = (1..=genus as u32).map(|k| self.count(k)).collect::<Result<Vec<_>>>()?;
        l_from_point_counts(q, &counts)
    }
}

/// One level of the class tower.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerLevel {
    pub n: u32,
    /// `h_n`, the class number over `F_{q^{p^n}}`.
    pub h: BigInt,
    /// `e_n = v_p(h_n)`.
    pub e: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassTower {
    pub l: LPolynomial,
    pub p: u64,
    pub levels: Vec<TowerLevel>,
}

impl ClassTower {
    pub fn exponents(&self) -> Vec<u64> {
        self.levels.iter().map(|l| l.e).collect()
    }

    pub fn class_numbers(&self) -> Vec<BigInt> {
        self.levels.iter().map(|l| l.h.clone()).collect()
    }
}

/// `|det(I − C^m)|` for the companion matrix `C` of `M`.
pub fn class_number_by_companion(l: &LPolynomial, m: u64) -> Result<BigInt> {
    let c = IntMatrix::companion(&l.reciprocal())?;
    let n = c.size();
    Ok(IntMatrix::identity(n).sub(&c.pow(m)).det().abs())
}

/// `|Res(M(u), u^m − 1)|`.
pub fn class_number_by_resultant(l: &LPolynomial, m: u64) -> Result<BigInt> {
    let m = usize::try_from(m).map_err(|_| Error::Size(format!("exponent {m} too large")))?;
    let mut coeffs = vec![BigInt::zero(); m + 1];
    coeffs[0] = BigInt::from(-1);
    coeffs[m] = BigInt::one();
    Ok(resultant(&l.reciprocal(), &IntPoly::new(coeffs))?.abs())
}

/// `h_n` and `e_n` for `n = 0..levels`, each computed two independent ways.
pub fn class_tower(l: &LPolynomial, p: u64, levels: u32) -> Result<ClassTower> {
    let (char_p, _) = crate::algebra::int::prime_power(l.q())
        .ok_or_else(|| Error::Domain(format!("q = {} is not a prime power", l.q())))?;
    if char_p != p {
        return Err(Error::Domain(format!(
            "p = {p} is not the characteristic of F_{}",
            l.q()
        )));
    }
    let mut out = Vec::with_capacity(levels as usize);
    for n in 0..levels {
        let m = p
            .checked_pow(n)
            .filter(|&m| m <= 1 << 16)
            .ok_or_else(|| Error::Size(format!("level {n} too deep")))?;
        let by_det = class_number_by_companion(l, m)?;
        let by_res = class_number_by_resultant(l, m)?;
        if by_det != by_res {
            return Err(Error::Consistency(format!(
                "h_{n}: companion determinant {by_det} != resultant {by_res}"
            )));
        }
        if n == 0 && by_det != l.at_one() {
            return Err(Error::Consistency(format!(
                "h_0 = {by_det} differs from L(1) = {}",
                l.at_one()
            )));
        }
        let e = valuation(&by_det, p)?
            .finite()
            .ok_or_else(|| Error::Consistency(format!("h_{n} = 0")))?;
        out.push(TowerLevel { n, h: by_det, e });
    }
    Ok(ClassTower {
        l: l.clone(),
        p,
        levels: out,
    })
}

/// The exponents `e_n′ = v_p(#Cl(F_n))`, an upper bound for the `p`-exponents
/// of the `S`-class groups since `Cl^S` is a quotient of `Cl`.
pub fn s_class_upper_bound(tower: &ClassTower) -> Vec<u64> {
    tower.exponents()
}

/// `h_n` as a `u64` when it fits; convenience for callers printing small values.
pub fn small(h: &BigInt) -> Option<u64> {
    h.to_u64()
}
