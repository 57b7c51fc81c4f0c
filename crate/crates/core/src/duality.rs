//! Structure descriptors for `𝔭`-primary modules over `A_𝔭` and their
//! Pontryagin duals, plus the assembly of the λ-bound for fine Selmer groups.
//!
//! Every module is described up to isomorphism: a finite module
//! `⊕ A_𝔭/𝔭^{e_i}` by the multiset `{e_i}`, a cofinitely generated one by its
//! corank and finite part. The dual of `(F_𝔭/A_𝔭)^λ ⊕ F` is `A_𝔭^λ ⊕ F`.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `⊕_i A_𝔭/𝔭^{e_i}` with `#(A_𝔭/𝔭) = residue_size`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FiniteModule {
    pub residue_size: u64,
    factors: Vec<u32>,
}

impl FiniteModule {
    /// Zero exponents are dropped; the multiset is stored sorted.
    pub fn new(residue_size: u64, mut factors: Vec<u32>) -> Result<Self> {
        if residue_size < 2 || crate::algebra::int::prime_power(residue_size).is_none() {
            return Err(Error::Domain(format!(
                "residue size {residue_size} is not a prime power"
            )));
        }
        factors.retain(|&e| e > 0);
        factors.sort_unstable();
        Ok(FiniteModule { residue_size, factors })
    }

    pub fn trivial(residue_size: u64) -> Result<Self> {
        Self::new(residue_size, Vec::new())
    }

    pub fn factors(&self) -> &[u32] {
        &self.factors
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn cardinality(&self) -> BigUint {
        let total: u32 = self.factors.iter().sum();
        BigUint::from(self.residue_size).pow(total)
    }

    /// `dim_{F_𝔭} M[𝔭]`, the number of cyclic summands.
    pub fn p_rank(&self) -> usize {
        self.factors.len()
    }

    /// `M[𝔭^n] = ⊕ A_𝔭/𝔭^{min(e_i, n)}`.
    pub fn torsion(&self, n: u32) -> FiniteModule {
        FiniteModule {
            residue_size: self.residue_size,
            factors: self.factors.iter().map(|&e| e.min(n)).collect(),
        }
    }

    /// `M/𝔭^n M`, which for a finite module has the same shape as `M[𝔭^n]`.
    pub fn quotient(&self, n: u32) -> FiniteModule {
        let mut factors: Vec<u32> = self.factors.iter().map(|&e| e.min(n)).collect();
        factors.retain(|&e| e > 0);
        factors.sort_unstable();
        FiniteModule {
            residue_size: self.residue_size,
            factors,
        }
    }
}

/// `(F_𝔭/A_𝔭)^{corank} ⊕ finite_part`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CofinModule {
    pub corank: u32,
    pub finite_part: FiniteModule,
}

impl CofinModule {
    pub fn new(corank: u32, finite_part: FiniteModule) -> Self {
        CofinModule { corank, finite_part }
    }

    pub fn residue_size(&self) -> u64 {
        self.finite_part.residue_size
    }

    /// `dim_{F_𝔭} M[𝔭] = corank + #{e_i ≥ 1}`.
    pub fn p_torsion_dim(&self) -> usize {
        self.corank as usize + self.finite_part.p_rank()
    }

    /// `M[𝔭^n]`: `min(e_i, n)` for the finite part and `n` per divisible line.
    pub fn torsion(&self, n: u32) -> FiniteModule {
        let mut factors = self.finite_part.torsion(n).factors;
        factors.extend(std::iter::repeat_n(n, self.corank as usize));
        factors.sort_unstable();
        FiniteModule {
            residue_size: self.residue_size(),
            factors,
        }
    }
}

/// A `𝔭`-primary module given by descriptor.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Module {
    Finite(FiniteModule),
    Cofinite(CofinModule),
}

/// Descriptor of a Pontryagin dual.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Dual {
    /// A finite module is (non-canonically) isomorphic to its dual.
    Finite(FiniteModule),
    /// `A_𝔭^{free_rank} ⊕ torsion`, finitely generated over `A_𝔭`.
    Compact { free_rank: u32, torsion: FiniteModule },
}

/// `M^∨ = Hom_{A_𝔭}(M, F_𝔭/A_𝔭)` on descriptors.
pub fn dual(m: &Module) -> Dual {
    match m {
        Module::Finite(f) => Dual::Finite(f.clone()),
        Module::Cofinite(c) => Dual::Compact {
            free_rank: c.corank,
            torsion: c.finite_part.clone(),
        },
    }
}

impl Dual {
    /// Dualize back: `A_𝔭^λ ⊕ F` goes to `(F_𝔭/A_𝔭)^λ ⊕ F`.
    pub fn dual(&self) -> Module {
        match self {
            Dual::Finite(f) => Module::Finite(f.clone()),
            Dual::Compact { free_rank, torsion } => Module::Cofinite(CofinModule {
                corank: *free_rank,
                finite_part: torsion.clone(),
            }),
        }
    }

    /// `N/𝔭^n N`: `min(e_i, n)` for the torsion and `n` per free summand.
    pub fn quotient(&self, n: u32) -> FiniteModule {
        match self {
            Dual::Finite(f) => f.quotient(n),
            Dual::Compact { free_rank, torsion } => {
                let mut q = torsion.quotient(n);
                q.factors.extend(std::iter::repeat_n(n, *free_rank as usize));
                q.factors.sort_unstable();
                q
            }
        }
    }

    /// `λ`: the free rank over `A_𝔭`, read as a `Λ(A_𝔭)`-module with `μ = 0`.
    pub fn lambda(&self) -> u32 {
        match self {
            Dual::Finite(_) => 0,
            Dual::Compact { free_rank, .. } => *free_rank,
        }
    }
}

/// `(M[𝔭^n])^∨` and `N/𝔭^n N`, computed independently.
pub fn torsion_vs_quotient(m: &CofinModule, n: u32) -> Result<(Vec<u32>, Vec<u32>)> {
    if n == 0 {
        return Err(Error::Domain("n must be at least 1".into()));
    }
    let left = match dual(&Module::Finite(m.torsion(n))) {
        Dual::Finite(f) => f.factors,
        Dual::Compact { .. } => unreachable!(),
    };
    let n_dual = dual(&Module::Cofinite(m.clone()));
    let right = n_dual.quotient(n).factors;
    Ok((left, right))
}

/// Finiteness and λ-inequality report for `M` and `N = M^∨`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualityReport {
    /// `dim_{F_𝔭} M[𝔭]`.
    pub p_torsion_dim: usize,
    pub p_torsion_finite: bool,
    pub dual_finitely_generated: bool,
    pub dual_torsion: bool,
    pub dual_mu: u32,
    pub dual_lambda: u32,
    /// `λ ≤ dim M[𝔭]`.
    pub inequality_holds: bool,
    /// `λ = dim M[𝔭]`.
    pub equality: bool,
    pub finite_part_trivial: bool,
    /// Both sides of the equivalence agree and equality occurs exactly when
    /// the finite part is trivial.
    pub consistent: bool,
}

/// Check the finiteness equivalence and `λ ≤ dim M[𝔭]` on a descriptor.
pub fn finiteness_check(m: &CofinModule) -> DualityReport {
    let n = dual(&Module::Cofinite(m.clone()));
    let p_torsion_dim = m.p_torsion_dim();
    // every descriptor has finite M[𝔭]; its dual is A_𝔭^λ ⊕ F, which as a
    // Λ(A_𝔭)-module is finitely generated torsion with μ = 0
    let p_torsion_finite = true;
    let (dual_finitely_generated, dual_torsion, dual_mu) = (true, true, 0);
    let dual_lambda = n.lambda();
    // dim N/𝔭N equals dim M[𝔭]
    let reduced_dim = n.quotient(1).p_rank();
    let inequality_holds = (dual_lambda as usize) <= p_torsion_dim;
    let equality = dual_lambda as usize == p_torsion_dim;
    let finite_part_trivial = m.finite_part.is_trivial();
    let consistent = p_torsion_finite == (dual_finitely_generated && dual_torsion && dual_mu == 0)
        && reduced_dim == p_torsion_dim
        && inequality_holds
        && equality == finite_part_trivial;
    DualityReport {
        p_torsion_dim,
        p_torsion_finite,
        dual_finitely_generated,
        dual_torsion,
        dual_mu,
        dual_lambda,
        inequality_holds,
        equality,
        finite_part_trivial,
        consistent,
    }
}

/// Where a number in a report came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Computed,
    Input,
    Bound,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::Computed => "computed",
            Provenance::Input => "input",
            Provenance::Bound => "bound",
        }
    }
}

/// One local term `dim H^0` at a place `w` above `S`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct H0Term {
    pub place: String,
    pub dim: i64,
    pub provenance: Provenance,
}

/// `λ ≤ sel_dim + Σ_w dim H^0(w)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaBoundReport {
    pub sel_dim: u64,
    pub h0_terms: Vec<H0Term>,
    pub bound: u64,
}

/// Sum the residual Selmer dimension and the local terms. The report is an
/// upper bound; it never asserts tightness.
pub fn lambda_bound(sel_dim: i64, h0_terms: Vec<H0Term>) -> Result<LambdaBoundReport> {
    if sel_dim < 0 {
        return Err(Error::Domain(format!("sel_dim = {sel_dim} is negative")));
    }
    if let Some(t) = h0_terms.iter().find(|t| t.dim < 0) {
        return Err(Error::Domain(format!(
            "H^0 term at {} is negative ({})",
            t.place, t.dim
        )));
    }
    let bound = sel_dim as u64 + h0_terms.iter().map(|t| t.dim as u64).sum::<u64>();
    Ok(LambdaBoundReport {
        sel_dim: sel_dim as u64,
        h0_terms,
        bound,
    })
}
