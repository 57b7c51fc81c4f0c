//! Exact arithmetic: finite fields, polynomials over them, factorization,
//! integer polynomials with resultants, and small linear algebra.

pub mod embed;
pub mod factor;
pub mod field;
pub mod int;
pub mod linalg;
pub mod parse;
pub mod poly;
pub mod small_field;

pub use embed::Embedding;
pub use factor::{factor, factor_with_seed, is_irreducible, roots, Factorization};
pub use field::{FieldElement, FiniteField};
pub use int::{resultant, valuation, IntMatrix, IntPoly, Valuation};
pub use linalg::Matrix;
pub use poly::{Poly, PolyRing};
pub use small_field::SmallField;
