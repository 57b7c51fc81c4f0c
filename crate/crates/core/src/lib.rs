//! Exact computations around Drinfeld modules over `F_q(T)` and the Iwasawa
//! theory of constant `Z_p`-extensions of function fields.
//!
//! The crate is organised bottom-up:
//!
//! * [`algebra`]: finite fields, polynomials, factorization, resultants.
//! * [`skew`]: twisted polynomial rings `F{τ}` with `τa = a^q τ`.
//! * [`drinfeld`]: Drinfeld modules, reduction, torsion and Frobenius data.
//! * [`tower`]: places of `F_q(T)` and their behaviour in the constant tower.
//! * [`zeta`]: L-polynomials and class numbers along the tower.
//! * [`iwasawa`]: `Z_p[[T]]` elements, elementary modules, invariant fitting.
//! * [`duality`]: descriptors of `p`-primary modules and the λ-bound.
//! * [`cli`]: the `ffiwa` command line front end.

pub mod algebra;
pub mod cli;
pub mod drinfeld;
pub mod duality;
pub mod error;
pub mod iwasawa;
pub mod skew;
pub mod tower;
pub mod zeta;

pub use error::{Error, Result};
