//! Exact computer algebra for Rota-Baxter operators.
//!
//! * [`exactalg`]: rationals, sparse vectors, dense linear maps.
//! * [`rbalg`]: Rota-Baxter algebras and their axiom checks.
//! * [`rbmod`]: Rota-Baxter modules, bimodules and eigenspace splitting.
//! * [`urb`]: the operator ring `U_RB(R) ≅ R ⊕ (R ⊗ R)` and its modules.
//! * [`hopfconv`]: coalgebras, convolution and endomorphism algebras,
//!   rooted trees and Birkhoff factorization.
//!
//! Law checks return `Ok(false)` (or a [`LawReport`] with a
//! counterexample) when an identity fails; `Err` is reserved for malformed
//! input and precision exhaustion.

pub mod error;
pub mod exactalg;
pub mod hopfconv;
pub mod rbalg;
pub mod rbmod;
pub mod report;
pub mod sampling;
pub mod urb;

pub use error::{Result, RotaError};
pub use exactalg::{FreeVector, Key, LinearMap, Rational, TensorKey};
pub use rbalg::{Elem, LaurentSeries, RbAlgebra, RbHom, RotaBaxter};
pub use rbmod::{RbModule, RotaBaxterModule};
pub use report::LawReport;
pub use urb::{UrbElement, UrbKey};
