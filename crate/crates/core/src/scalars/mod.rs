//! Exact coefficient arithmetic.

mod gauss;
mod params;
mod poly;
mod ratfunc;
#[allow(clippy::module_inception)]
mod scalar;

pub use gauss::GaussRational;
pub use params::{ParamKind, ParameterSet};
pub use poly::{Poly, Var};
pub use ratfunc::RatFunc;
pub use scalar::{Basis, NilFactor, Parity, Scalar};
