//! Exact partial r-Bell polynomials and the number families built on them.

pub mod bell;
pub mod calculus;
pub mod enumerate;
pub mod error;
pub mod families;
pub mod oracle;
pub mod polyring;
pub mod rbell;
pub mod stochastic;

pub use error::{Error, Result};
pub use polyring::{Poly, Rational, Series, VarId, VarKind};
