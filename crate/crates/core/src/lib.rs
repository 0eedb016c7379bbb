//! Multiprecision zeta-family evaluation by Bernoulli splitting.
pub mod checks;
pub mod contour;
pub mod error;
pub mod gamma;
pub mod numerics;
pub mod oracles;
pub mod polynomials;
pub mod quadrature;
pub mod stieltjes;
pub mod zeta;

pub use error::{Error, Result};
pub use numerics::{ApproxValue, PrecisionContext, StopRule};
