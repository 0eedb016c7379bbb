//! Independent reference implementations.
//!
//! Everything here is computed by methods unrelated to the splitting series
//! of the main modules (Euler–Maclaurin summation, Stirling series, direct
//! quadrature, Cauchy integrals), so agreement between the two is evidence.

pub mod gamma_fns;
pub mod incgamma;
pub mod stieltjes;
pub mod zeta_em;

pub use gamma_fns::{
    digamma_ref, euler_gamma, gamma_complex, ln_gamma_complex, lngamma_ref, polygamma_complex, trigamma_ref,
    zeta2, zeta3,
};
pub use incgamma::{gamma_inc_deriv_quad, gamma_inc_quad, gamma_inc_quad_weighted};
pub use stieltjes::{stieltjes_laurent, stieltjes_limit};
pub use zeta_em::{riemann_zeta_f64, zeta_em, zeta_em_auto, zeta_em_f64};
