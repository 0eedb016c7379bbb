//! Integrals of Dirichlet series along vertical lines,
//!
//!   I(c)   = ∫ ζ(c+it)/(c+it) dt,
//!   I_a(c) = ∫ η(c+it)/(c+it) dt,
//!   I_L(c) = ∫ Li_{c+it}(x)/(c+it) dt,
//!
//! and the power variant ∫ ζ(c+it)/(c+it)^p dt, evaluated in `f64`.
//!
//! A constant κ is split off the Dirichlet series; κ/s integrates to
//! π·sgn(c)·κ over the full line (principal value 0 at c = 0). The remainder
//! is integrated over [−T, T] against a raised-cosine window that is 1 on
//! [−T/2, T/2], which damps the slowly decaying oscillatory tail.

use std::f64::consts::PI;

use num_complex::Complex64;
use rug::Complex;

use crate::error::{Error, Result};
use crate::numerics::ApproxValue;
use crate::oracles::riemann_zeta_f64;
use crate::quadrature::adaptive_gl;

/// Smallest accepted truncation height.
pub const MIN_HEIGHT: f64 = 50.0;

/// Panel width of the quadrature, in t.
pub const PANEL_WIDTH: f64 = PI / 2.0;

/// Ratio of the second window used for the truncation estimate.
const SECOND_WINDOW: f64 = 0.8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum IntegrandKind {
    Zeta,
    Eta,
    /// Li_s(x) for real |x| < 1.
    Polylog(f64),
    /// ζ(s)/s^p.
    ZetaPower(u32),
}

impl IntegrandKind {
    fn power(&self) -> u32 {
        match self {
            IntegrandKind::ZetaPower(p) => *p,
            _ => 1,
        }
    }

    /// The Dirichlet series itself, without the 1/s^p factor.
    pub fn series(&self, s: Complex64) -> Complex64 {
        match *self {
            IntegrandKind::Zeta | IntegrandKind::ZetaPower(_) => riemann_zeta_f64(s),
            IntegrandKind::Eta => {
                let two = Complex64::new(2.0, 0.0);
                (Complex64::new(1.0, 0.0) - two.powc(Complex64::new(1.0, 0.0) - s)) * riemann_zeta_f64(s)
            }
            IntegrandKind::Polylog(x) => polylog_f64(s, x),
        }
    }
}

/// Li_s(x) = Σ xⁿ/n^s by direct summation, |x| < 1.
pub fn polylog_f64(s: Complex64, x: f64) -> Complex64 {
    let mut sum = Complex64::new(0.0, 0.0);
    let mut xn = 1.0;
    for n in 1..100_000u32 {
        xn *= x;
        let t = (-s * (n as f64).ln()).exp() * xn;
        sum += t;
        if t.norm() <= 1e-18 * sum.norm().max(1e-300) && xn.abs() * (n as f64).powf((-s.re).max(0.0)) < 1e-18 {
            break;
        }
    }
    sum
}

/// A closed-form component split off the integrand, with its exact
/// full-line value.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalyticPart {
    pub description: String,
    /// Coefficient κ of κ/s^p.
    pub kappa: f64,
    pub full_line_value: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LineIntegralSpec {
    pub c: f64,
    pub height: f64,
    pub quad_tol: f64,
    pub analytic_parts: Vec<AnalyticPart>,
    pub kind: IntegrandKind,
}

impl LineIntegralSpec {
    /// Spec for `kind` on Re s = `c`, truncated at |t| ≤ `height`.
    pub fn new(kind: IntegrandKind, c: f64, height: f64) -> Result<Self> {
        if !c.is_finite() {
            return Err(Error::domain("abscissa must be finite"));
        }
        if !(height >= MIN_HEIGHT && height.is_finite()) {
            return Err(Error::domain(format!("height must be at least {MIN_HEIGHT}")));
        }
        match kind {
            IntegrandKind::Zeta if c == 1.0 => return Err(Error::domain("zeta line integral needs c != 1")),
            IntegrandKind::ZetaPower(p) => {
                if p == 0 {
                    return Err(Error::domain("power must be at least 1"));
                }
                if c == 1.0 {
                    return Err(Error::domain("zeta line integral needs c != 1"));
                }
                if p >= 2 && c == 0.0 {
                    return Err(Error::domain("power p >= 2 needs c != 0"));
                }
            }
            IntegrandKind::Polylog(x) if !(x.abs() < 1.0) => {
                return Err(Error::domain("polylog line integral needs |x| < 1"))
            }
            _ => {}
        }
        let kappa = if kind.power() >= 2 {
            0.0
        } else if c == 0.0 {
            // κ = f(0) keeps the remainder regular at t = 0
            kind.series(Complex64::new(0.0, 0.0)).re
        } else {
            match kind {
                IntegrandKind::Polylog(x) => x,
                _ => 1.0,
            }
        };
        let full = if kind.power() >= 2 || c == 0.0 { 0.0 } else { PI * c.signum() * kappa };
        let description = match kind.power() {
            1 if c == 0.0 => format!("{kappa}/s (principal value)"),
            1 => format!("{kappa}/s"),
            p => format!("0/s^{p}"),
        };
        Ok(LineIntegralSpec {
            c,
            height,
            quad_tol: 1e-8,
            analytic_parts: vec![AnalyticPart {
                description,
                kappa,
                full_line_value: full,
            }],
            kind,
        })
    }

    pub fn with_quad_tol(mut self, tol: f64) -> Self {
        self.quad_tol = tol;
        self
    }

    /// The remainder f(s)/s^p − Σ κ/s^p at s = c + it.
    pub fn remainder(&self, t: f64) -> Complex64 {
        let s = Complex64::new(self.c, t);
        let p = self.kind.power();
        let kappa: f64 = self.analytic_parts.iter().map(|a| a.kappa).sum();
        let num = self.kind.series(s) - kappa;
        num / s.powu(p)
    }
}

/// A value of the form coefficient·π.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedForm {
    pub pi_coefficient: f64,
}

impl ClosedForm {
    pub fn value(&self) -> f64 {
        self.pi_coefficient * PI
    }
}

/// The closed-form value of the line integral in the regimes where it is
/// known: I(c) = −π (0<c<1), π (c>1); I_a(0) = 2π, I_a(c) = π (c>0);
/// I_L(c) = πx (c>0), −πx(1+x)/(1−x) (c<0).
pub fn expected_value(kind: IntegrandKind, c: f64) -> Result<ClosedForm> {
    let coef = match kind {
        IntegrandKind::Zeta | IntegrandKind::ZetaPower(1) => {
            if c > 0.0 && c < 1.0 {
                -1.0
            } else if c > 1.0 {
                1.0
            } else {
                return Err(Error::domain("I(c) is stated for 0 < c < 1 and c > 1"));
            }
        }
        IntegrandKind::Eta => {
            if c == 0.0 {
                2.0
            } else if c > 0.0 {
                1.0
            } else {
                return Err(Error::domain("I_a(c) is stated for c >= 0"));
            }
        }
        IntegrandKind::Polylog(x) => {
            if !(x.abs() < 1.0) {
                return Err(Error::domain("I_L(c) needs |x| < 1"));
            }
            if c > 0.0 {
                x
            } else if c < 0.0 {
                -x * (1.0 + x) / (1.0 - x)
            } else {
                return Err(Error::domain("I_L(c) is stated for c != 0"));
            }
        }
        IntegrandKind::ZetaPower(_) => {
            return Err(Error::domain("no closed form is asserted for p >= 2"));
        }
    };
    Ok(ClosedForm { pi_coefficient: coef })
}

fn window(t: f64, height: f64) -> f64 {
    let a = t.abs();
    let h = height / 2.0;
    if a <= h {
        1.0
    } else if a >= height {
        0.0
    } else {
        0.5 * (1.0 + (PI * (a - h) / h).cos())
    }
}

fn windowed_integral(spec: &LineIntegralSpec, height: f64, tol: f64) -> (Complex64, f64, usize) {
    let f = |t: f64| spec.remainder(t) * window(t, height);
    let q = adaptive_gl(&f, -height, height, PANEL_WIDTH, tol);
    (q.value, q.err, q.evals)
}

/// Evaluates the line integral of `spec`.
///
/// `err` combines the quadrature error with the change between the windows
/// of height T and 0.8·T.
pub fn evaluate(spec: &LineIntegralSpec) -> Result<ApproxValue> {
    if spec.height < MIN_HEIGHT {
        return Err(Error::domain(format!("height must be at least {MIN_HEIGHT}")));
    }
    if let IntegrandKind::Eta | IntegrandKind::Zeta | IntegrandKind::ZetaPower(_) = spec.kind {
        if spec.c < -10.0 {
            return Err(Error::TailBoundUnavailable(format!(
                "zeta-type integrand grows too fast on Re s = {}",
                spec.c
            )));
        }
    }
    let analytic: f64 = spec.analytic_parts.iter().map(|a| a.full_line_value).sum();
    let tol = spec.quad_tol * (analytic.abs() + 1.0);
    let (v1, e1, n1) = windowed_integral(spec, spec.height, tol);
    let (v2, e2, n2) = windowed_integral(spec, spec.height * SECOND_WINDOW, tol);
    if !(v1.re.is_finite() && v1.im.is_finite()) {
        return Err(Error::QuadratureFailure("non-finite line integral".into()));
    }
    let total = v1 + analytic;
    let err = e1 + e2 + (v1 - v2).norm();
    Ok(ApproxValue {
        value: Complex::with_val(53, (total.re, total.im)),
        err,
        terms_used: n1 + n2,
        peak_magnitude: v1.norm().max(analytic.abs()),
    })
}

/// ∫ ζ(c+it)/(c+it)^p dt over |t| ≤ `height` for 0 < c < 1.
pub fn evaluate_power(c: f64, p: u32, height: f64) -> Result<ApproxValue> {
    if !(c > 0.0 && c < 1.0) {
        return Err(Error::domain("evaluate_power needs 0 < c < 1"));
    }
    if p == 0 {
        return Err(Error::domain("power must be at least 1"));
    }
    evaluate(&LineIntegralSpec::new(IntegrandKind::ZetaPower(p), c, height)?)
}

/// Which of −π, −2π (if either) lies within `err` of `value`.
pub fn classify_power(value: f64, err: f64) -> Option<f64> {
    [-PI, -2.0 * PI].into_iter().find(|&cand| (value - cand).abs() <= err)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expected_value_examples() {
        assert_eq!(expected_value(IntegrandKind::Zeta, 0.5).unwrap().value(), -PI);
        assert_eq!(expected_value(IntegrandKind::Eta, 0.0).unwrap().value(), 2.0 * PI);
        assert_eq!(expected_value(IntegrandKind::Polylog(0.5), -1.0).unwrap().value(), -1.5 * PI);
        assert!(matches!(expected_value(IntegrandKind::Zeta, 1.0), Err(Error::Domain(_))));
    }

    #[test]
    fn spec_validation() {
        assert!(LineIntegralSpec::new(IntegrandKind::Zeta, 1.0, 100.0).is_err());
        assert!(LineIntegralSpec::new(IntegrandKind::Zeta, 2.0, 10.0).is_err());
        assert!(LineIntegralSpec::new(IntegrandKind::Polylog(1.0), 2.0, 100.0).is_err());
        let s = LineIntegralSpec::new(IntegrandKind::Eta, 0.0, 100.0).unwrap();
        assert_eq!(s.analytic_parts[0].kappa, 0.5);
        assert_eq!(s.analytic_parts[0].full_line_value, 0.0);
    }

    #[test]
    fn polylog_f64_matches_closed_forms() {
        let v = polylog_f64(Complex64::new(1.0, 0.0), 0.5);
        assert!((v.re - 2f64.ln()).abs() < 1e-15);
        let v = polylog_f64(Complex64::new(0.0, 0.0), 0.5);
        assert!((v.re - 1.0).abs() < 1e-15);
    }

    #[test]
    fn zeta_line_c2() {
        let spec = LineIntegralSpec::new(IntegrandKind::Zeta, 2.0, 200.0).unwrap();
        let v = evaluate(&spec).unwrap();
        assert!((v.re_f64() - PI).abs() < 5e-3, "{}", v.re_f64());
        assert!(v.im_f64().abs() <= v.err.max(1e-9));
    }

    #[test]
    fn classify() {
        assert_eq!(classify_power(-3.14, 0.01), Some(-PI));
        assert_eq!(classify_power(-6.28, 0.01), Some(-2.0 * PI));
        assert_eq!(classify_power(0.0, 0.01), None);
    }
}
