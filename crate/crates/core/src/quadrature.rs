//! Numerical integration.
//!
//! Multiprecision double-exponential (tanh-sinh) quadrature on finite
//! intervals, and an `f64` adaptive Gauss–Legendre rule used by the
//! line-integral module.

use num_complex::Complex64;
use rayon::prelude::*;
use rug::{Complex, Float};

use crate::error::{Error, Result};
use crate::numerics::mag;

/// Outcome of a quadrature: value, error estimate, integrand evaluations.
#[derive(Debug, Clone)]
pub struct Quadrature {
    pub value: Complex,
    pub err: f64,
    pub evals: usize,
}

/// Tanh-sinh quadrature of `f` over `[a, b]` at `prec` bits.
///
/// Levels are refined (halving the step) until two successive estimates
/// differ by at most `tol` relative to the result, or `max_level` is reached.
/// Nodes close to `a` are formed as `a + δ` with `δ` computed directly, so
/// integrable singularities at the left endpoint are resolved.
pub fn tanh_sinh<F>(mut f: F, a: &Float, b: &Float, tol: f64, prec: u32, max_level: u32) -> Result<Quadrature>
where
    F: FnMut(&Float) -> Complex,
{
    let half = Float::with_val(prec, b - a) / 2u32;
    let pi_2 = Float::with_val(prec, rug::float::Constant::Pi) / 2u32;
    // beyond t_max the nodes coincide with the endpoints at this precision
    let t_max = (2.0 * prec as f64 * std::f64::consts::LN_2 / std::f64::consts::FRAC_PI_2).asinh();

    let mut evals = 0usize;
    let node = |t: f64, f: &mut F, evals: &mut usize| -> Complex {
        let t = Float::with_val(prec, t);
        let u = Float::with_val(prec, t.sinh_ref()) * &pi_2;
        let ch = Float::with_val(prec, t.cosh_ref());
        let e2u = Float::with_val(prec, (Float::with_val(prec, &u * 2u32)).exp_ref());
        // distance from the nearer endpoint, 2·half/(1 + e^{2|u|})
        let (x, sech2) = if u.is_sign_negative() {
            let em = Float::with_val(prec, 1u32 / &e2u);
            let d = Float::with_val(prec, &half * 2u32) / (Float::with_val(prec, &em + 1u32));
            let x = Float::with_val(prec, a + &d);
            (x, Float::with_val(prec, 4u32 * &e2u) / Float::with_val(prec, (Float::with_val(prec, &e2u + 1u32)).square_ref()))
        } else {
            let d = Float::with_val(prec, &half * 2u32) / (Float::with_val(prec, &e2u + 1u32));
            let x = Float::with_val(prec, b - &d);
            (x, Float::with_val(prec, 4u32 * &e2u) / Float::with_val(prec, (Float::with_val(prec, &e2u + 1u32)).square_ref()))
        };
        let w = Float::with_val(prec, &half * &pi_2) * ch * sech2;
        if w.is_zero() || !w.is_finite() {
            return Complex::new(prec);
        }
        *evals += 1;
        let fx = f(&x);
        fx * w
    };

    let mut h = 1.0f64;
    let mut sum = node(0.0, &mut f, &mut evals);
    let mut k = 1i64;
    while (k as f64) * h <= t_max {
        let t = k as f64 * h;
        sum += node(t, &mut f, &mut evals);
        sum += node(-t, &mut f, &mut evals);
        k += 1;
    }
    let mut estimate = Complex::with_val(prec, &sum * h);
    let mut last_diff = f64::INFINITY;

    for _level in 1..=max_level {
        h /= 2.0;
        let mut k = 1i64;
        while (k as f64) * h <= t_max {
            let t = k as f64 * h;
            sum += node(t, &mut f, &mut evals);
            sum += node(-t, &mut f, &mut evals);
            k += 2;
        }
        let next = Complex::with_val(prec, &sum * h);
        let diff = mag(&Complex::with_val(prec, &next - &estimate));
        estimate = next;
        let scale = mag(&estimate).max(f64::MIN_POSITIVE);
        last_diff = diff;
        if diff <= tol * scale {
            return Ok(Quadrature {
                value: estimate,
                err: diff,
                evals,
            });
        }
    }
    Err(Error::QuadratureFailure(format!(
        "tanh-sinh did not reach relative tolerance {tol:e} (last change {last_diff:e})"
    )))
}

/// Tanh-sinh over consecutive panels `edges[i]..edges[i+1]`, summed in order.
pub fn tanh_sinh_panels<F>(mut f: F, edges: &[Float], tol: f64, prec: u32, max_level: u32) -> Result<Quadrature>
where
    F: FnMut(&Float) -> Complex,
{
    let mut value = Complex::new(prec);
    let mut err = 0.0;
    let mut evals = 0;
    for w in edges.windows(2) {
        let q = tanh_sinh(&mut f, &w[0], &w[1], tol, prec, max_level)?;
        value += &q.value;
        err += q.err;
        evals += q.evals;
    }
    Ok(Quadrature { value, err, evals })
}

/// Gauss–Legendre nodes and weights on [−1, 1] in `f64`.
pub fn gauss_legendre_f64(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        out.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    out
}

/// Adaptive panel quadrature result in `f64`.
#[derive(Debug, Clone, Copy)]
pub struct Quadrature64 {
    pub value: Complex64,
    pub err: f64,
    pub evals: usize,
}

fn rule(f: &(dyn Fn(f64) -> Complex64 + Sync), a: f64, b: f64, nodes: &[(f64, f64)]) -> Complex64 {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    nodes.iter().map(|&(x, w)| f(c + h * x) * w).sum::<Complex64>() * h
}

fn adapt(
    f: &(dyn Fn(f64) -> Complex64 + Sync),
    a: f64,
    b: f64,
    tol: f64,
    depth: u32,
    lo: &[(f64, f64)],
    hi: &[(f64, f64)],
) -> Quadrature64 {
    let g1 = rule(f, a, b, lo);
    let g2 = rule(f, a, b, hi);
    let err = (g2 - g1).norm();
    let evals = lo.len() + hi.len();
    if err <= tol || depth == 0 {
        return Quadrature64 { value: g2, err, evals };
    }
    let m = 0.5 * (a + b);
    let l = adapt(f, a, m, tol / 2.0, depth - 1, lo, hi);
    let r = adapt(f, m, b, tol / 2.0, depth - 1, lo, hi);
    Quadrature64 {
        value: l.value + r.value,
        err: l.err + r.err,
        evals: evals + l.evals + r.evals,
    }
}

/// Integrates `f` over `[a, b]` on panels no wider than `max_width`, each
/// refined by bisection until a 10- and 20-point Gauss–Legendre pair agree to
/// the panel's share of `tol`. Panels run in parallel; the reduction order is
/// fixed.
pub fn adaptive_gl(f: &(dyn Fn(f64) -> Complex64 + Sync), a: f64, b: f64, max_width: f64, tol: f64) -> Quadrature64 {
    let lo = gauss_legendre_f64(10);
    let hi = gauss_legendre_f64(20);
    let panels = (((b - a) / max_width).ceil() as usize).max(1);
    let w = (b - a) / panels as f64;
    let per = tol / panels as f64;
    let parts: Vec<Quadrature64> = (0..panels)
        .into_par_iter()
        .map(|i| {
            let pa = a + i as f64 * w;
            let pb = if i + 1 == panels { b } else { pa + w };
            adapt(f, pa, pb, per, 12, &lo, &hi)
        })
        .collect();
    parts.iter().fold(
        Quadrature64 {
            value: Complex64::new(0.0, 0.0),
            err: 0.0,
            evals: 0,
        },
        |acc, q| Quadrature64 {
            value: acc.value + q.value,
            err: acc.err + q.err,
            evals: acc.evals + q.evals,
        },
    )
}
