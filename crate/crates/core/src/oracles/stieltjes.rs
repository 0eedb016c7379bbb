//! Stieltjes constants from the Laurent expansion of ζ(s, a) about s = 1.

use rug::float::Constant;
use rug::ops::Pow;
use rug::{Complex, Float};

use crate::error::{Error, Result};
use crate::numerics::{mag, ApproxValue, PrecisionContext};
use crate::oracles::zeta_em::zeta_em_auto;

const CIRCLE_RADIUS: f64 = 0.25;
const MIN_NODES: usize = 16;
const MAX_NODES: usize = 1024;

/// γ_k(a) = (−1)^k k! · (1/2πi)∮ [ζ(s,a) − 1/(s−1)] (s−1)^(−k−1) ds on the
/// circle |s − 1| = 1/4, discretized by the trapezoidal rule with node
/// doubling from 16 until two successive values agree to the target.
pub fn stieltjes_laurent(k: u32, a: &Complex, ctx: &PrecisionContext) -> Result<ApproxValue> {
    if a.real().is_sign_negative() || a.real().is_zero() {
        return Err(Error::domain("stieltjes_laurent requires Re a > 0"));
    }
    let inner = ctx.elevated(8 + 3 * k);
    let prec = inner.working_bits;
    let r = Float::with_val(prec, CIRCLE_RADIUS);
    let two_pi = Float::with_val(prec, Constant::Pi) * 2u32;

    // f(1 + r e^{iθ_j}) e^{−ikθ_j} for θ_j = 2πj/n, cached across doublings
    let sample = |j: usize, n: usize| -> Result<Complex> {
        let theta = Float::with_val(prec, &two_pi * j as u32) / n as u32;
        let w = Complex::with_val(prec, (Float::with_val(prec, theta.cos_ref()), Float::with_val(prec, theta.sin_ref())));
        let h = Complex::with_val(prec, &w * &r);
        let s = Complex::with_val(prec, &h + 1u32);
        let z = zeta_em_auto(&s, a, &inner)?;
        let f = z.value - Complex::with_val(prec, h.recip_ref());
        let kt = Float::with_val(prec, &theta * k);
        let rot = Complex::with_val(prec, (Float::with_val(prec, kt.cos_ref()), -Float::with_val(prec, kt.sin_ref())));
        Ok(f * rot)
    };

    let mut n = MIN_NODES;
    let mut acc = Complex::new(prec);
    for j in 0..n {
        acc += sample(j, n)?;
    }
    let scale = {
        let mut c = Float::with_val(prec, Float::factorial(k));
        c /= Float::with_val(prec, (&r).pow(k));
        if k % 2 == 1 {
            c = -c;
        }
        c
    };
    let mut prev = Complex::with_val(prec, &acc / n as u32) * &scale;
    while n < MAX_NODES {
        let n2 = 2 * n;
        for j in (1..n2).step_by(2) {
            acc += sample(j, n2)?;
        }
        n = n2;
        let cur = Complex::with_val(prec, &acc / n as u32) * &scale;
        let diff = mag(&Complex::with_val(prec, &cur - &prev));
        let tol = ctx.target_tol() * 1e-3 * mag(&cur).max(1e-3);
        prev = cur;
        if diff <= tol {
            return Ok(ApproxValue {
                value: Complex::with_val(ctx.working_bits, &prev),
                err: diff,
                terms_used: n,
                peak_magnitude: 0.0,
            });
        }
    }
    Err(Error::ConvergenceFailure(format!(
        "Laurent coefficient k={k} did not settle within {MAX_NODES} nodes"
    )))
}

/// Limit-formula estimate of γ_k(a) in `f64`:
/// Σ_{n≤N} ln^k(n+a)/(n+a) − ln^{k+1}(N+a)/(k+1), with the endpoint half-term
/// removed and Richardson extrapolation over N, 2N, 4N.
pub fn stieltjes_limit(k: u32, a: f64, n: usize) -> ApproxValue {
    let f = |u: f64| u.ln().powi(k as i32) / u;
    let partial = |sum: f64, m: usize| {
        let u = m as f64 + a;
        sum - u.ln().powi(k as i32 + 1) / (k as f64 + 1.0) - 0.5 * f(u)
    };
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    let mut snapshots = Vec::with_capacity(3);
    let marks = [n, 2 * n, 4 * n];
    let mut next = 0;
    for m in 0..=4 * n {
        // Kahan summation
        let y = f(m as f64 + a) - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        if m == marks[next] {
            snapshots.push(partial(sum, m));
            next += 1;
            if next == marks.len() {
                break;
            }
        }
    }
    let (s1, s2, s4) = (snapshots[0], snapshots[1], snapshots[2]);
    let r1 = (4.0 * s2 - s1) / 3.0;
    let r2 = (4.0 * s4 - s2) / 3.0;
    let value = (16.0 * r2 - r1) / 15.0;
    ApproxValue {
        value: Complex::with_val(64, (value, 0.0)),
        err: (r2 - r1).abs() + (s4 - s2).abs() * 1e-3,
        terms_used: 4 * n + 1,
        peak_magnitude: sum.abs(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::gamma_fns::polygamma_complex;

    #[test]
    fn laurent_k0_is_minus_digamma() {
        let ctx = PrecisionContext::new(40).unwrap();
        for a in [1.0, 0.5, 3.0] {
            let ac = ctx.complex(a, 0.0);
            let g0 = stieltjes_laurent(0, &ac, &ctx).unwrap();
            let psi = polygamma_complex(0, &ac, ctx.working_bits).unwrap();
            assert!(g0.abs_diff(&(-psi)) < 1e-38, "a={a}");
        }
    }

    #[test]
    fn laurent_first_constants() {
        let ctx = PrecisionContext::new(30).unwrap();
        let one = ctx.complex(1.0, 0.0);
        let g1 = stieltjes_laurent(1, &one, &ctx).unwrap();
        assert!((g1.re_f64() - -0.0728158454836767248605863758749547830).abs() < 1e-16);
        let g2 = stieltjes_laurent(2, &one, &ctx).unwrap();
        assert!((g2.re_f64() - -0.00969036319287231848453038603521252935).abs() < 1e-17);
    }

    #[test]
    fn limit_formula_sanity() {
        let g = stieltjes_limit(0, 1.0, 1_000_000);
        assert!((g.re_f64() - 0.5772156649015329).abs() < 1e-6);
        let g = stieltjes_limit(0, 2.0, 1_000_000);
        assert!((g.re_f64() - (0.5772156649015329 - 1.0)).abs() < 1e-5);
        let g = stieltjes_limit(1, 1.0, 1_000_000);
        assert!((g.re_f64() - -0.0728158454836767).abs() < 1e-4);
    }

    #[test]
    fn laurent_agrees_with_limit_formula() {
        let ctx = PrecisionContext::new(20).unwrap();
        let half = ctx.complex(0.5, 0.0);
        for k in 0..=2 {
            let l = stieltjes_laurent(k, &half, &ctx).unwrap();
            let m = stieltjes_limit(k, 0.5, 200_000);
            assert!((l.re_f64() - m.re_f64()).abs() < 1e-4, "k={k}");
        }
    }
}
