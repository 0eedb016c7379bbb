//! Euler–Maclaurin evaluation of the Hurwitz zeta function.

use std::sync::OnceLock;

use num_complex::Complex64;
use rug::ops::Pow;
use rug::{Complex, Float};

use crate::error::{Error, Result};
use crate::numerics::{mag, ApproxValue, PrecisionContext};
use crate::polynomials::bernoulli_number;

/// Largest Bernoulli correction order accepted by [`zeta_em`].
pub const MAX_EM_ORDER: usize = 30;

/// ζ(s, a) = Σ_{n<N} (n+a)^(−s) + (N+a)^(1−s)/(s−1) + (N+a)^(−s)/2
/// + Σ_{k=1}^{M} B_{2k}/(2k)! · s(s+1)…(s+2k−2) (N+a)^(−s−2k+1).
///
/// `err` is the standard remainder bound
/// |s(s+1)…(s+2M) B_{2M+2}/(2M+2)! (N+a)^(−s−2M−1)| · |s+2M+1|/(σ+2M+1).
pub fn zeta_em(s: &Complex, a: &Complex, n: usize, m: usize, ctx: &PrecisionContext) -> Result<ApproxValue> {
    if s.imag().is_zero() && *s.real() == 1 {
        return Err(Error::Pole("zeta has a pole at s = 1".into()));
    }
    if a.real().is_sign_negative() || a.real().is_zero() {
        return Err(Error::domain("zeta_em requires Re a > 0"));
    }
    if m > MAX_EM_ORDER {
        return Err(Error::domain(format!("Euler-Maclaurin order M must be at most {MAX_EM_ORDER}")));
    }
    let prec = ctx.working_bits + 16;
    let neg_s = Complex::with_val(prec, -s);
    let mut sum = Complex::new(prec);
    let mut peak = 0.0f64;
    for k in 0..n {
        let base = Complex::with_val(prec, a + k as u32);
        let t = Complex::with_val(prec, (&base).pow(&neg_s));
        peak = peak.max(mag(&t));
        sum += t;
    }
    let na = Complex::with_val(prec, a + n as u32);
    let na_neg_s = Complex::with_val(prec, (&na).pow(&neg_s));
    let s_minus_1 = Complex::with_val(prec, s - 1u32);
    sum += Complex::with_val(prec, &na_neg_s * &na) / &s_minus_1;
    sum += Complex::with_val(prec, &na_neg_s / 2u32);

    let na_inv2 = Complex::with_val(prec, na.recip_ref()).square();
    // run = s(s+1)…(s+2k−2) (N+a)^(−s−2k+1), fact = (2k)!
    let mut run = Complex::with_val(prec, &na_neg_s / &na) * s;
    let mut fact = Float::with_val(prec, 2u32);
    for k in 1..=m {
        let b = Float::with_val(prec, &bernoulli_number(2 * k));
        sum += Complex::with_val(prec, &run * &b) / &fact;
        // advance to k+1
        let e = (2 * k) as u32;
        run *= Complex::with_val(prec, s + (e - 1));
        run *= Complex::with_val(prec, s + e);
        run *= &na_inv2;
        fact *= (e + 1) * (e + 2);
    }
    // run holds s…(s+2M) (N+a)^(−s−2M−1), fact holds (2M+2)!
    let b = Float::with_val(prec, &bernoulli_number(2 * m + 2)) / &fact;
    let sigma = s.real().to_f64();
    let extra = Complex::with_val(prec, s + (2 * m + 1) as u32);
    let denom = sigma + (2 * m + 1) as f64;
    let factor = if denom > 0.0 { mag(&extra) / denom } else { f64::INFINITY };
    let bound = mag(&Complex::with_val(prec, &run * &b)) * factor;
    let rounding = peak.max(mag(&sum)) * (n as f64 + 2.0 * m as f64 + 4.0) * 2f64.powi(-(prec as i32));
    Ok(ApproxValue {
        value: Complex::with_val(ctx.working_bits, sum),
        err: bound + rounding,
        terms_used: n + m,
        peak_magnitude: peak,
    })
}

/// Chooses (N, M) for the context target and evaluates [`zeta_em`].
pub fn zeta_em_auto(s: &Complex, a: &Complex, ctx: &PrecisionContext) -> Result<ApproxValue> {
    let (n, m) = em_parameters(s, ctx.tail_tol);
    zeta_em(s, a, n, m, ctx)
}

/// Smallest N (with M = 30) whose remainder estimate is below `tol`.
pub fn em_parameters(s: &Complex, tol: f64) -> (usize, usize) {
    let m = MAX_EM_ORDER;
    let abs_s = mag(s);
    let sigma = s.real().to_f64();
    let mut n = (s.imag().to_f64().abs().ceil() as usize).max(10);
    loop {
        // log of |s…(s+2M)| · 2/(2π)^{2M+2} · N^{−σ−2M−1}
        let mut lg = (2.0f64).ln() - (2 * m + 2) as f64 * (2.0 * std::f64::consts::PI).ln();
        for j in 0..=2 * m {
            lg += (abs_s + j as f64).ln();
        }
        lg -= (sigma + 2.0 * m as f64 + 1.0) * (n as f64).ln();
        if lg < tol.ln() - 5.0 || n > 1_000_000 {
            return (n, m);
        }
        n = n + n / 4 + 1;
    }
}

/// `f64` Euler–Maclaurin ζ(s, a) with N terms and M corrections.
pub fn zeta_em_f64(s: Complex64, a: f64, n: usize, m: usize) -> Complex64 {
    let mut sum = Complex64::new(0.0, 0.0);
    for k in 0..n {
        sum += (-s * (k as f64 + a).ln()).exp();
    }
    let na = n as f64 + a;
    let na_neg_s = (-s * na.ln()).exp();
    sum += na_neg_s * na / (s - 1.0) + na_neg_s * 0.5;
    let mut run = na_neg_s / na * s;
    let mut fact = 2.0;
    let table = bernoulli_even_f64();
    for k in 1..=m.min(MAX_EM_ORDER) {
        sum += run * table[k] / fact;
        let e = (2 * k) as f64;
        run *= (s + (e - 1.0)) * (s + e) / (na * na);
        fact *= (e + 1.0) * (e + 2.0);
    }
    sum
}

fn bernoulli_even_f64() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| (0..=MAX_EM_ORDER + 1).map(|k| bernoulli_number(2 * k).to_f64()).collect())
}

/// `f64` Riemann ζ(s) with the term count scaled to |Im s|.
pub fn riemann_zeta_f64(s: Complex64) -> Complex64 {
    let n = s.im.abs().ceil() as usize + 30;
    zeta_em_f64(s, 1.0, n, 8)
}
