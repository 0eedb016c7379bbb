//! Stieltjes constants γ₀(a), γ₁(a), γ₂(a) from the splitting series at
//! λ = 1, the closed and integral forms of the Bernoulli sums that appear in
//! them, and a splitting series for ln Γ.

use std::cell::RefCell;

use rug::ops::Pow;
use rug::{Complex, Float};

use crate::error::{Error, Result};
use crate::gamma::{asymptotic_switch, pfp_unit_complex, upper_gamma_complex};
use crate::numerics::{mag, sum_series, ApproxValue, PrecisionContext, StopRule};
use crate::oracles::{euler_gamma, polygamma_complex, zeta2, zeta3};
use crate::quadrature::tanh_sinh;
use crate::zeta::{Coefficients, Family};

const LOG2_E: f64 = std::f64::consts::LOG2_E;
const TWO_PI: f64 = 2.0 * std::f64::consts::PI;

/// Left end of the interval on which the integrand of
/// [`bernoulli_sum_dilog`] is replaced by its power series.
pub const DILOG_PATCH: f64 = -1e-3;

fn check_a(a: &Complex) -> Result<()> {
    if !(a.real().is_finite() && a.real().is_sign_positive() && !a.real().is_zero()) {
        return Err(Error::domain("requires Re a > 0"));
    }
    Ok(())
}

fn bernoulli_guard(a: &Complex, lambda: f64) -> u32 {
    ((TWO_PI + 2.0 * lambda) * mag(a) * LOG2_E).ceil() as u32 + 16
}

fn rounding(v: &Complex, prec: u32) -> f64 {
    mag(v) * 2f64.powi(-(prec as i32) + 8)
}

/// ₂F₁(1, a; a+1; w) = Σ_j a/(a+j) w^j for |w| < 1.
pub fn hyp2f1_unit(a: &Complex, w: &Complex, ctx: &PrecisionContext) -> Result<ApproxValue> {
    check_a(a)?;
    let r = mag(w);
    if r >= 1.0 {
        return Err(Error::domain("2F1(1, a; a+1; w) series requires |w| < 1"));
    }
    let prec = ctx.working_bits;
    let needed = ((prec as f64 * std::f64::consts::LN_2 + 10.0) / -r.ln()).ceil() as usize + 16;
    let inner = ctx.clone().with_max_terms(ctx.max_terms.max(needed));
    let mut wp = Complex::with_val(prec, 1);
    let tail = move |_: usize, t: f64| Some(t * r / (1.0 - r));
    sum_series(
        "2F1(1, a; a+1; w)",
        |j| {
            if j > 0 {
                wp *= w;
            }
            let q = Complex::with_val(prec, a / Complex::with_val(prec, a + j as u32));
            Complex::with_val(prec, &wp * &q)
        },
        StopRule::Tail(&tail),
        &inner,
    )
}

/// Σ_{m≥1} B_m(a)/m! · z^m/m^p by direct summation, |z| < 2π.
pub fn bernoulli_sum_direct(a: &Complex, z: &Complex, p: u32, ctx: &PrecisionContext) -> Result<ApproxValue> {
    check_a(a)?;
    let rz = mag(z);
    if rz >= TWO_PI {
        return Err(Error::domain("Bernoulli generating series requires |z| < 2π"));
    }
    let inner = ctx.elevated_checked(bernoulli_guard(a, rz / 2.0), "bernoulli sum")?;
    let prec = inner.working_bits;
    let mut coeffs = Coefficients::new(Family::Bernoulli, a, prec);
    let mut zp = Complex::with_val(prec, 1);
    let v = sum_series(
        "Bernoulli sum",
        |k| {
            let m = k + 1;
            zp *= z;
            let c = coeffs.get(m);
            let den = Float::with_val(prec, Float::with_val(prec, m as u32).pow(p));
            Complex::with_val(prec, &c * &zp) / den
        },
        StopRule::Geometric {
            ratio: (rz / TWO_PI * 1.02).min(0.999),
            window: 4,
        },
        &inner,
    )?;
    Ok(v.rounded_to(ctx.working_bits))
}

/// γ₀(a) = −ψ(a) = ln λ + γ + e^{−λa}Φ(e^{−λ}, 1, a) + Σ_{m≥1} (−1)^m B_m(a)λ^m/(m·m!),
/// λ = `ctx.lambda` ∈ (0, 2π).
pub fn gamma0(a: &Complex, ctx: &PrecisionContext) -> Result<ApproxValue> {
    ctx.check()?;
    check_a(a)?;
    let lam = ctx.lambda;
    if !(lam > 0.0 && lam < TWO_PI) {
        return Err(Error::domain(format!("gamma0 requires lambda in (0, 2π), got {lam}")));
    }
    let inner = ctx.elevated_checked(bernoulli_guard(a, lam), "bernoulli sum")?;
    let prec = inner.working_bits;
    let lambda = Float::with_val(prec, lam);

    // e^{−λa}Φ(e^{−λ},1,a) = e^{−λa} ₂F₁(1,a;a+1;e^{−λ})/a
    let w = Complex::with_val(prec, Float::with_val(prec, -&lambda).exp());
    let f = hyp2f1_unit(a, &w, &inner)?;
    let ea = Complex::with_val(prec, a * &lambda);
    let ea = Complex::with_val(prec, -ea).exp();
    let phi = Complex::with_val(prec, &f.value * &ea) / a;

    let neg_l = Complex::with_val(prec, -&lambda);
    let b = bernoulli_sum_direct(a, &neg_l, 1, &inner)?;

    let ln_l = Float::with_val(prec, lambda.ln_ref());
    let v = Complex::with_val(prec, &phi + &b.value) + ln_l + euler_gamma(prec);
    let err = f.err * mag(&ea) / mag(a) + b.err + rounding(&v, prec);
    Ok(ApproxValue {
        value: Complex::with_val(ctx.working_bits, &v),
        err,
        terms_used: f.terms_used + b.terms_used,
        peak_magnitude: f.peak_magnitude.max(b.peak_magnitude),
    })
}

/// Σ_{n≥0} Γ(0, n+a)/(n+a), summed directly.
pub fn gamma0_sum(a: &Complex, ctx: &PrecisionContext) -> Result<ApproxValue> {
    check_a(a)?;
    let prec = ctx.working_bits;
    let zero = Complex::new(prec);
    let failure: RefCell<Option<Error>> = RefCell::new(None);
    let gamma_err = RefCell::new(0.0f64);
    let r = (-1f64).exp() * 1.01;
    let tail = move |_: usize, t: f64| Some(t * r / (1.0 - r));
    let v = sum_series(
        "incomplete Gamma sum",
        |n| {
            if failure.borrow().is_some() {
                return Complex::new(prec);
            }
            let x = Complex::with_val(prec, a + n as u32);
            match upper_gamma_complex(&zero, &x, ctx) {
                Ok(g) => {
                    *gamma_err.borrow_mut() += g.err / mag(&x);
                    g.value / x
                }
                Err(e) => {
                    *failure.borrow_mut() = Some(e);
                    Complex::new(prec)
                }
            }
        },
        StopRule::Tail(&tail),
        ctx,
    );
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    Ok(v?.with_extra_err(gamma_err.into_inner()))
}

/// γ₁(a) = γ²/2 + γψ(a) + ζ(2)/2 − Σ_n Γ(0,n+a)/(n+a) + Σ_{m≥1} (−1)^m B_m(a)/(m²·m!).
pub fn gamma1(a: &Complex, ctx: &PrecisionContext) -> Result<ApproxValue> {
    ctx.check()?;
    check_a(a)?;
    let inner = ctx.elevated_checked(bernoulli_guard(a, 1.0), "bernoulli sum")?;
    let prec = inner.working_bits;
    let g = euler_gamma(prec);
    let psi = polygamma_complex(0, a, prec)?;
    let s1 = gamma0_sum(a, &inner)?;
    let minus_one = Complex::with_val(prec, -1);
    let s2 = bernoulli_sum_direct(a, &minus_one, 2, &inner)?;
    let g2 = Float::with_val(prec, g.square_ref()) / 2u32;
    let z2 = zeta2(prec) / 2u32;
    let v = Complex::with_val(prec, &psi * &g) + g2 + z2 - &s1.value + &s2.value;
    let err = s1.err + s2.err + rounding(&v, prec);
    Ok(ApproxValue {
        value: Complex::with_val(ctx.working_bits, &v),
        err,
        terms_used: s1.terms_used + s2.terms_used,
        peak_magnitude: s1.peak_magnitude.max(s2.peak_magnitude),
    })
}

/// Σ_n {−₃F₃(1,1,1;2,2,2;−x) + (1/x)[γ ln x + γ²/2 + ζ(2)/2 + ½ ln²x]}, x = n + a.
///
/// Each summand is exponentially small (≈ e^{−x}/x³) and is dropped once
/// x reaches [`asymptotic_switch`], with the dropped part added to `err`.
pub fn gamma2_braces_sum(a: &Complex, ctx: &PrecisionContext) -> Result<ApproxValue> {
    check_a(a)?;
    let prec = ctx.working_bits;
    let switch = asymptotic_switch(ctx);
    let g = euler_gamma(prec);
    let half_const = Float::with_val(prec, Float::with_val(prec, g.square_ref()) + zeta2(prec)) / 2u32;
    let one = Complex::with_val(prec, 1);
    let mut sum = Complex::new(prec);
    let mut err = 0.0;
    let mut peak = 0.0f64;
    let mut n = 0u32;
    loop {
        let x = Complex::with_val(prec, a + n);
        let rx = x.real().to_f64();
        if rx >= switch {
            // Σ_{k≥0} e^{−(rx+k)}/|x+k|³
            err += (-rx).exp() / mag(&x).powi(3) / (1.0 - (-1f64).exp());
            break;
        }
        if n as usize >= ctx.max_terms {
            return Err(Error::MaxTermsExceeded {
                what: "gamma2 braces sum".into(),
                max_terms: ctx.max_terms,
            });
        }
        let f = pfp_unit_complex(3, &one, &x, ctx)?;
        let l = Complex::with_val(prec, x.ln_ref());
        let mut bracket = Complex::with_val(prec, &l * &g);
        bracket += Complex::with_val(prec, l.square_ref()) / 2u32;
        bracket += &half_const;
        let t = Complex::with_val(prec, &bracket / &x) - &f.value;
        peak = peak.max(mag(&f.value));
        err += f.err;
        sum += t;
        n += 1;
    }
    err += peak * n as f64 * 2f64.powi(-(prec as i32));
    Ok(ApproxValue {
        value: sum,
        err,
        terms_used: n as usize,
        peak_magnitude: peak,
    })
}

/// γ₂(a) solved from
/// −γ³/6 − γζ(2)/2 − (γ²/2 + ζ(2)/2)ψ(a) + γγ₁(a) − ζ(3)/3 + γ₂(a)/2
///   = Σ_n {…} + Σ_{m≥1} (−1)^m B_m(a)/(m³·m!).
pub fn gamma2(a: &Complex, ctx: &PrecisionContext) -> Result<ApproxValue> {
    ctx.check()?;
    check_a(a)?;
    let inner = ctx.elevated_checked(bernoulli_guard(a, 1.0), "bernoulli sum")?;
    let prec = inner.working_bits;
    let g = euler_gamma(prec);
    let z2 = zeta2(prec);
    let z3 = zeta3(prec);
    let psi = polygamma_complex(0, a, prec)?;
    let g1 = gamma1(a, &inner)?;
    let braces = gamma2_braces_sum(a, &inner)?;
    let minus_one = Complex::with_val(prec, -1);
    let s3 = bernoulli_sum_direct(a, &minus_one, 3, &inner)?;

    let g_sq = Float::with_val(prec, g.square_ref());
    let g_cu = Float::with_val(prec, &g_sq * &g);
    let mut rhs = Complex::with_val(prec, &braces.value + &s3.value);
    rhs += g_cu / 6u32;
    rhs += Float::with_val(prec, &g * &z2) / 2u32;
    let coef = Float::with_val(prec, &g_sq + &z2) / 2u32;
    rhs += Complex::with_val(prec, &psi * &coef);
    rhs -= Complex::with_val(prec, &g1.value * &g);
    rhs += z3 / 3u32;
    let v = rhs * 2u32;
    let err = 2.0 * (braces.err + s3.err + g1.err * g.to_f64()) + rounding(&v, prec);
    Ok(ApproxValue {
        value: Complex::with_val(ctx.working_bits, &v),
        err,
        terms_used: braces.terms_used + s3.terms_used + g1.terms_used,
        peak_magnitude: braces.peak_magnitude,
    })
}

/// Σ_{m≥1} (−1)^m B_m(a)/(m·m!) = −(1/a)[e^{−a} ₂F₁(1,a;a+1;e^{−1}) + a(γ + ψ(a))].
pub fn bernoulli_sum_closed(a: &Complex, ctx: &PrecisionContext) -> Result<ApproxValue> {
    let prec = ctx.working_bits;
    bernoulli_sum_t(a, &Float::with_val(prec, -1), ctx)
}

/// Σ_{m≥1} B_m(a)/m! · t^m/m = −(1/a)[e^{at} ₂F₁(1,a;a+1;e^t) + a(γ + ln(−t) + ψ(a))], t < 0.
pub fn bernoulli_sum_t(a: &Complex, t: &Float, ctx: &PrecisionContext) -> Result<ApproxValue> {
    ctx.check()?;
    check_a(a)?;
    if !(t.is_finite() && t.is_sign_negative() && !t.is_zero()) {
        return Err(Error::domain("bernoulli_sum_t requires t < 0"));
    }
    let tf = t.to_f64();
    // e^{at}₂F₁ ≈ −a ln(−t) cancels against a ln(−t) as t → 0⁻
    let cancel = (1.0 + tf.abs().ln().abs()).log2().max(0.0) + 2.0 * mag(a) * tf.abs() * LOG2_E;
    let inner = ctx.elevated_checked(cancel.ceil() as u32 + 16, "bernoulli sum")?;
    let prec = inner.working_bits;
    let w = Complex::with_val(prec, Float::with_val(prec, t.exp_ref()));
    let f = hyp2f1_unit(a, &w, &inner)?;
    let eat = Complex::with_val(prec, a * t).exp();
    let mut inside = Complex::with_val(prec, &f.value * &eat);
    let lt = Float::with_val(prec, Float::with_val(prec, -t).ln_ref());
    let psi = polygamma_complex(0, a, prec)?;
    let tail = Complex::with_val(prec, psi + lt + euler_gamma(prec));
    inside += Complex::with_val(prec, &tail * a);
    let v = -(inside / a);
    let err = f.err * mag(&eat) / mag(a) + rounding(&v, prec) * (1.0 + mag(&f.value));
    Ok(ApproxValue {
        value: Complex::with_val(ctx.working_bits, &v),
        err,
        terms_used: f.terms_used,
        peak_magnitude: mag(&f.value),
    })
}

/// Σ_{m≥1} B_m(a)/m! · z^m/m² = ∫₀^z g(t) dt/t with g from [`bernoulli_sum_t`], z < 0.
///
/// The integrand is analytic at t = 0; on [[`DILOG_PATCH`], 0] it is
/// integrated term by term from its power series, on [z, DILOG_PATCH] by
/// tanh-sinh quadrature of the closed form.
pub fn bernoulli_sum_dilog(a: &Complex, z: &Float, ctx: &PrecisionContext) -> Result<ApproxValue> {
    ctx.check()?;
    check_a(a)?;
    let prec = ctx.working_bits;
    if z.is_zero() {
        return Ok(ApproxValue::exact(Complex::new(prec)));
    }
    if !(z.is_finite() && z.is_sign_negative()) {
        return Err(Error::domain("bernoulli_sum_dilog requires z < 0"));
    }
    if z.to_f64() >= DILOG_PATCH {
        return bernoulli_sum_direct(a, &Complex::with_val(prec, z), 2, ctx);
    }
    let e = Float::with_val(prec, DILOG_PATCH);
    let patch = bernoulli_sum_direct(a, &Complex::with_val(prec, &e), 2, ctx)?;
    let failure: RefCell<Option<Error>> = RefCell::new(None);
    let integrand = |t: &Float| -> Complex {
        if failure.borrow().is_some() {
            return Complex::new(prec);
        }
        match bernoulli_sum_t(a, t, ctx) {
            Ok(g) => g.value / t,
            Err(err) => {
                *failure.borrow_mut() = Some(err);
                Complex::new(prec)
            }
        }
    };
    let tol = ctx.target_tol() * 1e-2;
    let q = tanh_sinh(integrand, z, &e, tol, prec, 12);
    if let Some(err) = failure.into_inner() {
        return Err(err);
    }
    let q = q?;
    // ∫₀^z = ∫₀^e − ∫_z^e
    let v = Complex::with_val(prec, &patch.value - &q.value);
    Ok(ApproxValue {
        err: patch.err + q.err + rounding(&v, prec),
        value: v,
        terms_used: patch.terms_used + q.evals,
        peak_magnitude: mag(&q.value),
    })
}

/// Σ_{n≥0} Γ(0,n+a)/(n+a) = −(1/a) ∫₀^{1/e} u^{a−1}/ln u · ₂F₁(1,a;1+a;u) du.
pub fn gamma0_integral_form(a: &Complex, ctx: &PrecisionContext) -> Result<ApproxValue> {
    ctx.check()?;
    check_a(a)?;
    let inner = ctx.elevated(16);
    let prec = inner.working_bits;
    let am1 = Complex::with_val(prec, a - 1u32);
    let failure: RefCell<Option<Error>> = RefCell::new(None);
    let integrand = |u: &Float| -> Complex {
        if failure.borrow().is_some() || u.is_zero() {
            return Complex::new(prec);
        }
        let uc = Complex::with_val(prec, u);
        match hyp2f1_unit(a, &uc, &inner) {
            Ok(f) => {
                let p = Complex::with_val(prec, (&uc).pow(&am1));
                let lu = Float::with_val(prec, u.ln_ref());
                Complex::with_val(prec, &f.value * &p) / lu
            }
            Err(e) => {
                *failure.borrow_mut() = Some(e);
                Complex::new(prec)
            }
        }
    };
    let lo = Float::new(prec);
    let hi = Float::with_val(prec, Float::with_val(prec, -1).exp_ref());
    let tol = ctx.target_tol() * 1e-2;
    let q = tanh_sinh(integrand, &lo, &hi, tol, prec, 12);
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    let q = q?;
    let v = -(q.value / a);
    Ok(ApproxValue {
        value: Complex::with_val(ctx.working_bits, &v),
        err: q.err / mag(a) + rounding(&v, prec),
        terms_used: q.evals,
        peak_magnitude: mag(&v),
    })
}

/// ln Γ(x) = γ(1−x) − ln λ·(x−1) + Σ_n {Γ[0,λ(n+x)] − Γ[0,λ(n+1)]}
///           + Σ_{m≥2} (−1)^m [B_m(x) − B_m] λ^{m−1}/((m−1)·m!),
/// λ = `ctx.lambda` ∈ (0, 2π).
pub fn log_gamma_series(x: &Complex, ctx: &PrecisionContext) -> Result<ApproxValue> {
    ctx.check()?;
    check_a(x)?;
    let lam = ctx.lambda;
    if !(lam > 0.0 && lam < TWO_PI) {
        return Err(Error::domain(format!("log_gamma_series requires lambda in (0, 2π), got {lam}")));
    }
    let inner = ctx.elevated_checked(bernoulli_guard(x, lam), "bernoulli sum")?;
    let prec = inner.working_bits;
    let lambda = Float::with_val(prec, lam);
    let zero = Complex::new(prec);

    let min_re = x.real().to_f64().min(1.0);
    let failure: RefCell<Option<Error>> = RefCell::new(None);
    let gamma_err = RefCell::new(0.0f64);
    // |Γ(0,z)| ≤ e^{−Re z}/Re z
    let r = (-lam).exp();
    let tail = move |n: usize, _: f64| {
        let u = lam * (n as f64 + 1.0 + min_re);
        Some(2.0 * (-u).exp() / u / (1.0 - r))
    };
    let a_sum = sum_series(
        "incomplete Gamma differences",
        |n| {
            if failure.borrow().is_some() {
                return Complex::new(prec);
            }
            let zx = Complex::with_val(prec, Complex::with_val(prec, x + n as u32) * &lambda);
            let z1 = Complex::with_val(prec, Float::with_val(prec, &lambda * (n as u32 + 1)));
            match (upper_gamma_complex(&zero, &zx, &inner), upper_gamma_complex(&zero, &z1, &inner)) {
                (Ok(g1), Ok(g2)) => {
                    *gamma_err.borrow_mut() += g1.err + g2.err;
                    g1.value - g2.value
                }
                (Err(e), _) | (_, Err(e)) => {
                    *failure.borrow_mut() = Some(e);
                    Complex::new(prec)
                }
            }
        },
        StopRule::Tail(&tail),
        &inner,
    );
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    let a_sum = a_sum?.with_extra_err(gamma_err.into_inner());

    let mut cx = Coefficients::new(Family::Bernoulli, x, prec);
    let mut c0 = Coefficients::new(Family::Bernoulli, &zero, prec);
    let mut lp = Complex::with_val(prec, &lambda);
    let b_sum = sum_series(
        "Bernoulli differences",
        |k| {
            let m = k + 2;
            if k > 0 {
                lp *= &lambda;
            }
            let d = Complex::with_val(prec, &cx.get(m) - &c0.get(m));
            let mut t = Complex::with_val(prec, &d * &lp) / (m as u32 - 1);
            if m % 2 == 1 {
                t = -t;
            }
            t
        },
        StopRule::Geometric {
            ratio: (lam / TWO_PI * 1.02).min(0.999),
            window: 4,
        },
        &inner,
    )?;

    let xm1 = Complex::with_val(prec, x - 1u32);
    let ln_l = Float::with_val(prec, lambda.ln_ref());
    let g = euler_gamma(prec);
    let lin = Complex::with_val(prec, &xm1 * Float::with_val(prec, &g + &ln_l));
    let v = Complex::with_val(prec, &a_sum.value + &b_sum.value) - lin;
    let err = a_sum.err + b_sum.err + rounding(&v, prec);
    Ok(ApproxValue {
        value: Complex::with_val(ctx.working_bits, &v),
        err,
        terms_used: a_sum.terms_used + b_sum.terms_used,
        peak_magnitude: a_sum.peak_magnitude.max(b_sum.peak_magnitude),
    })
}
