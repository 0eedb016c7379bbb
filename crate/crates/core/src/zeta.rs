//! Hurwitz, Riemann and alternating zeta functions by splitting the Mellin
//! integral at λ: incomplete Gamma values above λ, a Bernoulli (or Euler)
//! polynomial series below it.

use std::cell::RefCell;

use rug::ops::Pow;
use rug::{Complex, Float, Rational};

use crate::error::{Error, Result};
use crate::gamma::upper_gamma_complex;
use crate::numerics::{
    as_nonpositive_int, dist_to_nonpositive_int, mag, sum_series, ApproxValue, PrecisionContext, StopRule,
};
use crate::oracles::gamma_complex;
use crate::polynomials::euler_at_zero;

const LOG2_E: f64 = std::f64::consts::LOG2_E;
const TWO_PI: f64 = 2.0 * std::f64::consts::PI;
const PI: f64 = std::f64::consts::PI;

/// Distance from the boundary |z| = 1 below which the direct series refuse.
pub const BOUNDARY_MARGIN: f64 = 1e-6;

/// Radius around s = 1 where [`hurwitz_zeta`] refuses to evaluate.
pub const POLE_EXCLUSION: f64 = 1e-3;

/// Term counts of the two constituent sums of a splitting evaluation.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SplitTerms {
    pub incomplete_gamma: usize,
    pub coefficient: usize,
}

/// Which generating function the coefficients come from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Family {
    /// t e^{at}/(e^t − 1): c_m = B_m(a)/m!
    Bernoulli,
    /// 2e^{at}/(e^t + 1): c_m = E_m(a)/m!
    Euler,
}

/// Lazily generated c_m(a) = B_m(a)/m! or E_m(a)/m! in floating point.
///
/// Bernoulli: c_m = a^m/m! − Σ_{k=1}^{m} c_{m−k}/(k+1)!
/// Euler:     c_m = a^m/m! − ½ Σ_{k=1}^{m} c_{m−k}/k!
///
/// The convolution is cut once (radius)^k/k! drops below the working
/// precision, which keeps each c_m relatively accurate.
pub(crate) struct Coefficients {
    family: Family,
    prec: u32,
    a: Complex,
    a_pow: Complex,
    coeffs: Vec<Complex>,
    inv_fact: Vec<Float>,
    cut: usize,
}

impl Coefficients {
    pub(crate) fn new(family: Family, a: &Complex, prec: u32) -> Self {
        let radius = match family {
            Family::Bernoulli => TWO_PI,
            Family::Euler => PI,
        };
        let target = -(prec as f64) * std::f64::consts::LN_2 - 4.0;
        let mut cut = 1usize;
        let mut lg = 0.0;
        loop {
            lg += radius.ln() - (cut as f64 + 1.0).ln();
            if lg < target {
                break;
            }
            cut += 1;
        }
        Coefficients {
            family,
            prec,
            a: Complex::with_val(prec, a),
            a_pow: Complex::with_val(prec, 1),
            coeffs: Vec::new(),
            inv_fact: vec![Float::with_val(prec, 1)],
            cut: cut + 2,
        }
    }

    fn inv_fact(&mut self, n: usize) -> &Float {
        while self.inv_fact.len() <= n {
            let k = self.inv_fact.len() as u32;
            let next = Float::with_val(self.prec, &self.inv_fact[k as usize - 1] / k);
            self.inv_fact.push(next);
        }
        &self.inv_fact[n]
    }

    pub(crate) fn get(&mut self, m: usize) -> Complex {
        while self.coeffs.len() <= m {
            let n = self.coeffs.len();
            if n > 0 {
                self.a_pow *= &self.a;
                self.a_pow /= n as u32;
            }
            let mut c = self.a_pow.clone();
            let mut conv = Complex::new(self.prec);
            for k in 1..=n.min(self.cut) {
                let idx = match self.family {
                    Family::Bernoulli => k + 1,
                    Family::Euler => k,
                };
                let f = self.inv_fact(idx).clone();
                conv += Complex::with_val(self.prec, &self.coeffs[n - k] * &f);
            }
            match self.family {
                Family::Bernoulli => c -= conv,
                Family::Euler => c -= conv / 2u32,
            }
            self.coeffs.push(c);
        }
        self.coeffs[m].clone()
    }
}

fn check_lambda(lambda: f64, upper: f64, name: &str) -> Result<()> {
    if !(lambda > 0.0 && lambda < upper) {
        return Err(Error::domain(format!("{name} requires lambda in (0, {upper:.6}), got {lambda}")));
    }
    Ok(())
}

fn check_a(a: &Complex) -> Result<()> {
    if !(a.real().is_finite() && a.real().is_sign_positive() && !a.real().is_zero()) {
        return Err(Error::domain("requires Re a > 0"));
    }
    Ok(())
}

fn near_pole_bits(s: &Complex) -> u32 {
    let d = dist_to_nonpositive_int(s);
    if d < 1.0 && d > 0.0 {
        (-d.log2()).ceil() as u32
    } else {
        0
    }
}

/// Σ_{n≥0} sign(n) Γ(s, λ(n+a)) (n+a)^{−s}; `alternating` selects (−1)^n.
fn incomplete_gamma_sum(
    s: &Complex,
    a: &Complex,
    lambda: &Float,
    alternating: bool,
    ctx: &PrecisionContext,
) -> Result<ApproxValue> {
    let prec = ctx.working_bits;
    let neg_s = Complex::with_val(prec, -s);
    let failure: RefCell<Option<Error>> = RefCell::new(None);
    let gamma_err = RefCell::new(0.0f64);
    let sigma = s.real().to_f64();
    let lam = lambda.to_f64();
    let re_a = a.real().to_f64();
    let growth = (sigma - 1.0).abs() + sigma.abs() + 1.0;
    let tail = |n: usize, t: f64| -> Option<f64> {
        let u = n as f64 + re_a;
        if lam * u <= (sigma - 1.0).max(0.0) + 1.0 {
            return None;
        }
        let r = (-lam).exp() * (1.0 + 1.0 / u).powf(growth);
        (r < 0.95).then(|| t * r / (1.0 - r))
    };
    let sum = sum_series(
        "incomplete Gamma sum",
        |n| {
            if failure.borrow().is_some() {
                return Complex::new(prec);
            }
            let na = Complex::with_val(prec, a + n as u32);
            let x = Complex::with_val(prec, &na * lambda);
            match upper_gamma_complex(s, &x, ctx) {
                Ok(g) => {
                    let p = Complex::with_val(prec, (&na).pow(&neg_s));
                    *gamma_err.borrow_mut() += g.err * mag(&p);
                    let mut t = g.value * p;
                    if alternating && n % 2 == 1 {
                        t = -t;
                    }
                    t
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
    let sum = sum?;
    Ok(sum.with_extra_err(gamma_err.into_inner()))
}

/// Σ_m sign(m) c_m λ^{m+shift}/(m+shift) with c_m from `coeffs`.
///
/// `shift` is s−1 for the Bernoulli series and s for the Euler series; the
/// alternating sign (−1)^m is applied when `alternating`.
fn coefficient_sum(
    coeffs: &mut Coefficients,
    shift: &Complex,
    lambda: &Float,
    alternating: bool,
    ratio: f64,
    ctx: &PrecisionContext,
) -> Result<ApproxValue> {
    let prec = ctx.working_bits;
    let lam_c = Complex::with_val(prec, lambda);
    let mut lam_pow = Complex::with_val(prec, (&lam_c).pow(shift));
    sum_series(
        "splitting coefficient sum",
        |m| {
            if m > 0 {
                lam_pow *= lambda;
            }
            let c = coeffs.get(m);
            let den = Complex::with_val(prec, shift + m as u32);
            let mut t = Complex::with_val(prec, &c * &lam_pow) / den;
            if alternating && m % 2 == 1 {
                t = -t;
            }
            t
        },
        StopRule::Geometric { ratio, window: 4 },
        ctx,
    )
}

fn hurwitz_guard(s: &Complex, a: &Complex, lambda: f64) -> u32 {
    let abs_a = mag(a);
    let im_s = s.imag().to_f64().abs();
    let bits = (TWO_PI * abs_a + 2.0 * lambda * abs_a + PI * im_s / 2.0) * LOG2_E;
    bits.ceil() as u32 + 10 + near_pole_bits(s)
}

/// ζ(s, a) for Re a > 0, s ≠ 1, with λ = `ctx.lambda` ∈ (0, 2π):
///
/// Γ(s)ζ(s,a) = Σ_n Γ(s, λ(n+a))/(n+a)^s + Σ_m (−1)^m B_m(a)/m! · λ^{m+s−1}/(m+s−1).
///
/// Re a > 2 is first reduced into (0, 2] with ζ(s,a) = ζ(s,a−1) − (a−1)^{−s}.
pub fn hurwitz_zeta(s: &Complex, a: &Complex, ctx: &PrecisionContext) -> Result<ApproxValue> {
    hurwitz_zeta_with_terms(s, a, ctx).map(|(v, _)| v)
}

/// [`hurwitz_zeta`] together with the term counts of both sums.
pub fn hurwitz_zeta_with_terms(s: &Complex, a: &Complex, ctx: &PrecisionContext) -> Result<(ApproxValue, SplitTerms)> {
    ctx.check()?;
    check_lambda(ctx.lambda, TWO_PI, "hurwitz_zeta")?;
    check_a(a)?;
    if s.imag().is_zero() && *s.real() == 1 {
        return Err(Error::Pole("zeta(s, a) has a pole at s = 1".into()));
    }
    let s_m1 = Complex::with_val(53, s - 1u32);
    if mag(&s_m1) < POLE_EXCLUSION {
        return Err(Error::Pole(format!(
            "|s - 1| < {POLE_EXCLUSION}: use the Laurent data from the stieltjes module"
        )));
    }
    let prec = ctx.working_bits;

    // argument reduction into 0 < Re a ≤ 2
    let re_a = a.real().to_f64();
    let shift = if re_a > 2.0 { (re_a - 2.0).ceil() } else { 0.0 };
    if shift > ctx.max_terms as f64 {
        return Err(Error::MaxTermsExceeded {
            what: "hurwitz_zeta shift".into(),
            max_terms: ctx.max_terms,
        });
    }
    let shift = shift as u32;
    let a0 = Complex::with_val(prec, a - shift);
    let inner = ctx.elevated_checked(hurwitz_guard(s, &a0, ctx.lambda), "hurwitz_zeta")?;
    let wp = inner.working_bits;
    let mut correction = Complex::new(wp);
    let neg_s = Complex::with_val(wp, -s);
    for j in 0..shift {
        let base = Complex::with_val(wp, &a0 + j);
        correction -= Complex::with_val(wp, (&base).pow(&neg_s));
    }

    let mut coeffs = Coefficients::new(Family::Bernoulli, &a0, wp);
    if let Some(k) = as_nonpositive_int(s) {
        // ζ(−k, a) = −B_{k+1}(a)/(k+1) = −k!·c_{k+1}
        let k = (-k) as u32;
        let c = coeffs.get(k as usize + 1);
        let v = Complex::with_val(wp, &c * Float::with_val(wp, Float::factorial(k))) * -1i32 + &correction;
        let err = mag(&v) * 2f64.powi(-(wp as i32) + 8);
        return Ok((
            ApproxValue {
                value: Complex::with_val(prec, &v),
                err,
                terms_used: k as usize + 2,
                peak_magnitude: mag(&v),
            },
            SplitTerms {
                incomplete_gamma: 0,
                coefficient: k as usize + 2,
            },
        ));
    }

    let lambda = Float::with_val(wp, ctx.lambda);
    let big_a = incomplete_gamma_sum(s, &a0, &lambda, false, &inner)?;
    let s_minus_1 = Complex::with_val(wp, s - 1u32);
    let ratio = (ctx.lambda / TWO_PI * 1.02).min(0.999);
    let big_b = coefficient_sum(&mut coeffs, &s_minus_1, &lambda, true, ratio, &inner)?;
    let g = gamma_complex(s, wp)?;
    let total = Complex::with_val(wp, &big_a.value + &big_b.value);
    let z = Complex::with_val(wp, &total / &g) + &correction;
    let err = (big_a.err + big_b.err) / mag(&g) + mag(&z) * 2f64.powi(-(wp as i32) + 8);
    let terms = SplitTerms {
        incomplete_gamma: big_a.terms_used,
        coefficient: big_b.terms_used,
    };
    Ok((
        ApproxValue {
            value: Complex::with_val(prec, &z),
            err,
            terms_used: big_a.terms_used + big_b.terms_used,
            peak_magnitude: big_a.peak_magnitude.max(big_b.peak_magnitude),
        },
        terms,
    ))
}

/// Riemann ζ(s) = ζ(s, 1).
pub fn riemann_zeta(s: &Complex, ctx: &PrecisionContext) -> Result<ApproxValue> {
    let one = Complex::with_val(ctx.working_bits, 1);
    hurwitz_zeta(s, &one, ctx)
}

/// ζ(s) = η(s)/(1 − 2^{1−s}), for cross-checking; refuses when
/// |1 − 2^{1−s}| ≤ 10⁻³.
pub fn riemann_zeta_via_eta(s: &Complex, ctx: &PrecisionContext) -> Result<ApproxValue> {
    let prec = ctx.working_bits + 16;
    let two = Complex::with_val(prec, 2);
    let one_minus_s = Complex::with_val(prec, 1 - s);
    let factor = Complex::with_val(prec, 1) - Complex::with_val(prec, (&two).pow(&one_minus_s));
    if mag(&factor) <= 1e-3 {
        return Err(Error::domain("1 - 2^(1-s) is too close to zero for the eta route"));
    }
    let e = eta(s, ctx)?;
    let v = Complex::with_val(prec, &e.value / &factor);
    Ok(ApproxValue {
        value: Complex::with_val(ctx.working_bits, &v),
        err: e.err / mag(&factor),
        ..e
    })
}

/// η(−j) = (−1)^j E_j(0)/2, exactly.
pub fn eta_negint(j: u32) -> Rational {
    let e = euler_at_zero(j as usize);
    let v = e / 2u32;
    if j % 2 == 1 {
        -v
    } else {
        v
    }
}

/// η(s) for all complex s, λ = `ctx.lambda` ∈ (0, π):
///
/// Γ(s)η(s) = Σ_{m≥1} (−1)^{m−1} Γ(s, mλ)/m^s + ½ Σ_n E_n(0)/n! · λ^{n+s}/(n+s).
///
/// At nonpositive integers the exact value from [`eta_negint`] is returned.
pub fn eta(s: &Complex, ctx: &PrecisionContext) -> Result<ApproxValue> {
    check_lambda(ctx.lambda, PI, "eta")?;
    if let Some(k) = as_nonpositive_int(s) {
        let v = eta_negint((-k) as u32);
        return Ok(ApproxValue::exact(Complex::with_val(ctx.working_bits, (&v, 0))));
    }
    eta_series(s, ctx).map(|(v, _)| v)
}

/// The splitting series for η(s) without the exact nonpositive-integer
/// shortcut; fails at exact nonpositive integers (Γ(s) is infinite there).
pub fn eta_series(s: &Complex, ctx: &PrecisionContext) -> Result<(ApproxValue, SplitTerms)> {
    ctx.check()?;
    check_lambda(ctx.lambda, PI, "eta")?;
    if let Some(k) = as_nonpositive_int(s) {
        return Err(Error::Pole(format!(
            "Gamma(s) is infinite at s = {k}; use eta() for the limit value"
        )));
    }
    let prec = ctx.working_bits;
    let im_s = s.imag().to_f64().abs();
    let guard = (PI * im_s / 2.0 * LOG2_E).ceil() as u32 + 16;
    let inner = ctx.elevated_checked(guard, "eta_series")?;
    let wp = inner.working_bits;
    let lambda = Float::with_val(wp, ctx.lambda);

    // Σ_{m≥1}(−1)^{m−1}Γ(s,mλ)/m^s is the a = 1 alternating sum
    let one = Complex::with_val(wp, 1);
    let big_a = incomplete_gamma_sum(s, &one, &lambda, true, &inner)?;
    let zero = Complex::new(wp);
    let mut coeffs = Coefficients::new(Family::Euler, &zero, wp);
    let ratio = (ctx.lambda / PI * 1.02).min(0.999);
    let big_b = coefficient_sum(&mut coeffs, s, &lambda, false, ratio, &inner)?;
    let g = gamma_complex(s, wp)?;
    let total = Complex::with_val(wp, &big_b.value / 2u32) + &big_a.value;
    let v = Complex::with_val(wp, &total / &g);
    let err = (big_a.err + big_b.err / 2.0) / mag(&g) + mag(&v) * 2f64.powi(-(wp as i32) + 8);
    Ok((
        ApproxValue {
            value: Complex::with_val(prec, &v),
            err,
            terms_used: big_a.terms_used + big_b.terms_used,
            peak_magnitude: big_a.peak_magnitude.max(big_b.peak_magnitude),
        },
        SplitTerms {
            incomplete_gamma: big_a.terms_used,
            coefficient: big_b.terms_used,
        },
    ))
}

/// Σ_{n≥0} (−1)^n/(n+a)^s continued to all s, λ = `ctx.lambda` ∈ (0, π):
///
/// Γ(s)·value = Σ_{m≥0} (−1)^m Γ(s, λ(m+a))/(m+a)^s + ½ Σ_n E_n(1−a)/n! · λ^{n+s}/(n+s),
///
/// which equals 2^{−s}[ζ(s, a/2) − ζ(s, (a+1)/2)]. The value is returned
/// divided by Γ(s), so it is finite at s = 0, −1, −2, … (where it equals
/// E_k(a)/2 at s = −k).
pub fn hurwitz_half_diff(s: &Complex, a: &Complex, ctx: &PrecisionContext) -> Result<ApproxValue> {
    ctx.check()?;
    check_lambda(ctx.lambda, PI, "hurwitz_half_diff")?;
    check_a(a)?;
    let prec = ctx.working_bits;
    let one_minus_a = Complex::with_val(prec, 1 - a);
    let im_s = s.imag().to_f64().abs();
    let abs_x = mag(&one_minus_a);
    let guard = ((PI * abs_x + 2.0 * ctx.lambda * abs_x + PI * im_s / 2.0) * LOG2_E).ceil() as u32
        + 16
        + near_pole_bits(s);
    let inner = ctx.elevated_checked(guard, "hurwitz_half_diff")?;
    let wp = inner.working_bits;
    let mut coeffs = Coefficients::new(Family::Euler, &one_minus_a, wp);

    if let Some(k) = as_nonpositive_int(s) {
        // limit: (−1)^k k! · ½ · E_k(1−a)/k!
        let k = (-k) as u32;
        let c = coeffs.get(k as usize);
        let mut v = Complex::with_val(wp, &c * Float::with_val(wp, Float::factorial(k))) / 2u32;
        if k % 2 == 1 {
            v = -v;
        }
        return Ok(ApproxValue::new(Complex::with_val(prec, &v), mag(&v) * 2f64.powi(-(wp as i32) + 8)));
    }

    let lambda = Float::with_val(wp, ctx.lambda);
    let big_a = incomplete_gamma_sum(s, a, &lambda, true, &inner)?;
    let ratio = (ctx.lambda / PI * 1.02).min(0.999);
    let big_b = coefficient_sum(&mut coeffs, s, &lambda, false, ratio, &inner)?;
    let g = gamma_complex(s, wp)?;
    let total = Complex::with_val(wp, &big_b.value / 2u32) + &big_a.value;
    let v = Complex::with_val(wp, &total / &g);
    let err = (big_a.err + big_b.err / 2.0) / mag(&g) + mag(&v) * 2f64.powi(-(wp as i32) + 8);
    Ok(ApproxValue {
        value: Complex::with_val(prec, &v),
        err,
        terms_used: big_a.terms_used + big_b.terms_used,
        peak_magnitude: big_a.peak_magnitude.max(big_b.peak_magnitude),
    })
}

/// Φ(z, s, a) = Σ_{n≥0} zⁿ/(n+a)^s for |z| < 1 − 10⁻⁶, Re a > 0.
pub fn lerch_phi(z: &Complex, s: &Complex, a: &Complex, ctx: &PrecisionContext) -> Result<ApproxValue> {
    ctx.check()?;
    check_a(a)?;
    let abs_z = mag(z);
    if abs_z >= 1.0 - BOUNDARY_MARGIN {
        return Err(Error::domain(format!("lerch_phi requires |z| < 1 - {BOUNDARY_MARGIN:e}")));
    }
    let inner = ctx.elevated(8);
    let prec = inner.working_bits;
    let neg_s = Complex::with_val(prec, -s);
    let sigma = s.real().to_f64();
    let growth = sigma.abs() + s.imag().to_f64().abs() * 0.0 + 1.0;
    let re_a = a.real().to_f64();
    let abs_im_a = a.imag().to_f64().abs();
    let im_s = s.imag().to_f64().abs();
    let tail = |n: usize, t: f64| -> Option<f64> {
        let u = n as f64 + re_a;
        // |(n+1+a)^{−s}/(n+a)^{−s}| ≤ (1+1/u)^{|σ|} e^{|Im s|·|Im a|/u²}
        let r = abs_z * (1.0 + 1.0 / u).powf(growth) * (im_s * abs_im_a / (u * u)).exp();
        (r < 0.99).then(|| t * r / (1.0 - r))
    };
    let mut zp = Complex::with_val(prec, 1);
    let v = sum_series(
        "lerch_phi",
        |n| {
            if n > 0 {
                zp *= z;
            }
            let base = Complex::with_val(prec, a + n as u32);
            Complex::with_val(prec, &zp * Complex::with_val(prec, (&base).pow(&neg_s)))
        },
        StopRule::Tail(&tail),
        &inner,
    )?;
    Ok(v.rounded_to(ctx.working_bits))
}

/// Li_s(x) = Σ_{n≥1} xⁿ/n^s for real |x| < 1 − 10⁻⁶.
pub fn polylog(s: &Complex, x: &Float, ctx: &PrecisionContext) -> Result<ApproxValue> {
    let prec = ctx.working_bits;
    if x.is_zero() {
        return Ok(ApproxValue::exact(Complex::new(prec)));
    }
    let z = Complex::with_val(prec, x);
    let one = Complex::with_val(prec, 1);
    let phi = lerch_phi(&z, s, &one, ctx)?;
    let v = Complex::with_val(prec, &phi.value * x);
    Ok(ApproxValue {
        value: v,
        err: phi.err * x.to_f64().abs(),
        ..phi
    })
}
