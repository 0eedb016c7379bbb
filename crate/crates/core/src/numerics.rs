//! Precision bookkeeping and stoppable series summation.
//!
//! Every evaluation in the crate takes a [`PrecisionContext`] and returns an
//! [`ApproxValue`]: a complex number together with an engineering estimate of
//! its absolute error and a few diagnostics. Series are summed strictly in
//! ascending index order by [`sum_series`], which stops according to a
//! caller-declared [`StopRule`].

use std::fmt;

use rug::float::Round;
use rug::ops::AssignRound;
use rug::{Complex, Float};

use crate::error::{Error, Result};

/// log₂ 10.
pub const LOG2_10: f64 = std::f64::consts::LOG2_10;

/// Guard bits allotted on top of the target when a context is created.
pub const DEFAULT_GUARD_BITS: u32 = 32;

/// Largest supported target, keeps `tail_tol` representable as an `f64`.
pub const MAX_TARGET_DIGITS: u32 = 250;

/// Largest number of extra bits a single evaluation may request.
pub const MAX_GUARD_BITS: u32 = 20_000;

/// Rule mapping an anticipated cancellation ratio to extra working bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GuardPolicy {
    pub safety_margin_bits: u32,
}

impl Default for GuardPolicy {
    fn default() -> Self {
        GuardPolicy {
            safety_margin_bits: 10,
        }
    }
}

impl GuardPolicy {
    /// Extra bits needed to absorb a `peak / target` cancellation.
    pub fn bits_for(&self, peak: f64, target: f64) -> u32 {
        self.bits_for_log2((peak / target).log2())
    }

    /// Same as [`GuardPolicy::bits_for`] with the ratio given as log₂.
    pub fn bits_for_log2(&self, log2_ratio: f64) -> u32 {
        let excess = if log2_ratio.is_finite() && log2_ratio > 0.0 {
            log2_ratio.ceil() as u32
        } else {
            0
        };
        excess + self.safety_margin_bits
    }
}

/// `ceil(log₂(peak/target)) + 10`; requires `peak ≥ target > 0`.
pub fn guard_bits_for(peak: f64, target: f64) -> u32 {
    GuardPolicy::default().bits_for(peak, target)
}

/// Working precision and truncation policy threaded through all evaluations.
#[derive(Debug, Clone, PartialEq)]
pub struct PrecisionContext {
    /// Decimal digits of accuracy the caller wants.
    pub target_digits: u32,
    /// Binary precision of intermediates.
    pub working_bits: u32,
    pub guard_policy: GuardPolicy,
    /// Hard cap on the number of terms of any single series.
    pub max_terms: usize,
    /// Relative tail threshold used by the stop rules.
    pub tail_tol: f64,
    /// Splitting parameter λ of the Bernoulli/Euler splitting series.
    pub lambda: f64,
}

impl PrecisionContext {
    /// Context for `target_digits` decimal digits with λ = 1.
    pub fn new(target_digits: u32) -> Result<Self> {
        if target_digits == 0 || target_digits > MAX_TARGET_DIGITS {
            return Err(Error::domain(format!(
                "target_digits must lie in 1..={MAX_TARGET_DIGITS}, got {target_digits}"
            )));
        }
        let target_bits = digits_to_bits(target_digits);
        Ok(PrecisionContext {
            target_digits,
            working_bits: target_bits + DEFAULT_GUARD_BITS,
            guard_policy: GuardPolicy::default(),
            max_terms: 20_000,
            tail_tol: 10f64.powi(-(target_digits as i32)) * 2f64.powi(-20),
            lambda: 1.0,
        })
    }

    pub fn with_lambda(mut self, lambda: f64) -> Self {
        self.lambda = lambda;
        self
    }

    pub fn with_max_terms(mut self, max_terms: usize) -> Self {
        self.max_terms = max_terms;
        self
    }

    /// Copy of the context with `extra` more working bits and a tail tolerance
    /// tightened by the same factor.
    pub fn elevated(&self, extra: u32) -> Self {
        let mut ctx = self.clone();
        ctx.working_bits += extra;
        ctx.tail_tol = (self.tail_tol * 2f64.powi(-(extra as i32))).max(f64::MIN_POSITIVE);
        ctx
    }

    /// [`elevated`](Self::elevated), refusing requests above [`MAX_GUARD_BITS`].
    pub fn elevated_checked(&self, extra: u32, what: &str) -> Result<Self> {
        if extra > MAX_GUARD_BITS {
            return Err(Error::PrecisionLoss {
                what: what.into(),
                needed_bits: extra,
                available_bits: MAX_GUARD_BITS,
            });
        }
        Ok(self.elevated(extra))
    }

    pub fn target_bits(&self) -> u32 {
        digits_to_bits(self.target_digits)
    }

    /// Absolute tolerance 10^(−target_digits).
    pub fn target_tol(&self) -> f64 {
        10f64.powi(-(self.target_digits as i32))
    }

    /// Bits available to absorb cancellation.
    pub fn guard_budget(&self) -> u32 {
        self.working_bits.saturating_sub(self.target_bits())
    }

    pub fn check(&self) -> Result<()> {
        if self.max_terms == 0 {
            return Err(Error::domain("max_terms must be at least 1"));
        }
        if !(self.tail_tol > 0.0 && self.tail_tol < 1.0) {
            return Err(Error::domain("tail_tol must lie in (0, 1)"));
        }
        if self.working_bits < self.target_bits() + self.guard_policy.safety_margin_bits {
            return Err(Error::domain(
                "working_bits must cover the target plus the guard margin",
            ));
        }
        if !self.lambda.is_finite() {
            return Err(Error::domain("lambda must be finite"));
        }
        Ok(())
    }

    /// `Float` zero at working precision.
    pub fn float(&self, v: f64) -> Float {
        Float::with_val(self.working_bits, v)
    }

    pub fn complex(&self, re: f64, im: f64) -> Complex {
        Complex::with_val(self.working_bits, (re, im))
    }
}

pub fn digits_to_bits(digits: u32) -> u32 {
    (digits as f64 * LOG2_10).ceil() as u32
}

/// A complex value with an absolute error estimate and summation diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct ApproxValue {
    pub value: Complex,
    /// Upper estimate of the absolute error (engineering bound).
    pub err: f64,
    pub terms_used: usize,
    /// Largest partial-sum magnitude seen; large values relative to `value`
    /// signal cancellation.
    pub peak_magnitude: f64,
}

impl ApproxValue {
    pub fn exact(value: Complex) -> Self {
        let peak = mag(&value);
        ApproxValue {
            value,
            err: 0.0,
            terms_used: 0,
            peak_magnitude: peak,
        }
    }

    pub fn new(value: Complex, err: f64) -> Self {
        let peak = mag(&value);
        ApproxValue {
            value,
            err,
            terms_used: 0,
            peak_magnitude: peak,
        }
    }

    pub fn re(&self) -> &Float {
        self.value.real()
    }

    pub fn im(&self) -> &Float {
        self.value.imag()
    }

    pub fn re_f64(&self) -> f64 {
        self.value.real().to_f64()
    }

    pub fn im_f64(&self) -> f64 {
        self.value.imag().to_f64()
    }

    /// |value − other| as an `f64`.
    pub fn abs_diff(&self, other: &Complex) -> f64 {
        let d = Complex::with_val(self.value.prec().0.max(other.prec().0), &self.value - other);
        mag(&d)
    }

    /// Rounds the stored value to `bits` of precision, adding the rounding to `err`.
    pub fn rounded_to(mut self, bits: u32) -> Self {
        let before = mag(&self.value);
        self.value.set_prec(bits);
        self.err += before * 2f64.powi(-(bits as i32));
        self
    }

    pub fn with_extra_err(mut self, extra: f64) -> Self {
        self.err += extra;
        self
    }
}

impl fmt::Display for ApproxValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ± {:.2e}", self.value, self.err)
    }
}

/// How a series declares it may stop.
pub enum StopRule<'a> {
    /// Terms bounded by a geometric envelope of ratio `ratio < 1`; the tail is
    /// estimated from the largest of the last `window` terms (a window > 1
    /// survives parity zeros such as odd Bernoulli numbers).
    Geometric { ratio: f64, window: usize },
    /// Alternating series with eventually decreasing magnitudes; the tail is
    /// bounded by the magnitude of the last added term.
    Alternating,
    /// Caller-supplied analytic bound: `bound(n, |t_n|)` returns a bound on
    /// Σ_{k>n} |t_k|, or `None` while the bound is not yet valid.
    Tail(&'a dyn Fn(usize, f64) -> Option<f64>),
}

/// Sums `term(0) + term(1) + …` at the context's working precision.
///
/// The returned `err` is the truncation bound of the stop rule plus an
/// estimate of accumulated rounding, `peak · terms · 2^(−working_bits)`.
pub fn sum_series<F>(what: &str, mut term: F, rule: StopRule<'_>, ctx: &PrecisionContext) -> Result<ApproxValue>
where
    F: FnMut(usize) -> Complex,
{
    let prec = ctx.working_bits;
    let mut sum = Complex::new(prec);
    let mut peak = 0.0f64;
    let mut recent: Vec<f64> = Vec::new();
    let mut prev_mag = f64::INFINITY;

    for n in 0..ctx.max_terms {
        let t = term(n);
        sum += &t;
        let t_mag = mag(&t);
        let s_mag = mag(&sum);
        peak = peak.max(s_mag).max(t_mag);
        let scale = s_mag.max(peak * 2f64.powi(-(prec as i32)));

        let tail = match &rule {
            StopRule::Geometric { ratio, window } => {
                recent.push(t_mag);
                if recent.len() > (*window).max(1) {
                    recent.remove(0);
                }
                if *ratio < 1.0 && recent.len() == (*window).max(1) {
                    let env = recent.iter().cloned().fold(0.0, f64::max);
                    Some(env * ratio / (1.0 - ratio))
                } else {
                    None
                }
            }
            StopRule::Alternating => {
                let decreasing = t_mag <= prev_mag;
                prev_mag = t_mag;
                decreasing.then_some(t_mag)
            }
            StopRule::Tail(bound) => bound(n, t_mag),
        };

        if let Some(tail) = tail {
            if tail <= ctx.tail_tol * scale {
                return finish(what, sum, tail, n + 1, peak, ctx);
            }
        }
    }
    Err(Error::MaxTermsExceeded {
        what: what.to_string(),
        max_terms: ctx.max_terms,
    })
}

fn finish(what: &str, sum: Complex, tail: f64, terms: usize, peak: f64, ctx: &PrecisionContext) -> Result<ApproxValue> {
    let rounding = peak * terms as f64 * 2f64.powi(-(ctx.working_bits as i32));
    let s_mag = mag(&sum);
    if peak > 0.0 {
        let needed = if s_mag > 0.0 { (peak / s_mag).log2() } else { f64::INFINITY };
        if needed > ctx.guard_budget() as f64 {
            return Err(Error::PrecisionLoss {
                what: what.to_string(),
                needed_bits: if needed.is_finite() { needed.ceil() as u32 } else { u32::MAX },
                available_bits: ctx.guard_budget(),
            });
        }
    }
    Ok(ApproxValue {
        value: sum,
        err: tail + rounding,
        terms_used: terms,
        peak_magnitude: peak,
    })
}

/// |z| as an `f64` (saturates/underflows outside the `f64` range).
pub fn mag(z: &Complex) -> f64 {
    let (re, im) = (z.real().to_f64(), z.imag().to_f64());
    if re.is_finite() && im.is_finite() && (re != 0.0 || im != 0.0 || (z.real().is_zero() && z.imag().is_zero())) {
        re.hypot(im)
    } else {
        Float::with_val(64, z.abs_ref()).to_f64()
    }
}

/// |x| as an `f64`.
pub fn fmag(x: &Float) -> f64 {
    x.to_f64().abs()
}

/// log₂|z|, exact in exponent range (−∞ for zero).
pub fn mag_log2(z: &Complex) -> f64 {
    if z.real().is_zero() && z.imag().is_zero() {
        return f64::NEG_INFINITY;
    }
    let a = Float::with_val(64, z.abs_ref());
    let (m, e) = a.to_f64_exp();
    m.abs().log2() + e as f64
}

/// If `z` is exactly a nonpositive integer, returns it.
pub fn as_nonpositive_int(z: &Complex) -> Option<i64> {
    if !z.imag().is_zero() || !z.real().is_integer() || z.real().is_sign_positive() && !z.real().is_zero() {
        return None;
    }
    z.real().to_i32_saturating().map(|v| v as i64)
}

/// If `z` is exactly an integer (any sign), returns it.
pub fn as_int(z: &Complex) -> Option<i64> {
    if !z.imag().is_zero() || !z.real().is_integer() {
        return None;
    }
    let v = z.real().to_f64();
    (v.abs() < 1e15).then_some(v as i64)
}

/// Distance from `z` to the nearest nonpositive integer.
pub fn dist_to_nonpositive_int(z: &Complex) -> f64 {
    let re = z.real().to_f64();
    let im = z.imag().to_f64();
    let k = if re > 0.0 { 0.0 } else { re.round() };
    // exact distance for tiny offsets, which f64 cannot resolve from re alone
    let dre = if re > 0.0 {
        re
    } else {
        let kf = Float::with_val(z.prec().0, k);
        Float::with_val(z.prec().0, z.real() - &kf).to_f64()
    };
    dre.hypot(im)
}

/// Rounds a `Float` to `bits` (ties to even).
pub fn round_float(x: &Float, bits: u32) -> Float {
    let mut y = Float::new(bits);
    y.assign_round(x, Round::Nearest);
    y
}
