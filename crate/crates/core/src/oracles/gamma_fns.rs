//! Complex Γ, ln Γ and polygamma functions by shifted Stirling series.

use rug::float::Constant;
use rug::ops::Pow;
use rug::{Complex, Float};

use crate::error::{Error, Result};
use crate::numerics::{as_nonpositive_int, mag, ApproxValue, PrecisionContext};
use crate::polynomials::bernoulli_number;

/// Euler's constant γ at `prec` bits.
pub fn euler_gamma(prec: u32) -> Float {
    Float::with_val(prec, Constant::Euler)
}

/// ζ(2) = π²/6 at `prec` bits.
pub fn zeta2(prec: u32) -> Float {
    let pi = Float::with_val(prec, Constant::Pi);
    Float::with_val(prec, pi.square_ref()) / 6u32
}

/// ζ(3) at `prec` bits.
pub fn zeta3(prec: u32) -> Float {
    Float::with_val(prec, Float::zeta_u(3))
}

fn stirling_radius(prec: u32, n: u32) -> f64 {
    prec as f64 * std::f64::consts::LN_2 / (2.0 * std::f64::consts::PI) + n as f64 + 4.0
}

fn shift_count(z: &Complex, radius: f64) -> u32 {
    let re = z.real().to_f64();
    if re >= radius {
        0
    } else {
        (radius - re).ceil() as u32
    }
}

fn check_pole(z: &Complex, what: &str) -> Result<()> {
    if let Some(k) = as_nonpositive_int(z) {
        return Err(Error::Pole(format!("{what} has a pole at {k}")));
    }
    Ok(())
}

/// Stirling series for ln Γ(w), Re w large.
fn ln_gamma_stirling(w: &Complex, prec: u32) -> Complex {
    let half = Float::with_val(prec, 0.5);
    let ln2pi = Float::with_val(prec, Float::with_val(prec, Constant::Pi) * 2u32).ln() / 2u32;
    let lnw = Complex::with_val(prec, w.ln_ref());
    let mut s = Complex::with_val(prec, w - &half) * &lnw;
    s -= w;
    s += &ln2pi;
    let w2 = Complex::with_val(prec, w.square_ref());
    let mut wp = Complex::with_val(prec, w.recip_ref());
    let eps = 2f64.powi(-(prec as i32));
    let mut prev = f64::INFINITY;
    for k in 1..400usize {
        let b = Float::with_val(prec, &bernoulli_number(2 * k));
        let den = (2 * k * (2 * k - 1)) as u32;
        let t = Complex::with_val(prec, &wp * &b) / den;
        let tm = mag(&t);
        if tm > prev {
            break;
        }
        s += &t;
        prev = tm;
        if tm <= eps * mag(&s) {
            break;
        }
        wp /= &w2;
    }
    s
}

/// Γ(z) for complex `z` off the nonpositive integers.
pub fn gamma_complex(z: &Complex, prec: u32) -> Result<Complex> {
    check_pole(z, "Gamma")?;
    let wp = prec + 24;
    let r = shift_count(z, stirling_radius(wp, 0));
    let mut w = Complex::with_val(wp, z);
    let mut prod = Complex::with_val(wp, (1, 0));
    for _ in 0..r {
        prod *= &w;
        w += 1u32;
    }
    let lg = ln_gamma_stirling(&w, wp);
    let g = Complex::with_val(wp, lg.exp_ref()) / prod;
    Ok(Complex::with_val(prec, g))
}

/// Principal ln Γ(z): the Stirling value at z+r minus Σ ln(z+j).
pub fn ln_gamma_complex(z: &Complex, prec: u32) -> Result<Complex> {
    check_pole(z, "lnGamma")?;
    let wp = prec + 24;
    let r = shift_count(z, stirling_radius(wp, 0));
    let mut w = Complex::with_val(wp, z);
    let mut logs = Complex::new(wp);
    for _ in 0..r {
        logs += Complex::with_val(wp, w.ln_ref());
        w += 1u32;
    }
    let lg = ln_gamma_stirling(&w, wp) - logs;
    Ok(Complex::with_val(prec, lg))
}

/// Polygamma ψ⁽ⁿ⁾(z); n = 0 is the digamma function.
pub fn polygamma_complex(n: u32, z: &Complex, prec: u32) -> Result<Complex> {
    check_pole(z, "polygamma")?;
    let wp = prec + 24 + 2 * n;
    let r = shift_count(z, stirling_radius(wp, n));
    let mut w = Complex::with_val(wp, z);
    let np1 = n as i32 + 1;
    let mut shift = Complex::new(wp);
    for _ in 0..r {
        let p = Complex::with_val(wp, (&w).pow(-np1));
        shift += p;
        w += 1u32;
    }
    let nfact = Float::with_val(wp, Float::factorial(n));
    let sign = if n % 2 == 0 { 1 } else { -1 };
    // ψ⁽ⁿ⁾(z) = ψ⁽ⁿ⁾(z+r) − (−1)ⁿ n! Σ (z+j)^(−n−1)
    let correction = shift * &nfact * sign;

    let eps = 2f64.powi(-(wp as i32));
    let winv = Complex::with_val(wp, w.recip_ref());
    let w2inv = Complex::with_val(wp, winv.square_ref());
    let mut asym;
    // wpow = w^{-(2k+n)} for the running k
    let mut wpow;
    if n == 0 {
        asym = Complex::with_val(wp, w.ln_ref()) - Complex::with_val(wp, &winv / 2u32);
        wpow = w2inv.clone();
    } else {
        let nm1 = Float::with_val(wp, Float::factorial(n - 1));
        let wn = Complex::with_val(wp, (&winv).pow(n));
        asym = Complex::with_val(wp, &wn * &nm1);
        asym += Complex::with_val(wp, &wn * &winv) * &nfact / 2u32;
        wpow = Complex::with_val(wp, &wn * &w2inv);
    }
    let mut prev = f64::INFINITY;
    for k in 1..600u32 {
        let b = Float::with_val(wp, &bernoulli_number(2 * k as usize));
        // B_{2k} (2k+n−1)!/(2k)!
        let coeff = if n == 0 {
            b / (2 * k)
        } else {
            let mut c = b;
            for j in (2 * k + 1)..=(2 * k + n - 1) {
                c *= j;
            }
            c
        };
        let t = Complex::with_val(wp, &wpow * &coeff);
        let tm = mag(&t);
        if tm > prev {
            break;
        }
        prev = tm;
        if n == 0 {
            asym -= &t;
        } else {
            asym += &t;
        }
        if tm <= eps * mag(&asym) {
            break;
        }
        wpow *= &w2inv;
    }
    if n > 0 && n % 2 == 0 {
        asym = -asym;
    }
    let out = asym - correction;
    Ok(Complex::with_val(prec, out))
}

fn wrap(v: Complex, ctx: &PrecisionContext) -> ApproxValue {
    let err = mag(&v) * 2f64.powi(-(ctx.working_bits as i32) + 4);
    ApproxValue::new(v, err)
}

/// Reference digamma ψ(a).
pub fn digamma_ref(a: &Complex, ctx: &PrecisionContext) -> Result<ApproxValue> {
    polygamma_complex(0, a, ctx.working_bits).map(|v| wrap(v, ctx))
}

/// Reference trigamma ψ′(a).
pub fn trigamma_ref(a: &Complex, ctx: &PrecisionContext) -> Result<ApproxValue> {
    polygamma_complex(1, a, ctx.working_bits).map(|v| wrap(v, ctx))
}

/// Reference principal ln Γ(a).
pub fn lngamma_ref(a: &Complex, ctx: &PrecisionContext) -> Result<ApproxValue> {
    ln_gamma_complex(a, ctx.working_bits).map(|v| wrap(v, ctx))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(prec: u32, re: f64, im: f64) -> Complex {
        Complex::with_val(prec, (re, im))
    }

    fn rel(a: &Complex, b: &Complex) -> f64 {
        mag(&Complex::with_val(a.prec().0, a - b)) / mag(b)
    }

    #[test]
    fn gamma_matches_mpfr_on_reals() {
        let prec = 200;
        for x in [0.5, 1.0, 2.5, 7.25, 33.0, -0.5, -3.75, -20.5] {
            let z = c(prec, x, 0.0);
            let g = gamma_complex(&z, prec).unwrap();
            let r = Float::with_val(prec, Float::with_val(prec, x).gamma_ref());
            assert!(rel(&g, &Complex::with_val(prec, &r)) < 1e-55, "x={x}");
        }
    }

    #[test]
    fn gamma_reflection_complex() {
        // Γ(z)Γ(1−z) = π / sin(πz)
        let prec = 200;
        let z = c(prec, 0.3, 2.0);
        let one_minus = Complex::with_val(prec, 1 - &z);
        let lhs = gamma_complex(&z, prec).unwrap() * gamma_complex(&one_minus, prec).unwrap();
        let pi = Float::with_val(prec, Constant::Pi);
        let rhs = Complex::with_val(prec, Complex::with_val(prec, &z * &pi).sin()).recip() * &pi;
        assert!(rel(&lhs, &rhs) < 1e-55);
    }

    #[test]
    fn lngamma_half() {
        let prec = 200;
        let v = ln_gamma_complex(&c(prec, 0.5, 0.0), prec).unwrap();
        let pi = Float::with_val(prec, Constant::Pi);
        let expect = Float::with_val(prec, pi.ln_ref()) / 2u32;
        assert!(rel(&v, &Complex::with_val(prec, &expect)) < 1e-55);
    }

    #[test]
    fn digamma_trigamma_examples() {
        let prec = 200;
        let one = c(prec, 1.0, 0.0);
        let psi = polygamma_complex(0, &one, prec).unwrap();
        let g = Complex::with_val(prec, -euler_gamma(prec));
        assert!(rel(&psi, &g) < 1e-55);
        let tri = polygamma_complex(1, &one, prec).unwrap();
        assert!(rel(&tri, &Complex::with_val(prec, zeta2(prec))) < 1e-55);
        // ψ''(1) = −2ζ(3)
        let p2 = polygamma_complex(2, &one, prec).unwrap();
        let z3 = Complex::with_val(prec, zeta3(prec) * -2i32);
        assert!(rel(&p2, &z3) < 1e-55);
        // ψ'''(1) = 6ζ(4) = π⁴/15
        let p3 = polygamma_complex(3, &one, prec).unwrap();
        let pi = Float::with_val(prec, Constant::Pi);
        let z4 = Float::with_val(prec, (&pi).pow(4u32)) / 15u32;
        assert!(rel(&p3, &Complex::with_val(prec, z4)) < 1e-55);
    }

    #[test]
    fn digamma_matches_mpfr() {
        let prec = 200;
        for x in [0.25, 3.7, 12.0, -1.5] {
            let v = polygamma_complex(0, &c(prec, x, 0.0), prec).unwrap();
            let r = Float::with_val(prec, Float::with_val(prec, x).digamma_ref());
            assert!(rel(&v, &Complex::with_val(prec, r)) < 1e-55, "x={x}");
        }
    }

    #[test]
    fn poles_are_reported() {
        assert!(matches!(gamma_complex(&c(64, -3.0, 0.0), 64), Err(Error::Pole(_))));
        assert!(matches!(polygamma_complex(0, &c(64, 0.0, 0.0), 64), Err(Error::Pole(_))));
    }
}
