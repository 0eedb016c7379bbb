//! Decimal rendering of multiprecision values.

use rug::float::Round;
use rug::{Complex, Float};

/// `x` rounded half-even to `digits` significant digits, trailing zeros removed.
pub fn real(x: &Float, digits: usize) -> String {
    if x.is_zero() {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let (neg, mantissa, exp) = x.to_sign_string_exp_round(10, Some(digits), Round::Nearest);
    let exp = exp.unwrap_or(0) as i64;
    let mantissa = mantissa.trim_end_matches('0');
    let n = mantissa.len() as i64;
    let sign = if neg { "-" } else { "" };
    // value = 0.mantissa × 10^exp
    let body = if exp > 0 && exp <= digits as i64 {
        if n <= exp {
            format!("{mantissa}{}", "0".repeat((exp - n) as usize))
        } else {
            format!("{}.{}", &mantissa[..exp as usize], &mantissa[exp as usize..])
        }
    } else if exp <= 0 && exp > -6 {
        format!("0.{}{mantissa}", "0".repeat((-exp) as usize))
    } else {
        let (head, tail) = mantissa.split_at(1);
        let point = if tail.is_empty() { String::new() } else { format!(".{tail}") };
        format!("{head}{point}e{}", exp - 1)
    };
    format!("{sign}{body}")
}

/// Real and imaginary parts; a part below 10^-digits of |z| prints as 0.
pub fn parts(z: &Complex, digits: usize) -> (String, String) {
    let scale = z.real().to_f64().abs().max(z.imag().to_f64().abs());
    let floor = scale * 10f64.powi(-(digits as i32));
    let show = |x: &Float| {
        if x.to_f64().abs() < floor {
            "0".to_string()
        } else {
            real(x, digits)
        }
    };
    (show(z.real()), show(z.imag()))
}

/// `re`, `re+imi` or `re-imi`.
pub fn complex(z: &Complex, digits: usize) -> String {
    let (re, im) = parts(z, digits);
    if im == "0" {
        return re;
    }
    if re == "0" {
        return format!("{im}i");
    }
    if im.starts_with('-') {
        format!("{re}{im}i")
    } else {
        format!("{re}+{im}i")
    }
}

/// Error bound with two significant digits.
pub fn err(e: f64) -> String {
    format!("{e:.1e}")
}
