//! Parsing of numeric command-line literals.

use rug::{Complex, Float};

#[derive(Debug)]
pub struct ParseError(pub String);

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

/// Parses a decimal or `p/q` rational into a Float.
pub fn parse_real(text: &str, prec: u32) -> Result<Float, ParseError> {
    let normalized = text.replace('\u{2212}', "-");
    let text = normalized.as_str();
    let bad = || ParseError(format!("invalid real literal '{text}'"));
    if text.is_empty() || text.contains(char::is_whitespace) {
        return Err(bad());
    }
    if let Some((p, q)) = text.split_once('/') {
        let p = parse_real(p, prec)?;
        let q = parse_real(q, prec)?;
        if q.is_zero() {
            return Err(ParseError(format!("zero denominator in '{text}'")));
        }
        return Ok(p / q);
    }
    let parsed = Float::parse(text).map_err(|_| bad())?;
    let v = Float::with_val(prec, parsed);
    if !v.is_finite() {
        return Err(bad());
    }
    Ok(v)
}

/// Parses `a`, `bi`, `a+bi` or `a-bi`.
pub fn parse_complex(text: &str, prec: u32) -> Result<Complex, ParseError> {
    let normalized = text.replace('\u{2212}', "-");
    let text = normalized.as_str();
    let Some(body) = text.strip_suffix('i') else {
        return Ok(Complex::with_val(prec, parse_real(text, prec)?));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => "1",
        "-" => "-1",
        other => other.strip_prefix('+').unwrap_or(other),
    };
    let re = parse_real(re, prec).map_err(|_| ParseError(format!("invalid complex literal '{text}'")))?;
    let im = parse_real(im, prec).map_err(|_| ParseError(format!("invalid complex literal '{text}'")))?;
    Ok(Complex::with_val(prec, (re, im)))
}

pub fn parse_order(text: &str) -> Result<u32, ParseError> {
    text.parse().map_err(|_| ParseError(format!("invalid non-negative integer '{text}'")))
}
