//! Exact Bernoulli and Euler numbers and polynomials.
//!
//! Everything here is exact rational arithmetic. Numbers and polynomials are
//! memoized behind `RwLock`s so concurrent readers share one table; writers
//! only ever append.
//!
//! Generating functions:
//!
//! ```text
//!   z e^{xz} / (e^z − 1) = Σ B_n(x) zⁿ/n!      |z| < 2π
//!   2 e^{xz} / (e^z + 1) = Σ E_n(x) zⁿ/n!      |z| < π
//! ```

use std::sync::{Arc, RwLock};

use rug::{Complex, Float, Integer, Rational};

/// Degree up to which polynomials are memoized.
pub const DEFAULT_DEGREE_CAP: usize = 256;

/// Polynomial with exact rational coefficients in ascending degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalPolynomial {
    coeffs: Vec<Rational>,
}

impl RationalPolynomial {
    /// Builds a polynomial, trimming trailing zero coefficients.
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(|c| *c == 0) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(Rational::new());
        }
        RationalPolynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> &Rational {
        self.coeffs.last().expect("never empty")
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::new();
        for c in self.coeffs.iter().rev() {
            acc *= x;
            acc += c;
        }
        acc
    }

    /// Horner evaluation with coefficients converted at `prec` bits.
    pub fn eval_complex(&self, x: &Complex, prec: u32) -> Complex {
        let mut acc = Complex::new(prec);
        for c in self.coeffs.iter().rev() {
            acc *= x;
            acc += Float::with_val(prec, c);
        }
        acc
    }

    /// Exact ∫₀¹ p(x) dx.
    pub fn integral_0_1(&self) -> Rational {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| Rational::from(c / Rational::from(k as u64 + 1)))
            .fold(Rational::new(), |acc, t| acc + t)
    }
}

fn binomial(n: u64, k: u64) -> Integer {
    Integer::from(Integer::binomial_u(n as u32, k as u32))
}

static BERNOULLI_NUMBERS: RwLock<Vec<Rational>> = RwLock::new(Vec::new());

/// Exact Bernoulli number B_n (convention B₁ = −1/2).
///
/// Filled by the recurrence Σ_{k<n} C(n+1,k) B_k = −(n+1) B_n.
pub fn bernoulli_number(n: usize) -> Rational {
    {
        let table = BERNOULLI_NUMBERS.read().expect("bernoulli table poisoned");
        if let Some(b) = table.get(n) {
            return b.clone();
        }
    }
    let mut table = BERNOULLI_NUMBERS.write().expect("bernoulli table poisoned");
    while table.len() <= n {
        let m = table.len();
        let b = if m == 0 {
            Rational::from(1)
        } else if m >= 3 && m % 2 == 1 {
            Rational::new()
        } else {
            let mut acc = Rational::new();
            for (k, bk) in table.iter().enumerate() {
                if *bk != 0 {
                    acc += Rational::from(bk * binomial(m as u64 + 1, k as u64));
                }
            }
            -acc / Rational::from(m as u64 + 1)
        };
        table.push(b);
    }
    table[n].clone()
}

static BERNOULLI_POLYS: RwLock<Vec<Arc<RationalPolynomial>>> = RwLock::new(Vec::new());
static EULER_POLYS: RwLock<Vec<Arc<RationalPolynomial>>> = RwLock::new(Vec::new());

fn bernoulli_poly_uncached(n: usize) -> RationalPolynomial {
    // B_n(x) = Σ_k C(n,k) B_k x^{n−k}
    let mut coeffs = vec![Rational::new(); n + 1];
    for k in 0..=n {
        let bk = bernoulli_number(k);
        if bk != 0 {
            coeffs[n - k] = bk * binomial(n as u64, k as u64);
        }
    }
    RationalPolynomial::new(coeffs)
}

/// Exact Bernoulli polynomial B_n(x); memoized for n ≤ [`DEFAULT_DEGREE_CAP`].
pub fn bernoulli_polynomial(n: usize) -> Arc<RationalPolynomial> {
    if n > DEFAULT_DEGREE_CAP {
        return Arc::new(bernoulli_poly_uncached(n));
    }
    {
        let cache = BERNOULLI_POLYS.read().expect("cache poisoned");
        if let Some(p) = cache.get(n) {
            return p.clone();
        }
    }
    let mut cache = BERNOULLI_POLYS.write().expect("cache poisoned");
    while cache.len() <= n {
        let m = cache.len();
        cache.push(Arc::new(bernoulli_poly_uncached(m)));
    }
    cache[n].clone()
}

/// Exact Euler polynomial E_n(x); memoized for n ≤ [`DEFAULT_DEGREE_CAP`].
///
/// Built from the generating-function recurrence
/// E_n(x) = xⁿ − ½ Σ_{k<n} C(n,k) E_k(x). Beyond the cap the Appell form
/// E_n(x) = Σ_k C(n,k) E_k(0) x^{n−k} is used instead.
pub fn euler_polynomial(n: usize) -> Arc<RationalPolynomial> {
    if n > DEFAULT_DEGREE_CAP {
        return Arc::new(euler_poly_appell(n));
    }
    {
        let cache = EULER_POLYS.read().expect("cache poisoned");
        if let Some(p) = cache.get(n) {
            return p.clone();
        }
    }
    let mut cache = EULER_POLYS.write().expect("cache poisoned");
    let half = Rational::from((1, 2));
    while cache.len() <= n {
        let m = cache.len();
        let mut coeffs = vec![Rational::new(); m + 1];
        coeffs[m] = Rational::from(1);
        for (k, ek) in cache.iter().enumerate() {
            let w = Rational::from(&half * binomial(m as u64, k as u64));
            for (j, c) in ek.coeffs().iter().enumerate() {
                coeffs[j] -= Rational::from(&w * c);
            }
        }
        cache.push(Arc::new(RationalPolynomial::new(coeffs)));
    }
    cache[n].clone()
}

fn euler_poly_appell(n: usize) -> RationalPolynomial {
    let mut coeffs = vec![Rational::new(); n + 1];
    for k in 0..=n {
        let ek = euler_at_zero(k);
        if ek != 0 {
            coeffs[n - k] = ek * binomial(n as u64, k as u64);
        }
    }
    RationalPolynomial::new(coeffs)
}

/// Exact E_n(0) from E_n(0) = −2(2^{n+1} − 1) B_{n+1}/(n+1), with E_0(0) = 1.
pub fn euler_at_zero(n: usize) -> Rational {
    if n == 0 {
        return Rational::from(1);
    }
    let pow = (Integer::from(1) << (n as u32 + 1)) - 1u32;
    let b = bernoulli_number(n + 1);
    Rational::from(-2) * b * pow / Rational::from(n as u64 + 1)
}

/// Bernoulli numbers B_0..=B_n converted to `prec` bits.
pub fn bernoulli_floats(n: usize, prec: u32) -> Vec<Float> {
    bernoulli_number(n);
    let table = BERNOULLI_NUMBERS.read().expect("bernoulli table poisoned");
    table[..=n].iter().map(|b| Float::with_val(prec, b)).collect()
}
