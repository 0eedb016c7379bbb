use rug::{Complex, Float};
use zetakit::numerics::{mag, sum_series};
use zetakit::{PrecisionContext, StopRule};

#[test]
fn geometric_error_bound_holds() {
    let ctx = PrecisionContext::new(30).unwrap();
    let p = ctx.working_bits;
    // Σ 2^{-n}/(n+1) = 2 ln 2
    let v = sum_series(
        "geometric",
        |n| Complex::with_val(p, Float::with_val(p, Float::u_pow_u(2, n as u32)).recip() / (n as u32 + 1)),
        StopRule::Geometric { ratio: 0.5, window: 1 },
        &ctx,
    )
    .unwrap();
    let exact = Complex::with_val(p, Float::with_val(p, rug::float::Constant::Log2) * 2u32);
    assert!(v.abs_diff(&exact) <= v.err, "{} > {}", v.abs_diff(&exact), v.err);
    assert!(v.err < 1e-30);
}

#[test]
fn alternating_error_bound_holds() {
    let ctx = PrecisionContext::new(20).unwrap();
    let p = ctx.working_bits;
    // Σ (−1)^n/n! = 1/e
    let mut fact = Float::with_val(p, 1);
    let v = sum_series(
        "alternating",
        |n| {
            if n > 0 {
                fact *= n as u32;
            }
            let t = Float::with_val(p, fact.recip_ref());
            Complex::with_val(p, if n % 2 == 0 { t } else { -t })
        },
        StopRule::Alternating,
        &ctx,
    )
    .unwrap();
    let exact = Complex::with_val(p, Float::with_val(p, -1).exp());
    assert!(v.abs_diff(&exact) <= v.err);
}

#[test]
fn deterministic() {
    let ctx = PrecisionContext::new(40).unwrap();
    let p = ctx.working_bits;
    let run = || {
        sum_series(
            "squares",
            |n| Complex::with_val(p, Float::with_val(p, (n as u32 + 1) * (n as u32 + 1)).recip() * 0.9f64.powi(n as i32)),
            StopRule::Geometric { ratio: 0.9, window: 2 },
            &ctx,
        )
        .unwrap()
    };
    let (a, b) = (run(), run());
    assert_eq!(a.value, b.value);
    assert_eq!(a.terms_used, b.terms_used);
    assert!(mag(&a.value) > 0.0);
}
