use proptest::prelude::*;
use rug::ops::Pow;
use rug::Complex;
use zetakit::numerics::mag;
use zetakit::oracles::zeta_em_auto;
use zetakit::zeta::{eta, hurwitz_zeta, riemann_zeta};
use zetakit::PrecisionContext;

fn rel(a: &Complex, b: &Complex) -> f64 {
    let d = Complex::with_val(a.prec().0, a - b);
    mag(&d) / mag(b).max(1e-300)
}

#[test]
fn lambda_invariance_grid() {
    let c = PrecisionContext::new(30).unwrap();
    for (sr, si) in [(-2.5, 0.0), (0.25, 0.0), (2.0, 3.0)] {
        for a in [0.3, 1.0, 2.7] {
            let s = c.complex(sr, si);
            let ac = c.complex(a, 0.0);
            let base = hurwitz_zeta(&s, &ac, &c.clone().with_lambda(1.0)).unwrap().value;
            for lambda in [0.5, 3.0, 6.0] {
                let v = hurwitz_zeta(&s, &ac, &c.clone().with_lambda(lambda)).unwrap().value;
                assert!(rel(&v, &base) < 1e-25, "s={sr}+{si}i a={a} lambda={lambda}");
            }
        }
    }
}

#[test]
fn eta_zeta_consistency() {
    let c = PrecisionContext::new(30).unwrap();
    let p = c.working_bits;
    for (sr, si) in [(0.5, 14.0), (-3.5, 0.0), (2.0, -1.0), (0.0, 0.0), (-4.0, 0.0)] {
        let s = c.complex(sr, si);
        let two = Complex::with_val(p, 2);
        let f = Complex::with_val(p, 1) - Complex::with_val(p, two.pow(&Complex::with_val(p, 1 - &s)));
        let lhs = f * riemann_zeta(&s, &c).unwrap().value;
        let rhs = eta(&s, &c).unwrap().value;
        assert!(mag(&Complex::with_val(p, &lhs - &rhs)) < 1e-26, "s={sr}+{si}i");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn shift_identity(sr in -4.0f64..4.0, si in -5.0f64..5.0, a in 0.05f64..3.0) {
        prop_assume!((sr - 1.0).abs() + si.abs() > 0.01);
        let c = PrecisionContext::new(25).unwrap();
        let p = c.working_bits;
        let s = c.complex(sr, si);
        let ac = c.complex(a, 0.0);
        let a1 = Complex::with_val(p, &ac + 1u32);
        let lhs = hurwitz_zeta(&s, &ac, &c).unwrap().value;
        let rhs = hurwitz_zeta(&s, &a1, &c).unwrap().value
            + Complex::with_val(p, (&ac).pow(&Complex::with_val(p, -&s)));
        prop_assert!(rel(&lhs, &rhs) < 1e-20);
    }

    #[test]
    fn agrees_with_euler_maclaurin(sr in -3.0f64..4.0, si in -8.0f64..8.0, ar in 0.1f64..4.0, ai in -1.0f64..1.0) {
        prop_assume!((sr - 1.0).abs() + si.abs() > 0.01);
        let c = PrecisionContext::new(25).unwrap();
        let s = c.complex(sr, si);
        let a = c.complex(ar, ai);
        let v = hurwitz_zeta(&s, &a, &c).unwrap().value;
        let o = zeta_em_auto(&s, &a, &c).unwrap().value;
        prop_assert!(rel(&v, &o) < 1e-20, "s={sr}+{si}i a={ar}+{ai}i");
    }
}
