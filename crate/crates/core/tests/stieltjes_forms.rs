use proptest::prelude::*;
use rug::{Complex, Float};
use zetakit::numerics::mag;
use zetakit::stieltjes::{bernoulli_sum_closed, bernoulli_sum_direct, bernoulli_sum_t, gamma0, hyp2f1_unit};
use zetakit::zeta::lerch_phi;
use zetakit::PrecisionContext;

fn rel(a: &Complex, b: &Complex) -> f64 {
    let d = Complex::with_val(a.prec().0, a - b);
    mag(&d) / mag(b).max(1e-300)
}

#[test]
fn gamma0_lambda_invariance() {
    let c = PrecisionContext::new(30).unwrap();
    for a in [0.5, 1.0, 2.3] {
        let ac = c.complex(a, 0.0);
        let base = gamma0(&ac, &c).unwrap().value;
        for lambda in [0.5, 3.0] {
            let v = gamma0(&ac, &c.clone().with_lambda(lambda)).unwrap().value;
            assert!(rel(&v, &base) < 1e-26, "a={a} lambda={lambda}");
        }
    }
}

#[test]
fn lerch_and_hypergeometric_forms_agree() {
    // Φ(1/e, 1, a) = ₂F₁(1, a; a+1; 1/e)/a
    let c = PrecisionContext::new(30).unwrap();
    let p = c.working_bits;
    let w = Complex::with_val(p, Float::with_val(p, -1).exp());
    for a in [0.3, 1.0, 2.5] {
        let ac = c.complex(a, 0.0);
        let phi = lerch_phi(&w, &c.complex(1.0, 0.0), &ac, &c).unwrap().value;
        let f = hyp2f1_unit(&ac, &w, &c).unwrap().value / &ac;
        assert!(rel(&phi, &f) < 1e-26, "a={a}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn closed_forms_match_direct_summation(a in 0.05f64..3.0, t in -3.0f64..-0.05) {
        let c = PrecisionContext::new(25).unwrap();
        let ac = c.complex(a, 0.0);
        let closed = bernoulli_sum_closed(&ac, &c).unwrap().value;
        let direct = bernoulli_sum_direct(&ac, &c.complex(-1.0, 0.0), 1, &c).unwrap().value;
        prop_assert!(rel(&closed, &direct) < 1e-20);
        let closed_t = bernoulli_sum_t(&ac, &c.float(t), &c).unwrap().value;
        let direct_t = bernoulli_sum_direct(&ac, &c.complex(t, 0.0), 1, &c).unwrap().value;
        prop_assert!(rel(&closed_t, &direct_t) < 1e-20, "a={a} t={t}");
    }
}
