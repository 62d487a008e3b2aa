use lambert_tsallis::qdeform::cpow_principal;
use lambert_tsallis::{exp_q, exp_q_real, ln_q, qpow_transform, QValue};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::{rngs::StdRng, Rng, SeedableRng};

fn qv(q: f64) -> QValue {
    QValue::new(q).unwrap()
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm().max(1e-300)
}

#[test]
fn power_rule_on_principal_sheet() {
    let mut rng = StdRng::seed_from_u64(42);
    let mut checked = 0;
    while checked < 1000 {
        let q: f64 = rng.gen_range(-2.0..3.0);
        let omq = 1.0 - q;
        if omq.abs() < 1e-3 {
            continue;
        }
        let z = Complex64::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
        let r: f64 = rng.gen_range(-3.0..3.0);
        if r.abs() < 0.05 {
            continue;
        }
        // the rule holds while Log(exp_q z) = Log(base)/(1-q) stays on the principal strip
        let base = Complex64::new(1.0, 0.0) + z * omq;
        if base.norm() < 1e-3
            || base.arg().abs() >= std::f64::consts::PI * omq.abs().min(1.0) * 0.999
        {
            continue;
        }
        let lhs = cpow_principal(exp_q(qv(q), z).unwrap(), r);
        let rhs = exp_q(qpow_transform(qv(q), r).unwrap(), z * r).unwrap();
        assert!(rel(lhs, rhs) <= 1e-10, "q={q} z={z} r={r}: {lhs} vs {rhs}");
        checked += 1;
    }
}

#[test]
fn classical_limit_is_continuous() {
    for z in [
        Complex64::new(0.3, 0.0),
        Complex64::new(-1.2, 0.7),
        Complex64::new(2.0, -1.5),
    ] {
        let e = z.exp();
        for d in [1e-3, 1e-5, 1e-7, 1e-11, 1e-13] {
            for q in [1.0 - d, 1.0 + d] {
                let v = exp_q(qv(q), z).unwrap();
                assert!(rel(v, e) <= 10.0 * d * z.norm_sqr().max(1.0), "q={q} z={z}");
            }
        }
    }
}

proptest! {
    #[test]
    fn ln_q_inverts_exp_q(q in -2.0f64..3.0, x in 1e-3f64..1e3) {
        let l = ln_q(qv(q), x).unwrap();
        let back = exp_q_real(qv(q), l).unwrap();
        // rounding in (1-q) l is amplified by |l| / (1 + (1-q) l) = |l| / x^(1-q)
        let tol = 8.0 * f64::EPSILON * (1.0 + l.abs() / x.powf(1.0 - q));
        prop_assert!((back - x).abs() <= tol * x, "q={} x={} back={}", q, x, back);
    }

    #[test]
    fn real_and_complex_paths_agree(q in -2.0f64..3.0, w in -5.0f64..5.0) {
        let omq = 1.0 - q;
        prop_assume!(1.0 + omq * w > 1e-6);
        let r = exp_q_real(qv(q), w).unwrap();
        let c = exp_q(qv(q), Complex64::new(w, 0.0)).unwrap();
        prop_assert_eq!(c.im, 0.0);
        prop_assert!((c.re - r).abs() <= 1e-15 * r.abs());
    }

    #[test]
    fn exp_q_of_zero_is_one(q in -5.0f64..5.0) {
        prop_assert_eq!(exp_q_real(qv(q), 0.0).unwrap(), 1.0);
    }
}
