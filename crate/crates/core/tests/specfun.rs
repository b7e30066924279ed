use bohr_core::specfun::{
    gauss_2f1, gauss_2f1_minus_one, lerch_phi, pochhammer, polylog, HypergeomParams,
};
use proptest::prelude::*;

#[test]
fn binomial_identity_on_grid() {
    for a in [0.5, 1.0, 2.0, 3.0] {
        let params = HypergeomParams::new(a, 1.0, 1.0).unwrap();
        for z in [-0.1f64, 0.1, -0.5, 0.5, 0.9] {
            let want = (1.0 - z).powf(-a);
            let got = gauss_2f1(&params, z).unwrap();
            assert!(
                (got - want).abs() <= 1e-12 * want.max(1.0),
                "a={a} z={z}: {got} vs {want}"
            );
        }
    }
}

#[test]
fn polylog_is_lerch_times_z() {
    for s in [0.0f64, 0.5, 1.0, 2.0, 3.0] {
        for z in [-0.9f64, -0.5, -0.1, 0.0, 0.1, 0.5, 0.9] {
            let li = polylog(s, z).unwrap();
            assert_eq!(li, z * lerch_phi(z, s, 1.0).unwrap());
            let direct: f64 = (1..=5000)
                .rev()
                .map(|k| z.powi(k) / (k as f64).powf(s))
                .sum();
            assert!(
                (li - direct).abs() <= 1e-12 * direct.abs().max(1.0),
                "s={s} z={z}"
            );
        }
    }
}

#[test]
fn known_values() {
    assert!((polylog(1.0, 0.5).unwrap() - 2f64.ln()).abs() < 1e-12);
    assert_eq!(polylog(2.0, 0.0).unwrap(), 0.0);
    assert!((polylog(0.0, 0.5).unwrap() - 1.0).abs() < 1e-12);
    assert_eq!(pochhammer(3.0, 0), 1.0);
    assert_eq!(pochhammer(1.0, 6), 720.0);
}

proptest! {
    #[test]
    fn term_recurrence(a in -3.0f64..3.0, b in -3.0f64..3.0, c in 0.1f64..4.0, n in 0usize..40) {
        let params = HypergeomParams::new(a, b, c).unwrap();
        let g0 = params.coefficient(n);
        let g1 = params.coefficient(n + 1);
        let ratio = (a + n as f64) * (b + n as f64) / ((c + n as f64) * (n as f64 + 1.0));
        prop_assert!((g1 - ratio * g0).abs() <= 1e-12 * g1.abs().max(g0.abs()).max(1e-300));
        prop_assert!((params.coefficient_ratio(n) - ratio).abs() <= 1e-15 * ratio.abs().max(1.0));
    }

    #[test]
    fn pochhammer_shift(x in -5.0f64..5.0, n in 0usize..15) {
        let lhs = pochhammer(x, n + 1);
        let rhs = pochhammer(x, n) * (x + n as f64);
        prop_assert!((lhs - rhs).abs() <= 1e-12 * lhs.abs().max(1.0));
    }

    #[test]
    fn minus_one_is_consistent(a in 0.1f64..3.0, b in 0.1f64..3.0, c in 0.1f64..4.0, z in -0.9f64..0.9) {
        let params = HypergeomParams::new(a, b, c).unwrap();
        let f = gauss_2f1(&params, z).unwrap();
        let g = gauss_2f1_minus_one(&params, z).unwrap();
        prop_assert!((f - 1.0 - g).abs() <= 1e-12 * f.abs().max(1.0));
    }

    #[test]
    fn polylog_oracle(s in 0.0f64..4.0, z in -0.9f64..0.9) {
        let direct: f64 = (1..=3000).rev().map(|k| z.powi(k) / (k as f64).powf(s)).sum();
        let li = polylog(s, z).unwrap();
        prop_assert!((li - direct).abs() <= 1e-12 * direct.abs().max(1.0));
    }
}

#[test]
fn poles_and_domain_are_rejected() {
    assert!(HypergeomParams::new(1.0, 1.0, 0.0).is_err());
    assert!(HypergeomParams::new(1.0, 1.0, -2.0).is_err());
    assert!(HypergeomParams::new(-1.0, 1.0, -2.0).is_ok());
    let p = HypergeomParams::new(1.0, 1.0, 1.0).unwrap();
    assert!(gauss_2f1(&p, 1.0).is_err());
    assert!(lerch_phi(0.5, 1.0, 0.0).is_err());
}
