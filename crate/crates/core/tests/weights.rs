use bohr_core::weights::WeightFamily;
use proptest::prelude::*;

fn built_in() -> Vec<WeightFamily> {
    vec![
        WeightFamily::Power,
        WeightFamily::Even,
        WeightFamily::OddWithUnitHead,
        WeightFamily::shifted_linear(0),
        WeightFamily::shifted_linear(1),
        WeightFamily::shifted_linear(3),
        WeightFamily::power_alpha(1.0, 1).unwrap(),
        WeightFamily::power_alpha(2.0, 1).unwrap(),
        WeightFamily::power_alpha(0.5, 2).unwrap(),
        WeightFamily::hypergeom(1.0, 1.0, 1.0).unwrap(),
        WeightFamily::hypergeom(2.0, 1.0, 1.0).unwrap(),
        WeightFamily::hypergeom(0.5, 1.5, 2.5).unwrap(),
        WeightFamily::hypergeom(-0.5, 1.0, 1.0).unwrap(),
        WeightFamily::hypergeom(-3.0, -1.0, 1.0).unwrap(),
    ]
}

fn family() -> impl Strategy<Value = WeightFamily> {
    (0..built_in().len()).prop_map(|i| built_in().swap_remove(i))
}

fn tail(f: &WeightFamily, n: usize, r: f64) -> f64 {
    f.tail_sum(n, r, 1e-15).unwrap().value
}

proptest! {
    #[test]
    fn tail_difference_is_the_weight(f in family(), n in 0usize..40, r in 0.0f64..0.9) {
        let d = tail(&f, n, r) - tail(&f, n + 1, r);
        let w = f.weight_at(n, r).unwrap();
        let scale = tail(&f, n, r).abs().max(1.0);
        prop_assert!((d - w).abs() <= 1e-12 * scale, "{} n={n} r={r}: {d} vs {w}", f.label());
    }

    #[test]
    fn tail_is_monotone_in_r(f in family(), n in 0usize..20, r in 0.0f64..0.95, dr in 0.0f64..0.04) {
        let a = tail(&f, n, r);
        let b = tail(&f, n, r + dr);
        prop_assert!(b >= a - 1e-12 * a.abs().max(1.0), "{} n={n}: {a} > {b}", f.label());
    }

    #[test]
    fn reported_remainder_within_tolerance(f in family(), n in 0usize..20, r in 0.0f64..0.99, e in 6i32..14) {
        let tol = 10f64.powi(-e);
        let t = f.tail_sum(n, r, tol).unwrap();
        prop_assert!(t.value >= 0.0);
        prop_assert!(t.bound_on_remainder <= tol.max(f64::EPSILON * t.value));
    }
}

fn brute_weights(f: &WeightFamily, r: f64, len: usize) -> Vec<f64> {
    match f {
        WeightFamily::HypergeomCoeff(h) => {
            let p = h.params();
            let mut gamma: f64 = 1.0;
            let mut rn = 1.0;
            let mut out = Vec::with_capacity(len);
            for m in 0..len {
                out.push(gamma.abs() * rn);
                let m = m as f64;
                gamma *= (p.a() + m) * (p.b() + m) / ((p.c() + m) * (m + 1.0));
                rn *= r;
            }
            out
        }
        _ => (0..len).map(|m| f.weight_at(m, r).unwrap()).collect(),
    }
}

#[test]
fn closed_forms_match_brute_force() {
    for f in built_in() {
        for r in [0.0, 0.1, 0.3, 0.5, 0.7, 0.9] {
            let weights = brute_weights(&f, r, 10_000);
            for n in [0usize, 1, 2, 5, 17] {
                let brute: f64 = weights[n..].iter().rev().sum();
                let closed = tail(&f, n, r);
                assert!(
                    (closed - brute).abs() <= 1e-10 * brute.max(1.0),
                    "{} n={n} r={r}: {closed} vs {brute}",
                    f.label()
                );
            }
        }
    }
}

#[test]
fn condition_gap_examples() {
    let p = WeightFamily::Power;
    assert!(p.condition_gap(1.0, 0.0, 2.0, 1.0 / 3.0).unwrap().abs() < 1e-12);
    let g = p.condition_gap(1.0, 0.0, 2.0, 0.1).unwrap();
    assert!((g - (2.0 * (0.1 / 0.9) - 1.0)).abs() < 1e-12);
    assert!(p.condition_gap(2.0, 0.0, 1.0, 0.5).unwrap().abs() < 1e-12);
}

#[test]
fn out_of_interval_radius_is_rejected() {
    for f in built_in() {
        assert!(f.weight_at(0, 1.0).is_err());
        assert!(f.tail_sum(0, -0.1, 1e-12).is_err());
    }
}
