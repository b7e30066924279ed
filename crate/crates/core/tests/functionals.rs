use bohr_core::functionals::{
    a_term, aux_tail, check_coefficient_bound, refined_functional, weighted_sum, AuxKind,
    LambdaWeight,
};
use bohr_core::radii::analytic_radius;
use bohr_core::series::{taylor_mobius, CoefficientStream};
use bohr_core::weights::WeightFamily;
use proptest::prelude::*;

fn family() -> impl Strategy<Value = WeightFamily> {
    prop_oneof![
        Just(WeightFamily::Power),
        Just(WeightFamily::Even),
        Just(WeightFamily::OddWithUnitHead),
        Just(WeightFamily::shifted_linear(1)),
        Just(WeightFamily::power_alpha(1.0, 1).unwrap()),
    ]
}

/// Signed convex combination of disk automorphisms composed with Ω_γ → 𝔻.
fn bounded_map(gamma: f64) -> impl Strategy<Value = CoefficientStream> {
    (
        prop::collection::vec((-0.99f64..0.99, 0.05f64..1.0, any::<bool>()), 1..4),
        0.5f64..=1.0,
    )
        .prop_map(move |(pieces, scale)| {
            let total: f64 = pieces.iter().map(|p| p.1).sum();
            let mut sum = vec![0.0; 2001];
            for (c, w, neg) in pieces {
                let w = scale * w / total * if neg { -1.0 } else { 1.0 };
                let coeffs = taylor_mobius(
                    c - gamma,
                    -(1.0 - gamma),
                    1.0 - c * gamma,
                    -c * (1.0 - gamma),
                    2000,
                )
                .unwrap();
                for (s, x) in sum.iter_mut().zip(coeffs) {
                    *s += w * x;
                }
            }
            CoefficientStream::from_coefficients(sum.into_iter().map(f64::abs).collect())
        })
}

fn map_with_gamma() -> impl Strategy<Value = (f64, CoefficientStream)> {
    (0.0f64..0.9).prop_flat_map(|g| (Just(g), bounded_map(g)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lambda_monotone(
        (gamma, f) in map_with_gamma(),
        fam in family(),
        p in 0.1f64..=2.0,
        l1 in 0.0f64..=1.0,
        l2 in 0.0f64..=1.0,
        r in 0.0f64..0.9,
    ) {
        let (lo, hi) = if l1 <= l2 { (l1, l2) } else { (l2, l1) };
        let a = refined_functional(&f, &fam, p, gamma, &LambdaWeight::constant(lo).unwrap(), r, 1e-15).unwrap();
        let b = refined_functional(&f, &fam, p, gamma, &LambdaWeight::constant(hi).unwrap(), r, 1e-15).unwrap();
        prop_assert!(a <= b + 1e-14);
    }

    #[test]
    fn lambda_zero_is_the_plain_sum((gamma, f) in map_with_gamma(), fam in family(), p in 0.1f64..=2.0, r in 0.0f64..0.9) {
        let m = refined_functional(&f, &fam, p, gamma, &LambdaWeight::zero(), r, 1e-15).unwrap();
        let plain = f.coefficient(0).powf(p) * fam.weight_at(0, r).unwrap()
            + weighted_sum(&f, &fam, 1, r, 1e-15).unwrap();
        prop_assert!((m - plain).abs() <= 1e-13 * plain.max(1.0));
        let with_a = refined_functional(&f, &fam, p, gamma, &LambdaWeight::one(), r, 1e-15).unwrap();
        let a = a_term(&f, &fam, r, 1e-15).unwrap();
        prop_assert!((with_a - plain - a).abs() <= 1e-13 * with_a.max(1.0));
    }

    #[test]
    fn refined_inequality_below_radius((gamma, f) in map_with_gamma(), fam in family(), p in 0.1f64..=2.0, t in 0.0f64..=0.99) {
        check_coefficient_bound(&f, gamma, 2000).unwrap();
        let radius = analytic_radius(&fam, p, gamma, 1e-12).unwrap().value;
        let r = t * radius;
        let m = refined_functional(&f, &fam, p, gamma, &LambdaWeight::one(), r, 1e-15).unwrap();
        prop_assert!(m <= fam.weight_at(0, r).unwrap() + 1e-10, "M = {m} at r = {r}");
    }
}

fn aux_weight(kind: AuxKind, m: usize, r: f64) -> f64 {
    let m = m as f64;
    let c = match kind {
        AuxKind::A => m,
        AuxKind::B => m * m,
        AuxKind::C => m + 1.0,
    };
    c * r.powf(m)
}

#[test]
fn aux_tail_matches_direct_sum() {
    for kind in [AuxKind::A, AuxKind::B, AuxKind::C] {
        for n in 1..=10 {
            for r in (1..=9).map(|i| i as f64 / 10.0) {
                for a0 in [0.0, 0.3, 0.999] {
                    let tail: f64 = (2 * n + 1..20_000)
                        .rev()
                        .map(|m| aux_weight(kind, m, r))
                        .sum();
                    let want = aux_weight(kind, 2 * n, r) / (1.0 + a0) + tail;
                    let got = aux_tail(kind, n, a0, r).unwrap();
                    assert!(
                        (got - want).abs() <= 1e-10 * want.max(1.0),
                        "{kind:?} n={n} r={r} a0={a0}: {got} vs {want}"
                    );
                }
            }
        }
    }
}

#[test]
fn coefficient_bound_violation_is_reported() {
    let f = CoefficientStream::from_coefficients(vec![0.5, 0.9]);
    assert!(check_coefficient_bound(&f, 0.0, 5).is_err());
    let f = CoefficientStream::from_coefficients(vec![0.5, 0.75, 0.375]);
    assert!(check_coefficient_bound(&f, 0.0, 5).is_ok());
}
