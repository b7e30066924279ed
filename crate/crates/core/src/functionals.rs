//! Bohr-type functionals over coefficient streams.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{
    check_dilatation, check_exponent, check_gamma, check_radius, check_tolerance, BohrError, Result,
};
use crate::series::{hadamard, CoefficientStream};
use crate::sum::{Accumulator, MAX_TERMS};
use crate::weights::WeightFamily;

/// Below this modulus `|a_n|^{2n}` is evaluated as `exp(2n ln|a_n|)`.
const LOG_SPACE_CUTOFF: f64 = 1e-8;

/// Tail checks in [`weighted_sum`] happen every this many terms.
const TAIL_CHECK_STRIDE: usize = 4;

/// Number of terms after which a refinement tail with unit-modulus
/// coefficients is rejected.
const UNIT_TAIL_PATIENCE: usize = 64;

/// `Λ : [0, 1] -> [0, 1]`.
#[derive(Clone)]
pub struct LambdaWeight {
    rule: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    label: String,
}

impl fmt::Debug for LambdaWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("LambdaWeight").field(&self.label).finish()
    }
}

impl LambdaWeight {
    pub fn zero() -> Self {
        Self::constant(0.0).expect("0 is in [0, 1]")
    }

    pub fn one() -> Self {
        Self::constant(1.0).expect("1 is in [0, 1]")
    }

    pub fn constant(c: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&c) {
            return Err(BohrError::Domain {
                what: "lambda",
                value: c,
                expected: "[0, 1]",
            });
        }
        Ok(Self {
            rule: Arc::new(move |_| c),
            label: format!("{c}"),
        })
    }

    pub fn from_fn(rule: Arc<dyn Fn(f64) -> f64 + Send + Sync>) -> Self {
        Self {
            rule,
            label: "custom".into(),
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// `Λ(r)`, rejected if it leaves `[0, 1]`.
    pub fn at(&self, r: f64) -> Result<f64> {
        let v = (self.rule)(r);
        if (0.0..=1.0).contains(&v) {
            Ok(v)
        } else {
            Err(BohrError::Domain {
                what: "lambda(r)",
                value: v,
                expected: "[0, 1]",
            })
        }
    }
}

/// `f = h + conj(g)` with dilatation bounded by `k`.
///
/// `|b_0|` never enters a functional; all `g` sums start at `n = 1`.
#[derive(Debug, Clone)]
pub struct HarmonicMap {
    h: CoefficientStream,
    g: CoefficientStream,
    k: f64,
}

impl HarmonicMap {
    /// `k = 1` is accepted as the limiting case `K -> ∞`.
    pub fn new(h: CoefficientStream, g: CoefficientStream, k: f64) -> Result<Self> {
        check_dilatation(k)?;
        Ok(Self { h, g, k })
    }

    pub fn analytic(h: CoefficientStream) -> Self {
        Self {
            h,
            g: CoefficientStream::zeros(),
            k: 0.0,
        }
    }

    /// `k = (K - 1)/(K + 1)` for a `K`-quasiconformal map.
    pub fn from_quasiconformal(
        h: CoefficientStream,
        g: CoefficientStream,
        big_k: f64,
    ) -> Result<Self> {
        Self::new(h, g, dilatation_from_k(big_k)?)
    }

    pub fn h(&self) -> &CoefficientStream {
        &self.h
    }

    pub fn g(&self) -> &CoefficientStream {
        &self.g
    }

    pub fn k(&self) -> f64 {
        self.k
    }
}

/// `(K - 1)/(K + 1)` for `K >= 1`.
pub fn dilatation_from_k(big_k: f64) -> Result<f64> {
    if !(big_k.is_finite() && big_k >= 1.0) {
        return Err(BohrError::Domain {
            what: "K",
            value: big_k,
            expected: "[1, inf)",
        });
    }
    Ok((big_k - 1.0) / (big_k + 1.0))
}

/// `d = dist(ψ(0), ∂ψ(𝔻))` together with `|ψ'(0)|`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SubordinationContext {
    d: f64,
    psi_prime_at_0: f64,
}

impl SubordinationContext {
    pub fn new(d: f64, psi_prime_at_0: f64) -> Result<Self> {
        if !(psi_prime_at_0.is_finite() && psi_prime_at_0 >= 0.0) {
            return Err(BohrError::Parameter(format!(
                "|psi'(0)| must be finite and non-negative, got {psi_prime_at_0}"
            )));
        }
        if !(d.is_finite() && psi_prime_at_0 / 2.0 <= d && d <= psi_prime_at_0) {
            return Err(BohrError::Parameter(format!(
                "distance {d} is outside [{}, {psi_prime_at_0}]",
                psi_prime_at_0 / 2.0
            )));
        }
        Ok(Self { d, psi_prime_at_0 })
    }

    pub fn d(&self) -> f64 {
        self.d
    }

    pub fn psi_prime_at_0(&self) -> f64 {
        self.psi_prime_at_0
    }
}

/// `Σ_{n >= start} |a_n| φ_n(r)`, with remainder `E(N+1) Φ_{N+1}(r)`.
pub fn weighted_sum(
    f: &CoefficientStream,
    family: &WeightFamily,
    start: usize,
    r: f64,
    tol: f64,
) -> Result<f64> {
    check_radius(r)?;
    check_tolerance(tol)?;
    let mut acc = Accumulator::default();
    if let Some(d) = f.order_hint() {
        for n in start..=d {
            let c = f.coefficient(n);
            if c != 0.0 {
                acc.add(c * family.weight_at(n, r)?);
            }
        }
        return Ok(acc.value());
    }
    let mut remainder = f64::INFINITY;
    for n in start..start + MAX_TERMS {
        let c = f.coefficient(n);
        if c != 0.0 {
            acc.add(c * family.weight_at(n, r)?);
        }
        if (n - start).is_multiple_of(TAIL_CHECK_STRIDE) {
            let e = f.envelope(n + 1);
            remainder = if e == 0.0 {
                0.0
            } else {
                let tail = family.tail_sum(n + 1, r, tol)?;
                e * (tail.value + tail.bound_on_remainder)
            };
            if remainder <= tol {
                return Ok(acc.value());
            }
        }
    }
    Err(BohrError::Truncated {
        partial: acc.value(),
        terms: MAX_TERMS,
        remainder,
    })
}

/// `|a|^{2n}`, in log space for tiny moduli.
fn modulus_power(a: f64, n: usize) -> f64 {
    if a == 0.0 {
        0.0
    } else if a < LOG_SPACE_CUTOFF {
        (2.0 * n as f64 * a.ln()).exp()
    } else {
        a.powi(2 * n as i32)
    }
}

/// `A(f_0, φ, r) = Σ_{n>=1} |a_n|^{2n} (φ_{2n}(r)/(1+|a_0|) + Φ_{2n+1}(r))`.
///
/// Coefficients of modulus above 1 are rejected, as are infinite streams
/// whose moduli do not drop below 1.
pub fn a_term(f: &CoefficientStream, family: &WeightFamily, r: f64, tol: f64) -> Result<f64> {
    check_radius(r)?;
    check_tolerance(tol)?;
    let a0 = f.coefficient(0);
    let term = |n: usize| -> Result<f64> {
        let a = f.coefficient(n);
        if a > 1.0 {
            return Err(BohrError::Unsupported(format!(
                "|a_{n}| = {a} exceeds 1 in the refinement term"
            )));
        }
        let w = modulus_power(a, n);
        if w == 0.0 {
            return Ok(0.0);
        }
        let head = family.weight_at(2 * n, r)? / (1.0 + a0);
        let tail = family.tail_sum(2 * n + 1, r, tol)?;
        Ok(w * (head + tail.value))
    };
    let mut acc = Accumulator::default();
    if let Some(d) = f.order_hint() {
        for n in 1..=d {
            acc.add(term(n)?);
        }
        return Ok(acc.value());
    }
    let mut remainder = f64::INFINITY;
    for n in 1..=MAX_TERMS {
        acc.add(term(n)?);
        let e = f.envelope(n + 1);
        if e >= 1.0 {
            if n >= UNIT_TAIL_PATIENCE {
                return Err(BohrError::Unsupported(
                    "coefficient moduli do not fall below 1; the refinement term cannot be bounded"
                        .into(),
                ));
            }
            continue;
        }
        let m = n + 1;
        let tail = family.tail_sum(2 * m, r, tol)?;
        remainder = (tail.value + tail.bound_on_remainder) * modulus_power(e, m) / (1.0 - e * e);
        if remainder <= tol {
            return Ok(acc.value());
        }
    }
    Err(BohrError::Truncated {
        partial: acc.value(),
        terms: MAX_TERMS,
        remainder,
    })
}

/// `M^Λ_f = φ_0|a_0|^p + Σ_{n>=1} |a_n| φ_n + Λ(r) A(f_0, φ, r)`.
#[allow(clippy::too_many_arguments)]
pub fn refined_functional(
    f: &CoefficientStream,
    family: &WeightFamily,
    p: f64,
    gamma: f64,
    lambda: &LambdaWeight,
    r: f64,
    tol: f64,
) -> Result<f64> {
    check_exponent(p)?;
    check_gamma(gamma)?;
    check_radius(r)?;
    check_tolerance(tol)?;
    let head = family.weight_at(0, r)? * f.coefficient(0).powf(p);
    let body = weighted_sum(f, family, 1, r, tol / 2.0)?;
    let l = lambda.at(r)?;
    let refinement = if l == 0.0 {
        0.0
    } else {
        l * a_term(f, family, r, tol / 2.0)?
    };
    Ok(head + body + refinement)
}

/// `N = |a_0|^p φ_0 + Σ_{n>=1} (|a_n| + |b_n|) φ_n`.
pub fn harmonic_functional(
    map: &HarmonicMap,
    family: &WeightFamily,
    p: f64,
    r: f64,
    tol: f64,
) -> Result<f64> {
    check_exponent(p)?;
    check_radius(r)?;
    check_tolerance(tol)?;
    let head = family.weight_at(0, r)? * map.h.coefficient(0).powf(p);
    Ok(head + q_functional(map, family, r, tol)?)
}

/// `Q = Σ_{n>=1} (|a_n| + |b_n|) φ_n`.
pub fn q_functional(map: &HarmonicMap, family: &WeightFamily, r: f64, tol: f64) -> Result<f64> {
    let h = weighted_sum(&map.h, family, 1, r, tol / 2.0)?;
    let g = weighted_sum(&map.g, family, 1, r, tol / 2.0)?;
    Ok(h + g)
}

/// `(Σ_{n>=1} |b_n|² φ_n, k² Σ_{n>=1} |a_n|² φ_n)`; the first never exceeds
/// the second for a `K`-quasiconformal map.
pub fn dilatation_square_sums(
    map: &HarmonicMap,
    family: &WeightFamily,
    r: f64,
    tol: f64,
) -> Result<(f64, f64)> {
    let gg = weighted_sum(&hadamard(&map.g, &map.g), family, 1, r, tol)?;
    let hh = weighted_sum(&hadamard(&map.h, &map.h), family, 1, r, tol)?;
    Ok((gg, map.k * map.k * hh))
}

/// Checks `|a_0| < 1` and `|a_n| <= (1 - |a_0|²)/(1 + γ)` for `1 <= n <= order`.
pub fn check_coefficient_bound(f: &CoefficientStream, gamma: f64, order: usize) -> Result<()> {
    check_gamma(gamma)?;
    let a0 = f.coefficient(0);
    if a0 >= 1.0 {
        return Err(BohrError::Hypothesis(format!(
            "|a_0| = {a0} is not below 1"
        )));
    }
    let bound = (1.0 - a0 * a0) / (1.0 + gamma);
    for n in 1..=order {
        let a = f.coefficient(n);
        if a > bound * (1.0 + 4.0 * f64::EPSILON) {
            return Err(BohrError::Hypothesis(format!(
                "|a_{n}| = {a} exceeds the coefficient bound {bound}"
            )));
        }
    }
    Ok(())
}

/// Which of the three closed-form refinement tails to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum AuxKind {
    /// Weights `n r^n`.
    A,
    /// Weights `n² r^n`.
    B,
    /// Weights `(n + 1) r^n`.
    C,
}

/// `φ_{2n}(r)/(1+|a_0|) + Φ_{2n+1}(r)` in closed form for the weights of `kind`.
pub fn aux_tail(kind: AuxKind, n: usize, a0_modulus: f64, r: f64) -> Result<f64> {
    check_radius(r)?;
    if n == 0 {
        return Err(BohrError::Parameter(
            "auxiliary tails start at n = 1".into(),
        ));
    }
    if !(0.0..1.0).contains(&a0_modulus) {
        return Err(BohrError::Domain {
            what: "|a_0|",
            value: a0_modulus,
            expected: "[0, 1)",
        });
    }
    let nf = n as f64;
    let s = 1.0 - r;
    let even = r.powi(2 * n as i32);
    let odd = even * r;
    let head_scale = 1.0 / (1.0 + a0_modulus);
    Ok(match kind {
        AuxKind::A => 2.0 * nf * even * head_scale + (1.0 + 2.0 * nf * s) * odd / (s * s),
        AuxKind::B => {
            4.0 * nf * nf * even * head_scale
                + (1.0 + 4.0 * nf * s + 4.0 * nf * nf * s * s + r) * odd / (s * s * s)
        }
        AuxKind::C => {
            (2.0 * nf + 1.0) * even * head_scale + odd * (2.0 + 2.0 * nf * s - r) / (s * s)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extremal::{
        harmonic_extremal, mobius_extremal, subordination_extremal, ExtremalParams,
    };

    fn h_half() -> CoefficientStream {
        mobius_extremal(&ExtremalParams::analytic(0.5, 0.0).unwrap())
    }

    #[test]
    fn a_term_examples() {
        let c = CoefficientStream::from_coefficients(vec![0.7]);
        assert_eq!(a_term(&c, &WeightFamily::Power, 0.4, 1e-12).unwrap(), 0.0);

        let r = 0.25;
        let got = a_term(&h_half(), &WeightFamily::Power, r, 1e-14).unwrap();
        let mut brute = 0.0;
        for n in 1..60 {
            let a: f64 = 0.75 * 0.5f64.powi(n - 1);
            brute += a.powi(2 * n) * r.powi(2 * n);
        }
        brute *= 1.0 / 1.5 + r / (1.0 - r);
        assert!((got - brute).abs() < 1e-14, "{got} vs {brute}");

        let err = a_term(&CoefficientStream::ones(), &WeightFamily::Power, 0.3, 1e-12);
        assert!(matches!(err, Err(BohrError::Unsupported(_))));
        let big = CoefficientStream::from_coefficients(vec![0.0, 1.5]);
        assert!(matches!(
            a_term(&big, &WeightFamily::Power, 0.3, 1e-12),
            Err(BohrError::Unsupported(_))
        ));
    }

    #[test]
    fn refined_examples() {
        let zero = CoefficientStream::zeros();
        let v = refined_functional(
            &zero,
            &WeightFamily::Even,
            1.3,
            0.2,
            &LambdaWeight::one(),
            0.4,
            1e-12,
        )
        .unwrap();
        assert_eq!(v, 0.0);

        let one = CoefficientStream::from_coefficients(vec![1.0]);
        let v = refined_functional(
            &one,
            &WeightFamily::Power,
            2.0,
            0.0,
            &LambdaWeight::zero(),
            0.5,
            1e-12,
        )
        .unwrap();
        assert_eq!(v, 1.0);

        let at = |a: f64| {
            let f = mobius_extremal(&ExtremalParams::analytic(a, 0.0).unwrap());
            refined_functional(
                &f,
                &WeightFamily::Power,
                1.0,
                0.0,
                &LambdaWeight::one(),
                1.0 / 3.0,
                1e-14,
            )
            .unwrap()
        };
        let (v1, v2) = (at(0.999), at(0.9999));
        assert!(v1 < v2 && v2 < 1.0 && 1.0 - v2 < 1e-3);
    }

    #[test]
    fn lambda_validation() {
        assert!(LambdaWeight::constant(1.2).is_err());
        let bad = LambdaWeight::from_fn(Arc::new(|r| r * 3.0));
        assert!(bad.at(0.2).is_ok());
        assert!(bad.at(0.5).is_err());
    }

    #[test]
    fn harmonic_examples() {
        let near = |a: f64| {
            let m = harmonic_extremal(&ExtremalParams::new(a, 0.0, 1.0).unwrap());
            harmonic_functional(&m, &WeightFamily::Power, 1.0, 0.2, 1e-14).unwrap()
        };
        let (v1, v2) = (near(0.999), near(0.9999));
        assert!(v1 <= 1.0 && v2 <= 1.0 && v1 < v2 && 1.0 - v2 < 1e-3);

        let f = h_half();
        let m = HarmonicMap::analytic(f.clone());
        let lhs = harmonic_functional(&m, &WeightFamily::Power, 1.5, 0.3, 1e-14).unwrap();
        let rhs = refined_functional(
            &f,
            &WeightFamily::Power,
            1.5,
            0.0,
            &LambdaWeight::zero(),
            0.3,
            1e-14,
        )
        .unwrap();
        assert!((lhs - rhs).abs() < 1e-15);

        let zero = HarmonicMap::analytic(CoefficientStream::zeros());
        assert_eq!(
            harmonic_functional(&zero, &WeightFamily::Power, 1.0, 0.5, 1e-12).unwrap(),
            0.0
        );
    }

    #[test]
    fn q_examples() {
        let s = subordination_extremal(1.0).unwrap();
        let q = q_functional(&s.map, &WeightFamily::Power, 0.2, 1e-14).unwrap();
        assert!((q - 0.5).abs() < 1e-13);
        let s = subordination_extremal(0.0).unwrap();
        let q = q_functional(&s.map, &WeightFamily::Power, 1.0 / 3.0, 1e-14).unwrap();
        assert!((q - 0.5).abs() < 1e-13);
        let zero = HarmonicMap::analytic(CoefficientStream::zeros());
        assert_eq!(
            q_functional(&zero, &WeightFamily::Power, 0.5, 1e-12).unwrap(),
            0.0
        );
    }

    #[test]
    fn quasiconformal_dilatation() {
        let m = HarmonicMap::from_quasiconformal(
            CoefficientStream::ones(),
            CoefficientStream::zeros(),
            3.0,
        )
        .unwrap();
        assert_eq!(m.k(), 0.5);
        assert!(dilatation_from_k(0.5).is_err());
    }

    #[test]
    fn subordination_context_bounds() {
        assert!(SubordinationContext::new(0.5, 1.0).is_ok());
        assert!(SubordinationContext::new(1.0, 1.0).is_ok());
        assert!(SubordinationContext::new(0.4, 1.0).is_err());
        assert!(SubordinationContext::new(1.1, 1.0).is_err());
    }

    #[test]
    fn aux_examples() {
        assert!((aux_tail(AuxKind::A, 1, 0.0, 0.5).unwrap() - 1.5).abs() < 1e-15);
        assert_eq!(aux_tail(AuxKind::C, 1, 0.0, 0.0).unwrap(), 0.0);
        assert!((aux_tail(AuxKind::B, 1, 1.0 - 1e-12, 0.5).unwrap() - 5.0).abs() < 1e-10);
        assert!(aux_tail(AuxKind::A, 0, 0.0, 0.5).is_err());
    }

    #[test]
    fn coefficient_bound_check() {
        let f = mobius_extremal(&ExtremalParams::analytic(0.7, 0.4).unwrap());
        assert!(check_coefficient_bound(&f, 0.4, 50).is_ok());
        assert!(check_coefficient_bound(&CoefficientStream::ones(), 0.0, 5).is_err());
    }
}
