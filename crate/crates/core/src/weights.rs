//! Weight sequences `{φ_n(r)}` that replace `r^n` in generalized Bohr sums,
//! and their tails `Φ_N(r) = Σ_{n>=N} φ_n(r)`.

use std::cell::Cell;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{check_exponent, check_gamma, check_radius, BohrError, Result};
use crate::specfun::{lerch_series, HypergeomParams};
use crate::sum::sum_ratio_bounded;

/// Absolute accuracy of the tails used inside gap functions.
pub const GAP_TAIL_TOL: f64 = 1e-15;

/// Number of leading hypergeometric coefficients whose signs are checked.
pub const SIGN_CHECK_TERMS: usize = 64;

/// User-supplied weight rule `(n, r) -> φ_n(r)`.
pub type WeightRule = Arc<dyn Fn(usize, f64) -> f64 + Send + Sync>;

/// Bound `(n, r) -> q` on `φ_{m+1}(r) / φ_m(r)` for all `m >= n`.
pub type RatioBound = Arc<dyn Fn(usize, f64) -> f64 + Send + Sync>;

/// Common sign of the hypergeometric coefficients `γ_n`, `n >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CoefficientSign {
    Positive,
    Negative,
    /// Every checked coefficient vanished (`a = 0` or `b = 0`).
    Zero,
}

/// `φ_n(r) = |γ_n| r^n` for the Taylor coefficients of ₂F₁(a, b; c; z).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HypergeomWeights {
    params: HypergeomParams,
    sign: CoefficientSign,
}

impl HypergeomWeights {
    /// Checks that `γ_1, ..., γ_64` share one sign (zeros are compatible with
    /// either sign) and records it.
    pub fn new(params: HypergeomParams) -> Result<Self> {
        let mut positive = false;
        let mut negative = false;
        let mut gamma_n = 1.0;
        for n in 1..=SIGN_CHECK_TERMS {
            if params.terminating_degree().is_some_and(|d| n > d) {
                break;
            }
            gamma_n *= params.coefficient_ratio(n - 1);
            positive |= gamma_n > 0.0;
            negative |= gamma_n < 0.0;
        }
        let sign = match (positive, negative) {
            (true, true) => {
                return Err(BohrError::Hypothesis(format!(
                    "coefficients of 2F1({}, {}; {}; z) change sign",
                    params.a(),
                    params.b(),
                    params.c()
                )))
            }
            (true, false) => CoefficientSign::Positive,
            (false, true) => CoefficientSign::Negative,
            (false, false) => CoefficientSign::Zero,
        };
        Ok(Self { params, sign })
    }

    pub fn params(&self) -> &HypergeomParams {
        &self.params
    }

    pub fn sign(&self) -> CoefficientSign {
        self.sign
    }
}

/// A custom weight family with a declared convergence radius.
#[derive(Clone)]
pub struct CustomWeights {
    rule: WeightRule,
    r_max: f64,
    ratio_bound: Option<RatioBound>,
}

impl CustomWeights {
    /// `r_max` is the right end of the convergence interval `[0, r_max)`.
    pub fn new(rule: WeightRule, r_max: f64) -> Result<Self> {
        if !(r_max > 0.0 && r_max <= 1.0) {
            return Err(BohrError::Parameter(format!(
                "custom weight family needs r_max in (0, 1], got {r_max}"
            )));
        }
        Ok(Self {
            rule,
            r_max,
            ratio_bound: None,
        })
    }

    /// Declares a bound on successive weight ratios so that tails get a
    /// rigorous remainder estimate. Without one, the observed ratio is used.
    pub fn with_ratio_bound(mut self, bound: RatioBound) -> Self {
        self.ratio_bound = Some(bound);
        self
    }

    pub fn r_max(&self) -> f64 {
        self.r_max
    }
}

impl fmt::Debug for CustomWeights {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CustomWeights")
            .field("r_max", &self.r_max)
            .field("ratio_bound", &self.ratio_bound.is_some())
            .finish_non_exhaustive()
    }
}

/// A sequence `{φ_n(r)}` of non-negative continuous weights on `[0, r_max)`.
///
/// For `ShiftedLinear` and `PowerAlpha`, `φ_0 = 1`, `φ_n = 0` for
/// `1 <= n < start`, and the formula applies from `start` on.
#[derive(Debug, Clone)]
pub enum WeightFamily {
    /// `φ_n = r^n`.
    Power,
    /// `φ_{2n} = r^{2n}`, `φ_{2n+1} = 0`.
    Even,
    /// `φ_0 = 1`, `φ_{2n} = 0` for `n >= 1`, `φ_{2n-1} = r^{2n-1}`.
    OddWithUnitHead,
    /// `φ_n = (n + 1) r^n` for `n >= start`.
    ShiftedLinear {
        start: usize,
    },
    /// `φ_n = n^α r^n` for `n >= start`.
    PowerAlpha {
        alpha: f64,
        start: usize,
    },
    /// `φ_n = |γ_n| r^n` for the coefficients of ₂F₁.
    HypergeomCoeff(HypergeomWeights),
    Custom(CustomWeights),
}

/// A tail `Φ_N(r)` with the bound on what was left unsummed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TailSum {
    pub value: f64,
    /// Index one past the last explicitly summed term (`N` for closed forms).
    pub truncation_order: usize,
    pub bound_on_remainder: f64,
}

impl TailSum {
    fn exact(value: f64, order: usize) -> Self {
        Self {
            value,
            truncation_order: order,
            bound_on_remainder: 0.0,
        }
    }
}

impl WeightFamily {
    pub fn shifted_linear(start: usize) -> Self {
        WeightFamily::ShiftedLinear { start }
    }

    pub fn power_alpha(alpha: f64, start: usize) -> Result<Self> {
        if !alpha.is_finite() {
            return Err(BohrError::Parameter(format!(
                "power-alpha exponent must be finite, got {alpha}"
            )));
        }
        Ok(WeightFamily::PowerAlpha { alpha, start })
    }

    pub fn hypergeom(a: f64, b: f64, c: f64) -> Result<Self> {
        let params = HypergeomParams::new(a, b, c)?;
        Ok(WeightFamily::HypergeomCoeff(HypergeomWeights::new(params)?))
    }

    pub fn custom(rule: WeightRule, r_max: f64) -> Result<Self> {
        Ok(WeightFamily::Custom(CustomWeights::new(rule, r_max)?))
    }

    /// Right end of the convergence interval.
    pub fn r_max(&self) -> f64 {
        match self {
            WeightFamily::Custom(c) => c.r_max,
            _ => 1.0,
        }
    }

    /// Short stable name used in reports.
    pub fn label(&self) -> String {
        match self {
            WeightFamily::Power => "power".into(),
            WeightFamily::Even => "even".into(),
            WeightFamily::OddWithUnitHead => "odd".into(),
            WeightFamily::ShiftedLinear { start } => format!("shifted-linear(N={start})"),
            WeightFamily::PowerAlpha { alpha, start } => {
                format!("power-alpha(alpha={alpha},N={start})")
            }
            WeightFamily::HypergeomCoeff(h) => format!(
                "hypergeom(a={},b={},c={})",
                h.params.a(),
                h.params.b(),
                h.params.c()
            ),
            WeightFamily::Custom(_) => "custom".into(),
        }
    }

    /// `φ_n(r)`.
    pub fn weight_at(&self, n: usize, r: f64) -> Result<f64> {
        check_radius(r)?;
        Ok(match self {
            WeightFamily::Power => r.powi(n as i32),
            WeightFamily::Even => {
                if n.is_multiple_of(2) {
                    r.powi(n as i32)
                } else {
                    0.0
                }
            }
            WeightFamily::OddWithUnitHead => match n {
                0 => 1.0,
                _ if n % 2 == 1 => r.powi(n as i32),
                _ => 0.0,
            },
            WeightFamily::ShiftedLinear { start } => match n {
                0 => 1.0,
                _ if n < *start => 0.0,
                _ => (n as f64 + 1.0) * r.powi(n as i32),
            },
            WeightFamily::PowerAlpha { alpha, start } => match n {
                0 => 1.0,
                _ if n < *start => 0.0,
                _ => (n as f64).powf(*alpha) * r.powi(n as i32),
            },
            WeightFamily::HypergeomCoeff(h) => h.params.coefficient(n).abs() * r.powi(n as i32),
            WeightFamily::Custom(c) => {
                let v = (c.rule)(n, r);
                if !(v.is_finite() && v >= 0.0) {
                    return Err(BohrError::Parameter(format!(
                        "custom weight phi_{n}({r}) = {v} is not a non-negative number"
                    )));
                }
                v
            }
        })
    }

    /// `Φ_N(r) = Σ_{n>=N} φ_n(r)` to within `tol`.
    ///
    /// Closed forms are used for every built-in family except
    /// `HypergeomCoeff`; `PowerAlpha` goes through `r^M Φ(r, -α, M)`.
    /// Summed tails stop once the remainder bound is below
    /// `max(tol, ε |value|)`.
    pub fn tail_sum(&self, from: usize, r: f64, tol: f64) -> Result<TailSum> {
        check_radius(r)?;
        crate::error::check_tolerance(tol)?;
        if r >= self.r_max() {
            return Err(BohrError::Divergence {
                r,
                r_max: self.r_max(),
            });
        }
        let n = from;
        let geometric_even = |m: usize| r.powi(m as i32) / (1.0 - r * r);
        let head = if n == 0 { 1.0 } else { 0.0 };
        let tail = match self {
            WeightFamily::Power => TailSum::exact(r.powi(n as i32) / (1.0 - r), n),
            WeightFamily::Even => TailSum::exact(geometric_even(n + n % 2), n),
            WeightFamily::OddWithUnitHead => {
                let odd = geometric_even(if n % 2 == 1 { n } else { n + 1 });
                TailSum::exact(head + odd, n)
            }
            WeightFamily::ShiftedLinear { start } => {
                let m = n.max(*start).max(1);
                let mf = m as f64;
                let one_minus = 1.0 - r;
                let value = r.powi(m as i32) * (mf + 1.0 - mf * r) / (one_minus * one_minus);
                TailSum::exact(head + value, n)
            }
            WeightFamily::PowerAlpha { alpha, start } => {
                let m = n.max(*start).max(1);
                let scale = r.powi(m as i32);
                if scale == 0.0 {
                    TailSum::exact(head, n)
                } else {
                    let lerch = lerch_series(r, -alpha, m as f64)?;
                    TailSum {
                        value: head + scale * lerch.value,
                        truncation_order: m + lerch.next_index,
                        bound_on_remainder: scale * lerch.remainder,
                    }
                }
            }
            WeightFamily::HypergeomCoeff(h) => {
                let s = h.params.series_from(r, n, true)?;
                TailSum {
                    value: s.value,
                    truncation_order: s.next_index,
                    bound_on_remainder: s.remainder,
                }
            }
            WeightFamily::Custom(c) => custom_tail(c, n, r, tol)?,
        };
        Ok(tail)
    }

    /// `lhs_scale Φ_1(r) - rhs_scale φ_0(r)`.
    pub(crate) fn scaled_gap(&self, lhs_scale: f64, rhs_scale: f64, r: f64) -> Result<f64> {
        let tail = self.tail_sum(1, r, GAP_TAIL_TOL)?;
        Ok(lhs_scale * tail.value - rhs_scale * self.weight_at(0, r)?)
    }

    /// `scale Φ_1(r) - (1 + γ) φ_0(r)`; negative where the radius condition
    /// `(1 + γ) φ_0(r) > scale Φ_1(r)` holds. `scale` is `2/p` in the analytic
    /// setting and `2(1 + k)/p` in the harmonic one.
    pub fn condition_gap(&self, p: f64, gamma: f64, scale: f64, r: f64) -> Result<f64> {
        check_exponent(p)?;
        check_gamma(gamma)?;
        if !(scale.is_finite() && scale > 0.0) {
            return Err(BohrError::Domain {
                what: "scale",
                value: scale,
                expected: "(0, inf)",
            });
        }
        self.scaled_gap(scale, 1.0 + gamma, r)
    }
}

fn custom_tail(c: &CustomWeights, from: usize, r: f64, tol: f64) -> Result<TailSum> {
    let mut previous: Option<f64> = None;
    let observed = Cell::new(0.0f64);
    let mut failure = None;
    let sum = sum_ratio_bounded(
        from,
        |n| {
            let v = (c.rule)(n, r);
            if !(v.is_finite() && v >= 0.0) {
                failure.get_or_insert(n);
                return 0.0;
            }
            if let Some(prev) = previous.filter(|p| *p > 0.0) {
                observed.set(v / prev);
            }
            previous = Some(v);
            v
        },
        |n| match &c.ratio_bound {
            Some(bound) => Some(bound(n, r)),
            None => Some(observed.get().max(r / c.r_max)),
        },
        tol,
        f64::EPSILON,
    )?;
    if let Some(n) = failure {
        return Err(BohrError::Parameter(format!(
            "custom weight phi_{n}({r}) is not a non-negative number"
        )));
    }
    Ok(TailSum {
        value: sum.value,
        truncation_order: sum.next_index,
        bound_on_remainder: sum.remainder,
    })
}
