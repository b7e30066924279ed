//! Coefficient streams, majorant series and the Hadamard product.

use std::fmt;
use std::sync::Arc;

use crate::error::{check_radius, check_tolerance, BohrError, Result};
use crate::sum::{Accumulator, MAX_TERMS};

/// Index-to-value map used for coefficient moduli and their envelopes.
pub type CoefficientFn = Arc<dyn Fn(usize) -> f64 + Send + Sync>;

/// The moduli `|a_n|` of a power series, produced lazily.
///
/// Every stream carries an envelope `E(n) >= sup_{m >= n} |a_m|`, which is
/// what turns truncated sums into sums with a remainder bound. When an
/// order hint `d` is present, `a_n = 0` for `n > d`.
#[derive(Clone)]
pub struct CoefficientStream {
    producer: CoefficientFn,
    envelope: CoefficientFn,
    order_hint: Option<usize>,
}

impl fmt::Debug for CoefficientStream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let head: Vec<f64> = (0..4).map(|n| self.coefficient(n)).collect();
        f.debug_struct("CoefficientStream")
            .field("head", &head)
            .field("order_hint", &self.order_hint)
            .finish()
    }
}

impl CoefficientStream {
    /// Stream whose moduli are all bounded by `bound`.
    pub fn from_fn(producer: CoefficientFn, bound: f64) -> Result<Self> {
        if !(bound.is_finite() && bound >= 0.0) {
            return Err(BohrError::Parameter(format!(
                "coefficient bound must be finite and non-negative, got {bound}"
            )));
        }
        Ok(Self::with_envelope(producer, Arc::new(move |_| bound)))
    }

    /// Stream with an explicit tail envelope `E(n) >= sup_{m >= n} |a_m|`.
    pub fn with_envelope(producer: CoefficientFn, envelope: CoefficientFn) -> Self {
        Self {
            producer,
            envelope,
            order_hint: None,
        }
    }

    /// Finite stream; coefficients past the end are zero.
    pub fn from_coefficients(coefficients: Vec<f64>) -> Self {
        let moduli: Vec<f64> = coefficients.iter().map(|c| c.abs()).collect();
        let mut suffix_max = moduli.clone();
        for i in (0..suffix_max.len().saturating_sub(1)).rev() {
            suffix_max[i] = suffix_max[i].max(suffix_max[i + 1]);
        }
        let order_hint = moduli.len().checked_sub(1);
        let moduli = Arc::new(moduli);
        let suffix_max = Arc::new(suffix_max);
        Self {
            producer: Arc::new(move |n| moduli.get(n).copied().unwrap_or(0.0)),
            envelope: Arc::new(move |n| suffix_max.get(n).copied().unwrap_or(0.0)),
            order_hint: Some(order_hint.unwrap_or(0)),
        }
    }

    /// `1/(1 - z)`: every coefficient equals 1.
    pub fn ones() -> Self {
        Self::with_envelope(Arc::new(|_| 1.0), Arc::new(|_| 1.0))
    }

    pub fn zeros() -> Self {
        Self::from_coefficients(vec![0.0])
    }

    /// `|a_n|`.
    pub fn coefficient(&self, n: usize) -> f64 {
        if self.order_hint.is_some_and(|d| n > d) {
            0.0
        } else {
            (self.producer)(n).abs()
        }
    }

    /// Upper bound on `|a_m|` for every `m >= n`.
    pub fn envelope(&self, n: usize) -> f64 {
        if self.order_hint.is_some_and(|d| n > d) {
            0.0
        } else {
            (self.envelope)(n)
        }
    }

    pub fn order_hint(&self) -> Option<usize> {
        self.order_hint
    }

    /// `|a_0|, ..., |a_{len-1}|`.
    pub fn take(&self, len: usize) -> Vec<f64> {
        (0..len).map(|n| self.coefficient(n)).collect()
    }
}

/// `M_f(r) = Σ |a_n| r^n` to within `tol`.
///
/// The remainder after index `N` is bounded by `E(N+1) r^{N+1} / (1 - r)`.
pub fn majorant(f: &CoefficientStream, r: f64, tol: f64) -> Result<f64> {
    check_radius(r)?;
    check_tolerance(tol)?;
    let mut acc = Accumulator::default();
    let mut power = 1.0;
    let limit = f.order_hint().map_or(MAX_TERMS, |d| d + 1);
    let mut remainder = f64::INFINITY;
    for n in 0..limit {
        acc.add(f.coefficient(n) * power);
        power *= r;
        remainder = f.envelope(n + 1) * power / (1.0 - r);
        if remainder <= tol {
            return Ok(acc.value());
        }
    }
    if f.order_hint().is_some() {
        return Ok(acc.value());
    }
    Err(BohrError::Truncated {
        partial: acc.value(),
        terms: MAX_TERMS,
        remainder,
    })
}

/// Hadamard (coefficient-wise) product `f * g`.
pub fn hadamard(f: &CoefficientStream, g: &CoefficientStream) -> CoefficientStream {
    let (fp, gp) = (f.clone(), g.clone());
    let (fe, ge) = (f.clone(), g.clone());
    let order_hint = match (f.order_hint, g.order_hint) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (a, b) => a.or(b),
    };
    CoefficientStream {
        producer: Arc::new(move |n| fp.coefficient(n) * gp.coefficient(n)),
        envelope: Arc::new(move |n| fe.envelope(n) * ge.envelope(n)),
        order_hint,
    }
}

/// Signed Taylor coefficients `c_0, ..., c_order` of
/// `(num0 + num1 z) / (den0 + den1 z)`.
///
/// `c_0 = num0/den0`, `c_1 = (num1 - c_0 den1)/den0`, and
/// `c_n = -c_{n-1} den1/den0` for `n >= 2`.
pub fn taylor_mobius(num0: f64, num1: f64, den0: f64, den1: f64, order: usize) -> Result<Vec<f64>> {
    if den0 == 0.0 {
        return Err(BohrError::Singular);
    }
    let mut out = Vec::with_capacity(order + 1);
    out.push(num0 / den0);
    if order >= 1 {
        out.push((num1 - out[0] * den1) / den0);
    }
    let ratio = -den1 / den0;
    for n in 2..=order {
        out.push(out[n - 1] * ratio);
    }
    Ok(out)
}
