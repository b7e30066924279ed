//! Pochhammer symbol, Gauss hypergeometric series, Lerch transcendent and
//! polylogarithm for real arguments inside the unit interval.
//!
//! All series are summed through their term-ratio recurrences, so no
//! factorials or gamma functions are formed. Summation stops once a
//! geometric bound on the remainder falls below the working precision for
//! three consecutive terms.

use serde::Serialize;

use crate::error::{BohrError, Result};
use crate::sum::{sum_ratio_bounded, SeriesSum};

/// Relative accuracy targeted by the series in this module.
const SERIES_REL_TOL: f64 = 0.5 * f64::EPSILON;

/// Rising factorial `x (x + 1) ... (x + n - 1)`, with `(x)_0 = 1`.
pub fn pochhammer(x: f64, n: usize) -> f64 {
    (0..n).fold(1.0, |acc, i| acc * (x + i as f64))
}

/// `Some(m)` when `x = -m` for a non-negative integer `m`.
fn nonpositive_integer(x: f64) -> Option<usize> {
    if x <= 0.0 && x == x.floor() && x > -(u32::MAX as f64) {
        Some((-x) as usize)
    } else {
        None
    }
}

/// Parameters `(a, b, c)` of ₂F₁(a, b; c; z).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HypergeomParams {
    a: f64,
    b: f64,
    c: f64,
}

impl HypergeomParams {
    /// Validates the parameters.
    ///
    /// `c` may only be a non-positive integer `-m` when `a` or `b` equals
    /// `-j` with `j <= m`; the series then terminates before the pole.
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && c.is_finite()) {
            return Err(BohrError::Parameter(format!(
                "hypergeometric parameters must be finite, got ({a}, {b}, {c})"
            )));
        }
        if let Some(m) = nonpositive_integer(c) {
            let rescued = [a, b]
                .iter()
                .filter_map(|&x| nonpositive_integer(x))
                .any(|j| j <= m);
            if !rescued {
                return Err(BohrError::Parameter(format!(
                    "c = {c} is a non-positive integer and neither a nor b terminates the series first"
                )));
            }
        }
        Ok(Self { a, b, c })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    /// Degree of the polynomial when `a` or `b` is a non-positive integer.
    pub fn terminating_degree(&self) -> Option<usize> {
        match (nonpositive_integer(self.a), nonpositive_integer(self.b)) {
            (Some(m), Some(j)) => Some(m.min(j)),
            (m, j) => m.or(j),
        }
    }

    /// `γ_{n+1} / γ_n = (a + n)(b + n) / ((c + n)(n + 1))`.
    pub fn coefficient_ratio(&self, n: usize) -> f64 {
        let n = n as f64;
        (self.a + n) * (self.b + n) / ((self.c + n) * (n + 1.0))
    }

    /// Taylor coefficient `γ_n = (a)_n (b)_n / ((c)_n n!)`.
    pub fn coefficient(&self, n: usize) -> f64 {
        if self.terminating_degree().is_some_and(|d| n > d) {
            return 0.0;
        }
        (0..n).fold(1.0, |acc, i| acc * self.coefficient_ratio(i))
    }

    /// A bound `q` on `|γ_{m+1} / γ_m|` valid for every `m >= n`, once all
    /// of `a + n`, `b + n`, `c + n` are positive.
    ///
    /// `(a + m) / (m + 1)` and `(b + m) / (c + m)` are monotone in `m`, so
    /// each factor is bounded by its value at `n` or by its limit 1.
    pub(crate) fn ratio_bound_from(&self, n: usize) -> Option<f64> {
        let nf = n as f64;
        if self.a + nf <= 0.0 || self.b + nf <= 0.0 || self.c + nf <= 0.0 {
            return None;
        }
        let first = ((self.a + nf) / (nf + 1.0)).max(1.0);
        let second = ((self.b + nf) / (self.c + nf)).max(1.0);
        Some(first * second)
    }

    /// `Σ_{n >= start} γ_n z^n`, or `Σ |γ_n| z^n` when `moduli` is set.
    pub(crate) fn series_from(&self, z: f64, start: usize, moduli: bool) -> Result<SeriesSum> {
        let map = |x: f64| if moduli { x.abs() } else { x };
        if let Some(deg) = self.terminating_degree() {
            let mut acc = crate::sum::Accumulator::default();
            let mut t = self.coefficient(start) * z.powi(start as i32);
            for n in start..=deg {
                acc.add(map(t));
                t *= self.coefficient_ratio(n) * z;
            }
            return Ok(SeriesSum {
                value: acc.value(),
                next_index: deg + 1,
                remainder: 0.0,
            });
        }
        let mut cur = self.coefficient(start) * z.powi(start as i32);
        sum_ratio_bounded(
            start,
            |n| {
                if n > start {
                    cur *= self.coefficient_ratio(n - 1) * z;
                }
                map(cur)
            },
            |n| self.ratio_bound_from(n).map(|q| q * z.abs()),
            0.0,
            SERIES_REL_TOL,
        )
    }
}

fn check_unit_interval(z: f64) -> Result<()> {
    if z.is_finite() && z.abs() < 1.0 {
        Ok(())
    } else {
        Err(BohrError::Domain {
            what: "z",
            value: z,
            expected: "(-1, 1)",
        })
    }
}

/// Gauss hypergeometric function ₂F₁(a, b; c; z) for real `|z| < 1`.
///
/// When `a` or `b` is a non-positive integer `-m` the degree-`m`
/// polynomial is evaluated term by term.
pub fn gauss_2f1(params: &HypergeomParams, z: f64) -> Result<f64> {
    check_unit_interval(z)?;
    Ok(params.series_from(z, 0, false)?.value)
}

/// `₂F₁(a, b; c; z) - 1`, summed from the `n = 1` term so that no
/// cancellation against the leading 1 occurs.
pub fn gauss_2f1_minus_one(params: &HypergeomParams, z: f64) -> Result<f64> {
    check_unit_interval(z)?;
    Ok(params.series_from(z, 1, false)?.value)
}

/// Lerch transcendent `Φ(z, s, a) = Σ_{n>=0} z^n / (a + n)^s`.
///
/// `a` must not be a non-positive integer. Negative non-integer `a` is
/// accepted only for integer `s`, where `(a + n)^s` is real.
pub fn lerch_phi(z: f64, s: f64, a: f64) -> Result<f64> {
    Ok(lerch_series(z, s, a)?.value)
}

pub(crate) fn lerch_series(z: f64, s: f64, a: f64) -> Result<SeriesSum> {
    check_unit_interval(z)?;
    if !s.is_finite() || !a.is_finite() {
        return Err(BohrError::Parameter(format!(
            "Lerch parameters must be finite, got s = {s}, a = {a}"
        )));
    }
    if nonpositive_integer(a).is_some() {
        return Err(BohrError::Parameter(format!(
            "Lerch shift a = {a} is a non-positive integer"
        )));
    }
    let integer_s = s == s.floor() && s.abs() < i32::MAX as f64;
    if a < 0.0 && !integer_s {
        return Err(BohrError::Parameter(format!(
            "Lerch shift a = {a} < 0 requires an integer order, got s = {s}"
        )));
    }
    let power = |base: f64| {
        if integer_s {
            base.powi(-(s as i32))
        } else {
            base.powf(-s)
        }
    };
    sum_ratio_bounded(
        0,
        |n| z.powi(n as i32) * power(a + n as f64),
        |n| {
            let base = a + n as f64;
            if base <= 0.0 {
                None
            } else if s >= 0.0 {
                Some(z.abs())
            } else {
                Some(z.abs() * ((base + 1.0) / base).powf(-s))
            }
        },
        0.0,
        SERIES_REL_TOL,
    )
}

/// Polylogarithm `Li_s(z) = Σ_{k>=1} z^k / k^s = z Φ(z, s, 1)`.
pub fn polylog(s: f64, z: f64) -> Result<f64> {
    Ok(z * lerch_phi(z, s, 1.0)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1.0)
    }

    #[test]
    fn pochhammer_examples() {
        assert_eq!(pochhammer(5.2, 0), 1.0);
        assert_eq!(pochhammer(1.0, 4), 24.0);
        assert!((pochhammer(0.5, 2) - 0.75).abs() < 1e-15);
    }

    #[test]
    fn gauss_examples() {
        let p = HypergeomParams::new(2.0, 1.0, 1.0).unwrap();
        assert!(close(gauss_2f1(&p, 0.5).unwrap(), 4.0, 1e-14));
        let poly = HypergeomParams::new(-2.0, 1.0, 1.0).unwrap();
        assert_eq!(poly.terminating_degree(), Some(2));
        assert!(close(gauss_2f1(&poly, 0.7).unwrap(), 0.09, 1e-14));
        let any = HypergeomParams::new(0.3, -1.7, 2.5).unwrap();
        assert_eq!(gauss_2f1(&any, 0.0).unwrap(), 1.0);
    }

    #[test]
    fn gauss_rejects_pole_and_domain() {
        assert!(matches!(
            HypergeomParams::new(1.0, 1.0, -2.0),
            Err(BohrError::Parameter(_))
        ));
        // c = -3 rescued by a = -2 (j = 2 <= m = 3).
        let p = HypergeomParams::new(-2.0, 1.0, -3.0).unwrap();
        let expected = 1.0 + (-2.0 / -3.0) * 0.5 + (-2.0 * -1.0 * 2.0) / (-3.0 * -2.0 * 2.0) * 0.25;
        assert!(close(gauss_2f1(&p, 0.5).unwrap(), expected, 1e-14));
        let ok = HypergeomParams::new(1.0, 1.0, 1.0).unwrap();
        assert!(matches!(gauss_2f1(&ok, 1.0), Err(BohrError::Domain { .. })));
        assert!(matches!(
            gauss_2f1(&ok, -1.5),
            Err(BohrError::Domain { .. })
        ));
    }

    #[test]
    fn coefficient_ratio_recurrence() {
        let p = HypergeomParams::new(0.7, -0.4, 1.9).unwrap();
        for n in 0..30 {
            let lhs = p.coefficient(n + 1) / p.coefficient(n);
            assert!(close(lhs, p.coefficient_ratio(n), 1e-13));
            let by_pochhammer = pochhammer(0.7, n) * pochhammer(-0.4, n)
                / (pochhammer(1.9, n) * pochhammer(1.0, n));
            assert!(close(p.coefficient(n), by_pochhammer, 1e-12));
        }
    }

    #[test]
    fn minus_one_matches_difference() {
        let p = HypergeomParams::new(1.5, 0.5, 2.0).unwrap();
        let full = gauss_2f1(&p, 0.6).unwrap();
        let tail = gauss_2f1_minus_one(&p, 0.6).unwrap();
        assert!(close(full - 1.0, tail, 1e-14));
    }

    #[test]
    fn lerch_examples() {
        assert!(close(
            lerch_phi(0.5, 1.0, 1.0).unwrap(),
            2.0 * 2f64.ln(),
            1e-14
        ));
        assert_eq!(lerch_phi(0.0, 3.0, 2.0).unwrap(), 0.125);
        assert!(close(lerch_phi(0.5, -1.0, 1.0).unwrap(), 4.0, 1e-14));
    }

    #[test]
    fn lerch_rejects_poles() {
        assert!(matches!(
            lerch_phi(0.5, 1.0, 0.0),
            Err(BohrError::Parameter(_))
        ));
        assert!(matches!(
            lerch_phi(0.5, 1.0, -3.0),
            Err(BohrError::Parameter(_))
        ));
        assert!(matches!(
            lerch_phi(0.5, 0.5, -0.5),
            Err(BohrError::Parameter(_))
        ));
        // Negative non-integer shift with integer order is fine.
        let direct: f64 = (0..200)
            .map(|n| 0.3f64.powi(n) / (n as f64 - 0.5).powi(2))
            .sum();
        assert!(close(lerch_phi(0.3, 2.0, -0.5).unwrap(), direct, 1e-13));
    }

    #[test]
    fn polylog_examples() {
        assert!(close(polylog(1.0, 0.5).unwrap(), 2f64.ln(), 1e-14));
        assert_eq!(polylog(2.0, 0.0).unwrap(), 0.0);
        assert!(close(polylog(0.0, 0.5).unwrap(), 1.0, 1e-14));
    }
}
