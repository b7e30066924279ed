//! Series accumulation with a geometric remainder bound.

use crate::error::{BohrError, Result};

/// Hard cap on the number of terms any series routine will add.
pub const MAX_TERMS: usize = 1_000_000;

/// Number of consecutive terms that must satisfy the stopping rule.
const CONSECUTIVE: usize = 3;

/// Neumaier compensated summation.
#[derive(Debug, Default, Clone, Copy)]
pub(crate) struct Accumulator {
    sum: f64,
    comp: f64,
}

impl Accumulator {
    pub(crate) fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct SeriesSum {
    pub value: f64,
    /// One past the last index that was added.
    pub next_index: usize,
    pub remainder: f64,
}

/// Sums `term(start) + term(start + 1) + ...`.
///
/// `ratio_bound(n)` must return `q` with `|term(m + 1)| <= q |term(m)|` for
/// every `m >= n`, or `None` when no such bound is known yet. The remainder
/// after index `n` is then at most `|term(n)| q / (1 - q)`; summation stops
/// once that bound is below `max(abs_tol, rel_tol |sum|)` for three
/// consecutive indices.
pub(crate) fn sum_ratio_bounded(
    start: usize,
    mut term: impl FnMut(usize) -> f64,
    mut ratio_bound: impl FnMut(usize) -> Option<f64>,
    abs_tol: f64,
    rel_tol: f64,
) -> Result<SeriesSum> {
    let mut acc = Accumulator::default();
    let mut streak = 0;
    let mut remainder = f64::INFINITY;
    for n in start..start + MAX_TERMS {
        let t = term(n);
        if !t.is_finite() {
            return Err(BohrError::Truncated {
                partial: acc.value(),
                terms: n - start,
                remainder: f64::INFINITY,
            });
        }
        acc.add(t);
        remainder = match ratio_bound(n) {
            Some(q) if q < 1.0 => t.abs() * q / (1.0 - q),
            _ => f64::INFINITY,
        };
        if remainder <= abs_tol.max(rel_tol * acc.value().abs()) {
            streak += 1;
            if streak >= CONSECUTIVE {
                return Ok(SeriesSum {
                    value: acc.value(),
                    next_index: n + 1,
                    remainder,
                });
            }
        } else {
            streak = 0;
        }
    }
    Err(BohrError::Truncated {
        partial: acc.value(),
        terms: MAX_TERMS,
        remainder,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometric_series() {
        let s = sum_ratio_bounded(0, |n| 0.5f64.powi(n as i32), |_| Some(0.5), 1e-15, 0.0).unwrap();
        assert!((s.value - 2.0).abs() < 1e-14);
        assert!(s.remainder <= 1e-15);
    }

    #[test]
    fn unbounded_ratio_truncates() {
        let err = sum_ratio_bounded(0, |_| 1.0, |_| None, 1e-12, 0.0).unwrap_err();
        assert!(matches!(
            err,
            BohrError::Truncated {
                terms: MAX_TERMS,
                ..
            }
        ));
    }

    #[test]
    fn compensated_sum_beats_naive() {
        let mut acc = Accumulator::default();
        acc.add(1.0);
        for _ in 0..10 {
            acc.add(1e-16);
        }
        assert!((acc.value() - (1.0 + 1e-15)).abs() < 1e-17);
    }
}
