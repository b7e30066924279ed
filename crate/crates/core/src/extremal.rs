//! Extremal families on Ω_γ = {z : |z + γ/(1-γ)| < 1/(1-γ)}.

use std::f64::consts::PI;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{check_dilatation, check_gamma, BohrError, Result};
use crate::functionals::{HarmonicMap, SubordinationContext};
use crate::series::CoefficientStream;

/// The disk Ω_γ, centred at `-γ/(1-γ)` with radius `1/(1-γ)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DomainParams {
    pub gamma: f64,
    pub center: f64,
    pub radius: f64,
}

impl DomainParams {
    pub fn new(gamma: f64) -> Result<Self> {
        check_gamma(gamma)?;
        Ok(Self {
            gamma,
            center: -gamma / (1.0 - gamma),
            radius: 1.0 / (1.0 - gamma),
        })
    }

    pub fn contains(&self, x: f64, y: f64) -> bool {
        (x - self.center).hypot(y) < self.radius
    }
}

/// Parameters of `h_a` and of its harmonic companion.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExtremalParams {
    a: f64,
    gamma: f64,
    k: f64,
}

impl ExtremalParams {
    pub fn new(a: f64, gamma: f64, k: f64) -> Result<Self> {
        if !(a.is_finite() && a > 0.0 && a < 1.0) {
            return Err(BohrError::Parameter(format!(
                "extremal parameter a must lie in (0, 1), got {a}"
            )));
        }
        check_gamma(gamma)?;
        check_dilatation(k)?;
        Ok(Self { a, gamma, k })
    }

    pub fn analytic(a: f64, gamma: f64) -> Result<Self> {
        Self::new(a, gamma, 0.0)
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    /// Signed constant term `(a - γ)/(1 - aγ)`.
    pub fn a0(&self) -> f64 {
        (self.a - self.gamma) / (1.0 - self.a * self.gamma)
    }

    /// `1 - |a_0|`, computed without cancellation.
    pub fn head_deficit(&self) -> f64 {
        let (a, g) = (self.a, self.gamma);
        if a >= g {
            (1.0 - a) * (1.0 + g) / (1.0 - a * g)
        } else {
            (1.0 + a) * (1.0 - g) / (1.0 - a * g)
        }
    }

    /// Geometric ratio `a(1-γ)/(1-aγ)` of the coefficient moduli.
    pub fn ratio(&self) -> f64 {
        self.a * (1.0 - self.gamma) / (1.0 - self.a * self.gamma)
    }

    /// `|a_1| = (1-a²)(1-γ)/(1-aγ)²`.
    pub fn first_coefficient(&self) -> f64 {
        let (a, g) = (self.a, self.gamma);
        let d = 1.0 - a * g;
        (1.0 - a) * (1.0 + a) * (1.0 - g) / (d * d)
    }

    /// `|a_n|`: `|a_0|` for `n = 0`, `(1-a²)/(a(1-aγ)) q^n` otherwise.
    pub fn coefficient(&self, n: usize) -> f64 {
        match n {
            0 => self.a0().abs(),
            _ => self.first_coefficient() * self.ratio().powi((n - 1) as i32),
        }
    }
}

/// Moduli of `h_a(z) = (a - γ - (1-γ)z)/(1 - aγ - a(1-γ)z)`.
pub fn mobius_extremal(params: &ExtremalParams) -> CoefficientStream {
    let p = *params;
    let e = *params;
    CoefficientStream::with_envelope(
        Arc::new(move |n| p.coefficient(n)),
        Arc::new(move |n| match n {
            0 => e.coefficient(0).max(e.coefficient(1)),
            _ => e.coefficient(n),
        }),
    )
}

/// `|a_0|, ..., |a_order|` of `h_a`.
pub fn mobius_extremal_coefficients(params: &ExtremalParams, order: usize) -> Vec<f64> {
    (0..=order).map(|n| params.coefficient(n)).collect()
}

/// `f_a = h_a + conj(kλ(h_a - a_0))` with `|λ| = 1`; only `|b_n| = k|a_n|` matters.
pub fn harmonic_extremal(params: &ExtremalParams) -> HarmonicMap {
    let p = *params;
    let e = *params;
    let g = CoefficientStream::with_envelope(
        Arc::new(move |n| match n {
            0 => 0.0,
            _ => p.k * p.coefficient(n),
        }),
        Arc::new(move |n| e.k * e.coefficient(n.max(1))),
    );
    HarmonicMap::new(mobius_extremal(params), g, params.k)
        .expect("dilatation was validated by ExtremalParams")
}

/// `ψ(z) = 1/(1-z)` with `g(z) = kλ z/(1-z)`, together with its distance data.
#[derive(Debug, Clone)]
pub struct SubordinationExtremal {
    pub map: HarmonicMap,
    pub context: SubordinationContext,
}

pub fn subordination_extremal(k: f64) -> Result<SubordinationExtremal> {
    check_dilatation(k)?;
    let g = CoefficientStream::with_envelope(
        Arc::new(move |n| if n == 0 { 0.0 } else { k }),
        Arc::new(move |_| k),
    );
    Ok(SubordinationExtremal {
        map: HarmonicMap::new(CoefficientStream::ones(), g, k)?,
        context: SubordinationContext::new(0.5, 1.0)?,
    })
}

/// `count` points on `C_γ = ∂Ω_γ`, starting at the rightmost point `(1, 0)`
/// and running counter-clockwise.
pub fn boundary_points(gamma: f64, count: usize) -> Result<Vec<(f64, f64)>> {
    let domain = DomainParams::new(gamma)?;
    if count < 3 {
        return Err(BohrError::Parameter(format!(
            "at least 3 boundary points are required, got {count}"
        )));
    }
    Ok((0..count)
        .map(|j| {
            let (s, c) = unit_circle(j, count);
            let x = (c - domain.gamma) / (1.0 - domain.gamma);
            let y = s / (1.0 - domain.gamma);
            (snap_zero(x), snap_zero(y))
        })
        .collect())
}

// (sin, cos) of 2πj/count, exact at quarter turns.
fn unit_circle(j: usize, count: usize) -> (f64, f64) {
    if (4 * j).is_multiple_of(count) {
        match (4 * j / count) % 4 {
            0 => return (0.0, 1.0),
            1 => return (1.0, 0.0),
            2 => return (0.0, -1.0),
            _ => return (-1.0, 0.0),
        }
    }
    (2.0 * PI * j as f64 / count as f64).sin_cos()
}

fn snap_zero(x: f64) -> f64 {
    if x.abs() < 1e-15 {
        0.0
    } else {
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mobius_examples() {
        let p = ExtremalParams::analytic(0.5, 0.0).unwrap();
        let c = mobius_extremal_coefficients(&p, 2);
        assert!((c[0] - 0.5).abs() < 1e-15);
        assert!((c[1] - 0.75).abs() < 1e-15);
        assert!((c[2] - 0.375).abs() < 1e-15);

        let p = ExtremalParams::analytic(0.5, 0.5).unwrap();
        assert!(p.coefficient(0).abs() < 1e-15);
        assert!((p.coefficient(1) - 2.0 / 3.0).abs() < 1e-15);

        let p = ExtremalParams::analytic(1.0 - 1e-9, 0.3).unwrap();
        assert!((p.coefficient(0) - 1.0).abs() < 1e-8);
        assert!(p.coefficient(5) < 1e-8);
    }

    #[test]
    fn endpoints_rejected() {
        assert!(ExtremalParams::analytic(0.0, 0.0).is_err());
        assert!(ExtremalParams::analytic(1.0, 0.0).is_err());
        assert!(ExtremalParams::new(0.5, 0.0, 1.5).is_err());
    }

    #[test]
    fn head_deficit_matches_direct() {
        for &(a, g) in &[(0.3, 0.0), (0.3, 0.8), (0.95, 0.4), (0.7, 0.7)] {
            let p = ExtremalParams::analytic(a, g).unwrap();
            assert!((p.head_deficit() - (1.0 - p.a0().abs())).abs() < 1e-15);
        }
        let p = ExtremalParams::analytic(1.0 - 1e-12, 0.5).unwrap();
        let expected = 1e-12 * 1.5 / 0.5;
        assert!((p.head_deficit() / expected - 1.0).abs() < 1e-3);
    }

    #[test]
    fn harmonic_examples() {
        let m = harmonic_extremal(&ExtremalParams::new(0.5, 0.0, 0.5).unwrap());
        assert!((m.g().coefficient(1) - 0.375).abs() < 1e-15);
        assert_eq!(m.g().coefficient(0), 0.0);

        let m = harmonic_extremal(&ExtremalParams::new(0.5, 0.0, 0.0).unwrap());
        assert!((0..20).all(|n| m.g().coefficient(n) == 0.0));

        let m = harmonic_extremal(&ExtremalParams::new(0.5, 0.0, 1.0).unwrap());
        for n in 1..20 {
            let sum = m.h().coefficient(n) + m.g().coefficient(n);
            assert!((sum - 1.5 * 0.5f64.powi(n as i32 - 1)).abs() < 1e-15);
        }
    }

    #[test]
    fn subordination_examples() {
        let s = subordination_extremal(0.5).unwrap();
        assert_eq!(s.map.h().coefficient(3) + s.map.g().coefficient(3), 1.5);
        assert_eq!(s.context.d(), 0.5);
        let s = subordination_extremal(1.0).unwrap();
        assert_eq!(s.map.h().coefficient(7) + s.map.g().coefficient(7), 2.0);
        assert_eq!(s.map.g().coefficient(0), 0.0);
    }

    #[test]
    fn boundary_examples() {
        let pts = boundary_points(0.0, 4).unwrap();
        assert_eq!(pts, vec![(1.0, 0.0), (0.0, 1.0), (-1.0, 0.0), (0.0, -1.0)]);
        let d = DomainParams::new(0.5).unwrap();
        assert_eq!((d.center, d.radius), (-1.0, 2.0));
        assert_eq!(boundary_points(0.5, 8).unwrap()[0], (1.0, 0.0));
        let d = DomainParams::new(0.9).unwrap();
        assert!((d.center + 9.0).abs() < 1e-12 && (d.radius - 10.0).abs() < 1e-12);
        assert!(boundary_points(0.2, 2).is_err());
        assert!(d.contains(0.99, 0.0) && !d.contains(1.01, 0.0));
    }
}
