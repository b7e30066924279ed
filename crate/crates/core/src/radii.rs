//! Radius solvers, the closed-form catalog and extremal-family probes.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{
    check_dilatation, check_exponent, check_gamma, check_tolerance, BohrError, Result,
};
use crate::extremal::{harmonic_extremal, mobius_extremal, subordination_extremal, ExtremalParams};
use crate::functionals::{
    a_term, dilatation_from_k, harmonic_functional, q_functional, refined_functional, weighted_sum,
    HarmonicMap, LambdaWeight,
};
use crate::specfun::{gauss_2f1_minus_one, HypergeomParams};
use crate::weights::WeightFamily;

pub const DEFAULT_TOL: f64 = 1e-12;
pub const SCAN_STEP: f64 = 1e-3;
pub const SCAN_CEILING: f64 = 1.0 - 1e-9;
pub const MAX_BISECTIONS: usize = 200;
pub const DEFAULT_A_GRID: [f64; 4] = [0.9, 0.99, 0.999, 0.9999];

/// Relative accuracy requested from the sums inside a defect evaluation.
const DEFECT_REL_TOL: f64 = 1e-17;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ClosedForm,
    Bisection,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::ClosedForm => "closed_form",
            Method::Bisection => "bisection",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RadiusResult {
    pub value: f64,
    pub method: Method,
    /// Gap function at `value`.
    pub residual: f64,
    pub bracket: (f64, f64),
    pub iterations: usize,
}

impl RadiusResult {
    pub fn closed_form(value: f64) -> Self {
        Self {
            value,
            method: Method::ClosedForm,
            residual: 0.0,
            bracket: (value, value),
            iterations: 0,
        }
    }
}

/// Smallest root of `gap` on `(0, ceiling]`.
///
/// The gap must be negative just right of 0. The interval is scanned in
/// steps of [`SCAN_STEP`]; the first sign change is refined by bisection
/// until the bracket is at most `tol` wide.
pub fn minimal_root(
    mut gap: impl FnMut(f64) -> Result<f64>,
    ceiling: f64,
    tol: f64,
) -> Result<RadiusResult> {
    check_tolerance(tol)?;
    let g0 = gap(0.0)?;
    if g0 > 0.0 || (g0 == 0.0 && gap(1e-9)? >= 0.0) {
        return Err(BohrError::Hypothesis(format!(
            "the radius condition fails near r = 0 (gap = {g0})"
        )));
    }
    let mut lo = 0.0;
    let mut hi = None;
    let mut i = 1usize;
    loop {
        let r = (i as f64 * SCAN_STEP).min(ceiling);
        if gap(r)? >= 0.0 {
            hi = Some(r);
            break;
        }
        if r >= ceiling {
            break;
        }
        lo = r;
        i += 1;
    }
    let mut hi = hi.ok_or(BohrError::NoRoot {
        searched_to: ceiling,
    })?;
    let mut iterations = 0;
    while hi - lo > tol && iterations < MAX_BISECTIONS {
        let mid = 0.5 * (lo + hi);
        if gap(mid)? < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        iterations += 1;
    }
    let value = 0.5 * (lo + hi);
    Ok(RadiusResult {
        value,
        method: Method::Bisection,
        residual: gap(value)?,
        bracket: (lo, hi),
        iterations,
    })
}

fn scan_ceiling(family: &WeightFamily) -> f64 {
    SCAN_CEILING.min(family.r_max() - 1e-9)
}

fn check_scale(what: &'static str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(BohrError::Domain {
            what,
            value: v,
            expected: "(0, inf)",
        })
    }
}

/// Minimal root of `lhs_scale Φ_1(r) = rhs_scale φ_0(r)`.
pub fn solve_radius(
    family: &WeightFamily,
    lhs_scale: f64,
    rhs_scale: f64,
    tol: f64,
) -> Result<RadiusResult> {
    check_scale("lhs_scale", lhs_scale)?;
    check_scale("rhs_scale", rhs_scale)?;
    minimal_root(
        |r| family.scaled_gap(lhs_scale, rhs_scale, r),
        scan_ceiling(family),
        tol,
    )
}

/// `R_γ(p)`: `(2/p) Φ_1(r) = (1 + γ) φ_0(r)`.
pub fn analytic_radius(
    family: &WeightFamily,
    p: f64,
    gamma: f64,
    tol: f64,
) -> Result<RadiusResult> {
    check_exponent(p)?;
    check_gamma(gamma)?;
    solve_radius(family, 2.0 / p, 1.0 + gamma, tol)
}

/// `2(1 + k) Φ_1(r) = p(1 + γ) φ_0(r)`.
pub fn harmonic_radius(
    family: &WeightFamily,
    p: f64,
    gamma: f64,
    k: f64,
    tol: f64,
) -> Result<RadiusResult> {
    check_exponent(p)?;
    check_gamma(gamma)?;
    check_dilatation(k)?;
    solve_radius(family, 2.0 * (1.0 + k), p * (1.0 + gamma), tol)
}

/// `2(1 + k) Φ_1(r) = φ_0(r)`.
pub fn subordination_radius(family: &WeightFamily, k: f64, tol: f64) -> Result<RadiusResult> {
    check_dilatation(k)?;
    solve_radius(family, 2.0 * (1.0 + k), 1.0, tol)
}

/// Minimal root of `|₂F₁(a, b; c; x) - 1| = (1 + γ)p/2`.
pub fn hypergeom_radius(
    a: f64,
    b: f64,
    c: f64,
    p: f64,
    gamma: f64,
    tol: f64,
) -> Result<RadiusResult> {
    check_exponent(p)?;
    check_gamma(gamma)?;
    // Validates the parameters and the common sign of the coefficients.
    WeightFamily::hypergeom(a, b, c)?;
    let params = HypergeomParams::new(a, b, c)?;
    let level = (1.0 + gamma) * p / 2.0;
    minimal_root(
        |x| Ok(gauss_2f1_minus_one(&params, x)?.abs() - level),
        SCAN_CEILING,
        tol,
    )
}

/// Closed-form radii with a solver counterpart.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum CatalogCase {
    /// `(1+γ)/(3+γ)`.
    TheoremB,
    /// `p(1+γ)/(2+p(1+γ))`, power weights.
    App1,
    /// `√(p(1+γ)/(2+p(1+γ)))`, even weights.
    App2,
    /// `(√(1+p²(1+γ)²) - 1)/(p(1+γ))`, odd weights with unit head.
    App3,
    /// `1 - √(2/(p(1+γ)+2))`, weights `(n+1) r^n`.
    App4,
    /// Smaller root of `c r² - 2(c+1) r + c = 0`, `c = p(1+γ)`; weights `n r^n`.
    App5Alpha1,
    /// The `n² r^n` case as printed, which repeats the `n r^n` formula.
    /// Its solver counterpart uses the `n² r^n` weights, so the two disagree.
    App5Alpha2Printed,
    /// `(1+γ)/(3+2k+γ)`.
    Cor41,
    /// `(1+γ)/(2+k+γ)`.
    Cor42,
    /// `1 - (2/(2+(1+γ)p))^{1/y}` for `₂F₁(y, 1; 1; x) = (1-x)^{-y}`.
    Remark31,
    /// `(K+1)/(5K+1)`.
    QuasiSubordination,
}

impl CatalogCase {
    pub const ALL: [CatalogCase; 11] = [
        CatalogCase::TheoremB,
        CatalogCase::App1,
        CatalogCase::App2,
        CatalogCase::App3,
        CatalogCase::App4,
        CatalogCase::App5Alpha1,
        CatalogCase::App5Alpha2Printed,
        CatalogCase::Cor41,
        CatalogCase::Cor42,
        CatalogCase::Remark31,
        CatalogCase::QuasiSubordination,
    ];

    pub fn id(&self) -> &'static str {
        match self {
            CatalogCase::TheoremB => "theorem-b",
            CatalogCase::App1 => "app1",
            CatalogCase::App2 => "app2",
            CatalogCase::App3 => "app3",
            CatalogCase::App4 => "app4",
            CatalogCase::App5Alpha1 => "app5-alpha1",
            CatalogCase::App5Alpha2Printed => "app5-alpha2-printed",
            CatalogCase::Cor41 => "cor4-1",
            CatalogCase::Cor42 => "cor4-2",
            CatalogCase::Remark31 => "remark3-1",
            CatalogCase::QuasiSubordination => "quasi-subordination",
        }
    }

    /// False only for entries known to disagree with their solver.
    pub fn expected_to_agree(&self) -> bool {
        !matches!(self, CatalogCase::App5Alpha2Printed)
    }

    /// Weight family of the solver counterpart.
    pub fn family(&self, params: &CatalogParams) -> Result<WeightFamily> {
        Ok(match self {
            CatalogCase::TheoremB
            | CatalogCase::App1
            | CatalogCase::Cor41
            | CatalogCase::Cor42
            | CatalogCase::QuasiSubordination => WeightFamily::Power,
            CatalogCase::App2 => WeightFamily::Even,
            CatalogCase::App3 => WeightFamily::OddWithUnitHead,
            CatalogCase::App4 => WeightFamily::shifted_linear(1),
            CatalogCase::App5Alpha1 => WeightFamily::power_alpha(1.0, 1)?,
            CatalogCase::App5Alpha2Printed => WeightFamily::power_alpha(2.0, 1)?,
            CatalogCase::Remark31 => WeightFamily::hypergeom(params.y, 1.0, 1.0)?,
        })
    }

    /// The bisection counterpart of the closed form.
    pub fn solve(&self, params: &CatalogParams, tol: f64) -> Result<RadiusResult> {
        let CatalogParams {
            gamma,
            p,
            k,
            big_k,
            y,
        } = *params;
        let family = self.family(params)?;
        match self {
            CatalogCase::TheoremB => analytic_radius(&family, 1.0, gamma, tol),
            CatalogCase::Cor41 => harmonic_radius(&family, 1.0, gamma, k, tol),
            CatalogCase::Cor42 => harmonic_radius(&family, 2.0, gamma, k, tol),
            CatalogCase::Remark31 => hypergeom_radius(y, 1.0, 1.0, p, gamma, tol),
            CatalogCase::QuasiSubordination => {
                subordination_radius(&family, dilatation_from_k(big_k)?, tol)
            }
            _ => analytic_radius(&family, p, gamma, tol),
        }
    }
}

impl fmt::Display for CatalogCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for CatalogCase {
    type Err = BohrError;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase().replace('_', "-");
        if key == "classical" {
            return Ok(CatalogCase::TheoremB);
        }
        CatalogCase::ALL
            .into_iter()
            .find(|c| c.id() == key)
            .ok_or_else(|| BohrError::UnknownCase(s.to_string()))
    }
}

/// Parameters consumed by the catalog; each case reads only what it needs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CatalogParams {
    pub gamma: f64,
    pub p: f64,
    pub k: f64,
    pub big_k: f64,
    pub y: f64,
}

impl Default for CatalogParams {
    fn default() -> Self {
        Self {
            gamma: 0.0,
            p: 1.0,
            k: 0.0,
            big_k: 1.0,
            y: 1.0,
        }
    }
}

pub fn closed_form_radius(case: CatalogCase, params: &CatalogParams) -> Result<f64> {
    let CatalogParams {
        gamma,
        p,
        k,
        big_k,
        y,
    } = *params;
    check_gamma(gamma)?;
    check_exponent(p)?;
    check_dilatation(k)?;
    let c = p * (1.0 + gamma);
    Ok(match case {
        CatalogCase::TheoremB => (1.0 + gamma) / (3.0 + gamma),
        CatalogCase::App1 => c / (2.0 + c),
        CatalogCase::App2 => (c / (2.0 + c)).sqrt(),
        CatalogCase::App3 => ((1.0 + c * c).sqrt() - 1.0) / c,
        CatalogCase::App4 => 1.0 - (2.0 / (c + 2.0)).sqrt(),
        CatalogCase::App5Alpha1 | CatalogCase::App5Alpha2Printed => {
            let b = 2.0 * (c + 1.0);
            (b - (b * b - 4.0 * c * c).sqrt()) / (2.0 * c)
        }
        CatalogCase::Cor41 => (1.0 + gamma) / (3.0 + 2.0 * k + gamma),
        CatalogCase::Cor42 => (1.0 + gamma) / (2.0 + k + gamma),
        CatalogCase::Remark31 => {
            if !(y.is_finite() && y > 0.0) {
                return Err(BohrError::Domain {
                    what: "y",
                    value: y,
                    expected: "(0, inf)",
                });
            }
            1.0 - (2.0 / (2.0 + c)).powf(1.0 / y)
        }
        CatalogCase::QuasiSubordination => {
            dilatation_from_k(big_k)?;
            (big_k + 1.0) / (5.0 * big_k + 1.0)
        }
    })
}

/// One-parameter extremal family indexed by `a ∈ (0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum ExtremalFamily {
    /// `h_a` on Ω_γ.
    Mobius { gamma: f64 },
    /// `h_a + conj(k(h_a - a_0))`.
    Harmonic { gamma: f64, k: f64 },
    /// `1/(1-z) + conj(k z/(1-z))`, independent of `a`.
    Subordination { k: f64 },
}

/// A member of an [`ExtremalFamily`] with the data needed for exact defects.
#[derive(Debug, Clone)]
pub struct ExtremalMember {
    pub a: f64,
    pub map: HarmonicMap,
    /// `1 - |a_0|`.
    pub head_deficit: f64,
    /// `dist(ψ(0), ∂ψ(𝔻))` when the member is a subordinating function.
    pub distance: Option<f64>,
}

impl ExtremalFamily {
    pub fn member(&self, a: f64) -> Result<ExtremalMember> {
        match *self {
            ExtremalFamily::Mobius { gamma } => {
                let params = ExtremalParams::analytic(a, gamma)?;
                Ok(ExtremalMember {
                    a,
                    map: HarmonicMap::analytic(mobius_extremal(&params)),
                    head_deficit: params.head_deficit(),
                    distance: None,
                })
            }
            ExtremalFamily::Harmonic { gamma, k } => {
                let params = ExtremalParams::new(a, gamma, k)?;
                Ok(ExtremalMember {
                    a,
                    map: harmonic_extremal(&params),
                    head_deficit: params.head_deficit(),
                    distance: None,
                })
            }
            ExtremalFamily::Subordination { k } => {
                let s = subordination_extremal(k)?;
                Ok(ExtremalMember {
                    a,
                    map: s.map,
                    head_deficit: 0.0,
                    distance: Some(s.context.d()),
                })
            }
        }
    }
}

/// A functional `F` and its threshold `T`; the inequality is `F <= T`.
#[derive(Debug, Clone)]
pub enum FunctionalSpec {
    /// `M^Λ_f <= φ_0`.
    Refined {
        family: WeightFamily,
        p: f64,
        gamma: f64,
        lambda: LambdaWeight,
    },
    /// `N_{φ,f,p} <= φ_0`.
    Harmonic { family: WeightFamily, p: f64 },
    /// `Q_{φ,f} <= d φ_0`.
    Subordination { family: WeightFamily },
}

impl FunctionalSpec {
    fn family(&self) -> &WeightFamily {
        match self {
            FunctionalSpec::Refined { family, .. }
            | FunctionalSpec::Harmonic { family, .. }
            | FunctionalSpec::Subordination { family } => family,
        }
    }

    pub fn evaluate(&self, member: &ExtremalMember, r: f64, tol: f64) -> Result<f64> {
        match self {
            FunctionalSpec::Refined {
                family,
                p,
                gamma,
                lambda,
            } => refined_functional(member.map.h(), family, *p, *gamma, lambda, r, tol),
            FunctionalSpec::Harmonic { family, p } => {
                harmonic_functional(&member.map, family, *p, r, tol)
            }
            FunctionalSpec::Subordination { family } => q_functional(&member.map, family, r, tol),
        }
    }

    pub fn threshold(&self, member: &ExtremalMember, r: f64) -> Result<f64> {
        let phi0 = self.family().weight_at(0, r)?;
        match self {
            FunctionalSpec::Subordination { .. } => Ok(phi0 * self.distance(member)?),
            _ => Ok(phi0),
        }
    }

    fn distance(&self, member: &ExtremalMember) -> Result<f64> {
        member.distance.ok_or_else(|| {
            BohrError::Unsupported(
                "the subordination functional needs a distance to the boundary".into(),
            )
        })
    }

    /// `F - T`, evaluated so that the `1 - |a_0|^p` cancellation is exact.
    pub fn defect(&self, member: &ExtremalMember, r: f64) -> Result<f64> {
        let family = self.family();
        let map = &member.map;
        let scale = member
            .head_deficit
            .max(map.h().envelope(1))
            .max(f64::MIN_POSITIVE);
        let tol = DEFECT_REL_TOL * scale;
        let phi0 = family.weight_at(0, r)?;
        let head = |p: f64| phi0 * (p * (-member.head_deficit).ln_1p()).exp_m1();
        match self {
            FunctionalSpec::Refined {
                p, gamma, lambda, ..
            } => {
                check_exponent(*p)?;
                check_gamma(*gamma)?;
                let body = weighted_sum(map.h(), family, 1, r, tol)?;
                let l = lambda.at(r)?;
                let refinement = if l == 0.0 {
                    0.0
                } else {
                    l * a_term(map.h(), family, r, tol)?
                };
                Ok(head(*p) + body + refinement)
            }
            FunctionalSpec::Harmonic { p, .. } => {
                check_exponent(*p)?;
                let body = weighted_sum(map.h(), family, 1, r, tol)?
                    + weighted_sum(map.g(), family, 1, r, tol)?;
                Ok(head(*p) + body)
            }
            FunctionalSpec::Subordination { .. } => {
                let q = q_functional(map, family, r, tol)?;
                Ok(q - phi0 * self.distance(member)?)
            }
        }
    }
}

/// An extremal member that breaks the inequality at `r`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SharpnessWitness {
    pub a: f64,
    pub r: f64,
    pub functional_value: f64,
    pub threshold: f64,
    /// `functional_value - threshold`, computed without cancellation.
    pub defect: f64,
}

/// Looks for `a` in `a_grid` (in order) with `F > T` at `r = radius + eps`.
///
/// `None` means the probe was inconclusive, not that the radius is not sharp.
pub fn sharpness_probe(
    radius: f64,
    functional: &FunctionalSpec,
    extremal: &ExtremalFamily,
    eps: f64,
    a_grid: &[f64],
) -> Result<Option<SharpnessWitness>> {
    check_tolerance(eps)?;
    let r = radius + eps;
    for &a in a_grid {
        let member = extremal.member(a)?;
        let defect = functional.defect(&member, r)?;
        if defect > 0.0 {
            return Ok(Some(SharpnessWitness {
                a,
                r,
                functional_value: functional.evaluate(&member, r, DEFAULT_TOL * 1e-3)?,
                threshold: functional.threshold(&member, r)?,
                defect,
            }));
        }
    }
    Ok(None)
}

/// Largest `r` (to within `r_tol`) at which `F <= T` for every `a` in the grid.
///
/// Restricted to one extremal family this is an upper bound for the Bohr
/// radius of the whole class, and it tightens as the grid approaches `a = 1`.
pub fn empirical_bohr_radius(
    functional: &FunctionalSpec,
    extremal: &ExtremalFamily,
    a_grid: &[f64],
    r_tol: f64,
) -> Result<f64> {
    check_tolerance(r_tol)?;
    if a_grid.is_empty() {
        return Err(BohrError::Parameter("the a-grid is empty".into()));
    }
    let members = a_grid
        .iter()
        .map(|&a| extremal.member(a))
        .collect::<Result<Vec<_>>>()?;
    let violated = |r: f64| -> Result<bool> {
        for m in &members {
            if functional.defect(m, r)? > 0.0 {
                return Ok(true);
            }
        }
        Ok(false)
    };
    let ceiling = SCAN_CEILING.min(functional.family().r_max() - 1e-9);
    let mut lo = 0.0;
    let mut hi = None;
    let mut i = 1usize;
    loop {
        let r = (i as f64 * SCAN_STEP).min(ceiling);
        if violated(r)? {
            hi = Some(r);
            break;
        }
        lo = r;
        if r >= ceiling {
            break;
        }
        i += 1;
    }
    let Some(mut hi) = hi else {
        return Ok(ceiling);
    };
    let mut iterations = 0;
    while hi - lo > r_tol && iterations < MAX_BISECTIONS {
        let mid = 0.5 * (lo + hi);
        if violated(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
        iterations += 1;
    }
    Ok(lo)
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: f64 = DEFAULT_TOL;

    #[test]
    fn solve_radius_examples() {
        let r = solve_radius(&WeightFamily::Power, 2.0, 1.0, TOL).unwrap();
        assert!((r.value - 1.0 / 3.0).abs() < 1e-12);
        assert!(r.bracket.1 - r.bracket.0 <= 2.0 * TOL);
        let r = solve_radius(&WeightFamily::Power, 2.0, 1.5, TOL).unwrap();
        assert!((r.value - 3.0 / 7.0).abs() < 1e-12);
        let r = solve_radius(&WeightFamily::Even, 2.0, 1.0, TOL).unwrap();
        assert!((r.value - (1.0f64 / 3.0).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn analytic_examples() {
        let r = analytic_radius(&WeightFamily::Power, 2.0, 0.0, TOL).unwrap();
        assert!((r.value - 0.5).abs() < 1e-12);
        let r = analytic_radius(&WeightFamily::shifted_linear(1), 1.0, 0.0, TOL).unwrap();
        assert!((r.value - (1.0 - (2.0f64 / 3.0).sqrt())).abs() < 1e-12);
    }

    #[test]
    fn harmonic_and_subordination_examples() {
        let r = harmonic_radius(&WeightFamily::Power, 1.0, 0.0, 0.5, TOL).unwrap();
        assert!((r.value - 0.25).abs() < 1e-12);
        let r = harmonic_radius(&WeightFamily::Power, 2.0, 0.5, 0.5, TOL).unwrap();
        assert!((r.value - 0.5).abs() < 1e-12);
        let r = subordination_radius(&WeightFamily::Power, 0.5, TOL).unwrap();
        assert!((r.value - 0.25).abs() < 1e-12);
        let r = subordination_radius(&WeightFamily::Power, 1.0, TOL).unwrap();
        assert!((r.value - 0.2).abs() < 1e-12);
    }

    #[test]
    fn hypergeom_examples() {
        let r = hypergeom_radius(1.0, 1.0, 1.0, 1.0, 0.0, TOL).unwrap();
        assert!((r.value - 1.0 / 3.0).abs() < 1e-10);
        let r = hypergeom_radius(2.0, 1.0, 1.0, 1.0, 0.0, TOL).unwrap();
        assert!((r.value - (1.0 - (2.0f64 / 3.0).sqrt())).abs() < 1e-10);
        let r = hypergeom_radius(1.0, 1.0, 1.0, 2.0, 0.0, TOL).unwrap();
        assert!((r.value - 0.5).abs() < 1e-10);
    }

    #[test]
    fn solver_errors() {
        let e = hypergeom_radius(0.0, 1.0, 1.0, 1.0, 0.0, TOL).unwrap_err();
        assert!(matches!(e, BohrError::NoRoot { .. }));
        let e = hypergeom_radius(-1.5, 1.0, 1.0, 1.0, 0.0, TOL).unwrap_err();
        assert!(matches!(e, BohrError::Hypothesis(_)));
        let e = minimal_root(|r| Ok(1.0 - r), SCAN_CEILING, TOL).unwrap_err();
        assert!(matches!(e, BohrError::Hypothesis(_)));
        assert!(analytic_radius(&WeightFamily::Power, 0.0, 0.0, TOL).is_err());
    }

    #[test]
    fn catalog_examples() {
        let d = CatalogParams::default();
        assert!((closed_form_radius(CatalogCase::TheoremB, &d).unwrap() - 1.0 / 3.0).abs() < 1e-15);
        let p = CatalogParams { k: 1.0, ..d };
        assert!((closed_form_radius(CatalogCase::Cor41, &p).unwrap() - 0.2).abs() < 1e-15);
        let app3 = closed_form_radius(CatalogCase::App3, &d).unwrap();
        assert!((app3 - (2.0f64.sqrt() - 1.0)).abs() < 1e-15);
        let solved = CatalogCase::App3.solve(&d, TOL).unwrap();
        assert!((app3 - solved.value).abs() < 1e-10);
        assert!(matches!(
            "nope".parse::<CatalogCase>(),
            Err(BohrError::UnknownCase(_))
        ));
        assert_eq!(
            "classical".parse::<CatalogCase>().unwrap(),
            CatalogCase::TheoremB
        );
        for c in CatalogCase::ALL {
            assert_eq!(c.id().parse::<CatalogCase>().unwrap(), c);
        }
    }

    #[test]
    fn printed_alpha_two_formula_disagrees() {
        let d = CatalogParams::default();
        let printed = closed_form_radius(CatalogCase::App5Alpha2Printed, &d).unwrap();
        let solved = CatalogCase::App5Alpha2Printed.solve(&d, TOL).unwrap().value;
        assert!((printed - solved).abs() > 1e-3);
        // 2r(1 + r) = p(1 - r)³ at p = 1.
        let residual = 2.0 * solved * (1.0 + solved) - (1.0 - solved).powi(3);
        assert!(residual.abs() < 1e-10);
    }

    fn classical() -> (FunctionalSpec, ExtremalFamily) {
        (
            FunctionalSpec::Refined {
                family: WeightFamily::Power,
                p: 1.0,
                gamma: 0.0,
                lambda: LambdaWeight::one(),
            },
            ExtremalFamily::Mobius { gamma: 0.0 },
        )
    }

    #[test]
    fn sharpness_examples() {
        let (f, e) = classical();
        let w = sharpness_probe(1.0 / 3.0, &f, &e, 0.01, &DEFAULT_A_GRID)
            .unwrap()
            .unwrap();
        assert!(w.functional_value > w.threshold && w.defect > 0.0);
        assert!(
            sharpness_probe(1.0 / 3.0 - 0.01, &f, &e, 0.01, &DEFAULT_A_GRID)
                .unwrap()
                .is_none()
        );

        let f = FunctionalSpec::Harmonic {
            family: WeightFamily::Power,
            p: 1.0,
        };
        let e = ExtremalFamily::Harmonic { gamma: 0.0, k: 1.0 };
        assert!(sharpness_probe(0.2, &f, &e, 0.01, &DEFAULT_A_GRID)
            .unwrap()
            .is_some());
    }

    #[test]
    fn empirical_examples() {
        let (f, e) = classical();
        let r = empirical_bohr_radius(&f, &e, &DEFAULT_A_GRID, 1e-10).unwrap();
        assert!(r >= 1.0 / 3.0 - 1e-9 && r - 1.0 / 3.0 < 5e-4, "{r}");
        let r = empirical_bohr_radius(&f, &e, &[0.5], 1e-10).unwrap();
        assert!(r > 1.0 / 3.0);

        let f = FunctionalSpec::Harmonic {
            family: WeightFamily::Power,
            p: 1.0,
        };
        let e = ExtremalFamily::Harmonic { gamma: 0.0, k: 1.0 };
        let r = empirical_bohr_radius(&f, &e, &DEFAULT_A_GRID, 1e-10).unwrap();
        assert!((r - 0.2).abs() < 5e-4);
    }

    #[test]
    fn defect_matches_direct_difference() {
        let (f, e) = classical();
        for &a in &[0.3, 0.9, 0.99] {
            let m = e.member(a).unwrap();
            let direct = f.evaluate(&m, 0.3, 1e-15).unwrap() - f.threshold(&m, 0.3).unwrap();
            assert!((f.defect(&m, 0.3).unwrap() - direct).abs() < 1e-14);
        }
    }
}
