use thiserror::Error;

/// Errors produced by the numerical routines in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum BohrError {
    /// An argument lies outside the domain of the operation (e.g. `r >= 1`).
    #[error("{what} = {value} is outside the domain {expected}")]
    Domain {
        what: &'static str,
        value: f64,
        expected: &'static str,
    },

    /// A parameter combination is invalid (e.g. a pole of ₂F₁).
    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// The radius lies at or beyond the convergence boundary of a weight family.
    #[error("series diverges at r = {r} (convergence interval is [0, {r_max}))")]
    Divergence { r: f64, r_max: f64 },

    /// The requested accuracy was not reached within the term cap.
    #[error("series truncated after {terms} terms (partial value {partial}, remainder bound {remainder})")]
    Truncated {
        partial: f64,
        terms: usize,
        remainder: f64,
    },

    /// A Möbius map with a vanishing constant denominator term.
    #[error("singular Möbius map: constant term of the denominator is zero")]
    Singular,

    /// The gap function never changed sign on the scanned interval.
    #[error("no sign change of the gap function on (0, {searched_to}]")]
    NoRoot { searched_to: f64 },

    /// A theorem hypothesis does not hold for the supplied input.
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    /// The input is well-formed but not supported by the functional.
    #[error("unsupported input: {0}")]
    Unsupported(String),

    /// Unknown closed-form catalog identifier.
    #[error("unknown catalog case `{0}`")]
    UnknownCase(String),
}

impl BohrError {
    /// True for failures of the numerics rather than of the caller's input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            BohrError::Divergence { .. }
                | BohrError::Truncated { .. }
                | BohrError::NoRoot { .. }
                | BohrError::Singular
        )
    }
}

pub type Result<T> = std::result::Result<T, BohrError>;

pub(crate) fn check_radius(r: f64) -> Result<()> {
    if r.is_finite() && (0.0..1.0).contains(&r) {
        Ok(())
    } else {
        Err(BohrError::Domain {
            what: "r",
            value: r,
            expected: "[0, 1)",
        })
    }
}

pub(crate) fn check_exponent(p: f64) -> Result<()> {
    if p.is_finite() && p > 0.0 && p <= 2.0 {
        Ok(())
    } else {
        Err(BohrError::Domain {
            what: "p",
            value: p,
            expected: "(0, 2]",
        })
    }
}

pub(crate) fn check_gamma(gamma: f64) -> Result<()> {
    if gamma.is_finite() && (0.0..1.0).contains(&gamma) {
        Ok(())
    } else {
        Err(BohrError::Domain {
            what: "gamma",
            value: gamma,
            expected: "[0, 1)",
        })
    }
}

pub(crate) fn check_dilatation(k: f64) -> Result<()> {
    if k.is_finite() && (0.0..=1.0).contains(&k) {
        Ok(())
    } else {
        Err(BohrError::Domain {
            what: "k",
            value: k,
            expected: "[0, 1]",
        })
    }
}

pub(crate) fn check_tolerance(tol: f64) -> Result<()> {
    if tol.is_finite() && tol > 0.0 {
        Ok(())
    } else {
        Err(BohrError::Domain {
            what: "tol",
            value: tol,
            expected: "(0, inf)",
        })
    }
}
