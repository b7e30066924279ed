//! Generalized Bohr radii for analytic and `K`-quasiconformal harmonic maps
//! on the disks Ω_γ = {z : |z + γ/(1-γ)| < 1/(1-γ)}, 0 <= γ < 1.
//!
//! ```
//! use bohr_core::radii::analytic_radius;
//! use bohr_core::weights::WeightFamily;
//!
//! let r = analytic_radius(&WeightFamily::Power, 1.0, 0.0, 1e-12).unwrap();
//! assert!((r.value - 1.0 / 3.0).abs() < 1e-12);
//! ```

mod error;
mod sum;

pub mod cli;
pub mod extremal;
pub mod functionals;
pub mod radii;
pub mod series;
pub mod specfun;
pub mod weights;

pub use error::{BohrError, Result};
pub use sum::MAX_TERMS;
