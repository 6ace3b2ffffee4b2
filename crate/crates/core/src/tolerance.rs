//! Numerical tolerances shared across the crate.

use serde::{Deserialize, Serialize};

/// Absolute entrywise tolerance for matrix equality and character checks.
pub const DEFAULT_EPS: f64 = 1e-9;
/// Coefficients with modulus below this are dropped after arithmetic.
pub const DROP_EPS: f64 = 1e-12;
/// Relative tolerance for exact division and rewriting residuals.
pub const DIV_EPS: f64 = 1e-9;
/// Absolute tolerance for Toeplitz operator identities.
pub const OPERATOR_EPS: f64 = 1e-8;

/// Environment variable that overrides [`Tolerances::eps`] in the CLI.
pub const TOLERANCE_ENV: &str = "QH_TOL";

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub eps: f64,
    pub div: f64,
    pub operator: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            eps: DEFAULT_EPS,
            div: DIV_EPS,
            operator: OPERATOR_EPS,
        }
    }
}

impl Tolerances {
    pub fn with_eps(eps: f64) -> Self {
        Self {
            eps,
            ..Self::default()
        }
    }
}
