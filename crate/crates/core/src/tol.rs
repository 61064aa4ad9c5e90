//! The single tolerance policy for all approximate comparisons.
//!
//! Every floating-point "equality" in the toolkit goes through [`Tol`]; the
//! exact pipeline never consults it.

use num_complex::Complex64;

/// Default tolerance τ.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Environment variable overriding the default tolerance for the CLI.
pub const TOL_ENV_VAR: &str = "TFOCK_TOL";

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tol(pub f64);

impl Default for Tol {
    fn default() -> Self {
        Tol(DEFAULT_TOL)
    }
}

impl Tol {
    /// Reads `TFOCK_TOL` if set, else the default.
    pub fn from_env() -> Self {
        match std::env::var(TOL_ENV_VAR) {
            Ok(s) => s.parse::<f64>().map(Tol).unwrap_or_default(),
            Err(_) => Tol::default(),
        }
    }

    pub fn eq(&self, a: f64, b: f64) -> bool {
        (a - b).abs() <= self.0
    }

    pub fn eq_c(&self, a: Complex64, b: Complex64) -> bool {
        (a - b).norm() <= self.0
    }

    pub fn is_zero(&self, a: f64) -> bool {
        a.abs() <= self.0
    }
}
