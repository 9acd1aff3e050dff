//! Centralized numeric tolerances.

use serde::{Deserialize, Serialize};

/// Every threshold used by checks and reports, in one record.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Algebraic identities: normalization, unitarity, orthogonality.
    pub algebraic: f64,
    /// Maximal-mixedness test for teleportation and superdense feasibility.
    pub feasibility: f64,
    /// `|p_max - 1/2|` below this counts as "equals 1/2" in conjecture checks.
    pub conjecture: f64,
    /// Width of the "on-circle" band for `α² = β² + γ²`.
    pub on_circle: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { algebraic: 1e-12, feasibility: 1e-10, conjecture: 1e-6, on_circle: 1e-10 }
    }
}
