//! `P_max` (largest squared overlap with a product state) and the Groverian
//! measure `G = sqrt(1 - P_max)`.
//!
//! Three numeric routes are provided and cross-checked in the tests:
//!
//! - [`pmax_alternating`]: higher-order power iteration over all `n` factors.
//! - [`pmax_reduced`]: the same iteration over `n - 1` factors with the
//!   identity on the last qubit.
//! - [`pmax_bloch`]: three-qubit states only, alternating over the Bloch
//!   vectors of the two qubits left after tracing one out.
//!
//! Every numeric route finishes with a Newton polish on the product of
//! spheres, because plain power iteration only converges sublinearly on
//! right-triangle generalized W states.
//!
//! Closed forms cover generalized W states ([`pmax_generalized_w`]) and the
//! four-coefficient family ([`pmax_quadrangle`]). The analytic stationary
//! points of the GHZ-like family live in [`ghz_like_stationary_points`].

mod bloch;
mod closed_form;
mod hopm;
mod newton;
mod stationary;

pub use bloch::{bloch_data, pmax_bloch, pmax_bloch_traced, BlochData, StationaryPoint};
pub use closed_form::{circumradius, pmax_generalized_w, pmax_quadrangle, GwBranch, QuadrangleSpec, TriangleSpec};
pub use hopm::{pmax_alternating, pmax_reduced};
pub use stationary::{ghz_like_stationary_points, AnalyticStationary};

pub use crate::qcore::ProductState;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::qcore::Qubit;
use crate::{Error, Exec, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Alternating,
    Reduced,
    Bloch,
    ClosedForm,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Method::Alternating => "alternating",
            Method::Reduced => "reduced",
            Method::Bloch => "bloch",
            Method::ClosedForm => "closed-form",
        })
    }
}

/// Multistart iteration settings.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolverOptions {
    pub restarts: usize,
    /// Stop a restart once a full sweep gains less than this.
    pub tol: f64,
    /// Sweep cap per restart.
    pub max_iter: usize,
    pub seed: u64,
    pub exec: Exec,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions { restarts: 32, tol: 1e-12, max_iter: 1000, seed: 0, exec: Exec::default() }
    }
}

impl SolverOptions {
    pub fn with_seed(seed: u64) -> Self {
        SolverOptions { seed, ..Self::default() }
    }

    fn validate(&self) -> Result<()> {
        if self.restarts < 1 {
            return Err(Error::InvalidArgument("restarts must be at least 1".into()));
        }
        if self.tol.is_nan() || self.tol < 0.0 {
            return Err(Error::InvalidArgument(format!("tolerance {} must be nonnegative", self.tol)));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GroverianResult {
    pub p_max: f64,
    pub g_measure: f64,
    pub maximizer: ProductState,
    pub method: Method,
    pub restarts_used: usize,
    pub converged: bool,
}

impl GroverianResult {
    fn new(p_max: f64, maximizer: ProductState, method: Method, restarts_used: usize, converged: bool) -> Self {
        let p_max = p_max.clamp(0.0, 1.0);
        GroverianResult { p_max, g_measure: (1.0 - p_max).sqrt(), maximizer, method, restarts_used, converged }
    }
}

/// Independent, reproducible stream for restart `index`.
pub(crate) fn restart_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

/// Uniform point on the unit sphere in R³.
pub(crate) fn random_unit_vector<R: Rng>(rng: &mut R) -> [f64; 3] {
    loop {
        let v: [f64; 3] = [rng.sample(StandardNormal), rng.sample(StandardNormal), rng.sample(StandardNormal)];
        let r = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if r > 1e-8 {
            return [v[0] / r, v[1] / r, v[2] / r];
        }
    }
}

/// Ket with a Bloch vector drawn uniformly from the sphere.
pub(crate) fn random_qubit<R: Rng>(rng: &mut R) -> Qubit {
    Qubit::from_bloch_vector(random_unit_vector(rng)).expect("unit vector")
}

/// Index of the best run: largest value, earliest index on ties.
pub(crate) fn best_index(values: impl IntoIterator<Item = f64>) -> Option<usize> {
    let mut best: Option<(usize, f64)> = None;
    for (i, v) in values.into_iter().enumerate() {
        if best.is_none_or(|(_, b)| v > b) {
            best = Some((i, v));
        }
    }
    best.map(|(i, _)| i)
}
