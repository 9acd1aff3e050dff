use rand::RngCore;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use super::family::{family_state, Analytic, FamilyKind, FamilySpec};
use crate::groverian::{pmax_alternating, pmax_bloch, pmax_reduced, SolverOptions};
use crate::protocols::{superdense_check, teleport_feasible, Assignment};
use crate::qcore::PureState;
use crate::{Error, Exec, Result, Tolerances};

/// Largest grid accepted by [`scan_family`].
pub const MAX_GRID_POINTS: usize = 100_000;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScanOptions {
    pub seed: u64,
    pub restarts: usize,
    pub tolerances: Tolerances,
    /// Also run the reduced and Bloch solvers on each point.
    pub cross_check: bool,
    pub exec: Exec,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            seed: 0,
            restarts: SolverOptions::default().restarts,
            tolerances: Tolerances::default(),
            cross_check: true,
            exec: Exec::default(),
        }
    }
}

/// Named parameters in a fixed order; serializes as a JSON object.
#[derive(Clone, Debug, PartialEq)]
pub struct Params(pub Vec<(&'static str, f64)>);

impl Serialize for Params {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            m.serialize_entry(k, v)?;
        }
        m.end()
    }
}

/// Everything computed for one family member.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanRecord {
    pub family: FamilyKind,
    pub params: Params,
    /// Alternating-solver value.
    pub pmax_numeric: f64,
    pub pmax_analytic: Option<f64>,
    /// Which closed form produced `pmax_analytic`, or why it is missing.
    pub branch: Option<&'static str>,
    pub teleport_bob: [bool; 3],
    pub dense_alice: [bool; 3],
    /// Feasible somewhere ⇒ `P_max = 1/2`.
    pub necessary_ok: bool,
    /// `P_max = 1/2` ⇒ feasible somewhere.
    pub sufficient_ok: bool,
    pub pmax_reduced: Option<f64>,
    pub pmax_bloch: Option<f64>,
    pub converged: bool,
}

impl ScanRecord {
    pub fn any_feasible(&self) -> bool {
        self.teleport_bob.iter().any(|&f| f)
    }

    pub fn consistent_with_conjecture(&self) -> bool {
        self.necessary_ok && self.sufficient_ok
    }
}

/// Seed for grid point `index`, independent of evaluation order.
pub(crate) fn point_seed(seed: u64, index: usize) -> u64 {
    crate::groverian::restart_rng(seed, index).next_u64()
}

/// Conjecture flags for a state with value `p` and feasibility `any_feasible`.
pub(crate) fn conjecture_flags(p: f64, any_feasible: bool, tol: f64) -> (bool, bool) {
    let half = (p - 0.5).abs() < tol;
    (!any_feasible || half, !half || any_feasible)
}

fn evaluate_state(state: &PureState, spec: &FamilySpec, seed: u64, opts: &ScanOptions) -> Result<ScanRecord> {
    let solver = SolverOptions { restarts: opts.restarts, seed, exec: Exec::Sequential, ..SolverOptions::default() };
    let numeric = pmax_alternating(state, &solver)?;
    let (pmax_reduced, pmax_bloch) = if opts.cross_check {
        (Some(pmax_reduced(state, &solver)?.p_max), pmax_bloch(state, &solver).ok().map(|(r, _)| r.p_max))
    } else {
        (None, None)
    };
    let mut teleport_bob = [false; 3];
    let mut dense_alice = [false; 3];
    for k in 0..3 {
        teleport_bob[k] = teleport_feasible(state, Assignment::bob(k)?)?;
        dense_alice[k] = superdense_check(state, k)?.feasible;
    }
    let (pmax_analytic, branch) = match spec.analytic() {
        Analytic::Value(p, b) => (Some(p), Some(b)),
        Analytic::Degenerate(b) => (None, Some(b)),
        Analytic::None => (None, None),
    };
    let any = teleport_bob.iter().any(|&f| f);
    let (necessary_ok, sufficient_ok) = conjecture_flags(numeric.p_max, any, opts.tolerances.conjecture);
    let family = spec.kind();
    Ok(ScanRecord {
        family,
        params: Params(family.param_names().iter().copied().zip(spec.params()).collect()),
        pmax_numeric: numeric.p_max,
        pmax_analytic,
        branch,
        teleport_bob,
        dense_alice,
        necessary_ok,
        sufficient_ok,
        pmax_reduced,
        pmax_bloch,
        converged: numeric.converged,
    })
}

/// Evaluates every point of `specs`, in order.
pub fn scan_points(specs: &[FamilySpec], opts: &ScanOptions) -> Result<Vec<ScanRecord>> {
    if specs.is_empty() {
        return Err(Error::EmptyGrid);
    }
    if specs.len() > MAX_GRID_POINTS {
        return Err(Error::InvalidArgument(format!("grid has {} points, limit is {MAX_GRID_POINTS}", specs.len())));
    }
    let states = specs.iter().map(family_state).collect::<Result<Vec<_>>>()?;
    opts.exec
        .map_range(specs.len(), |i| evaluate_state(&states[i], &specs[i], point_seed(opts.seed, i), opts))
        .into_iter()
        .collect()
}

/// Scans `family` over its default grid with `n` points per axis.
pub fn scan_family(family: FamilyKind, n: usize, opts: &ScanOptions) -> Result<Vec<ScanRecord>> {
    let specs = family.grid(n)?;
    if specs.len() > MAX_GRID_POINTS {
        return Err(Error::InvalidArgument(format!("grid of {n} per axis is too large")));
    }
    scan_points(&specs, opts)
}

/// Scans every family, concatenated in [`FamilyKind::ALL`] order.
pub fn scan_all(n: usize, opts: &ScanOptions) -> Result<Vec<ScanRecord>> {
    let mut specs = Vec::new();
    for kind in FamilyKind::ALL {
        specs.extend(kind.grid(n)?);
    }
    scan_points(&specs, opts)
}
