//! State families, grid scans and the experiment that compares `P_max = 1/2`
//! with the existence of a perfect teleportation assignment.
//!
//! Everything here is deterministic under a seed; scan points and random
//! samples draw from streams keyed by their index.

mod family;
mod report;
mod scan;
mod search;
mod singular;

pub use family::{family_state, Analytic, FamilyKind, FamilySpec};
pub use report::{conjecture_report, ConjectureReport, Violation};
pub use scan::{scan_all, scan_family, scan_points, Params, ScanOptions, ScanRecord, MAX_GRID_POINTS};
pub use search::{
    random_feasible_state, random_state, search_counterexamples, ProbeFinding, SearchFinding, SearchOptions,
    SearchReport,
};
pub use singular::{
    classify_singular, kappa_coefficients, kappa_sweep, Crossing, KappaPoint, KappaSweep, SingularClass,
    SingularClassTag, CURVATURE_STEP, FD_STEP, LIMIT_OFFSET,
};
