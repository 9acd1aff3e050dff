use serde::Serialize;

use super::family::FamilyKind;
use super::scan::{Params, ScanRecord};

/// A record that breaks one direction of the conjecture.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Violation {
    pub family: FamilyKind,
    pub params: Params,
    pub pmax_numeric: f64,
    pub teleport_bob: [bool; 3],
}

impl From<&ScanRecord> for Violation {
    fn from(r: &ScanRecord) -> Self {
        Violation {
            family: r.family,
            params: r.params.clone(),
            pmax_numeric: r.pmax_numeric,
            teleport_bob: r.teleport_bob,
        }
    }
}

/// Summary of a scan against `P_max = 1/2 ⇔ perfect teleportation`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConjectureReport {
    pub points: usize,
    pub feasible_points: usize,
    pub necessary_violations: Vec<Violation>,
    pub sufficient_violations: Vec<Violation>,
    /// Largest `|analytic − numeric|` over points with a closed form.
    pub max_analytic_deviation: Option<f64>,
    /// Points whose solver missed the post-hoc stationarity check.
    pub unconverged: usize,
}

impl ConjectureReport {
    pub fn violations(&self) -> usize {
        self.necessary_violations.len() + self.sufficient_violations.len()
    }
}

pub fn conjecture_report(records: &[ScanRecord]) -> ConjectureReport {
    let dev = records
        .iter()
        .filter_map(|r| r.pmax_analytic.map(|a| (a - r.pmax_numeric).abs()))
        .fold(None, |acc: Option<f64>, d| Some(acc.map_or(d, |m| m.max(d))));
    ConjectureReport {
        points: records.len(),
        feasible_points: records.iter().filter(|r| r.any_feasible()).count(),
        necessary_violations: records.iter().filter(|r| !r.necessary_ok).map(Violation::from).collect(),
        sufficient_violations: records.iter().filter(|r| !r.sufficient_ok).map(Violation::from).collect(),
        max_analytic_deviation: dev,
        unconverged: records.iter().filter(|r| !r.converged).count(),
    }
}

fn plural(n: usize, word: &str) -> String {
    if n == 1 {
        format!("{n} {word}")
    } else {
        format!("{n} {word}s")
    }
}

impl std::fmt::Display for ConjectureReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}, {}", plural(self.points, "point"), plural(self.violations(), "violation"))?;
        if self.violations() > 0 {
            write!(
                f,
                " (necessary: {}, sufficient: {})",
                self.necessary_violations.len(),
                self.sufficient_violations.len()
            )?;
        }
        for (label, list) in [("necessary", &self.necessary_violations), ("sufficient", &self.sufficient_violations)] {
            for v in list {
                let params: Vec<String> = v.params.0.iter().map(|(k, x)| format!("{k}={x}")).collect();
                write!(f, "\n  {label}: {}({}) p_max={}", v.family, params.join(", "), v.pmax_numeric)?;
            }
        }
        Ok(())
    }
}
