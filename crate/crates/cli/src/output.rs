use std::io::Write;
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use grovlab_core::conjlab::{KappaPoint, ScanRecord};
use grovlab_core::Tolerances;
use serde::Serialize;
use serde_json::Value;

use crate::CliError;

#[derive(Serialize)]
pub struct Envelope {
    pub command: &'static str,
    pub version: &'static str,
    pub seed: u64,
    pub tolerances: Tolerances,
    pub input: Value,
    pub results: Value,
    /// Unix seconds; left out under `--reproducible`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<u64>,
}

impl Envelope {
    pub fn new(command: &'static str, seed: u64, input: Value, results: Value, reproducible: bool) -> Self {
        let timestamp =
            (!reproducible).then(|| SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0));
        Envelope {
            command,
            version: env!("CARGO_PKG_VERSION"),
            seed,
            tolerances: Tolerances::default(),
            input,
            results,
            timestamp,
        }
    }
}

/// Writes `bytes` to `path`, or to stdout when no path is given.
pub fn emit(path: Option<&Path>, bytes: &[u8]) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, bytes).map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(bytes).and_then(|_| out.flush()).map_err(|e| CliError::Io(e.to_string()))
        }
    }
}

pub fn json_bytes(env: &Envelope) -> Vec<u8> {
    let mut v = serde_json::to_vec_pretty(env).expect("envelope serializes");
    v.push(b'\n');
    v
}

fn opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// One row per record. Parameter columns are the union over the families
/// present, in order of first appearance, empty where a family lacks them.
pub fn scan_csv(records: &[ScanRecord]) -> Result<Vec<u8>, CliError> {
    let mut names: Vec<&'static str> = Vec::new();
    for r in records {
        for (n, _) in &r.params.0 {
            if !names.contains(n) {
                names.push(n);
            }
        }
    }
    let mut header = vec!["family".to_string()];
    header.extend(names.iter().map(|n| n.to_string()));
    header.extend(
        [
            "pmax_numeric",
            "pmax_analytic",
            "branch",
            "teleport_bob0",
            "teleport_bob1",
            "teleport_bob2",
            "dense_alice0",
            "dense_alice1",
            "dense_alice2",
            "necessary_ok",
            "sufficient_ok",
            "pmax_reduced",
            "pmax_bloch",
            "converged",
        ]
        .map(String::from),
    );
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&header).map_err(|e| CliError::Io(e.to_string()))?;
    for r in records {
        let mut row = vec![r.family.to_string()];
        for n in &names {
            row.push(opt(r.params.0.iter().find(|(k, _)| k == n).map(|(_, v)| *v)));
        }
        row.push(r.pmax_numeric.to_string());
        row.push(opt(r.pmax_analytic));
        row.push(r.branch.unwrap_or("").to_string());
        row.extend(r.teleport_bob.iter().map(bool::to_string));
        row.extend(r.dense_alice.iter().map(bool::to_string));
        row.push(r.necessary_ok.to_string());
        row.push(r.sufficient_ok.to_string());
        row.push(opt(r.pmax_reduced));
        row.push(opt(r.pmax_bloch));
        row.push(r.converged.to_string());
        w.write_record(&row).map_err(|e| CliError::Io(e.to_string()))?;
    }
    w.into_inner().map_err(|e| CliError::Io(e.to_string()))
}

pub fn sweep_csv(points: &[KappaPoint]) -> Result<Vec<u8>, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["kappa", "p_max", "branch", "dp_dkappa", "near_crossing"])
        .map_err(|e| CliError::Io(e.to_string()))?;
    for p in points {
        w.write_record([
            p.kappa.to_string(),
            p.p_max.to_string(),
            p.branch.to_string(),
            p.dp_dkappa.to_string(),
            p.near_crossing.to_string(),
        ])
        .map_err(|e| CliError::Io(e.to_string()))?;
    }
    w.into_inner().map_err(|e| CliError::Io(e.to_string()))
}
