//! State input: a named family with its parameters, or raw amplitudes.

use std::f64::consts::PI;

use clap::Args;
use grovlab_core::conjlab::{family_state, FamilyKind, FamilySpec};
use grovlab_core::qcore::PureState;
use grovlab_core::Complex64;
use serde_json::{json, Value};

use crate::CliError;

/// Deviation of `‖ψ‖²` from 1 above which input is renormalized with a warning.
const NORM_WARN: f64 = 1e-6;

#[derive(Args, Debug, Clone)]
pub struct StateArgs {
    /// ghz, w, w1, gw, phi, four-term, ghz-like
    #[arg(long, conflicts_with = "amplitudes")]
    pub family: Option<String>,
    /// Comma-separated complex amplitudes such as `0.5+0.5j,0,-1j`
    #[arg(long, allow_hyphen_values = true)]
    pub amplitudes: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub c: Option<f64>,
    /// Bloch angles `θ,φ` of q1 for the phi family (default |0⟩)
    #[arg(long, allow_hyphen_values = true)]
    pub q1: Option<String>,
    /// Bloch angles `θ,φ` of q2 for the phi family (default |1⟩)
    #[arg(long, allow_hyphen_values = true)]
    pub q2: Option<String>,
}

pub struct StateInput {
    pub state: PureState,
    pub spec: Option<FamilySpec>,
    pub echo: Value,
}

pub fn parse_complex(s: &str) -> Result<Complex64, CliError> {
    let t = s.trim();
    t.parse::<Complex64>().map_err(|_| CliError::Parse(format!("cannot parse amplitude `{t}`")))
}

pub fn parse_complex_list(s: &str) -> Result<Vec<Complex64>, CliError> {
    s.split(',').map(parse_complex).collect()
}

pub fn parse_angles(s: &str) -> Result<[f64; 2], CliError> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let bad = || CliError::Parse(format!("expected `theta,phi`, got `{s}`"));
    if parts.len() != 2 {
        return Err(bad());
    }
    Ok([parts[0].parse().map_err(|_| bad())?, parts[1].parse().map_err(|_| bad())?])
}

/// Builds a state from amplitudes, renormalizing with a warning on stderr.
pub fn normalized_state(amps: Vec<Complex64>) -> Result<PureState, CliError> {
    let n2: f64 = amps.iter().map(|z| z.norm_sqr()).sum();
    if (n2 - 1.0).abs() > NORM_WARN {
        eprintln!("warning: input norm^2 is {n2}; normalizing");
    }
    Ok(PureState::normalize(amps)?)
}

fn need(v: Option<f64>, name: &str, family: FamilyKind) -> Result<f64, CliError> {
    v.ok_or_else(|| CliError::Parse(format!("family {family} needs --{name}")))
}

impl StateArgs {
    fn spec(&self, kind: FamilyKind) -> Result<FamilySpec, CliError> {
        Ok(match kind {
            FamilyKind::Ghz => FamilySpec::Ghz,
            FamilyKind::W => FamilySpec::W,
            FamilyKind::W1 => FamilySpec::W1,
            FamilyKind::Gw => {
                FamilySpec::Gw { a: need(self.a, "a", kind)?, b: need(self.b, "b", kind)?, c: need(self.c, "c", kind)? }
            }
            FamilyKind::Phi => FamilySpec::Phi {
                q1: self.q1.as_deref().map(parse_angles).transpose()?.unwrap_or([0.0, 0.0]),
                q2: self.q2.as_deref().map(parse_angles).transpose()?.unwrap_or([PI, 0.0]),
            },
            FamilyKind::FourTerm => FamilySpec::FourTerm { a: need(self.a, "a", kind)?, b: need(self.b, "b", kind)? },
            FamilyKind::GhzLike => FamilySpec::GhzLike { a: need(self.a, "a", kind)?, b: need(self.b, "b", kind)? },
        })
    }

    pub fn resolve(&self) -> Result<StateInput, CliError> {
        match (&self.family, &self.amplitudes) {
            (Some(name), None) => {
                let kind: FamilyKind = name.parse().map_err(|e: grovlab_core::Error| CliError::Parse(e.to_string()))?;
                let spec = self.spec(kind)?;
                let state = family_state(&spec).map_err(|e| CliError::Parse(e.to_string()))?;
                Ok(StateInput { state, spec: Some(spec), echo: serde_json::to_value(spec).expect("plain data") })
            }
            (None, Some(raw)) => {
                let amps = parse_complex_list(raw)?;
                let state = normalized_state(amps.clone())?;
                let echo = json!({ "amplitudes": amps.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>() });
                Ok(StateInput { state, spec: None, echo })
            }
            _ => Err(CliError::Parse("give exactly one of --family or --amplitudes".into())),
        }
    }
}
