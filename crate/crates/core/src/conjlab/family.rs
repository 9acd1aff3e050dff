use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::groverian::{pmax_generalized_w, pmax_quadrangle, GwBranch, TriangleSpec};
use crate::qcore::{PureState, Qubit};
use crate::{Error, Result};

const DOMAIN_TOL: f64 = 1e-12;

/// The named three-qubit families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyKind {
    Ghz,
    W,
    W1,
    Gw,
    Phi,
    FourTerm,
    GhzLike,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 7] = [
        FamilyKind::Ghz,
        FamilyKind::W,
        FamilyKind::W1,
        FamilyKind::Gw,
        FamilyKind::Phi,
        FamilyKind::FourTerm,
        FamilyKind::GhzLike,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::Ghz => "ghz",
            FamilyKind::W => "w",
            FamilyKind::W1 => "w1",
            FamilyKind::Gw => "gw",
            FamilyKind::Phi => "phi",
            FamilyKind::FourTerm => "four-term",
            FamilyKind::GhzLike => "ghz-like",
        }
    }

    /// Column names of the grid parameters, in record order.
    pub fn param_names(self) -> &'static [&'static str] {
        match self {
            FamilyKind::Ghz | FamilyKind::W | FamilyKind::W1 => &[],
            FamilyKind::Gw => &["a", "b", "c"],
            FamilyKind::Phi => &["q1_theta", "q1_phi", "q2_theta", "q2_phi", "overlap"],
            FamilyKind::FourTerm | FamilyKind::GhzLike => &["a", "b"],
        }
    }

    /// Grid of `n` points per axis with inclusive endpoints.
    ///
    /// - `gw`: `(cos θ, sin θ cos φ, sin θ sin φ)` over `θ, φ ∈ [0, π/2]`.
    /// - `phi`: Bloch polar angles of `q1`, `q2` over `[0, π]`, azimuths fixed
    ///   at 0 and π/2.
    /// - `four-term`: `a, b ∈ [0, 1/√2]`.
    /// - `ghz-like`: polar `(r cos t, r sin t)` with `r ∈ [0, 1/√2]`,
    ///   `t ∈ [0, π/2]`.
    ///
    /// Parameter-free families give a single point.
    pub fn grid(self, n: usize) -> Result<Vec<FamilySpec>> {
        if n == 0 {
            return Err(Error::EmptyGrid);
        }
        let axis = |hi: f64| -> Vec<f64> {
            if n == 1 {
                vec![0.0]
            } else {
                (0..n).map(|i| if i == n - 1 { hi } else { hi * i as f64 / (n - 1) as f64 }).collect()
            }
        };
        let pairs = |hi_x: f64, hi_y: f64| -> Vec<(f64, f64)> {
            let (xs, ys) = (axis(hi_x), axis(hi_y));
            xs.iter().flat_map(|&x| ys.iter().map(move |&y| (x, y))).collect()
        };
        Ok(match self {
            FamilyKind::Ghz => vec![FamilySpec::Ghz],
            FamilyKind::W => vec![FamilySpec::W],
            FamilyKind::W1 => vec![FamilySpec::W1],
            FamilyKind::Gw => pairs(FRAC_PI_2, FRAC_PI_2)
                .into_iter()
                .map(|(t, p)| {
                    let ((ct, st), (cp, sp)) = (cos_sin(t), cos_sin(p));
                    FamilySpec::Gw { a: ct, b: st * cp, c: st * sp }
                })
                .collect(),
            FamilyKind::Phi => pairs(PI, PI)
                .into_iter()
                .map(|(t1, t2)| FamilySpec::Phi { q1: [t1, 0.0], q2: [t2, FRAC_PI_2] })
                .collect(),
            FamilyKind::FourTerm => {
                pairs(FRAC_1_SQRT_2, FRAC_1_SQRT_2).into_iter().map(|(a, b)| FamilySpec::FourTerm { a, b }).collect()
            }
            FamilyKind::GhzLike => pairs(FRAC_1_SQRT_2, FRAC_PI_2)
                .into_iter()
                .map(|(r, t)| {
                    let (ct, st) = cos_sin(t);
                    FamilySpec::GhzLike { a: r * ct, b: r * st }
                })
                .collect(),
        })
    }
}

impl std::fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FamilyKind::ALL
            .into_iter()
            .find(|k| k.name() == s.to_ascii_lowercase().replace('_', "-"))
            .ok_or_else(|| Error::InvalidArgument(format!("unknown family `{s}`")))
    }
}

/// A single member of one of the families.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum FamilySpec {
    /// `(|000⟩ + |111⟩)/√2`
    Ghz,
    /// `(|001⟩ + |010⟩ + |100⟩)/√3`
    W,
    /// `(|100⟩ + |010⟩ + √2|001⟩)/2`
    W1,
    /// `a|100⟩ + b|010⟩ + c|001⟩`
    Gw { a: f64, b: f64, c: f64 },
    /// `(|00 q1⟩ + |11 q2⟩)/√2`, qubits given as Bloch angles `[θ, φ]`.
    Phi { q1: [f64; 2], q2: [f64; 2] },
    /// `√(1/2−b²)|100⟩ + b|010⟩ + a|001⟩ + √(1/2−a²)|111⟩`
    FourTerm { a: f64, b: f64 },
    /// `a|000⟩ + b|010⟩ + √(1/2−a²−b²)|100⟩ + (1/√2)|111⟩`
    GhzLike { a: f64, b: f64 },
}

/// `(cos t, sin t)`, exact at the grid endpoint `π/2`.
fn cos_sin(t: f64) -> (f64, f64) {
    if t == FRAC_PI_2 {
        (0.0, 1.0)
    } else {
        (t.cos(), t.sin())
    }
}

fn sqrt_clamped(x: f64) -> f64 {
    x.max(0.0).sqrt()
}

/// Closed-form `P_max` and the formula branch that produced it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Analytic {
    Value(f64, &'static str),
    /// A closed form exists for the family but is singular at this point.
    Degenerate(&'static str),
    None,
}

impl FamilySpec {
    pub fn kind(&self) -> FamilyKind {
        match self {
            FamilySpec::Ghz => FamilyKind::Ghz,
            FamilySpec::W => FamilyKind::W,
            FamilySpec::W1 => FamilyKind::W1,
            FamilySpec::Gw { .. } => FamilyKind::Gw,
            FamilySpec::Phi { .. } => FamilyKind::Phi,
            FamilySpec::FourTerm { .. } => FamilyKind::FourTerm,
            FamilySpec::GhzLike { .. } => FamilyKind::GhzLike,
        }
    }

    /// Parameter values matching [`FamilyKind::param_names`].
    pub fn params(&self) -> Vec<f64> {
        match *self {
            FamilySpec::Ghz | FamilySpec::W | FamilySpec::W1 => vec![],
            FamilySpec::Gw { a, b, c } => vec![a, b, c],
            FamilySpec::Phi { q1, q2 } => vec![q1[0], q1[1], q2[0], q2[1], self.phi_overlap().unwrap_or(f64::NAN)],
            FamilySpec::FourTerm { a, b } | FamilySpec::GhzLike { a, b } => vec![a, b],
        }
    }

    /// `|⟨q1|q2⟩|` for the `phi` family.
    pub fn phi_overlap(&self) -> Option<f64> {
        match *self {
            FamilySpec::Phi { q1, q2 } => {
                let (q1, q2) = (Qubit::from_bloch_angles(q1[0], q1[1]), Qubit::from_bloch_angles(q2[0], q2[1]));
                Some(q1.inner(&q2).norm())
            }
            _ => None,
        }
    }

    /// Coefficient triple when the state is a generalized W state.
    fn triangle(&self) -> Option<[f64; 3]> {
        let s = 1.0 / 3f64.sqrt();
        match *self {
            FamilySpec::W => Some([s, s, s]),
            FamilySpec::W1 => Some([0.5, 0.5, FRAC_1_SQRT_2]),
            FamilySpec::Gw { a, b, c } => Some([a, b, c]),
            _ => None,
        }
    }

    pub fn analytic(&self) -> Analytic {
        if let Some([a, b, c]) = self.triangle() {
            return match pmax_generalized_w(a, b, c) {
                Ok((p, GwBranch::Vertex)) => Analytic::Value(p, "vertex"),
                Ok((p, GwBranch::Circumradius)) => Analytic::Value(p, "circumradius"),
                Err(_) => Analytic::None,
            };
        }
        if let FamilySpec::FourTerm { a, b } = *self {
            let sides = [sqrt_clamped(0.5 - b * b), b, a, sqrt_clamped(0.5 - a * a)];
            return match pmax_quadrangle(sides[0], sides[1], sides[2], sides[3]) {
                Ok(p) => Analytic::Value(p, "quadrangle"),
                Err(Error::Degenerate(_)) => Analytic::Degenerate("quadrangle-degenerate"),
                Err(_) => Analytic::Degenerate("quadrangle-not-applicable"),
            };
        }
        Analytic::None
    }

    fn check_domain(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::OutOfDomain(msg));
        match *self {
            FamilySpec::Gw { a, b, c } => TriangleSpec::new(a, b, c).map(|_| ()),
            FamilySpec::Phi { q1, q2 } => {
                if q1.iter().chain(&q2).all(|v| v.is_finite()) {
                    Ok(())
                } else {
                    bad("Bloch angles must be finite".into())
                }
            }
            FamilySpec::FourTerm { a, b } => {
                let hi = FRAC_1_SQRT_2 + DOMAIN_TOL;
                if (-DOMAIN_TOL..=hi).contains(&a) && (-DOMAIN_TOL..=hi).contains(&b) {
                    Ok(())
                } else {
                    bad(format!("four-term needs 0 ≤ a, b ≤ 1/√2, got a = {a}, b = {b}"))
                }
            }
            FamilySpec::GhzLike { a, b } => {
                let s = a * a + b * b;
                if s.is_finite() && s <= 0.5 + DOMAIN_TOL {
                    Ok(())
                } else {
                    bad(format!("ghz-like needs a² + b² ≤ 1/2, got {s}"))
                }
            }
            _ => Ok(()),
        }
    }
}

impl std::fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let kind = self.kind();
        write!(f, "{kind}")?;
        let names = kind.param_names();
        if !names.is_empty() {
            let parts: Vec<String> = names.iter().zip(self.params()).map(|(n, v)| format!("{n}={v}")).collect();
            write!(f, "({})", parts.join(", "))?;
        }
        Ok(())
    }
}

/// The literal three-qubit state for `spec`.
pub fn family_state(spec: &FamilySpec) -> Result<PureState> {
    spec.check_domain()?;
    let h = FRAC_1_SQRT_2;
    let mut amps = [0.0; 8];
    match *spec {
        FamilySpec::Ghz => {
            amps[0b000] = h;
            amps[0b111] = h;
        }
        FamilySpec::W => {
            let s = 1.0 / 3f64.sqrt();
            amps[0b001] = s;
            amps[0b010] = s;
            amps[0b100] = s;
        }
        FamilySpec::W1 => {
            amps[0b100] = 0.5;
            amps[0b010] = 0.5;
            amps[0b001] = h;
        }
        FamilySpec::Gw { a, b, c } => {
            amps[0b100] = a;
            amps[0b010] = b;
            amps[0b001] = c;
        }
        FamilySpec::Phi { q1, q2 } => {
            let (q1, q2) = (Qubit::from_bloch_angles(q1[0], q1[1]), Qubit::from_bloch_angles(q2[0], q2[1]));
            let mut c = vec![Complex64::new(0.0, 0.0); 8];
            for j in 0..2 {
                c[j] = q1.amplitudes()[j] * h;
                c[0b110 | j] = q2.amplitudes()[j] * h;
            }
            return PureState::new(c);
        }
        FamilySpec::FourTerm { a, b } => {
            amps[0b100] = sqrt_clamped(0.5 - b * b);
            amps[0b010] = b;
            amps[0b001] = a;
            amps[0b111] = sqrt_clamped(0.5 - a * a);
        }
        FamilySpec::GhzLike { a, b } => {
            amps[0b000] = a;
            amps[0b010] = b;
            amps[0b100] = sqrt_clamped(0.5 - a * a - b * b);
            amps[0b111] = h;
        }
    }
    PureState::from_real(&amps)
}
