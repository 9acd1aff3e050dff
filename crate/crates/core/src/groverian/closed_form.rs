use serde::{Deserialize, Serialize};

use crate::{Error, Result};

const NORM_TOL: f64 = 1e-12;
const TIE_TOL: f64 = 1e-12;

fn check_coefficients(values: &[f64]) -> Result<()> {
    if let Some(v) = values.iter().find(|v| !v.is_finite() || **v < 0.0) {
        return Err(Error::OutOfDomain(format!("coefficient {v} must be a nonnegative real")));
    }
    let n2: f64 = values.iter().map(|v| v * v).sum();
    if (n2 - 1.0).abs() > NORM_TOL {
        return Err(Error::NotNormalized(n2.sqrt()));
    }
    Ok(())
}

fn sorted_desc<const N: usize>(mut v: [f64; N]) -> [f64; N] {
    v.sort_by(|a, b| b.total_cmp(a));
    v
}

/// Coefficients `(a, b, c)` of `a|100⟩ + b|010⟩ + c|001⟩`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TriangleSpec {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl TriangleSpec {
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self> {
        check_coefficients(&[a, b, c])?;
        Ok(TriangleSpec { a, b, c })
    }

    /// `(α, β, γ)` with `α ≥ β ≥ γ`.
    pub fn ordered(&self) -> [f64; 3] {
        sorted_desc([self.a, self.b, self.c])
    }
}

/// Four nonnegative coefficients with unit norm.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadrangleSpec {
    pub sides: [f64; 4],
    /// `α ≥ β ≥ γ ≥ δ`.
    pub ordered: [f64; 4],
    /// `α² ≤ β² + γ² + δ² + 2βγδ/α`
    pub applicable: bool,
}

impl QuadrangleSpec {
    pub fn new(a1: f64, a2: f64, a3: f64, a4: f64) -> Result<Self> {
        let sides = [a1, a2, a3, a4];
        check_coefficients(&sides)?;
        let ordered = sorted_desc(sides);
        let [al, be, ga, de] = ordered;
        let bound = be * be + ga * ga + de * de + 2.0 * be * ga * de / al;
        Ok(QuadrangleSpec { sides, ordered, applicable: al * al <= bound + TIE_TOL })
    }
}

/// Circumradius of the triangle with sides `a`, `b`, `c`.
pub fn circumradius(a: f64, b: f64, c: f64) -> Result<f64> {
    if !(a >= 0.0 && b >= 0.0 && c >= 0.0) {
        return Err(Error::OutOfDomain("triangle sides must be nonnegative".into()));
    }
    let [x, y, z] = sorted_desc([a, b, c]);
    // Heron in the cancellation-safe ordering; equals 16·Area².
    let heron = (x + (y + z)) * (z - (x - y)) * (z + (x - y)) * (x + (y - z));
    if heron.is_nan() || heron <= 1e-24 * x.powi(4) {
        return Err(Error::Degenerate("triangle has zero area"));
    }
    Ok(a * b * c / heron.sqrt())
}

/// Which of the two regimes of the generalized W formula applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GwBranch {
    /// One coefficient dominates: `α² > β² + γ²`, `P_max = α²`.
    Vertex,
    /// `P_max = 4R²` with `R` the circumradius of the coefficient triangle.
    Circumradius,
}

impl std::fmt::Display for GwBranch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            GwBranch::Vertex => "vertex",
            GwBranch::Circumradius => "circumradius",
        })
    }
}

/// `P_max` of `a|100⟩ + b|010⟩ + c|001⟩`.
///
/// On the boundary `α² = β² + γ²` both branches give `1/2`; the circumradius
/// branch is reported unless the triangle is degenerate there.
pub fn pmax_generalized_w(a: f64, b: f64, c: f64) -> Result<(f64, GwBranch)> {
    let spec = TriangleSpec::new(a, b, c)?;
    let [al, be, ga] = spec.ordered();
    let gap = al * al - (be * be + ga * ga);
    if gap > TIE_TOL {
        return Ok((al * al, GwBranch::Vertex));
    }
    match circumradius(a, b, c) {
        Ok(r) => Ok((4.0 * r * r, GwBranch::Circumradius)),
        Err(_) => {
            // Only reachable on the boundary, where α = β + γ forces γ = 0.
            assert!(gap >= -TIE_TOL, "nondegenerate triangle expected below the boundary");
            Ok((al * al, GwBranch::Vertex))
        }
    }
}

/// `4R²` for the cyclic quadrangle with sides `a1..a4`.
pub fn pmax_quadrangle(a1: f64, a2: f64, a3: f64, a4: f64) -> Result<f64> {
    let spec = QuadrangleSpec::new(a1, a2, a3, a4)?;
    if !spec.applicable {
        return Err(Error::NotApplicable(format!(
            "formula branch not applicable for ordered sides {:?}",
            spec.ordered
        )));
    }
    let omega = a1 * a2 + a3 * a4;
    let r3 = a1 * a1 + a2 * a2 - a3 * a3 - a4 * a4;
    let denom = 4.0 * omega * omega - r3 * r3;
    if denom.abs() < 1e-14 {
        return Err(Error::Degenerate("quadrangle has zero area"));
    }
    let r2 = (a1 * a2 + a3 * a4) * (a1 * a3 + a2 * a4) * (a1 * a4 + a2 * a3) / denom;
    Ok(4.0 * r2)
}
