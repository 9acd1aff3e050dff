//! Generalized W states near the right-triangle cone `α² = β² + γ²`.

use serde::{Deserialize, Serialize};

use crate::groverian::{pmax_generalized_w, GwBranch, TriangleSpec};
use crate::{Error, Result, Tolerances};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SingularClassTag {
    /// `α² < β² + γ²`: acute triangle, `P_max < 1/2`.
    Inside,
    OnCircle,
    /// `α² > β² + γ²`: `P_max = α² > 1/2`.
    Outside,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SingularClass {
    pub class: SingularClassTag,
    pub p_max: f64,
    pub branch: GwBranch,
    /// `α² − (β² + γ²)`.
    pub gap: f64,
}

fn cone_gap(a: f64, b: f64, c: f64) -> f64 {
    let [al, be, ga] = TriangleSpec { a, b, c }.ordered();
    al * al - (be * be + ga * ga)
}

/// Position of `(a, b, c)` relative to the cone, with its closed-form `P_max`.
pub fn classify_singular(a: f64, b: f64, c: f64) -> Result<SingularClass> {
    let (p_max, branch) = pmax_generalized_w(a, b, c)?;
    let gap = cone_gap(a, b, c);
    let band = Tolerances::default().on_circle;
    let class = if gap.abs() <= band {
        SingularClassTag::OnCircle
    } else if gap < 0.0 {
        SingularClassTag::Inside
    } else {
        SingularClassTag::Outside
    };
    Ok(SingularClass { class, p_max, branch, gap })
}

/// `(a, κa, κ²a)` normalized.
pub fn kappa_coefficients(kappa: f64) -> [f64; 3] {
    let a = 1.0 / (1.0 + kappa * kappa + kappa.powi(4)).sqrt();
    [a, kappa * a, kappa * kappa * a]
}

fn kappa_pmax(kappa: f64) -> (f64, GwBranch) {
    let [a, b, c] = kappa_coefficients(kappa);
    pmax_generalized_w(a, b, c).expect("normalized by construction")
}

fn kappa_gap(kappa: f64) -> f64 {
    let [a, b, c] = kappa_coefficients(kappa);
    cone_gap(a, b, c)
}

/// Finite-difference step for the sweep derivatives.
pub const FD_STEP: f64 = 1e-4;
/// Offset used for the one-sided limits at a crossing.
pub const LIMIT_OFFSET: f64 = 1e-10;
/// Step for the one-sided second derivatives; larger than [`FD_STEP`] to
/// keep rounding out of the `1/h²` quotient.
pub const CURVATURE_STEP: f64 = 1e-3;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct KappaPoint {
    pub kappa: f64,
    pub p_max: f64,
    pub branch: GwBranch,
    /// Centered difference with step [`FD_STEP`].
    pub dp_dkappa: f64,
    /// A crossing lies within half a grid step of this point.
    pub near_crossing: bool,
}

/// Where the coefficient triangle becomes right-angled.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Crossing {
    pub kappa: f64,
    pub p_max: f64,
    pub p_left: f64,
    pub p_right: f64,
    /// One-sided second-order differences at the crossing.
    pub slope_left: f64,
    pub slope_right: f64,
    /// `|d(h) − d(h/2)|`, the larger of the two sides.
    pub noise_floor: f64,
    /// Slope gap exceeds ten times the noise floor.
    pub slope_jump: bool,
    /// One-sided second derivatives at the crossing.
    pub curvature_left: f64,
    pub curvature_right: f64,
    pub curvature_noise_floor: f64,
    pub curvature_jump: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KappaSweep {
    pub points: Vec<KappaPoint>,
    pub crossings: Vec<Crossing>,
}

fn bisect(mut lo: f64, mut hi: f64) -> f64 {
    let s_lo = kappa_gap(lo).signum();
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if kappa_gap(mid).signum() == s_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn one_sided(k: f64, h: f64, dir: f64) -> f64 {
    let p = |x: f64| kappa_pmax(x).0;
    dir * (-3.0 * p(k) + 4.0 * p(k + dir * h) - p(k + 2.0 * dir * h)) / (2.0 * h)
}

fn one_sided_curvature(k: f64, h: f64, dir: f64) -> f64 {
    let p = |x: f64| kappa_pmax(x).0;
    (2.0 * p(k) - 5.0 * p(k + dir * h) + 4.0 * p(k + 2.0 * dir * h) - p(k + 3.0 * dir * h)) / (h * h)
}

fn crossing_at(kappa: f64) -> Crossing {
    let (dl, dl2) = (one_sided(kappa, FD_STEP, -1.0), one_sided(kappa, FD_STEP / 2.0, -1.0));
    let (dr, dr2) = (one_sided(kappa, FD_STEP, 1.0), one_sided(kappa, FD_STEP / 2.0, 1.0));
    let noise_floor = (dl - dl2).abs().max((dr - dr2).abs());
    let h = CURVATURE_STEP;
    let (cl, cl2) = (one_sided_curvature(kappa, h, -1.0), one_sided_curvature(kappa, h / 2.0, -1.0));
    let (cr, cr2) = (one_sided_curvature(kappa, h, 1.0), one_sided_curvature(kappa, h / 2.0, 1.0));
    let curvature_noise_floor = (cl - cl2).abs().max((cr - cr2).abs());
    Crossing {
        kappa,
        p_max: kappa_pmax(kappa).0,
        p_left: kappa_pmax(kappa - LIMIT_OFFSET).0,
        p_right: kappa_pmax(kappa + LIMIT_OFFSET).0,
        slope_left: dl2,
        slope_right: dr2,
        noise_floor,
        slope_jump: (dl2 - dr2).abs() > 10.0 * noise_floor,
        curvature_left: cl2,
        curvature_right: cr2,
        curvature_noise_floor,
        curvature_jump: (cl2 - cr2).abs() > 10.0 * curvature_noise_floor,
    }
}

/// Sweeps `κ` over `steps` evenly spaced points of `[kappa_min, kappa_max]`.
pub fn kappa_sweep(kappa_min: f64, kappa_max: f64, steps: usize) -> Result<KappaSweep> {
    if !(kappa_min > 0.0 && kappa_max > kappa_min && kappa_max.is_finite()) {
        return Err(Error::InvalidArgument(format!("κ range must satisfy 0 < min < max, got {kappa_min}:{kappa_max}")));
    }
    if steps < 3 {
        return Err(Error::InvalidArgument("κ sweep needs at least 3 steps".into()));
    }
    let dk = (kappa_max - kappa_min) / (steps - 1) as f64;
    let ks: Vec<f64> = (0..steps).map(|i| kappa_min + dk * i as f64).collect();

    let mut crossings = Vec::new();
    for w in ks.windows(2) {
        let (g0, g1) = (kappa_gap(w[0]), kappa_gap(w[1]));
        if g0 == 0.0 {
            crossings.push(crossing_at(w[0]));
        } else if g0.signum() != g1.signum() && g1 != 0.0 {
            crossings.push(crossing_at(bisect(w[0], w[1])));
        }
    }
    if kappa_gap(ks[steps - 1]) == 0.0 {
        crossings.push(crossing_at(ks[steps - 1]));
    }

    let points = ks
        .iter()
        .map(|&k| {
            let (p_max, branch) = kappa_pmax(k);
            let dp = (kappa_pmax(k + FD_STEP).0 - kappa_pmax(k - FD_STEP).0) / (2.0 * FD_STEP);
            KappaPoint {
                kappa: k,
                p_max,
                branch,
                dp_dkappa: dp,
                near_crossing: crossings.iter().any(|c| (c.kappa - k).abs() <= 0.5 * dk),
            }
        })
        .collect();
    Ok(KappaSweep { points, crossings })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn classification_examples() {
        let s = 1.0 / 3f64.sqrt();
        let c = classify_singular(s, s, s).unwrap();
        assert_eq!(c.class, SingularClassTag::Inside);
        assert!((c.p_max - 4.0 / 9.0).abs() < 1e-14);

        let c = classify_singular(FRAC_1_SQRT_2, 0.5, 0.5).unwrap();
        assert_eq!(c.class, SingularClassTag::OnCircle);
        assert!((c.p_max - 0.5).abs() < 1e-14);

        let r = (1.0f64 - 0.81).sqrt() / 2f64.sqrt();
        let c = classify_singular(0.9, r, r).unwrap();
        assert_eq!(c.class, SingularClassTag::Outside);
        assert_eq!(c.branch, GwBranch::Vertex);
        assert!((c.p_max - 0.81).abs() < 1e-14);
    }

    #[test]
    fn sweep_finds_both_crossings() {
        let sw = kappa_sweep(0.5, 1.3, 161).unwrap();
        assert_eq!(sw.points.len(), 161);
        assert_eq!(sw.crossings.len(), 2);
        let k1 = ((5f64.sqrt() - 1.0) / 2.0).sqrt();
        assert!((sw.crossings[0].kappa - k1).abs() < 1e-12);
        let k2 = ((1.0 + 5f64.sqrt()) / 2.0).sqrt();
        assert!((sw.crossings[1].kappa - k2).abs() < 1e-12);
        for c in &sw.crossings {
            assert!((c.p_max - 0.5).abs() < 1e-12);
            assert!((c.p_left - 0.5).abs() < 1e-8 && (c.p_right - 0.5).abs() < 1e-8);
            // The two closed-form branches meet to first order on the cone,
            // so the slope is continuous and only the curvature jumps.
            assert!((c.slope_left - c.slope_right).abs() < 1e-5, "{c:?}");
            assert!(!c.slope_jump, "{c:?}");
            assert!(c.curvature_jump, "{c:?}");
        }
        assert!((sw.crossings[0].curvature_left - 0.736068).abs() < 1e-3);
        assert!((sw.crossings[0].curvature_right - 13.82624).abs() < 1e-2);
        // Vertex side: d/dκ of 1/(1+κ²+κ⁴) at κ⁴+κ² = 1.
        let expect = -(2.0 * k1 + 4.0 * k1.powi(3)) / 4.0;
        assert!((sw.crossings[0].slope_left - expect).abs() < 1e-6);
        assert!(sw.points.iter().filter(|p| p.near_crossing).count() >= 2);
    }

    #[test]
    fn sweep_argument_errors() {
        assert!(kappa_sweep(0.0, 1.0, 10).is_err());
        assert!(kappa_sweep(1.0, 0.5, 10).is_err());
        assert!(kappa_sweep(0.5, 1.0, 2).is_err());
    }
}
