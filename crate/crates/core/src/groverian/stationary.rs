//! Closed-form critical points of the Bloch objective for
//! `a|000⟩ + b|010⟩ + c|100⟩ + (1/√2)|111⟩` with `c = √(1/2 − a² − b²)`,
//! qubit 0 traced out.

use serde::{Deserialize, Serialize};

use super::bloch::{BlochData, StationaryPoint};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalyticStationary {
    /// 1 for the global maximum family, 2 for the lower saddle family.
    pub branch: u8,
    pub point: StationaryPoint,
}

impl BlochData {
    /// Exact Bloch data of the GHZ-like family above.
    pub fn ghz_like(a: f64, b: f64) -> Result<BlochData> {
        let s = a * a + b * b;
        if s.is_nan() || s > 0.5 + 1e-12 {
            return Err(Error::OutOfDomain(format!("a² + b² = {s} exceeds 1/2")));
        }
        let k0 = (1.0 - 2.0 * s).max(0.0).sqrt();
        Ok(BlochData {
            r2: [2.0 * a * b, 0.0, -2.0 * b * b],
            r3: [0.0; 3],
            g: [[k0, 0.0, 2.0 * a * b], [0.0, -k0, 0.0], [0.0, 0.0, 1.0 - 2.0 * b * b]],
        })
    }
}

fn point(data: &BlochData, s2: [f64; 3], s3: [f64; 3]) -> StationaryPoint {
    let dot = |x: &[f64; 3], y: &[f64; 3]| x[0] * y[0] + x[1] * y[1] + x[2] * y[2];
    StationaryPoint {
        s2,
        s3,
        lambda1: dot(&s2, &data.field2(&s3)),
        lambda2: dot(&s3, &data.field3(&s2)),
        value: data.value(&s2, &s3),
    }
}

/// Both analytic branches, evaluated at `(a, b)`.
///
/// Branch 1 is the value-1/2 maximum. Branch 2 contributes the pair
/// `±(s2, s3)`; its upper point has value `(1 + 2b√S + √((1−2S)(1−2b²)))/4`
/// with `S = a² + b²`. Branches whose denominators vanish (`S = 0` or
/// `b² = 1/2`) are left out.
pub fn ghz_like_stationary_points(a: f64, b: f64) -> Result<Vec<AnalyticStationary>> {
    let data = BlochData::ghz_like(a, b)?;
    let s = a * a + b * b;
    let d = 1.0 - 2.0 * b * b;
    let k0 = (1.0 - 2.0 * s).max(0.0).sqrt();
    let mut out = Vec::new();
    if s < 1e-300 || d < 1e-300 {
        return Ok(out);
    }

    let s2 = [2.0 * a * b / s, 0.0, (a * a - b * b) / s];
    let s3 = [2.0 * a * b * k0 / (s * d), 0.0, ((a * a - b * b) + 2.0 * b * b * s) / (s * d)];
    out.push(AnalyticStationary { branch: 1, point: point(&data, s2, s3) });

    let (rs, rsd) = (s.sqrt(), (s * d).sqrt());
    let s2 = [a / rs, 0.0, -b / rs];
    let s3 = [a / rsd, 0.0, -b * k0 / rsd];
    let neg = |v: [f64; 3]| [-v[0], -v[1], -v[2]];
    out.push(AnalyticStationary { branch: 2, point: point(&data, s2, s3) });
    out.push(AnalyticStationary { branch: 2, point: point(&data, neg(s2), neg(s3)) });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groverian::bloch_data;
    use crate::qcore::PureState;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn norm(v: &[f64; 3]) -> f64 {
        (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
    }

    #[test]
    fn analytic_data_matches_state() {
        let (a, b): (f64, f64) = (0.4, 0.35);
        let c = (0.5 - a * a - b * b).sqrt();
        let st = PureState::from_real(&[a, 0.0, b, 0.0, c, 0.0, 0.0, FRAC_1_SQRT_2]).unwrap();
        let num = bloch_data(&st, 0).unwrap();
        let ana = BlochData::ghz_like(a, b).unwrap();
        for i in 0..3 {
            assert!((num.r2[i] - ana.r2[i]).abs() < 1e-14);
            for j in 0..3 {
                assert!((num.g[i][j] - ana.g[i][j]).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn branches_at_sample_point() {
        let (a, b) = (0.5, 0.3);
        let pts = ghz_like_stationary_points(a, b).unwrap();
        assert_eq!(pts.len(), 3);
        let data = BlochData::ghz_like(a, b).unwrap();
        for p in &pts {
            assert!((norm(&p.point.s2) - 1.0).abs() < 1e-12);
            assert!((norm(&p.point.s3) - 1.0).abs() < 1e-12);
            assert!(p.point.residual(&data) < 1e-12, "branch {}", p.branch);
        }
        let b1 = pts[0].point;
        assert!((b1.value - 0.5).abs() < 1e-14);
        assert!((b1.lambda1 - 1.0).abs() < 1e-14);
        assert!((b1.lambda2 - (1.0 - 2.0 * b * b)).abs() < 1e-14);

        let s = a * a + b * b;
        let top = pts[1].point;
        let expect = 0.25 * (1.0 + 2.0 * b * s.sqrt() + ((1.0 - 2.0 * s) * (1.0 - 2.0 * b * b)).sqrt());
        assert!((top.value - expect).abs() < 1e-14);
        assert!(top.value < 0.5);
        assert!(pts[2].point.value < top.value);
    }

    #[test]
    fn ghz_limit() {
        let pts = ghz_like_stationary_points(FRAC_1_SQRT_2, 0.0).unwrap();
        let b1 = pts[0].point;
        assert!((b1.s3[2] - 1.0).abs() < 1e-14);
        assert!((b1.value - 0.5).abs() < 1e-14);
    }

    #[test]
    fn b_zero_upper_branch_two_matches_simple_form() {
        let a = 0.3;
        let pts = ghz_like_stationary_points(a, 0.0).unwrap();
        let expect = 0.25 * (1.0 + (1.0 - 2.0 * a * a).sqrt());
        assert!((pts[1].point.value - expect).abs() < 1e-14);
    }

    #[test]
    fn degenerate_and_out_of_domain() {
        assert!(ghz_like_stationary_points(0.0, 0.0).unwrap().is_empty());
        assert!(ghz_like_stationary_points(0.0, FRAC_1_SQRT_2).unwrap().is_empty());
        assert!(ghz_like_stationary_points(0.6, 0.6).is_err());
    }
}
