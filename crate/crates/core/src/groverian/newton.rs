use nalgebra::{DMatrix, SymmetricEigen};

/// Curvature below this magnitude is treated as flat.
const FLAT_CURVATURE: f64 = 1e-10;
/// Longest accepted step in tangent coordinates (radians).
const MAX_STEP: f64 = 0.5;

/// Newton ascent step for a local quadratic model `g·z + ½ zᵀHz`.
///
/// Only negative-curvature eigendirections are used, so the step never points
/// downhill to first order; flat directions (symmetries, quartic maxima) are
/// left alone.
pub(super) fn ascent_step(grad: &[f64], hess: DMatrix<f64>) -> Vec<f64> {
    let dim = grad.len();
    let eig = SymmetricEigen::new(hess);
    let mut step = vec![0.0; dim];
    for (k, &lambda) in eig.eigenvalues.iter().enumerate() {
        if lambda < -FLAT_CURVATURE {
            let v = eig.eigenvectors.column(k);
            let coeff = -v.iter().zip(grad).map(|(a, b)| a * b).sum::<f64>() / lambda;
            for (s, vi) in step.iter_mut().zip(v.iter()) {
                *s += coeff * vi;
            }
        }
    }
    let norm = step.iter().map(|s| s * s).sum::<f64>().sqrt();
    if norm > MAX_STEP {
        step.iter_mut().for_each(|s| *s *= MAX_STEP / norm);
    }
    step
}

/// Hessian of a quadratic form known only through evaluations of `q(z)`,
/// where `q(z) = ½ zᵀHz`.
pub(super) fn hessian_by_polarization(dim: usize, q: impl Fn(&[f64]) -> f64) -> DMatrix<f64> {
    let mut h = DMatrix::zeros(dim, dim);
    let mut z = vec![0.0; dim];
    let mut diag = vec![0.0; dim];
    for a in 0..dim {
        z[a] = 1.0;
        diag[a] = q(&z);
        z[a] = 0.0;
        h[(a, a)] = 2.0 * diag[a];
    }
    for a in 0..dim {
        for b in (a + 1)..dim {
            z[a] = 1.0;
            z[b] = 1.0;
            let v = q(&z) - diag[a] - diag[b];
            z[a] = 0.0;
            z[b] = 0.0;
            h[(a, b)] = v;
            h[(b, a)] = v;
        }
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_maximum_of_concave_quadratic() {
        // f(z) = -(z0 - 0.1)² - 2(z1 + 0.2)²  at z = 0.
        let grad = [0.2, -0.8];
        let h = hessian_by_polarization(2, |z| -(z[0] * z[0]) - 2.0 * z[1] * z[1]);
        let step = ascent_step(&grad, h);
        assert!((step[0] - 0.1).abs() < 1e-14 && (step[1] + 0.2).abs() < 1e-14);
    }

    #[test]
    fn ignores_positive_curvature() {
        let h = DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, -1.0]);
        let step = ascent_step(&[0.3, 0.1], h);
        assert_eq!(step[0], 0.0);
        assert!((step[1] - 0.1).abs() < 1e-15);
    }
}
