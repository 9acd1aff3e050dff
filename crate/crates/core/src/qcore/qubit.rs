use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Normalized single-qubit ket `α|0> + β|1>`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Qubit([Complex64; 2]);

impl Qubit {
    pub const ZERO: Qubit = Qubit([Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]);
    pub const ONE: Qubit = Qubit([Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)]);

    /// Accepts amplitudes whose squared norm is within `1e-10` of one and
    /// rescales them exactly.
    pub fn new(alpha: Complex64, beta: Complex64) -> Result<Self> {
        let n2 = alpha.norm_sqr() + beta.norm_sqr();
        if (n2 - 1.0).abs() > 1e-10 {
            return Err(Error::NotNormalized(n2));
        }
        let s = n2.sqrt().recip();
        Ok(Qubit([alpha * s, beta * s]))
    }

    /// Normalizes an arbitrary nonzero pair.
    pub fn normalized(alpha: Complex64, beta: Complex64) -> Option<Self> {
        let n = (alpha.norm_sqr() + beta.norm_sqr()).sqrt();
        if n < 1e-300 || !n.is_finite() {
            return None;
        }
        Some(Qubit([alpha / n, beta / n]))
    }

    /// `cos(θ/2)|0> + e^{iφ} sin(θ/2)|1>`.
    pub fn from_bloch_angles(theta: f64, phi: f64) -> Self {
        let (s, c) = (theta / 2.0).sin_cos();
        Qubit([Complex64::new(c, 0.0), Complex64::from_polar(s, phi)])
    }

    /// Ket whose Bloch vector points along `v` (need not be unit length).
    pub fn from_bloch_vector(v: [f64; 3]) -> Option<Self> {
        let r = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if r < 1e-300 {
            return None;
        }
        let theta = (v[2] / r).clamp(-1.0, 1.0).acos();
        let phi = v[1].atan2(v[0]);
        Some(Self::from_bloch_angles(theta, phi))
    }

    pub fn amplitudes(&self) -> [Complex64; 2] {
        self.0
    }

    pub fn alpha(&self) -> Complex64 {
        self.0[0]
    }

    pub fn beta(&self) -> Complex64 {
        self.0[1]
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &Qubit) -> Complex64 {
        self.0[0].conj() * other.0[0] + self.0[1].conj() * other.0[1]
    }

    /// The orthogonal ket `(-β*, α*)`.
    pub fn orthogonal(&self) -> Qubit {
        Qubit([-self.0[1].conj(), self.0[0].conj()])
    }

    /// `(Tr ρX, Tr ρY, Tr ρZ)` for `ρ = |self><self|`.
    pub fn bloch_vector(&self) -> [f64; 3] {
        let c = self.0[0].conj() * self.0[1];
        [2.0 * c.re, 2.0 * c.im, self.0[0].norm_sqr() - self.0[1].norm_sqr()]
    }

    /// Polar and azimuthal Bloch angles `(θ, φ)`; global phase is dropped.
    pub fn bloch_angles(&self) -> (f64, f64) {
        let theta = 2.0 * self.0[1].norm().atan2(self.0[0].norm());
        let phi =
            if self.0[0].norm() < 1e-300 || self.0[1].norm() < 1e-300 { 0.0 } else { (self.0[1] / self.0[0]).arg() };
        (theta, phi)
    }
}

impl std::ops::Index<usize> for Qubit {
    type Output = Complex64;
    fn index(&self, i: usize) -> &Complex64 {
        &self.0[i]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bloch_round_trip() {
        let q = Qubit::from_bloch_angles(1.1, -0.4);
        let v = q.bloch_vector();
        let back = Qubit::from_bloch_vector(v).unwrap();
        assert!((q.inner(&back).norm() - 1.0).abs() < 1e-12);
        let (t, p) = q.bloch_angles();
        assert!((t - 1.1).abs() < 1e-12 && (p + 0.4).abs() < 1e-12);
    }

    #[test]
    fn orthogonal_complement() {
        let q = Qubit::from_bloch_angles(0.3, 2.0);
        assert!(q.inner(&q.orthogonal()).norm() < 1e-15);
    }

    #[test]
    fn rejects_unnormalized() {
        assert!(Qubit::new(Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)).is_err());
    }
}
