#![allow(dead_code)]

use grovlab_core::qcore::{Operator1Q, PureState, Qubit};
use grovlab_core::Complex64;
use proptest::prelude::*;

/// Unnormalized complex amplitudes; the state is built by normalizing them.
pub fn state(n_qubits: usize) -> impl Strategy<Value = PureState> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1 << n_qubits)
        .prop_filter("near-zero vector", |v| v.iter().map(|(r, i)| r * r + i * i).sum::<f64>() > 1e-3)
        .prop_map(|v| PureState::normalize(v.into_iter().map(|(r, i)| Complex64::new(r, i)).collect()).unwrap())
}

pub fn qubit() -> impl Strategy<Value = Qubit> {
    (0.0..std::f64::consts::PI, 0.0..2.0 * std::f64::consts::PI).prop_map(|(t, p)| Qubit::from_bloch_angles(t, p))
}

/// `e^{iα} Rz(β) Ry(γ) Rz(δ)`.
pub fn unitary() -> impl Strategy<Value = Operator1Q> {
    let ang = 0.0..2.0 * std::f64::consts::PI;
    (ang.clone(), ang.clone(), ang.clone(), ang).prop_map(|(a, b, g, d)| {
        let e = |x: f64| Complex64::from_polar(1.0, x);
        let (c, s) = ((g / 2.0).cos(), (g / 2.0).sin());
        Operator1Q::custom([
            [e(a - b / 2.0 - d / 2.0) * c, -e(a - b / 2.0 + d / 2.0) * s],
            [e(a + b / 2.0 - d / 2.0) * s, e(a + b / 2.0 + d / 2.0) * c],
        ])
    })
}

pub fn max_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}
