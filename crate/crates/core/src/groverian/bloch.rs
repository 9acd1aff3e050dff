use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::newton::ascent_step;
use super::{best_index, random_unit_vector, restart_rng, GroverianResult, Method, SolverOptions};
use crate::qcore::{contract_factors, ProductState, PureState, Qubit};
use crate::{Error, Result};

const POLISH_STEPS: usize = 40;
/// Updates with a pre-normalization norm below this count as degenerate.
const DEGENERATE_NORM: f64 = 1e-13;

type Vec3 = [f64; 3];
type Mat3 = [[f64; 3]; 3];

fn dot(a: &Vec3, b: &Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn norm(a: &Vec3) -> f64 {
    dot(a, a).sqrt()
}

fn add(a: &Vec3, b: &Vec3) -> Vec3 {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

fn scale(a: &Vec3, s: f64) -> Vec3 {
    [a[0] * s, a[1] * s, a[2] * s]
}

fn mat_vec(m: &Mat3, v: &Vec3) -> Vec3 {
    [dot(&m[0], v), dot(&m[1], v), dot(&m[2], v)]
}

fn mat_t_vec(m: &Mat3, v: &Vec3) -> Vec3 {
    let mut out = [0.0; 3];
    for (i, row) in m.iter().enumerate() {
        for (j, o) in out.iter_mut().enumerate() {
            *o += row[j] * v[i];
        }
    }
    out
}

fn cross(a: &Vec3, b: &Vec3) -> Vec3 {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

/// Orthonormal pair spanning the tangent plane at unit `s`.
fn tangent_basis(s: &Vec3) -> [Vec3; 2] {
    let axis = if s[0].abs() <= s[1].abs() && s[0].abs() <= s[2].abs() {
        [1.0, 0.0, 0.0]
    } else if s[1].abs() <= s[2].abs() {
        [0.0, 1.0, 0.0]
    } else {
        [0.0, 0.0, 1.0]
    };
    let e1 = cross(s, &axis);
    let e1 = scale(&e1, 1.0 / norm(&e1));
    [e1, cross(s, &e1)]
}

fn retract(s: &Vec3, step: &Vec3) -> Vec3 {
    let r = norm(step);
    if r == 0.0 {
        return *s;
    }
    let (sn, cs) = r.sin_cos();
    let v = add(&scale(s, cs), &scale(step, sn / r));
    scale(&v, 1.0 / norm(&v))
}

/// Bloch vectors and correlation tensor of the two qubits left after tracing
/// one qubit out of a three-qubit state.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlochData {
    pub r2: Vec3,
    pub r3: Vec3,
    pub g: Mat3,
}

impl BlochData {
    /// `(1/4)[1 + s2·r2 + s3·r3 + s2ᵀ g s3]`, i.e. `Tr[ρ R ⊗ R']` for the
    /// projectors with Bloch vectors `s2`, `s3`.
    pub fn value(&self, s2: &Vec3, s3: &Vec3) -> f64 {
        0.25 * (1.0 + dot(s2, &self.r2) + dot(s3, &self.r3) + dot(s2, &mat_vec(&self.g, s3)))
    }

    /// `r2 + g s3`.
    pub fn field2(&self, s3: &Vec3) -> Vec3 {
        add(&self.r2, &mat_vec(&self.g, s3))
    }

    /// `r3 + gᵀ s2`.
    pub fn field3(&self, s2: &Vec3) -> Vec3 {
        add(&self.r3, &mat_t_vec(&self.g, s2))
    }

    /// Largest violation of the Lagrange conditions
    /// `r2 + g s3 = Λ1 s2` and `r3 + gᵀ s2 = Λ2 s3`.
    pub fn lagrange_residual(&self, s2: &Vec3, s3: &Vec3, lambda1: f64, lambda2: f64) -> f64 {
        let a = add(&self.field2(s3), &scale(s2, -lambda1));
        let b = add(&self.field3(s2), &scale(s3, -lambda2));
        norm(&a).max(norm(&b))
    }
}

/// Critical point of the Bloch objective on the product of two unit spheres.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct StationaryPoint {
    pub s2: Vec3,
    pub s3: Vec3,
    pub lambda1: f64,
    pub lambda2: f64,
    pub value: f64,
}

impl StationaryPoint {
    pub fn residual(&self, data: &BlochData) -> f64 {
        data.lagrange_residual(&self.s2, &self.s3, self.lambda1, self.lambda2)
    }
}

/// Traces out `traced` and returns `r2`, `r3` and `g` for the remaining
/// qubits in ascending order.
pub fn bloch_data(state: &PureState, traced: usize) -> Result<BlochData> {
    if state.n_qubits() != 3 {
        return Err(Error::QubitCount { got: state.n_qubits(), max: 3 });
    }
    if traced >= 3 {
        return Err(Error::QubitOutOfRange { index: traced, n_qubits: 3 });
    }
    let keep: Vec<usize> = (0..3).filter(|&q| q != traced).collect();
    let pair = state.reduced(&keep)?;
    Ok(BlochData {
        r2: pair.partial_trace(&[0])?.bloch_vector()?,
        r3: pair.partial_trace(&[1])?.bloch_vector()?,
        g: pair.correlation_tensor()?,
    })
}

struct BlochRun {
    value: f64,
    s2: Vec3,
    s3: Vec3,
    converged: bool,
}

fn polish(data: &BlochData, s2: &mut Vec3, s3: &mut Vec3, mut value: f64) -> f64 {
    for _ in 0..POLISH_STEPS {
        let [e1, e2] = tangent_basis(s2);
        let [f1, f2] = tangent_basis(s3);
        let h2 = data.field2(s3);
        let h3 = data.field3(s2);
        let grad = [0.25 * dot(&e1, &h2), 0.25 * dot(&e2, &h2), 0.25 * dot(&f1, &h3), 0.25 * dot(&f2, &h3)];
        if grad.iter().map(|g| g * g).sum::<f64>().sqrt() < 1e-16 {
            break;
        }
        let mut hess = DMatrix::zeros(4, 4);
        let d2 = -0.25 * dot(s2, &h2);
        let d3 = -0.25 * dot(s3, &h3);
        hess[(0, 0)] = d2;
        hess[(1, 1)] = d2;
        hess[(2, 2)] = d3;
        hess[(3, 3)] = d3;
        for (a, e) in [e1, e2].iter().enumerate() {
            for (b, f) in [f1, f2].iter().enumerate() {
                let v = 0.25 * dot(e, &mat_vec(&data.g, f));
                hess[(a, 2 + b)] = v;
                hess[(2 + b, a)] = v;
            }
        }
        let step = ascent_step(&grad, hess);
        if step.iter().all(|s| s.abs() < 1e-17) {
            break;
        }
        let t2 = add(&scale(&e1, step[0]), &scale(&e2, step[1]));
        let t3 = add(&scale(&f1, step[2]), &scale(&f2, step[3]));
        let (n2, n3) = (retract(s2, &t2), retract(s3, &t3));
        let v = data.value(&n2, &n3);
        if v < value {
            break;
        }
        *s2 = n2;
        *s3 = n3;
        value = v;
    }
    value
}

/// Alternating normalized updates; `None` if an update vector vanishes.
fn iterate(data: &BlochData, s2: &mut Vec3, s3: &mut Vec3, value: &mut f64) -> Option<()> {
    let h2 = data.field2(s3);
    let n2 = norm(&h2);
    if n2 < DEGENERATE_NORM {
        return None;
    }
    *s2 = scale(&h2, 1.0 / n2);
    let h3 = data.field3(s2);
    let n3 = norm(&h3);
    if n3 < DEGENERATE_NORM {
        return None;
    }
    *s3 = scale(&h3, 1.0 / n3);
    let v = data.value(s2, s3);
    debug_assert!(v >= *value - 1e-12, "ascent violated: {value} -> {v}");
    *value = v;
    Some(())
}

fn bloch_run(data: &BlochData, opts: &SolverOptions, index: usize) -> Option<BlochRun> {
    let mut rng = restart_rng(opts.seed, index);
    let mut s2 = random_unit_vector(&mut rng);
    let mut s3 = random_unit_vector(&mut rng);
    let mut value = data.value(&s2, &s3);
    for _ in 0..opts.max_iter {
        let before = value;
        iterate(data, &mut s2, &mut s3, &mut value)?;
        if value - before < opts.tol {
            break;
        }
    }
    value = polish(data, &mut s2, &mut s3, value);
    let before = value;
    iterate(data, &mut s2, &mut s3, &mut value)?;
    Some(BlochRun { value, s2, s3, converged: value - before < opts.tol.max(1e-15) })
}

/// `P_max` of a three-qubit state from the Bloch data of qubits 1 and 2.
pub fn pmax_bloch(state: &PureState, opts: &SolverOptions) -> Result<(GroverianResult, StationaryPoint)> {
    pmax_bloch_traced(state, 0, opts)
}

/// Same as [`pmax_bloch`] with an explicit traced-out qubit.
pub fn pmax_bloch_traced(
    state: &PureState,
    traced: usize,
    opts: &SolverOptions,
) -> Result<(GroverianResult, StationaryPoint)> {
    opts.validate()?;
    let data = bloch_data(state, traced)?;
    let runs = opts.exec.map_range(opts.restarts, |r| bloch_run(&data, opts, r));
    let best =
        best_index(runs.iter().map(|r| r.as_ref().map_or(f64::NEG_INFINITY, |r| r.value))).expect("restarts >= 1");
    let run = runs[best].as_ref().ok_or(Error::AllRestartsDegenerate)?;

    let lambda1 = norm(&data.field2(&run.s3));
    let lambda2 = norm(&data.field3(&run.s2));
    let point = StationaryPoint { s2: run.s2, s3: run.s3, lambda1, lambda2, value: run.value };

    let keep: Vec<usize> = (0..3).filter(|&q| q != traced).collect();
    let q2 = Qubit::from_bloch_vector(run.s2).expect("unit vector");
    let q3 = Qubit::from_bloch_vector(run.s3).expect("unit vector");
    let mut slots = [None; 3];
    slots[keep[0]] = Some(q2);
    slots[keep[1]] = Some(q3);
    let c = contract_factors(state, &slots)?;
    let mut factors = [q2; 3];
    factors[keep[0]] = q2;
    factors[keep[1]] = q3;
    factors[traced] = Qubit::normalized(c[0], c[1]).unwrap_or(Qubit::ZERO);
    let maximizer = ProductState::new(factors.to_vec())?;

    Ok((GroverianResult::new(run.value, maximizer, Method::Bloch, opts.restarts, run.converged), point))
}
