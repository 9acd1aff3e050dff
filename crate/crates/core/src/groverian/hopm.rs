use nalgebra::DMatrix;
use num_complex::Complex64;

use super::newton::{ascent_step, hessian_by_polarization};
use super::{best_index, random_qubit, restart_rng, GroverianResult, Method, SolverOptions};
use crate::qcore::{contract_factors, ProductState, PureState, Qubit};
use crate::{Error, Result};

const POLISH_STEPS: usize = 40;

/// Squared overlap of `state` with `e_0 ⊗ … ⊗ e_{m-1}`, where either every
/// qubit is optimized (`m = n`) or the last one is left open and summed over
/// (`m = n - 1`).
pub(super) struct Objective<'a> {
    state: &'a PureState,
    open_last: bool,
}

impl<'a> Objective<'a> {
    pub(super) fn new(state: &'a PureState, open_last: bool) -> Self {
        Objective { state, open_last }
    }

    pub(super) fn n_factors(&self) -> usize {
        self.state.n_qubits() - usize::from(self.open_last)
    }

    fn slots(&self, factors: &[Qubit], open: Option<usize>) -> Vec<Option<Qubit>> {
        let mut s: Vec<Option<Qubit>> = factors.iter().copied().map(Some).collect();
        if self.open_last {
            s.push(None);
        }
        if let Some(i) = open {
            s[i] = None;
        }
        s
    }

    pub(super) fn components(&self, factors: &[Qubit]) -> Vec<Complex64> {
        contract_factors(self.state, &self.slots(factors, None)).expect("slot count matches")
    }

    pub(super) fn value(&self, factors: &[Qubit]) -> f64 {
        self.components(factors).iter().map(|c| c.norm_sqr()).sum()
    }

    /// Replaces factor `i` by the exact maximizer with the others held fixed
    /// and returns the new value. `None` when the conditioned form vanishes.
    fn update(&self, factors: &mut [Qubit], i: usize) -> Option<f64> {
        let v = contract_factors(self.state, &self.slots(factors, Some(i))).expect("slot count matches");
        // v is laid out as [bit of slot i][open-last bit], so H = Σ_l v_l v_l†.
        let m = v.len() / 2;
        let (mut p, mut r, mut q) = (0.0, 0.0, Complex64::new(0.0, 0.0));
        for l in 0..m {
            let (a, b) = (v[l], v[m + l]);
            p += a.norm_sqr();
            r += b.norm_sqr();
            q += a * b.conj();
        }
        let half_gap = 0.5 * (p - r);
        let lambda = 0.5 * (p + r) + (half_gap * half_gap + q.norm_sqr()).sqrt();
        if lambda <= 1e-300 {
            return None;
        }
        let c1 = [q, Complex64::new(lambda - p, 0.0)];
        let c2 = [Complex64::new(lambda - r, 0.0), q.conj()];
        let n1 = c1[0].norm_sqr() + c1[1].norm_sqr();
        let n2 = c2[0].norm_sqr() + c2[1].norm_sqr();
        let (cand, norm2) = if n1 >= n2 { (c1, n1) } else { (c2, n2) };
        // Both candidates vanish only when H ∝ I: every factor is optimal.
        if norm2 > 1e-300 * lambda * lambda {
            if let Some(e) = Qubit::normalized(cand[0], cand[1]) {
                factors[i] = e;
            }
        }
        Some(lambda)
    }

    /// One pass of single-factor updates. Returns the value after the pass.
    pub(super) fn sweep(&self, factors: &mut [Qubit], mut value: f64) -> f64 {
        for i in 0..self.n_factors() {
            if let Some(v) = self.update(factors, i) {
                debug_assert!(v >= value - 1e-12, "ascent violated: {value} -> {v}");
                value = v;
            }
        }
        value
    }

    /// Newton ascent on the product of Bloch spheres; returns the final value.
    ///
    /// Around the current factors each `e_i` moves as
    /// `cos|t_i| e_i + sin|t_i| (t_i/|t_i|) e_i⊥` with complex `t_i`, and the
    /// exact second-order model of the objective in `t` drives the step.
    pub(super) fn polish(&self, factors: &mut [Qubit], mut value: f64) -> f64 {
        let m = self.n_factors();
        for _ in 0..POLISH_STEPS {
            let perp: Vec<Qubit> = factors.iter().map(Qubit::orthogonal).collect();
            let c0 = self.components(factors);
            let with = |swaps: &[usize]| {
                let mut f = factors.to_vec();
                for &s in swaps {
                    f[s] = perp[s];
                }
                self.components(&f)
            };
            let ci: Vec<Vec<Complex64>> = (0..m).map(|i| with(&[i])).collect();
            let dot =
                |a: &[Complex64], b: &[Complex64]| -> Complex64 { a.iter().zip(b).map(|(x, y)| x.conj() * y).sum() };
            let c0_norm = dot(&c0, &c0).re;
            let mut grad = vec![0.0; 2 * m];
            for i in 0..m {
                let gi = dot(&c0, &ci[i]);
                grad[2 * i] = 2.0 * gi.re;
                grad[2 * i + 1] = 2.0 * gi.im;
            }
            if grad.iter().map(|g| g * g).sum::<f64>().sqrt() < 1e-15 {
                break;
            }
            let mut a = vec![Complex64::new(0.0, 0.0); m * m];
            let mut b = vec![Complex64::new(0.0, 0.0); m * m];
            for i in 0..m {
                for j in 0..m {
                    a[i * m + j] = dot(&ci[i], &ci[j]);
                }
                for j in (i + 1)..m {
                    let bij = dot(&c0, &with(&[i, j]));
                    b[i * m + j] = bij;
                }
            }
            let quad = |z: &[f64]| -> f64 {
                let t: Vec<Complex64> = (0..m).map(|i| Complex64::new(z[2 * i], z[2 * i + 1])).collect();
                let mut acc = 0.0;
                for i in 0..m {
                    for j in 0..m {
                        acc += (t[i] * t[j].conj() * a[i * m + j]).re;
                    }
                    for j in (i + 1)..m {
                        acc += 2.0 * (t[i].conj() * t[j].conj() * b[i * m + j]).re;
                    }
                    acc -= c0_norm * t[i].norm_sqr();
                }
                acc
            };
            let hess: DMatrix<f64> = hessian_by_polarization(2 * m, quad);
            let step = ascent_step(&grad, hess);
            let step_norm = step.iter().map(|s| s * s).sum::<f64>().sqrt();
            if step_norm < 1e-16 {
                break;
            }
            let trial: Vec<Qubit> = (0..m)
                .map(|i| {
                    let t = Complex64::new(step[2 * i], step[2 * i + 1]);
                    let r = t.norm();
                    if r == 0.0 {
                        return factors[i];
                    }
                    let u = factors[i].amplitudes();
                    let w = perp[i].amplitudes();
                    let dir = t / r;
                    let (s, c) = r.sin_cos();
                    Qubit::normalized(u[0] * c + dir * w[0] * s, u[1] * c + dir * w[1] * s).unwrap_or(factors[i])
                })
                .collect();
            let trial_value = self.value(&trial);
            if trial_value < value {
                break;
            }
            factors.copy_from_slice(&trial);
            value = trial_value;
        }
        value
    }
}

pub(super) struct Run {
    pub value: f64,
    pub factors: Vec<Qubit>,
    pub converged: bool,
}

/// One restart: power iteration, Newton polish, then a post-hoc sweep that
/// certifies stationarity.
pub(super) fn single_run(obj: &Objective<'_>, opts: &SolverOptions, index: usize) -> Run {
    let mut rng = restart_rng(opts.seed, index);
    let mut factors: Vec<Qubit> = (0..obj.n_factors()).map(|_| random_qubit(&mut rng)).collect();
    let mut value = obj.value(&factors);
    for _ in 0..opts.max_iter {
        let next = obj.sweep(&mut factors, value);
        let gain = next - value;
        value = next;
        if gain < opts.tol {
            break;
        }
    }
    value = obj.polish(&mut factors, value);
    let before = value;
    value = obj.sweep(&mut factors, value);
    let converged = value - before < opts.tol.max(1e-15);
    Run { value, factors, converged }
}

fn multistart(state: &PureState, opts: &SolverOptions, open_last: bool, method: Method) -> Result<GroverianResult> {
    opts.validate()?;
    if open_last && state.n_qubits() < 2 {
        return Err(Error::QubitCount { got: state.n_qubits(), max: crate::qcore::MAX_QUBITS });
    }
    let obj = Objective::new(state, open_last);
    let runs = opts.exec.map_range(opts.restarts, |r| single_run(&obj, opts, r));
    let best = best_index(runs.iter().map(|r| r.value)).expect("restarts >= 1");
    let run = &runs[best];
    let mut factors = run.factors.clone();
    if open_last {
        let c = obj.components(&factors);
        factors.push(Qubit::normalized(c[0], c[1]).unwrap_or(Qubit::ZERO));
    }
    let maximizer = ProductState::new(factors)?;
    Ok(GroverianResult::new(run.value, maximizer, method, opts.restarts, run.converged))
}

/// `P_max` by alternating single-factor updates over all qubits.
pub fn pmax_alternating(state: &PureState, opts: &SolverOptions) -> Result<GroverianResult> {
    multistart(state, opts, false, Method::Alternating)
}

/// `P_max` via `max Tr[ρ R^1 ⊗ … ⊗ R^{n-1} ⊗ I]`: the last qubit is never
/// projected, and its factor in the returned maximizer is the normalized
/// conditioned vector.
pub fn pmax_reduced(state: &PureState, opts: &SolverOptions) -> Result<GroverianResult> {
    multistart(state, opts, true, Method::Reduced)
}
