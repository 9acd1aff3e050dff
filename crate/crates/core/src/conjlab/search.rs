//! Random-state search for states that break either direction of the
//! conjecture.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use super::scan::{conjecture_flags, point_seed};
use crate::groverian::{pmax_alternating, restart_rng, SolverOptions};
use crate::protocols::{bob_mixedness_gap, superdense_check, teleport_feasible, Assignment};
use crate::qcore::{place_bits, ProductState, PureState, Qubit};
use crate::{Exec, Result, Tolerances};

// Stream offsets so the three samples never share random numbers.
const FEASIBLE_STREAM: usize = 1 << 32;
const PROBE_STREAM: usize = 2 << 32;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SearchOptions {
    /// Haar-random states to test.
    pub haar_states: usize,
    /// Random states built to be teleportation-feasible.
    pub feasible_states: usize,
    /// Bisection probes that land exactly on `P_max = 1/2`.
    pub probes: usize,
    pub restarts: usize,
    pub seed: u64,
    pub tolerances: Tolerances,
    pub exec: Exec,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            haar_states: 10_000,
            feasible_states: 1_000,
            probes: 16,
            restarts: 8,
            seed: 0,
            tolerances: Tolerances::default(),
            exec: Exec::default(),
        }
    }
}

fn gaussian_c<R: Rng>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Haar-random pure state of `n` qubits.
pub fn random_state<R: Rng>(n: usize, rng: &mut R) -> Result<PureState> {
    PureState::normalize((0..1usize << n).map(|_| gaussian_c(rng)).collect())
}

/// Random three-qubit state whose qubit `bob` is maximally entangled with the
/// other two: `(|A0⟩|0⟩ + |A1⟩|1⟩)/√2` with a random orthonormal pair `A0, A1`.
pub fn random_feasible_state<R: Rng>(bob: usize, rng: &mut R) -> Result<PureState> {
    let assign = Assignment::bob(bob)?;
    let mut cols = [[Complex64::new(0.0, 0.0); 4]; 2];
    loop {
        for c in cols.iter_mut() {
            for v in c.iter_mut() {
                *v = gaussian_c(rng);
            }
        }
        let n0 = cols[0].iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
        cols[0].iter_mut().for_each(|v| *v /= n0);
        let proj: Complex64 = cols[0].iter().zip(&cols[1]).map(|(a, b)| a.conj() * b).sum();
        let c0 = cols[0];
        cols[1].iter_mut().zip(&c0).for_each(|(b, a)| *b -= proj * a);
        let n1 = cols[1].iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
        if n0 > 1e-6 && n1 > 1e-6 {
            cols[1].iter_mut().for_each(|v| *v /= n1);
            break;
        }
    }
    let [lo, hi] = assign.alice_pair();
    let mut amps = vec![Complex64::new(0.0, 0.0); 8];
    for r in 0..4 {
        for (j, col) in cols.iter().enumerate() {
            amps[place_bits((r << 1) | j, &[lo, hi, bob], 3)] = col[r] * std::f64::consts::FRAC_1_SQRT_2;
        }
    }
    PureState::normalize(amps)
}

fn amplitude_pairs(s: &PureState) -> Vec<[f64; 2]> {
    s.amplitudes().iter().map(|c| [c.re, c.im]).collect()
}

/// A sampled state that breaks the necessary direction.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SearchFinding {
    pub source: &'static str,
    pub index: usize,
    pub p_max: f64,
    pub teleport_bob: [bool; 3],
    pub amplitudes: Vec<[f64; 2]>,
}

/// A state tuned by bisection to `P_max = 1/2`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProbeFinding {
    pub index: usize,
    pub p_max: f64,
    pub teleport_bob: [bool; 3],
    pub dense_alice: [bool; 3],
    /// Deviation of each qubit's reduced state from `I/2`.
    pub bob_gaps: [f64; 3],
    pub amplitudes: Vec<[f64; 2]>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SearchReport {
    pub haar_states: usize,
    pub haar_feasible: usize,
    pub haar_pmax_range: [f64; 2],
    /// Haar states with `|P_max − 1/2| < tol`.
    pub haar_near_half: usize,
    pub feasible_states: usize,
    /// Largest `|P_max − 1/2|` over every feasible state seen.
    pub feasible_max_deviation: f64,
    pub necessary_violations: Vec<SearchFinding>,
    pub probes: Vec<ProbeFinding>,
    /// Probes at `P_max = 1/2` with no feasible assignment.
    pub sufficiency_counterexamples: usize,
}

struct Sample {
    state: PureState,
    p_max: f64,
    feasible: [bool; 3],
}

fn evaluate(state: PureState, seed: u64, restarts: usize) -> Result<Sample> {
    let opts = SolverOptions { restarts, seed, exec: Exec::Sequential, ..SolverOptions::default() };
    let p_max = pmax_alternating(&state, &opts)?.p_max;
    let mut feasible = [false; 3];
    for (k, f) in feasible.iter_mut().enumerate() {
        *f = teleport_feasible(&state, Assignment::bob(k)?)?;
    }
    Ok(Sample { state, p_max, feasible })
}

fn mix(a: &PureState, b: &PureState, t: f64) -> Result<PureState> {
    let amps = a.amplitudes().iter().zip(b.amplitudes()).map(|(x, y)| x * (1.0 - t) + y * t).collect();
    PureState::normalize(amps)
}

/// Walks from a state with `P_max < 1/2` toward a random product state and
/// bisects on the mixing weight until `P_max = 1/2`.
fn probe(index: usize, opts: &SearchOptions) -> Result<ProbeFinding> {
    let mut rng = restart_rng(opts.seed, PROBE_STREAM + index);
    let solver = SolverOptions {
        restarts: opts.restarts,
        seed: point_seed(opts.seed, PROBE_STREAM + index),
        exec: Exec::Sequential,
        ..SolverOptions::default()
    };
    let p = |s: &PureState| pmax_alternating(s, &solver).map(|r| r.p_max);

    let mut low = random_state(3, &mut rng)?;
    if p(&low)? >= 0.5 - 1e-3 {
        let w = 1.0 / 3f64.sqrt();
        low = PureState::from_real(&[0.0, w, w, 0.0, w, 0.0, 0.0, 0.0])?;
    }
    let factors = (0..3).map(|_| crate::groverian::random_qubit(&mut rng)).collect::<Vec<Qubit>>();
    let high = PureState::from_product(&ProductState::new(factors)?)?;

    let (mut lo, mut hi) = (0.0, 1.0);
    let mut state = low.clone();
    let mut value = p(&state)?;
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        state = mix(&low, &high, mid)?;
        value = p(&state)?;
        if (value - 0.5).abs() < 1e-12 {
            break;
        }
        if value < 0.5 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut teleport_bob = [false; 3];
    let mut dense_alice = [false; 3];
    let mut bob_gaps = [0.0; 3];
    for k in 0..3 {
        let a = Assignment::bob(k)?;
        teleport_bob[k] = teleport_feasible(&state, a)?;
        dense_alice[k] = superdense_check(&state, k)?.feasible;
        bob_gaps[k] = bob_mixedness_gap(&state, a)?;
    }
    Ok(ProbeFinding { index, p_max: value, teleport_bob, dense_alice, bob_gaps, amplitudes: amplitude_pairs(&state) })
}

/// Runs the Haar sample, the feasible sample and the bisection probes.
pub fn search_counterexamples(opts: &SearchOptions) -> Result<SearchReport> {
    let tol = opts.tolerances.conjecture;
    let haar: Vec<Sample> = opts
        .exec
        .map_range(opts.haar_states, |i| {
            let mut rng = restart_rng(opts.seed, i);
            evaluate(random_state(3, &mut rng)?, point_seed(opts.seed, i), opts.restarts)
        })
        .into_iter()
        .collect::<Result<_>>()?;
    let feasible: Vec<Sample> = opts
        .exec
        .map_range(opts.feasible_states, |i| {
            let mut rng = restart_rng(opts.seed, FEASIBLE_STREAM + i);
            let bob = rng.random_range(0..3);
            evaluate(random_feasible_state(bob, &mut rng)?, point_seed(opts.seed, FEASIBLE_STREAM + i), opts.restarts)
        })
        .into_iter()
        .collect::<Result<_>>()?;
    let probes: Vec<ProbeFinding> =
        opts.exec.map_range(opts.probes, |i| probe(i, opts)).into_iter().collect::<Result<_>>()?;

    let mut violations = Vec::new();
    let mut max_dev: f64 = 0.0;
    for (source, samples) in [("haar", &haar), ("feasible", &feasible)] {
        for (index, s) in samples.iter().enumerate() {
            let any = s.feasible.iter().any(|&f| f);
            if any {
                max_dev = max_dev.max((s.p_max - 0.5).abs());
            }
            if !conjecture_flags(s.p_max, any, tol).0 {
                violations.push(SearchFinding {
                    source,
                    index,
                    p_max: s.p_max,
                    teleport_bob: s.feasible,
                    amplitudes: amplitude_pairs(&s.state),
                });
            }
        }
    }
    let range = haar.iter().fold([f64::INFINITY, f64::NEG_INFINITY], |r, s| [r[0].min(s.p_max), r[1].max(s.p_max)]);
    Ok(SearchReport {
        haar_states: haar.len(),
        haar_feasible: haar.iter().filter(|s| s.feasible.iter().any(|&f| f)).count(),
        haar_pmax_range: range,
        haar_near_half: haar.iter().filter(|s| (s.p_max - 0.5).abs() < tol).count(),
        feasible_states: feasible.len(),
        feasible_max_deviation: max_dev,
        necessary_violations: violations,
        sufficiency_counterexamples: probes
            .iter()
            .filter(|p| (p.p_max - 0.5).abs() < tol && !p.teleport_bob.iter().any(|&f| f))
            .count(),
        probes,
    })
}

impl std::fmt::Display for SearchReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(
            f,
            "haar: {} states, {} feasible, p_max in [{:.6}, {:.6}], {} at 1/2",
            self.haar_states, self.haar_feasible, self.haar_pmax_range[0], self.haar_pmax_range[1], self.haar_near_half
        )?;
        writeln!(
            f,
            "feasible: {} states, max |p_max - 1/2| = {:.3e}, {} necessary-direction violations",
            self.feasible_states,
            self.feasible_max_deviation,
            self.necessary_violations.len()
        )?;
        write!(
            f,
            "probes: {} states tuned to p_max = 1/2, {} with no feasible assignment",
            self.probes.len(),
            self.sufficiency_counterexamples
        )
    }
}
