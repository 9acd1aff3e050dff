//! Perfect two-party teleportation and superdense coding over a three-qubit
//! resource.
//!
//! A resource supports perfect teleportation to the holder of qubit `bob`
//! exactly when Bob's reduced state is `I/2`: then the Alice pair and Bob
//! share one ebit and the textbook protocol runs on its Schmidt basis.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::qcore::{fidelity, place_bits, Matrix, Operator1Q, PureState, Qubit};
use crate::{Error, Result, Tolerances};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const SIGNIFICANT: f64 = 1e-8;

/// Which resource qubit Bob holds; Alice holds the other two.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Assignment {
    bob: usize,
}

impl Assignment {
    pub fn bob(qubit: usize) -> Result<Self> {
        if qubit >= 3 {
            return Err(Error::QubitOutOfRange { index: qubit, n_qubits: 3 });
        }
        Ok(Assignment { bob: qubit })
    }

    pub fn bob_qubit(&self) -> usize {
        self.bob
    }

    /// Alice's two resource qubits, ascending.
    pub fn alice_pair(&self) -> [usize; 2] {
        match self.bob {
            0 => [1, 2],
            1 => [0, 2],
            _ => [0, 1],
        }
    }
}

fn check_resource(resource: &PureState) -> Result<()> {
    if resource.n_qubits() != 3 {
        return Err(Error::QubitCount { got: resource.n_qubits(), max: 3 });
    }
    Ok(())
}

/// `M[r][j]`: amplitude with Alice pair in state `r` and Bob in `j`.
fn channel_matrix(resource: &PureState, assign: Assignment) -> [[Complex64; 2]; 4] {
    let [lo, hi] = assign.alice_pair();
    let mut m = [[ZERO; 2]; 4];
    for (r, row) in m.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            *v = resource.amplitude(place_bits((r << 1) | j, &[lo, hi, assign.bob], 3));
        }
    }
    m
}

/// Largest entrywise deviation of Bob's reduced state from `I/2`.
pub fn bob_mixedness_gap(resource: &PureState, assign: Assignment) -> Result<f64> {
    check_resource(resource)?;
    Ok(resource.reduced(&[assign.bob])?.distance_from_maximally_mixed())
}

/// True when Bob's reduced state equals `I/2` within the feasibility tolerance.
pub fn teleport_feasible(resource: &PureState, assign: Assignment) -> Result<bool> {
    Ok(bob_mixedness_gap(resource, assign)? <= Tolerances::default().feasibility)
}

/// Explicit teleportation protocol. Outcomes are ordered by the Pauli label
/// `(I, Z, X, ZX)` applied to the input register.
#[derive(Clone, Debug, PartialEq)]
pub struct TeleportProtocol {
    pub assignment: Assignment,
    /// Measurement basis on (input, Alice low, Alice high).
    pub basis: [PureState; 4],
    /// Bob's unitary for each outcome.
    pub corrections: [Operator1Q; 4],
    pub probabilities: [f64; 4],
    /// Bob's Schmidt vectors `b0`, `b1`.
    pub bob_basis: [Qubit; 2],
    channel: [[Complex64; 2]; 4],
}

/// Pauli labels of the four outcomes, as transposed onto the input register.
pub const OUTCOME_LABELS: [&str; 4] = ["I", "Z", "X", "ZX"];

fn outcome_ops() -> [Operator1Q; 4] {
    let (x, z) = (Operator1Q::x(), Operator1Q::z());
    [Operator1Q::identity(), z, x, z.compose(&x)]
}

impl TeleportProtocol {
    /// Bob's unnormalized conditional vector after Alice obtains `outcome`.
    fn conditional(&self, outcome: usize, input: [Complex64; 2]) -> [Complex64; 2] {
        let b = self.basis[outcome].amplitudes();
        let mut v = [ZERO; 2];
        for (i, amp) in input.iter().enumerate() {
            for r in 0..4 {
                let w = b[(i << 2) | r].conj() * amp;
                v[0] += w * self.channel[r][0];
                v[1] += w * self.channel[r][1];
            }
        }
        v
    }

    /// Bob's qubit after `outcome` and its correction, unnormalized; the
    /// squared norm is the outcome probability.
    pub fn corrected_output(&self, outcome: usize, input: &Qubit) -> [Complex64; 2] {
        self.corrections[outcome].apply(self.conditional(outcome, input.amplitudes()))
    }

    /// Born probabilities of the four outcomes for `input`.
    pub fn outcome_probabilities(&self, input: &Qubit) -> [f64; 4] {
        std::array::from_fn(|mu| {
            let v = self.conditional(mu, input.amplitudes());
            v[0].norm_sqr() + v[1].norm_sqr()
        })
    }
}

/// Builds the protocol from the Schmidt decomposition across Alice pair | Bob.
///
/// The decomposition is fixed by taking Alice's first nonzero row: `A0` is
/// the normalized conjugate of that row pushed through the channel, and the
/// phase of `A1` makes its first significant entry real positive.
pub fn build_protocol(resource: &PureState, assign: Assignment) -> Result<TeleportProtocol> {
    if !teleport_feasible(resource, assign)? {
        return Err(Error::Infeasible { bob: assign.bob });
    }
    let m = channel_matrix(resource, assign);
    let s2 = std::f64::consts::SQRT_2;
    let w: Vec<[Complex64; 2]> = m.iter().map(|row| [row[0] * s2, row[1] * s2]).collect();

    let pivot = w
        .iter()
        .find(|row| row[0].norm_sqr() + row[1].norm_sqr() > SIGNIFICANT * SIGNIFICANT)
        .expect("feasible channel has a nonzero row");
    let u0 = Qubit::normalized(pivot[0].conj(), pivot[1].conj()).expect("nonzero row");
    let mut u1 = u0.orthogonal();
    let push = |u: &Qubit| -> [Complex64; 4] {
        let a = u.amplitudes();
        std::array::from_fn(|r| w[r][0] * a[0] + w[r][1] * a[1])
    };
    let a1 = push(&u1);
    if let Some(lead) = a1.iter().find(|c| c.norm() > SIGNIFICANT) {
        let ph = lead.conj() / lead.norm();
        let a = u1.amplitudes();
        u1 = Qubit::normalized(a[0] * ph, a[1] * ph).expect("unit");
    }
    let (a0, a1) = (push(&u0), push(&u1));
    let conj = |q: &Qubit| {
        let a = q.amplitudes();
        Qubit::normalized(a[0].conj(), a[1].conj()).expect("unit")
    };
    let bob_basis = [conj(&u0), conj(&u1)];

    // (σᵀ ⊗ 1)(|0⟩|A0⟩ + |1⟩|A1⟩)/√2
    let ops = outcome_ops();
    let mut basis = Vec::with_capacity(4);
    for op in &ops {
        let t = op.transpose();
        let mut amps = vec![ZERO; 8];
        for (i, ai) in [&a0, &a1].iter().enumerate() {
            for out_bit in 0..2 {
                let coef = t.matrix[out_bit][i];
                for r in 0..4 {
                    amps[(out_bit << 2) | r] += coef * ai[r] / s2;
                }
            }
        }
        basis.push(PureState::new(amps)?);
    }
    let basis: [PureState; 4] = basis.try_into().expect("four outcomes");

    let mut proto = TeleportProtocol {
        assignment: assign,
        basis,
        corrections: [Operator1Q::identity(); 4],
        probabilities: [0.0; 4],
        bob_basis,
        channel: m,
    };
    let one = Complex64::new(1.0, 0.0);
    for mu in 0..4 {
        let c0 = proto.conditional(mu, [one, ZERO]);
        let c1 = proto.conditional(mu, [ZERO, one]);
        // Bob holds K|ψ⟩/2; the correction undoes K.
        let k = Operator1Q::custom([[c0[0] * 2.0, c1[0] * 2.0], [c0[1] * 2.0, c1[1] * 2.0]]);
        if !k.is_unitary(1e-9) {
            return Err(Error::Infeasible { bob: assign.bob });
        }
        proto.corrections[mu] = k.adjoint();
        proto.probabilities[mu] = (c0[0].norm_sqr() + c0[1].norm_sqr() + c1[0].norm_sqr() + c1[1].norm_sqr()) / 2.0;
    }
    Ok(proto)
}

/// One run of the protocol.
#[derive(Clone, Debug, PartialEq)]
pub struct TeleportRun {
    pub outcome: usize,
    /// Bob's qubit after the correction.
    pub bob_state: PureState,
    pub fidelity: f64,
}

/// Samples Alice's outcome for `input ⊗ resource`, collapses Bob's qubit and
/// applies the matching correction.
pub fn simulate_teleport(
    protocol: &TeleportProtocol,
    resource: &PureState,
    input: &Qubit,
    seed: u64,
) -> Result<TeleportRun> {
    check_resource(resource)?;
    let joint = PureState::from_qubit(input).tensor(resource)?;
    let [lo, hi] = protocol.assignment.alice_pair();
    let bob = protocol.assignment.bob;
    // Joint register: 0 = input, 1..=3 = resource qubits.
    let alice = [0, lo + 1, hi + 1];
    let conditionals: Vec<[Complex64; 2]> = protocol
        .basis
        .iter()
        .map(|b| {
            let mut v = [ZERO; 2];
            for (a, ba) in b.amplitudes().iter().enumerate() {
                for (j, vj) in v.iter_mut().enumerate() {
                    let idx = place_bits((a << 1) | j, &[alice[0], alice[1], alice[2], bob + 1], 4);
                    *vj += ba.conj() * joint.amplitude(idx);
                }
            }
            v
        })
        .collect();
    let probs: Vec<f64> = conditionals.iter().map(|v| v[0].norm_sqr() + v[1].norm_sqr()).collect();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let total: f64 = probs.iter().sum();
    let mut x = rng.random::<f64>() * total;
    let mut outcome = probs.len() - 1;
    for (mu, p) in probs.iter().enumerate() {
        if x < *p {
            outcome = mu;
            break;
        }
        x -= p;
    }

    let v = protocol.corrections[outcome].apply(conditionals[outcome]);
    let bob_state = PureState::normalize(v.to_vec())?;
    let fid = fidelity(&bob_state, &PureState::from_qubit(input))?;
    Ok(TeleportRun { outcome, bob_state, fidelity: fid })
}

/// Gram matrix of the four dense-coding codewords.
#[derive(Clone, Debug, PartialEq)]
pub struct SuperdenseReport {
    pub alice_qubit: usize,
    /// Codewords after Alice applies `I`, `Z`, `X`, `-iY`.
    pub encoded: [PureState; 4],
    pub gram: Matrix,
    pub feasible: bool,
}

impl SuperdenseReport {
    /// Largest off-diagonal Gram modulus.
    pub fn max_overlap(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for r in 0..4 {
            for c in 0..4 {
                if r != c {
                    worst = worst.max(self.gram.get(r, c).norm());
                }
            }
        }
        worst
    }
}

/// Encodes two bits with `{I, Z, X, -iY}` on `alice_qubit` and checks that
/// the four codewords are orthogonal.
pub fn superdense_check(resource: &PureState, alice_qubit: usize) -> Result<SuperdenseReport> {
    check_resource(resource)?;
    if alice_qubit >= 3 {
        return Err(Error::QubitOutOfRange { index: alice_qubit, n_qubits: 3 });
    }
    let (x, z) = (Operator1Q::x(), Operator1Q::z());
    let minus_iy = x.compose(&z);
    let ops = [Operator1Q::identity(), z, x, minus_iy];
    let mut encoded = Vec::with_capacity(4);
    for op in &ops {
        encoded.push(resource.apply_1q(op, alice_qubit)?);
    }
    let encoded: [PureState; 4] = encoded.try_into().expect("four codewords");
    let mut gram = Matrix::zeros(4);
    for r in 0..4 {
        for c in 0..4 {
            gram.set(r, c, encoded[r].inner(&encoded[c])?);
        }
    }
    let mut report = SuperdenseReport { alice_qubit, encoded, gram, feasible: false };
    report.feasible = report.max_overlap() < Tolerances::default().feasibility;
    Ok(report)
}
