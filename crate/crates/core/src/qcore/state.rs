use num_complex::Complex64;

use super::matrix::{gather_bits, place_bits, Matrix};
use super::{bit_of, check_qubit_count, check_qubit_set, DensityMatrix, Operator1Q, Qubit, MAX_QUBITS};
use crate::{Error, Result};

/// Accepted deviation of `Σ|amp|²` from one when constructing a state.
const NORM_TOL: f64 = 1e-10;

/// Normalized `n`-qubit pure state with big-endian amplitude ordering.
#[derive(Clone, Debug, PartialEq)]
pub struct PureState {
    n_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl PureState {
    /// Builds a state from amplitudes that are already normalized (within
    /// `1e-10`); the stored vector is rescaled to unit norm exactly.
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        let n = Self::qubits_for_len(amplitudes.len())?;
        let n2: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if !n2.is_finite() || (n2 - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized(n2));
        }
        Ok(Self::rescaled(n, amplitudes, n2))
    }

    /// Normalizes any nonzero amplitude vector.
    pub fn normalize(amplitudes: Vec<Complex64>) -> Result<Self> {
        let n = Self::qubits_for_len(amplitudes.len())?;
        let n2: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if !n2.is_finite() || n2 < 1e-300 {
            return Err(Error::NotNormalized(n2));
        }
        Ok(Self::rescaled(n, amplitudes, n2))
    }

    pub fn from_real(amplitudes: &[f64]) -> Result<Self> {
        Self::new(amplitudes.iter().map(|&a| Complex64::new(a, 0.0)).collect())
    }

    /// Computational basis state `|index>`.
    pub fn basis(n_qubits: usize, index: usize) -> Result<Self> {
        check_qubit_count(n_qubits)?;
        let dim = 1usize << n_qubits;
        if index >= dim {
            return Err(Error::InvalidArgument(format!("basis index {index} >= {dim}")));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(PureState { n_qubits, amplitudes: amps })
    }

    pub fn from_qubit(q: &Qubit) -> Self {
        PureState { n_qubits: 1, amplitudes: q.amplitudes().to_vec() }
    }

    pub fn from_product(p: &ProductState) -> Result<Self> {
        let mut it = p.factors().iter();
        let first = it.next().ok_or(Error::QubitCount { got: 0, max: MAX_QUBITS })?;
        it.try_fold(Self::from_qubit(first), |acc, q| acc.tensor(&Self::from_qubit(q)))
    }

    fn qubits_for_len(len: usize) -> Result<usize> {
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::InvalidLength(len));
        }
        let n = len.trailing_zeros() as usize;
        check_qubit_count(n)?;
        Ok(n)
    }

    fn rescaled(n_qubits: usize, mut amplitudes: Vec<Complex64>, n2: f64) -> Self {
        let s = n2.sqrt().recip();
        for a in &mut amplitudes {
            *a *= s;
        }
        PureState { n_qubits, amplitudes }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.amplitudes[index]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// `self ⊗ other`; `self` occupies the leading qubits.
    pub fn tensor(&self, other: &PureState) -> Result<PureState> {
        let n = self.n_qubits + other.n_qubits;
        check_qubit_count(n)?;
        let mut amps = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.amplitudes {
            for b in &other.amplitudes {
                amps.push(a * b);
            }
        }
        Ok(PureState { n_qubits: n, amplitudes: amps })
    }

    /// `(I ⊗ … ⊗ op ⊗ … ⊗ I)|self>` for unitary `op`.
    pub fn apply_1q(&self, op: &Operator1Q, target: usize) -> Result<PureState> {
        if !op.is_unitary(1e-12) {
            return Err(Error::NotUnitary);
        }
        let amplitudes = self.apply_1q_raw(op, target)?;
        Ok(PureState { n_qubits: self.n_qubits, amplitudes })
    }

    /// Same as [`apply_1q`](Self::apply_1q) for any 2×2 operator; the result
    /// is returned unnormalized.
    pub fn apply_1q_raw(&self, op: &Operator1Q, target: usize) -> Result<Vec<Complex64>> {
        let n = self.n_qubits;
        if target >= n {
            return Err(Error::QubitOutOfRange { index: target, n_qubits: n });
        }
        let stride = 1usize << (n - 1 - target);
        let mut out = self.amplitudes.clone();
        for i in 0..self.dim() {
            if i & stride == 0 {
                let [a, b] = op.apply([self.amplitudes[i], self.amplitudes[i | stride]]);
                out[i] = a;
                out[i | stride] = b;
            }
        }
        Ok(out)
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &PureState) -> Result<Complex64> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::DimensionMismatch { expected: self.n_qubits, found: other.n_qubits });
        }
        Ok(self.amplitudes.iter().zip(&other.amplitudes).map(|(a, b)| a.conj() * b).sum())
    }

    pub fn density(&self) -> DensityMatrix {
        DensityMatrix::from_pure(&self.amplitudes, self.n_qubits)
    }

    /// Reduced density matrix on `keep`, computed directly from amplitudes.
    pub fn reduced(&self, keep: &[usize]) -> Result<DensityMatrix> {
        let n = self.n_qubits;
        check_qubit_set(keep, n)?;
        let traced: Vec<usize> = (0..n).filter(|q| !keep.contains(q)).collect();
        let dk = 1usize << keep.len();
        let dt = 1usize << traced.len();
        // Coefficient matrix M[kept][traced]; ρ = M M†.
        let mut m = vec![Complex64::new(0.0, 0.0); dk * dt];
        for (idx, a) in self.amplitudes.iter().enumerate() {
            m[gather_bits(idx, keep, n) * dt + gather_bits(idx, &traced, n)] = *a;
        }
        let mut out = Matrix::zeros(dk);
        for r in 0..dk {
            for c in r..dk {
                let v: Complex64 = (0..dt).map(|t| m[r * dt + t] * m[c * dt + t].conj()).sum();
                out.set(r, c, v);
                out.set(c, r, v.conj());
            }
        }
        Ok(DensityMatrix::from_parts(keep.len(), out))
    }

    /// Reorders qubits so that new qubit `j` is old qubit `order[j]`.
    pub fn permuted(&self, order: &[usize]) -> Result<PureState> {
        let n = self.n_qubits;
        let mut seen = vec![false; n];
        if order.len() != n || order.iter().any(|&q| q >= n || std::mem::replace(&mut seen[q], true)) {
            return Err(Error::InvalidQubitSet(format!("{order:?} is not a permutation of 0..{n}")));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); self.dim()];
        for (new_idx, slot) in amps.iter_mut().enumerate() {
            *slot = self.amplitudes[place_bits(new_idx, order, n)];
        }
        Ok(PureState { n_qubits: n, amplitudes: amps })
    }
}

/// `a ⊗ b`.
pub fn tensor(a: &PureState, b: &PureState) -> Result<PureState> {
    a.tensor(b)
}

/// `|<a|b>|²`.
pub fn fidelity(a: &PureState, b: &PureState) -> Result<f64> {
    Ok(a.inner(b)?.norm_sqr().min(1.0))
}

/// Product of single-qubit unit vectors `|e_1> ⊗ … ⊗ |e_n>`.
#[derive(Clone, Debug, PartialEq)]
pub struct ProductState {
    factors: Vec<Qubit>,
}

impl ProductState {
    pub fn new(factors: Vec<Qubit>) -> Result<Self> {
        check_qubit_count(factors.len())?;
        for q in &factors {
            let n2 = q.alpha().norm_sqr() + q.beta().norm_sqr();
            if (n2 - 1.0).abs() > 1e-12 {
                return Err(Error::NotNormalized(n2));
            }
        }
        Ok(ProductState { factors })
    }

    pub fn factors(&self) -> &[Qubit] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Projector `R^1 ⊗ … ⊗ R^n` with `R^i = |e_i><e_i|`.
    pub fn projector(&self) -> Matrix {
        let mut it = self.factors.iter().map(|q| Operator1Q::projector(q).to_matrix());
        let first = it.next().expect("nonempty by construction");
        it.fold(first, |acc, m| acc.kron(&m))
    }
}

/// `(<e_1| ⊗ … ⊗ <e_n|)|state>`.
pub fn overlap_product(state: &PureState, factors: &ProductState) -> Result<Complex64> {
    if factors.len() != state.n_qubits() {
        return Err(Error::DimensionMismatch { expected: state.n_qubits(), found: factors.len() });
    }
    let bound: Vec<Option<Qubit>> = factors.factors().iter().copied().map(Some).collect();
    Ok(contract_factors(state, &bound)?[0])
}

/// Contracts `state` with `<f_q|` on every slot holding `Some(f_q)`.
///
/// The open (`None`) slots survive, in ascending qubit order and big-endian,
/// so the result has length `2^(number of open slots)`.
pub fn contract_factors(state: &PureState, factors: &[Option<Qubit>]) -> Result<Vec<Complex64>> {
    let n = state.n_qubits();
    if factors.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: factors.len() });
    }
    let open = factors.iter().filter(|f| f.is_none()).count();
    let mut out = vec![Complex64::new(0.0, 0.0); 1 << open];
    for (idx, &amp) in state.amplitudes().iter().enumerate() {
        if amp.re == 0.0 && amp.im == 0.0 {
            continue;
        }
        let mut coeff = amp;
        let mut o = 0usize;
        for (q, f) in factors.iter().enumerate() {
            let b = bit_of(idx, q, n);
            match f {
                Some(f) => coeff *= f[b].conj(),
                None => o = (o << 1) | b,
            }
        }
        out[o] += coeff;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn ghz() -> PureState {
        PureState::from_real(&[FRAC_1_SQRT_2, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, FRAC_1_SQRT_2]).unwrap()
    }

    #[test]
    fn tensor_of_basis_kets() {
        let s = PureState::from_qubit(&Qubit::ZERO).tensor(&PureState::from_qubit(&Qubit::ONE)).unwrap();
        assert_eq!(s.amplitudes(), &[c(0.0), c(1.0), c(0.0), c(0.0)]);
    }

    #[test]
    fn tensor_plus_with_zero() {
        let plus = Qubit::from_bloch_angles(std::f64::consts::FRAC_PI_2, 0.0);
        let s = PureState::from_qubit(&plus).tensor(&PureState::from_qubit(&Qubit::ZERO)).unwrap();
        let expect = [FRAC_1_SQRT_2, 0.0, FRAC_1_SQRT_2, 0.0];
        for (a, e) in s.amplitudes().iter().zip(expect) {
            assert!((a - c(e)).norm() < 1e-15);
        }
    }

    #[test]
    fn ghz_from_branch_sum() {
        // (|00> ⊗ q1 + |11> ⊗ q2)/√2 with q1=|0>, q2=|1>.
        let b00 = PureState::basis(2, 0).unwrap().tensor(&PureState::from_qubit(&Qubit::ZERO)).unwrap();
        let b11 = PureState::basis(2, 3).unwrap().tensor(&PureState::from_qubit(&Qubit::ONE)).unwrap();
        let amps: Vec<_> =
            b00.amplitudes().iter().zip(b11.amplitudes()).map(|(a, b)| (a + b) * FRAC_1_SQRT_2).collect();
        assert_eq!(PureState::new(amps).unwrap(), ghz());
    }

    #[test]
    fn apply_x_and_z() {
        let s = PureState::basis(2, 0).unwrap().apply_1q(&Operator1Q::x(), 0).unwrap();
        assert_eq!(s, PureState::basis(2, 2).unwrap());
        let bell = PureState::from_real(&[FRAC_1_SQRT_2, 0.0, 0.0, FRAC_1_SQRT_2]).unwrap();
        let z = bell.apply_1q(&Operator1Q::z(), 0).unwrap();
        assert!((z.amplitude(3) + c(FRAC_1_SQRT_2)).norm() < 1e-15);
        assert!(matches!(bell.apply_1q(&Operator1Q::z(), 2), Err(Error::QubitOutOfRange { .. })));
    }

    #[test]
    fn fidelity_examples() {
        let zero = PureState::from_qubit(&Qubit::ZERO);
        let one = PureState::from_qubit(&Qubit::ONE);
        let plus = PureState::from_real(&[FRAC_1_SQRT_2, FRAC_1_SQRT_2]).unwrap();
        assert_eq!(fidelity(&zero, &zero).unwrap(), 1.0);
        assert_eq!(fidelity(&zero, &one).unwrap(), 0.0);
        assert!((fidelity(&zero, &plus).unwrap() - 0.5).abs() < 1e-15);
        assert!(fidelity(&zero, &ghz()).is_err());
    }

    #[test]
    fn overlap_examples() {
        let p00 = ProductState::new(vec![Qubit::ZERO, Qubit::ZERO]).unwrap();
        assert_eq!(overlap_product(&PureState::basis(2, 0).unwrap(), &p00).unwrap(), c(1.0));
        let p000 = ProductState::new(vec![Qubit::ZERO; 3]).unwrap();
        assert!((overlap_product(&ghz(), &p000).unwrap() - c(FRAC_1_SQRT_2)).norm() < 1e-15);
        assert!(overlap_product(&ghz(), &p00).is_err());

        let t = 3f64.recip();
        let w = PureState::from_real(&[0.0, t.sqrt(), t.sqrt(), 0.0, t.sqrt(), 0.0, 0.0, 0.0]).unwrap();
        let e = Qubit::new(c((2.0 * t).sqrt()), c(t.sqrt())).unwrap();
        let pw = ProductState::new(vec![e; 3]).unwrap();
        assert!((overlap_product(&w, &pw).unwrap().norm_sqr() - 4.0 / 9.0).abs() < 1e-14);
    }

    #[test]
    fn reduced_matches_partial_trace() {
        let amps: Vec<Complex64> = (0..8).map(|i| Complex64::new(i as f64 + 0.5, 0.3 * i as f64)).collect();
        let s = PureState::normalize(amps).unwrap();
        for keep in [vec![0], vec![1], vec![2], vec![0, 2], vec![1, 2], vec![0, 1, 2]] {
            let a = s.reduced(&keep).unwrap();
            let b = s.density().partial_trace(&keep).unwrap();
            assert!(a.matrix().max_abs_diff(b.matrix()) < 1e-14, "keep {keep:?}");
        }
    }

    #[test]
    fn reduced_of_product_state() {
        let a = Qubit::from_bloch_angles(0.4, 1.0);
        let b = Qubit::from_bloch_angles(2.0, -0.3);
        let c3 = Qubit::from_bloch_angles(1.3, 0.2);
        let s = PureState::from_product(&ProductState::new(vec![a, b, c3]).unwrap()).unwrap();
        let r = s.density().partial_trace(&[0]).unwrap();
        let expect = Operator1Q::projector(&a).to_matrix();
        assert!(r.matrix().max_abs_diff(&expect) < 1e-14);
    }

    #[test]
    fn permutation_moves_qubits() {
        // |100> with qubit order (2, 0, 1) becomes |010>.
        let s = PureState::basis(3, 0b100).unwrap();
        assert_eq!(s.permuted(&[2, 0, 1]).unwrap(), PureState::basis(3, 0b010).unwrap());
        assert!(s.permuted(&[0, 0, 1]).is_err());
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(PureState::from_real(&[1.0, 1.0]), Err(Error::NotNormalized(_))));
        assert!(matches!(PureState::from_real(&[1.0, 0.0, 0.0]), Err(Error::InvalidLength(3))));
        assert!(PureState::basis(11, 0).is_err());
        assert!(PureState::basis(6, 0).unwrap().tensor(&PureState::basis(5, 0).unwrap()).is_err());
    }
}
