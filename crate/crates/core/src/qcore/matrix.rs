use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{bit_of, check_qubit_set, Qubit};
use crate::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// Dense square complex matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl Matrix {
    pub fn zeros(dim: usize) -> Self {
        Matrix { dim, data: vec![ZERO; dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = ONE;
        }
        m
    }

    pub fn from_row_major(dim: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != dim * dim {
            return Err(Error::DimensionMismatch { expected: dim * dim, found: data.len() });
        }
        Ok(Matrix { dim, data })
    }

    /// `|u><v|`.
    pub fn outer(u: &[Complex64], v: &[Complex64]) -> Result<Self> {
        if u.len() != v.len() {
            return Err(Error::DimensionMismatch { expected: u.len(), found: v.len() });
        }
        let dim = u.len();
        let mut data = Vec::with_capacity(dim * dim);
        for a in u {
            for b in v {
                data.push(a * b.conj());
            }
        }
        Ok(Matrix { dim, data })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.data[r * self.dim + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Complex64) {
        self.data[r * self.dim + c] = v;
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn kron(&self, other: &Matrix) -> Matrix {
        let d = self.dim * other.dim;
        let mut out = Matrix::zeros(d);
        for r1 in 0..self.dim {
            for c1 in 0..self.dim {
                let a = self.get(r1, c1);
                if a == ZERO {
                    continue;
                }
                for r2 in 0..other.dim {
                    for c2 in 0..other.dim {
                        out.set(r1 * other.dim + r2, c1 * other.dim + c2, a * other.get(r2, c2));
                    }
                }
            }
        }
        out
    }

    pub fn matmul(&self, other: &Matrix) -> Result<Matrix> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        let d = self.dim;
        let mut out = Matrix::zeros(d);
        for r in 0..d {
            for k in 0..d {
                let a = self.get(r, k);
                if a == ZERO {
                    continue;
                }
                for c in 0..d {
                    out.data[r * d + c] += a * other.get(k, c);
                }
            }
        }
        Ok(out)
    }

    pub fn apply(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: v.len() });
        }
        Ok((0..self.dim).map(|r| (0..self.dim).map(|c| self.get(r, c) * v[c]).sum()).collect())
    }

    pub fn adjoint(&self) -> Matrix {
        let d = self.dim;
        let mut out = Matrix::zeros(d);
        for r in 0..d {
            for c in 0..d {
                out.set(c, r, self.get(r, c).conj());
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn max_abs_diff(&self, other: &Matrix) -> f64 {
        if self.dim != other.dim {
            return f64::INFINITY;
        }
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.max_abs_diff(&self.adjoint()) <= tol
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.adjoint().matmul(self).map(|p| p.max_abs_diff(&Matrix::identity(self.dim)) <= tol).unwrap_or(false)
    }

    pub fn scale(&self, s: Complex64) -> Matrix {
        Matrix { dim: self.dim, data: self.data.iter().map(|x| x * s).collect() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum OpLabel {
    I,
    X,
    Y,
    Z,
    Custom,
}

/// A 2×2 complex matrix acting on one qubit.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Operator1Q {
    pub matrix: [[Complex64; 2]; 2],
    pub label: OpLabel,
}

impl Operator1Q {
    pub fn identity() -> Self {
        Operator1Q { matrix: [[ONE, ZERO], [ZERO, ONE]], label: OpLabel::I }
    }

    pub fn x() -> Self {
        Operator1Q { matrix: [[ZERO, ONE], [ONE, ZERO]], label: OpLabel::X }
    }

    pub fn y() -> Self {
        Operator1Q { matrix: [[ZERO, -I], [I, ZERO]], label: OpLabel::Y }
    }

    pub fn z() -> Self {
        Operator1Q { matrix: [[ONE, ZERO], [ZERO, -ONE]], label: OpLabel::Z }
    }

    /// `(X, Y, Z)`.
    pub fn paulis() -> [Operator1Q; 3] {
        [Self::x(), Self::y(), Self::z()]
    }

    pub fn custom(matrix: [[Complex64; 2]; 2]) -> Self {
        Operator1Q { matrix, label: OpLabel::Custom }
    }

    /// `|q><q|`.
    pub fn projector(q: &Qubit) -> Self {
        let a = q.amplitudes();
        Self::custom([[a[0] * a[0].conj(), a[0] * a[1].conj()], [a[1] * a[0].conj(), a[1] * a[1].conj()]])
    }

    /// Matrix product `self · other`.
    pub fn compose(&self, other: &Operator1Q) -> Operator1Q {
        let (a, b) = (&self.matrix, &other.matrix);
        let mut m = [[ZERO; 2]; 2];
        for (r, row) in m.iter_mut().enumerate() {
            for (c, v) in row.iter_mut().enumerate() {
                *v = a[r][0] * b[0][c] + a[r][1] * b[1][c];
            }
        }
        Self::custom(m)
    }

    pub fn adjoint(&self) -> Operator1Q {
        let m = &self.matrix;
        Operator1Q { matrix: [[m[0][0].conj(), m[1][0].conj()], [m[0][1].conj(), m[1][1].conj()]], label: self.label }
    }

    pub fn transpose(&self) -> Operator1Q {
        let m = &self.matrix;
        let label = if self.label == OpLabel::Y { OpLabel::Custom } else { self.label };
        Operator1Q { matrix: [[m[0][0], m[1][0]], [m[0][1], m[1][1]]], label }
    }

    pub fn scale(&self, s: Complex64) -> Operator1Q {
        let m = &self.matrix;
        Self::custom([[m[0][0] * s, m[0][1] * s], [m[1][0] * s, m[1][1] * s]])
    }

    pub fn apply(&self, v: [Complex64; 2]) -> [Complex64; 2] {
        let m = &self.matrix;
        [m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]]
    }

    pub fn to_matrix(&self) -> Matrix {
        let m = &self.matrix;
        Matrix { dim: 2, data: vec![m[0][0], m[0][1], m[1][0], m[1][1]] }
    }

    pub fn tensor(&self, other: &Operator1Q) -> Matrix {
        self.to_matrix().kron(&other.to_matrix())
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.to_matrix().is_unitary(tol)
    }

    /// Smallest `max |self - e^{iθ} other|` over global phases `θ`.
    pub fn distance_up_to_phase(&self, other: &Operator1Q) -> f64 {
        let mut inner = ZERO;
        for r in 0..2 {
            for c in 0..2 {
                inner += other.matrix[r][c].conj() * self.matrix[r][c];
            }
        }
        let phase = if inner.norm() < 1e-300 { ONE } else { inner / inner.norm() };
        let mut worst: f64 = 0.0;
        for r in 0..2 {
            for c in 0..2 {
                worst = worst.max((self.matrix[r][c] - phase * other.matrix[r][c]).norm());
            }
        }
        worst
    }
}

/// Hermitian, unit-trace density matrix on `n_qubits`.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    n_qubits: usize,
    matrix: Matrix,
}

impl DensityMatrix {
    pub fn from_pure(amps: &[Complex64], n_qubits: usize) -> Self {
        DensityMatrix { n_qubits, matrix: Matrix::outer(amps, amps).expect("same vector") }
    }

    /// Validates Hermiticity and unit trace within `tol`.
    pub fn new(n_qubits: usize, matrix: Matrix, tol: f64) -> Result<Self> {
        super::check_qubit_count(n_qubits)?;
        if matrix.dim() != 1 << n_qubits {
            return Err(Error::DimensionMismatch { expected: 1 << n_qubits, found: matrix.dim() });
        }
        if !matrix.is_hermitian(tol) {
            return Err(Error::InvalidArgument("density matrix is not Hermitian".into()));
        }
        let tr = matrix.trace();
        if (tr - ONE).norm() > tol {
            return Err(Error::InvalidArgument(format!("density matrix trace {tr} != 1")));
        }
        Ok(DensityMatrix { n_qubits, matrix })
    }

    pub(crate) fn from_parts(n_qubits: usize, matrix: Matrix) -> Self {
        DensityMatrix { n_qubits, matrix }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn trace(&self) -> Complex64 {
        self.matrix.trace()
    }

    /// `Tr[ρ A]`.
    pub fn expectation(&self, op: &Matrix) -> Result<Complex64> {
        if op.dim() != self.matrix.dim() {
            return Err(Error::DimensionMismatch { expected: self.matrix.dim(), found: op.dim() });
        }
        let d = op.dim();
        let mut acc = ZERO;
        for r in 0..d {
            for c in 0..d {
                acc += self.matrix.get(r, c) * op.get(c, r);
            }
        }
        Ok(acc)
    }

    /// Reduced state on `keep` (strictly increasing), tracing out the rest.
    pub fn partial_trace(&self, keep: &[usize]) -> Result<DensityMatrix> {
        let n = self.n_qubits;
        check_qubit_set(keep, n)?;
        let traced: Vec<usize> = (0..n).filter(|q| !keep.contains(q)).collect();
        let k = keep.len();
        let dk = 1usize << k;
        let dt = 1usize << traced.len();
        let embed = |kept: usize, tr: usize| -> usize {
            let mut idx = 0usize;
            for (j, &q) in keep.iter().enumerate() {
                idx |= ((kept >> (k - 1 - j)) & 1) << (n - 1 - q);
            }
            for (j, &q) in traced.iter().enumerate() {
                idx |= ((tr >> (traced.len() - 1 - j)) & 1) << (n - 1 - q);
            }
            idx
        };
        let mut out = Matrix::zeros(dk);
        for r in 0..dk {
            for c in 0..dk {
                let mut acc = ZERO;
                for t in 0..dt {
                    acc += self.matrix.get(embed(r, t), embed(c, t));
                }
                out.set(r, c, acc);
            }
        }
        Ok(DensityMatrix { n_qubits: k, matrix: out })
    }

    /// `(Tr ρX, Tr ρY, Tr ρZ)` of a one-qubit state.
    pub fn bloch_vector(&self) -> Result<[f64; 3]> {
        if self.n_qubits != 1 {
            return Err(Error::QubitCount { got: self.n_qubits, max: 1 });
        }
        let m = &self.matrix;
        let off = m.get(0, 1);
        Ok([2.0 * off.re, -2.0 * off.im, (m.get(0, 0) - m.get(1, 1)).re])
    }

    /// `g_ij = Tr[ρ σ_i ⊗ σ_j]` of a two-qubit state.
    pub fn correlation_tensor(&self) -> Result<[[f64; 3]; 3]> {
        if self.n_qubits != 2 {
            return Err(Error::QubitCount { got: self.n_qubits, max: 2 });
        }
        let p = Operator1Q::paulis();
        let mut g = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                g[i][j] = self.expectation(&p[i].tensor(&p[j]))?.re;
            }
        }
        Ok(g)
    }

    /// Largest entrywise deviation from `1/d`.
    pub fn distance_from_maximally_mixed(&self) -> f64 {
        let d = self.matrix.dim();
        self.matrix.max_abs_diff(&Matrix::identity(d).scale(Complex64::new(1.0 / d as f64, 0.0)))
    }
}

/// Basis index of an `n`-qubit register with `bits` (big-endian) placed on `qubits`.
pub(crate) fn place_bits(bits: usize, qubits: &[usize], n: usize) -> usize {
    let k = qubits.len();
    qubits.iter().enumerate().fold(0, |acc, (j, &q)| acc | (((bits >> (k - 1 - j)) & 1) << (n - 1 - q)))
}

/// Extracts the bits of `qubits` from `index` as a big-endian integer.
pub(crate) fn gather_bits(index: usize, qubits: &[usize], n: usize) -> usize {
    qubits.iter().fold(0, |acc, &q| (acc << 1) | bit_of(index, q, n))
}
