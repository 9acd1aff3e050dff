//! Dense complex linear algebra for small qubit registers.
//!
//! Basis ordering is big-endian: qubit 0 is the leftmost ket symbol, so in
//! `|q0 q1 q2>` qubit 0 owns the most significant bit of the amplitude index.

mod matrix;
mod qubit;
mod state;

pub(crate) use matrix::place_bits;
pub use matrix::{DensityMatrix, Matrix, OpLabel, Operator1Q};
pub use qubit::Qubit;
pub use state::{contract_factors, fidelity, overlap_product, tensor, ProductState, PureState};

/// Hard cap on register size.
pub const MAX_QUBITS: usize = 10;

/// Bit of `qubit` inside a basis index of an `n`-qubit register.
#[inline]
pub(crate) fn bit_of(index: usize, qubit: usize, n: usize) -> usize {
    (index >> (n - 1 - qubit)) & 1
}

pub(crate) fn check_qubit_count(n: usize) -> crate::Result<()> {
    if n == 0 || n > MAX_QUBITS {
        return Err(crate::Error::QubitCount { got: n, max: MAX_QUBITS });
    }
    Ok(())
}

/// Validates a strictly increasing, in-range qubit list.
pub(crate) fn check_qubit_set(qubits: &[usize], n: usize) -> crate::Result<()> {
    if qubits.is_empty() {
        return Err(crate::Error::InvalidQubitSet("empty".into()));
    }
    for w in qubits.windows(2) {
        if w[0] >= w[1] {
            return Err(crate::Error::InvalidQubitSet(format!("indices must be strictly increasing: {qubits:?}")));
        }
    }
    if let Some(&last) = qubits.last() {
        if last >= n {
            return Err(crate::Error::QubitOutOfRange { index: last, n_qubits: n });
        }
    }
    Ok(())
}
