//! Channel action of a Kraus body in the matrix model.

use super::matrix::DenseMatrix;
use crate::error::{Error, Result};

/// Accepted departure from Hermiticity for input states.
pub const STATE_HERMITIAN_TOL: f64 = 1e-9;

/// Splits a body `f : A → U ⊗ B` (a `(u·b) × a` matrix, ancilla first) into
/// its `u` blocks `M_i`, each `b × a`.
pub fn kraus_blocks(f: &DenseMatrix, u: usize) -> Result<Vec<DenseMatrix>> {
    if u == 0 || !f.rows().is_multiple_of(u) {
        return Err(Error::ShapeMismatch(format!(
            "{} rows cannot be split into {u} ancilla blocks",
            f.rows()
        )));
    }
    let b = f.rows() / u;
    (0..u).map(|i| f.row_block(i * b, b)).collect()
}

/// `Λ(ρ) = Tr_U(f ρ f†)`, equivalently `Σ_i M_i ρ M_i†`.
pub fn apply_channel(f: &DenseMatrix, u: usize, rho: &DenseMatrix) -> Result<DenseMatrix> {
    if !rho.is_square() || rho.rows() != f.cols() {
        return Err(Error::ShapeMismatch(format!(
            "state is {}×{}, channel input dimension is {}",
            rho.rows(),
            rho.cols(),
            f.cols()
        )));
    }
    if u == 0 || !f.rows().is_multiple_of(u) {
        return Err(Error::ShapeMismatch(format!(
            "{} output rows are not a multiple of the ancilla dimension {u}",
            f.rows()
        )));
    }
    let dev = rho.hermitian_deviation()?;
    if dev > STATE_HERMITIAN_TOL {
        return Err(Error::NotHermitian(dev));
    }
    let joint = f.matmul(rho)?.matmul(&f.dagger())?;
    joint.partial_trace_first(u, f.rows() / u)
}
