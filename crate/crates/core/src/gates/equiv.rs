use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{GateError, GateSequence};
use crate::CMatrix;

pub const DEFAULT_EQUIV_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EquivalenceReport {
    pub equivalent: bool,
    /// Unit factor `φ` minimising `‖A − φB‖`.
    pub phase: Complex64,
    /// Spectral norm `‖A − φB‖₂`.
    pub deviation: f64,
}

/// Compare two operators up to global phase.
pub fn matrix_equiv(a: &CMatrix, b: &CMatrix, tol: f64) -> Result<EquivalenceReport, GateError> {
    if a.shape() != b.shape() {
        return Err(GateError::DimensionMismatch {
            left: a.nrows(),
            right: b.nrows(),
        });
    }
    let overlap = (b.adjoint() * a).trace();
    let phase = if overlap.norm() > 1e-300 {
        overlap / overlap.norm()
    } else {
        Complex64::new(1.0, 0.0)
    };
    let diff = a - b * phase;
    let deviation = diff.singular_values().max();
    Ok(EquivalenceReport {
        equivalent: deviation <= tol,
        phase,
        deviation,
    })
}

/// Compare the operators of two sequences up to global phase.
pub fn unitary_equiv(a: &GateSequence, b: &GateSequence, tol: f64) -> Result<EquivalenceReport, GateError> {
    if a.n_qubits() != b.n_qubits() {
        return Err(GateError::DimensionMismatch {
            left: a.n_qubits(),
            right: b.n_qubits(),
        });
    }
    matrix_equiv(&a.unitary()?, &b.unitary()?, tol)
}
