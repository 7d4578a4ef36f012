//! Gate decompositions, the six `G_η` pre-rotations, lowering into the native
//! basis `{X, X₊, Z_θ, ECR↓}` and equivalence up to global phase.

mod catalog;
mod equiv;
mod native;
mod permutation;
mod sequence;

use thiserror::Error;

pub use catalog::{identity_catalog, verify_identities, CatalogOptions, Identity, IdentityCheck};
pub use equiv::{matrix_equiv, unitary_equiv, EquivalenceReport, DEFAULT_EQUIV_TOL};
pub use native::{decompose, euler_zsx, lower, to_native};
pub use permutation::{g_eta, g_eta_alternate_form, g_eta_closed_form, PauliFrame};
pub use sequence::{GateSequence, LocalTargets, SeqOp};

use crate::qsim::QsimError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GateError {
    #[error("sequences act on 1 or 2 qubits, not {0}")]
    QubitCount(usize),
    #[error("target {target} out of range for {n_qubits} qubit(s)")]
    TargetOutOfRange { target: usize, n_qubits: usize },
    #[error("duplicate target {0}")]
    DuplicateTarget(usize),
    #[error("{gate} acts on {expected} qubit(s), {given} given")]
    ArityMismatch { gate: String, expected: usize, given: usize },
    #[error("cannot compare a {left}-qubit sequence with a {right}-qubit one")]
    DimensionMismatch { left: usize, right: usize },
    #[error("no decomposition registered for {0}")]
    Unsupported(String),
    #[error("cannot lower {0} into the native basis")]
    Undecomposable(String),
    #[error(transparent)]
    Qsim(#[from] QsimError),
}
