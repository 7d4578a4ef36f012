//! Dense statevector simulation of the four-qubit `A,P,Q,C` register.
//!
//! Amplitude index `i` encodes the computational basis state with `A` as the
//! most significant bit, so outcome strings read `a p q c`. All operations are
//! pure: states, circuits and distributions are plain values.

mod circuit;
mod distribution;
mod gate;
mod noise;
mod sampling;
mod state;

pub use circuit::{Circuit, GateOp, Targets, Wire};
pub use distribution::{exact_distribution, Distribution, Outcome};
pub use gate::{
    gate_matrix, identity2, involution_rotation, kron, pauli_x, pauli_y, pauli_z, sigma, swap,
    unitarity_deviation, Direction, GateKind, UNITARITY_TOL,
};
pub(crate) use gate::c;
pub use noise::{noisy_distribution, NoiseModel, ReadoutError, MAX_NOISY_TWO_QUBIT_GATES};
pub use sampling::{sample, Counts, SeedStream};
pub use state::StateVector;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QsimError {
    #[error("unknown gate kind `{0}`")]
    UnknownGate(String),
    #[error("rotation angle must be finite, got {0}")]
    NonFiniteAngle(f64),
    #[error("custom matrix must be 2x2 or 4x4, got {rows}x{cols}")]
    BadDimension { rows: usize, cols: usize },
    #[error("custom matrix is not unitary: |U†U - I| = {deviation:e}")]
    NotUnitary { deviation: f64 },
    #[error("gate targets must be distinct wires, got {0:?} twice")]
    DuplicateTarget(Wire),
    #[error("gate {gate} acts on {expected} qubit(s) but {given} target(s) were given")]
    ArityMismatch {
        gate: String,
        expected: usize,
        given: usize,
    },
    #[error("state is not normalized: sum |amp|^2 = {0}")]
    NotNormalized(f64),
    #[error("probability {name} = {value} outside [0, 1]")]
    BadProbability { name: &'static str, value: f64 },
    #[error("shots must be at least 1")]
    ZeroShots,
    #[error("noisy simulation supports at most {max} two-qubit gates, circuit has {found}")]
    TooManyNoisyGates { max: usize, found: usize },
    #[error("malformed outcome string `{0}` (expected 4 characters of 0/1)")]
    BadOutcome(String),
}
