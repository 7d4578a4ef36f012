use std::fmt;

use super::GateError;
use crate::qsim::{gate_matrix, identity2, kron, swap, GateKind};
use crate::CMatrix;

/// Local qubit indices; qubit 0 is the first tensor factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LocalTargets {
    One(usize),
    Two(usize, usize),
}

#[derive(Clone, Debug, PartialEq)]
pub struct SeqOp {
    pub kind: GateKind,
    pub targets: LocalTargets,
}

/// Gates on one or two local qubits, in time order.
///
/// The first element acts first, so the operator is `U_n ⋯ U_2 U_1`.
#[derive(Clone, Debug, PartialEq)]
pub struct GateSequence {
    n_qubits: usize,
    ops: Vec<SeqOp>,
}

impl GateSequence {
    pub fn new(n_qubits: usize) -> Result<Self, GateError> {
        if !(1..=2).contains(&n_qubits) {
            return Err(GateError::QubitCount(n_qubits));
        }
        Ok(Self { n_qubits, ops: Vec::new() })
    }

    /// A one-qubit sequence from kinds in time order.
    pub fn single<I: IntoIterator<Item = GateKind>>(kinds: I) -> Result<Self, GateError> {
        let mut s = Self::new(1)?;
        for k in kinds {
            s.push(k, LocalTargets::One(0))?;
        }
        Ok(s)
    }

    pub fn push(&mut self, kind: GateKind, targets: LocalTargets) -> Result<&mut Self, GateError> {
        let given = match targets {
            LocalTargets::One(q) => {
                self.check_target(q)?;
                1
            }
            LocalTargets::Two(a, b) => {
                self.check_target(a)?;
                self.check_target(b)?;
                if a == b {
                    return Err(GateError::DuplicateTarget(a));
                }
                2
            }
        };
        if kind.arity() != given {
            return Err(GateError::ArityMismatch {
                gate: kind.to_string(),
                expected: kind.arity(),
                given,
            });
        }
        gate_matrix(&kind)?;
        self.ops.push(SeqOp { kind, targets });
        Ok(self)
    }

    fn check_target(&self, q: usize) -> Result<(), GateError> {
        if q >= self.n_qubits {
            return Err(GateError::TargetOutOfRange {
                target: q,
                n_qubits: self.n_qubits,
            });
        }
        Ok(())
    }

    pub(crate) fn one(mut self, kind: GateKind, q: usize) -> Self {
        self.push(kind, LocalTargets::One(q)).expect("valid builder step");
        self
    }

    pub(crate) fn two(mut self, kind: GateKind, a: usize, b: usize) -> Self {
        self.push(kind, LocalTargets::Two(a, b)).expect("valid builder step");
        self
    }

    /// Append `other`, which must act on the same number of qubits.
    pub fn then(mut self, other: &GateSequence) -> Result<Self, GateError> {
        if other.n_qubits != self.n_qubits {
            return Err(GateError::DimensionMismatch {
                left: self.n_qubits,
                right: other.n_qubits,
            });
        }
        self.ops.extend(other.ops.iter().cloned());
        Ok(self)
    }

    /// Re-express every op on the given local qubits of a wider sequence.
    pub(crate) fn embedded(&self, n_qubits: usize, map: &[usize]) -> Result<Self, GateError> {
        let mut out = Self::new(n_qubits)?;
        for op in &self.ops {
            let targets = match op.targets {
                LocalTargets::One(q) => LocalTargets::One(map[q]),
                LocalTargets::Two(a, b) => LocalTargets::Two(map[a], map[b]),
            };
            out.push(op.kind.clone(), targets)?;
        }
        Ok(out)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn ops(&self) -> &[SeqOp] {
        &self.ops
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn is_native(&self) -> bool {
        self.ops.iter().all(|op| op.kind.is_native())
    }

    /// Kinds in time order; meaningful for one-qubit sequences.
    pub fn single_qubit_kinds(&self) -> Vec<GateKind> {
        debug_assert_eq!(self.n_qubits, 1);
        self.ops.iter().map(|op| op.kind.clone()).collect()
    }

    /// The operator `U_n ⋯ U_1`.
    pub fn unitary(&self) -> Result<CMatrix, GateError> {
        let dim = 1 << self.n_qubits;
        let mut u = CMatrix::identity(dim, dim);
        for op in &self.ops {
            let g = gate_matrix(&op.kind)?;
            let full = match (self.n_qubits, op.targets) {
                (1, _) => g,
                (_, LocalTargets::One(0)) => kron(&g, &identity2()),
                (_, LocalTargets::One(_)) => kron(&identity2(), &g),
                (_, LocalTargets::Two(0, _)) => g,
                (_, LocalTargets::Two(..)) => {
                    let s = swap();
                    &s * g * &s
                }
            };
            u = full * u;
        }
        Ok(u)
    }
}

impl fmt::Display for GateSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ops.is_empty() {
            return f.write_str("(empty)");
        }
        for (i, op) in self.ops.iter().enumerate() {
            if i > 0 {
                f.write_str(" ; ")?;
            }
            match op.targets {
                LocalTargets::One(q) => write!(f, "{}[{q}]", op.kind)?,
                LocalTargets::Two(a, b) => write!(f, "{}[{a},{b}]", op.kind)?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qsim::{pauli_x, pauli_z, Direction};

    #[test]
    fn product_is_reversed_time_order() {
        // X then Z in time is the operator Z·X
        let s = GateSequence::single([GateKind::X, GateKind::Z]).unwrap();
        assert_eq!(s.unitary().unwrap(), pauli_z() * pauli_x());
    }

    #[test]
    fn local_embedding() {
        let s = GateSequence::new(2).unwrap().one(GateKind::X, 1);
        assert_eq!(s.unitary().unwrap(), kron(&identity2(), &pauli_x()));
        let r = GateSequence::new(2)
            .unwrap()
            .two(GateKind::Cnot(Direction::Down), 1, 0);
        let up = gate_matrix(&GateKind::Cnot(Direction::Up)).unwrap();
        assert_eq!(r.unitary().unwrap(), up);
    }

    #[test]
    fn validation() {
        assert_eq!(GateSequence::new(3), Err(GateError::QubitCount(3)));
        let mut s = GateSequence::new(1).unwrap();
        assert!(matches!(
            s.push(GateKind::Ecr(Direction::Down), LocalTargets::Two(0, 1)),
            Err(GateError::TargetOutOfRange { .. })
        ));
        let mut s = GateSequence::new(2).unwrap();
        assert_eq!(
            s.push(GateKind::Ecr(Direction::Down), LocalTargets::Two(1, 1)).err(),
            Some(GateError::DuplicateTarget(1))
        );
        assert!(matches!(
            s.push(GateKind::X, LocalTargets::Two(0, 1)),
            Err(GateError::ArityMismatch { .. })
        ));
        assert!(matches!(
            s.push(GateKind::ZTheta(f64::NAN), LocalTargets::One(0)),
            Err(GateError::Qsim(_))
        ));
    }
}
