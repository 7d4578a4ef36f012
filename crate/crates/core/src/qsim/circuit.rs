use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{GateKind, QsimError, StateVector};

/// Register wires in significance order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Wire {
    A,
    P,
    Q,
    C,
}

impl Wire {
    pub const ALL: [Wire; 4] = [Wire::A, Wire::P, Wire::Q, Wire::C];

    /// Position in the `a p q c` string.
    pub fn index(self) -> usize {
        self as usize
    }

    /// Bit position inside an amplitude index (`A` is bit 3).
    pub fn bit(self) -> usize {
        3 - self.index()
    }
}

impl fmt::Display for Wire {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Wire::A => "A",
            Wire::P => "P",
            Wire::Q => "Q",
            Wire::C => "C",
        };
        f.write_str(s)
    }
}

impl FromStr for Wire {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "A" => Ok(Wire::A),
            "P" => Ok(Wire::P),
            "Q" => Ok(Wire::Q),
            "C" => Ok(Wire::C),
            other => Err(format!("unknown wire `{other}`")),
        }
    }
}

/// For two-qubit gates the first wire is the first tensor factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Targets {
    One(Wire),
    Two(Wire, Wire),
}

impl Targets {
    pub fn count(&self) -> usize {
        match self {
            Targets::One(_) => 1,
            Targets::Two(..) => 2,
        }
    }

    pub fn wires(&self) -> Vec<Wire> {
        match *self {
            Targets::One(w) => vec![w],
            Targets::Two(a, b) => vec![a, b],
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GateOp {
    pub kind: GateKind,
    pub targets: Targets,
}

impl GateOp {
    pub fn one(kind: GateKind, wire: Wire) -> Self {
        GateOp {
            kind,
            targets: Targets::One(wire),
        }
    }

    pub fn two(kind: GateKind, first: Wire, second: Wire) -> Self {
        GateOp {
            kind,
            targets: Targets::Two(first, second),
        }
    }

    pub(crate) fn validate(&self) -> Result<(), QsimError> {
        if let Targets::Two(a, b) = self.targets {
            if a == b {
                return Err(QsimError::DuplicateTarget(a));
            }
        }
        let expected = self.kind.arity();
        if expected != self.targets.count() {
            return Err(QsimError::ArityMismatch {
                gate: self.kind.to_string(),
                expected,
                given: self.targets.count(),
            });
        }
        Ok(())
    }
}

impl fmt::Display for GateOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.targets {
            Targets::One(w) => write!(f, "{} {}", self.kind, w),
            Targets::Two(a, b) => write!(f, "{} {}{}", self.kind, a, b),
        }
    }
}

/// Ordered gate applications, first element applied first.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Circuit {
    ops: Vec<GateOp>,
}

impl Circuit {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_ops(ops: Vec<GateOp>) -> Self {
        Circuit { ops }
    }

    pub fn push(&mut self, op: GateOp) -> &mut Self {
        self.ops.push(op);
        self
    }

    pub fn gate(mut self, kind: GateKind, wire: Wire) -> Self {
        self.ops.push(GateOp::one(kind, wire));
        self
    }

    pub fn gate2(mut self, kind: GateKind, first: Wire, second: Wire) -> Self {
        self.ops.push(GateOp::two(kind, first, second));
        self
    }

    pub fn extend(&mut self, other: &Circuit) {
        self.ops.extend(other.ops.iter().cloned());
    }

    pub fn ops(&self) -> &[GateOp] {
        &self.ops
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn two_qubit_count(&self) -> usize {
        self.ops.iter().filter(|op| op.kind.is_two_qubit()).count()
    }

    pub fn is_native(&self) -> bool {
        self.ops.iter().all(|op| op.kind.is_native())
    }

    /// Final state starting from `|0000⟩`.
    pub fn run(&self) -> Result<StateVector, QsimError> {
        self.run_from(StateVector::new())
    }

    pub fn run_from(&self, mut state: StateVector) -> Result<StateVector, QsimError> {
        for op in &self.ops {
            state = state.apply(op)?;
        }
        Ok(state)
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.ops.iter().map(|op| op.to_string()).collect();
        f.write_str(&parts.join("; "))
    }
}
