use serde::{Deserialize, Serialize};

use super::{gate_matrix, kron, sigma, Circuit, Distribution, QsimError, StateVector, Targets, Wire};
use crate::CMatrix;

/// Enumeration cost grows as 16^k in the number of noisy gates.
pub const MAX_NOISY_TWO_QUBIT_GATES: usize = 5;

/// Per-wire assignment error.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ReadoutError {
    /// P(read 1 | state 0)
    pub p01: f64,
    /// P(read 0 | state 1)
    pub p10: f64,
}

impl ReadoutError {
    pub fn symmetric(p: f64) -> Self {
        ReadoutError { p01: p, p10: p }
    }

    pub fn is_zero(&self) -> bool {
        self.p01 == 0.0 && self.p10 == 0.0
    }
}

/// Stand-in device noise: a two-qubit depolarizing channel after every
/// two-qubit gate and classical bit flips at readout.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct NoiseModel {
    pub two_qubit_depolarizing: f64,
    /// Indexed by wire `A, P, Q, C`.
    pub readout: [ReadoutError; 4],
}

impl NoiseModel {
    pub fn ideal() -> Self {
        Self::default()
    }

    pub fn depolarizing(p: f64) -> Self {
        NoiseModel {
            two_qubit_depolarizing: p,
            ..Self::default()
        }
    }

    pub fn with_readout(mut self, readout: ReadoutError) -> Self {
        self.readout = [readout; 4];
        self
    }

    pub fn is_ideal(&self) -> bool {
        self.two_qubit_depolarizing == 0.0 && self.readout.iter().all(ReadoutError::is_zero)
    }

    pub fn validate(&self) -> Result<(), QsimError> {
        let check = |name: &'static str, value: f64| {
            if (0.0..=1.0).contains(&value) {
                Ok(())
            } else {
                Err(QsimError::BadProbability { name, value })
            }
        };
        check("two-qubit depolarizing", self.two_qubit_depolarizing)?;
        for r in &self.readout {
            check("readout p(0->1)", r.p01)?;
            check("readout p(1->0)", r.p10)?;
        }
        Ok(())
    }
}

/// Outcome distribution under `noise`. The ideal model returns
/// `exact_distribution` untouched.
///
/// The depolarizing channel `ρ ↦ (1−p)ρ + p·Tr₂(ρ)⊗I/4` equals a Pauli mixture
/// with weight `1 − 15p/16` on the identity and `p/16` on each other two-qubit
/// Pauli; each branch is a pure-state run and the branches are summed.
pub fn noisy_distribution(circuit: &Circuit, noise: &NoiseModel) -> Result<Distribution, QsimError> {
    noise.validate()?;
    let mut probs = if noise.two_qubit_depolarizing == 0.0 {
        *circuit.run()?.probabilities().probabilities()
    } else {
        depolarized_probabilities(circuit, noise.two_qubit_depolarizing)?
    };
    for wire in Wire::ALL {
        let r = noise.readout[wire.index()];
        if !r.is_zero() {
            apply_readout(&mut probs, wire, r);
        }
    }
    Ok(Distribution::from_probabilities_unchecked(probs))
}

fn depolarized_probabilities(circuit: &Circuit, p: f64) -> Result<[f64; 16], QsimError> {
    let found = circuit.two_qubit_count();
    if found > MAX_NOISY_TWO_QUBIT_GATES {
        return Err(QsimError::TooManyNoisyGates {
            max: MAX_NOISY_TWO_QUBIT_GATES,
            found,
        });
    }
    let mut steps = Vec::with_capacity(circuit.len());
    for op in circuit.ops() {
        op.validate()?;
        steps.push((gate_matrix(&op.kind)?, op.targets));
    }
    let paulis: Vec<CMatrix> = (0..16).map(|k| kron(&sigma(k / 4), &sigma(k % 4))).collect();
    let branch = Branching {
        steps: &steps,
        paulis: &paulis,
        identity_weight: 1.0 - 15.0 * p / 16.0,
        error_weight: p / 16.0,
    };
    let mut acc = [0.0; 16];
    branch.descend(StateVector::new(), 0, 1.0, &mut acc);
    Ok(acc)
}

struct Branching<'a> {
    steps: &'a [(CMatrix, Targets)],
    paulis: &'a [CMatrix],
    identity_weight: f64,
    error_weight: f64,
}

impl Branching<'_> {
    fn descend(&self, mut state: StateVector, from: usize, weight: f64, acc: &mut [f64; 16]) {
        for (pos, (u, targets)) in self.steps.iter().enumerate().skip(from) {
            state = state.apply_matrix(u, *targets);
            if let Targets::Two(..) = targets {
                for pauli in self.paulis.iter().skip(1) {
                    let w = weight * self.error_weight;
                    if w > 0.0 {
                        self.descend(state.apply_matrix(pauli, *targets), pos + 1, w, acc);
                    }
                }
                let w = weight * self.identity_weight;
                if w > 0.0 {
                    self.descend(state, pos + 1, w, acc);
                }
                return;
            }
        }
        for (slot, amp) in acc.iter_mut().zip(state.amplitudes()) {
            *slot += weight * amp.norm_sqr();
        }
    }
}

fn apply_readout(probs: &mut [f64; 16], wire: Wire, r: ReadoutError) {
    let mask = 1usize << wire.bit();
    for i0 in (0..16).filter(|i| i & mask == 0) {
        let i1 = i0 | mask;
        let (p0, p1) = (probs[i0], probs[i1]);
        probs[i0] = (1.0 - r.p01) * p0 + r.p10 * p1;
        probs[i1] = r.p01 * p0 + (1.0 - r.p10) * p1;
    }
}
