use num_complex::Complex64;

use super::{gate_matrix, Distribution, GateOp, QsimError, Targets};
use crate::CMatrix;

pub const DIM: usize = 16;

/// Amplitudes of the `A,P,Q,C` register, `A` most significant.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StateVector {
    amps: [Complex64; DIM],
}

impl Default for StateVector {
    fn default() -> Self {
        Self::new()
    }
}

impl StateVector {
    /// `|0000⟩`.
    pub fn new() -> Self {
        let mut amps = [Complex64::new(0.0, 0.0); DIM];
        amps[0] = Complex64::new(1.0, 0.0);
        StateVector { amps }
    }

    /// Accepts amplitudes whose squared norm is 1 within `1e-10`.
    pub fn from_amplitudes(amps: [Complex64; DIM]) -> Result<Self, QsimError> {
        let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if (norm - 1.0).abs() > 1e-10 {
            return Err(QsimError::NotNormalized(norm));
        }
        Ok(StateVector { amps })
    }

    /// `|ψ_AP⟩ ⊗ |ψ_QC⟩` from two normalized two-qubit vectors.
    pub fn product(ap: &[Complex64; 4], qc: &[Complex64; 4]) -> Result<Self, QsimError> {
        let mut amps = [Complex64::new(0.0, 0.0); DIM];
        for (i, x) in ap.iter().enumerate() {
            for (j, y) in qc.iter().enumerate() {
                amps[4 * i + j] = x * y;
            }
        }
        Self::from_amplitudes(amps)
    }

    pub fn amplitudes(&self) -> &[Complex64; DIM] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Complex64 {
        self.amps
            .iter()
            .zip(other.amps.iter())
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Equal up to a global phase: `|⟨ψ|φ⟩| = 1` within `tol`.
    pub fn same_ray(&self, other: &StateVector, tol: f64) -> bool {
        (self.inner(other).norm() - 1.0).abs() <= tol
    }

    pub fn apply(&self, op: &GateOp) -> Result<StateVector, QsimError> {
        op.validate()?;
        let u = gate_matrix(&op.kind)?;
        Ok(self.apply_matrix(&u, op.targets))
    }

    /// Embeds `u` on the target wires. `u` must already match the target count.
    pub(crate) fn apply_matrix(&self, u: &CMatrix, targets: Targets) -> StateVector {
        let mut out = self.amps;
        match targets {
            Targets::One(w) => {
                let mask = 1usize << w.bit();
                for i in (0..DIM).filter(|i| i & mask == 0) {
                    let j = i | mask;
                    let (x0, x1) = (self.amps[i], self.amps[j]);
                    out[i] = u[(0, 0)] * x0 + u[(0, 1)] * x1;
                    out[j] = u[(1, 0)] * x0 + u[(1, 1)] * x1;
                }
            }
            Targets::Two(first, second) => {
                let m0 = 1usize << first.bit();
                let m1 = 1usize << second.bit();
                for base in (0..DIM).filter(|i| i & (m0 | m1) == 0) {
                    // local index 2*b_first + b_second
                    let idx = [base, base | m1, base | m0, base | m0 | m1];
                    let x = idx.map(|k| self.amps[k]);
                    for (r, &k) in idx.iter().enumerate() {
                        out[k] = (0..4).map(|col| u[(r, col)] * x[col]).sum();
                    }
                }
            }
        }
        StateVector { amps: out }
    }

    pub fn probabilities(&self) -> Distribution {
        Distribution::from_probabilities_unchecked(self.amps.map(|a| a.norm_sqr()))
    }
}

#[cfg(test)]
mod tests {
    use std::f64::consts::FRAC_1_SQRT_2;

    use super::*;
    use crate::qsim::{Direction, GateKind, Wire};

    fn basis(index: usize) -> StateVector {
        let mut amps = [Complex64::new(0.0, 0.0); DIM];
        amps[index] = Complex64::new(1.0, 0.0);
        StateVector::from_amplitudes(amps).unwrap()
    }

    #[test]
    fn initial_state_is_all_zero() {
        let s = StateVector::new();
        assert_eq!(s.amplitudes()[0], Complex64::new(1.0, 0.0));
        assert!(s.amplitudes()[1..].iter().all(|a| a.norm() == 0.0));
    }

    #[test]
    fn y_minus_on_zero() {
        let s = StateVector::new()
            .apply(&GateOp::one(GateKind::YMinus, Wire::A))
            .unwrap();
        // A is bit 3: index 0 = |0000>, index 8 = |1000>
        let a = s.amplitudes();
        assert!((a[0] - Complex64::new(FRAC_1_SQRT_2, 0.0)).norm() < 1e-15);
        assert!((a[8] - Complex64::new(-FRAC_1_SQRT_2, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn bell_pair_from_cnot() {
        let s = StateVector::new()
            .apply(&GateOp::one(GateKind::YMinus, Wire::A))
            .unwrap()
            .apply(&GateOp::two(GateKind::Cnot(Direction::Down), Wire::A, Wire::P))
            .unwrap();
        let mut expected = [Complex64::new(0.0, 0.0); DIM];
        expected[0b0000] = Complex64::new(FRAC_1_SQRT_2, 0.0);
        expected[0b1100] = Complex64::new(-FRAC_1_SQRT_2, 0.0);
        let expected = StateVector::from_amplitudes(expected).unwrap();
        assert!(s.same_ray(&expected, 1e-14));
        assert!((s.inner(&expected).re - 1.0).abs() < 1e-14);
    }

    #[test]
    fn identity_leaves_state() {
        let s = basis(0b1011);
        for w in Wire::ALL {
            assert_eq!(s.apply(&GateOp::one(GateKind::I, w)).unwrap(), s);
        }
    }

    #[test]
    fn first_target_is_first_factor() {
        // CNOT↓ on (C, Q): control C. |0001> -> |0011>
        let s = basis(0b0001)
            .apply(&GateOp::two(GateKind::Cnot(Direction::Down), Wire::C, Wire::Q))
            .unwrap();
        assert!((s.amplitudes()[0b0011].re - 1.0).abs() < 1e-15);
        // CNOT↑ on (Q, C) is the same gate
        let t = basis(0b0001)
            .apply(&GateOp::two(GateKind::Cnot(Direction::Up), Wire::Q, Wire::C))
            .unwrap();
        assert_eq!(s, t);
    }

    #[test]
    fn duplicate_targets_rejected() {
        let err = StateVector::new()
            .apply(&GateOp::two(GateKind::Ecr(Direction::Down), Wire::P, Wire::P))
            .unwrap_err();
        assert_eq!(err, QsimError::DuplicateTarget(Wire::P));
    }

    #[test]
    fn arity_mismatch_rejected() {
        let op = GateOp {
            kind: GateKind::X,
            targets: Targets::Two(Wire::A, Wire::P),
        };
        assert!(matches!(
            StateVector::new().apply(&op),
            Err(QsimError::ArityMismatch { .. })
        ));
    }

    #[test]
    fn unnormalized_amplitudes_rejected() {
        let amps = [Complex64::new(0.5, 0.0); DIM];
        assert!(matches!(
            StateVector::from_amplitudes(amps),
            Err(QsimError::NotNormalized(_))
        ));
    }
}
