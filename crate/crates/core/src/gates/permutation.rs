use std::f64::consts::FRAC_1_SQRT_2;

use super::GateSequence;
use crate::qsim::{c, identity2, pauli_x, pauli_y, pauli_z, GateKind};
use crate::witness::Permutation;
use crate::CMatrix;

/// The pre-rotation on `P` selecting the measurement for `η`, in time order.
///
/// `G_231 = Z₊X₊`, `G_312 = Z X₊ Z₊`, `G_321 = Z₊X₊Z₋ = Y₊` as operator
/// products, so the sequences below list them right to left.
pub fn g_eta(eta: Permutation) -> GateSequence {
    use GateKind::*;
    let kinds = match eta.images() {
        [1, 2, 3] => vec![],
        [2, 3, 1] => vec![XPlus, ZPlus],
        [3, 1, 2] => vec![ZPlus, XPlus, Z],
        [1, 3, 2] => vec![ZPlus],
        [2, 1, 3] => vec![XPlus],
        [3, 2, 1] => vec![ZMinus, XPlus, ZPlus],
        _ => unreachable!("Permutation holds a bijection"),
    };
    GateSequence::single(kinds).expect("fixed one-qubit gates")
}

/// Which Pauli triple the closed forms are written in.
///
/// `Flipped` uses `X' = X, Y' = −Y, Z' = −Z`, which keeps the algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PauliFrame {
    Standard,
    Flipped,
}

fn paulis(frame: PauliFrame) -> (CMatrix, CMatrix, CMatrix) {
    match frame {
        PauliFrame::Standard => (pauli_x(), pauli_y(), pauli_z()),
        PauliFrame::Flipped => (pauli_x(), -pauli_y(), -pauli_z()),
    }
}

/// `G_η` as a polynomial in the Paulis.
pub fn g_eta_closed_form(eta: Permutation, frame: PauliFrame) -> CMatrix {
    let one = identity2();
    let (x, y, z) = paulis(frame);
    let i = c(0.0, 1.0);
    let r = c(FRAC_1_SQRT_2, 0.0);
    let h = c(0.5, 0.0);
    match (frame, eta.images()) {
        (_, [1, 2, 3]) => one,
        (PauliFrame::Standard, [2, 3, 1]) => (&one - (&z + &x + &y) * i) * h,
        (PauliFrame::Standard, [3, 1, 2]) => (&one + (&x + &y + &z) * i) * h,
        (PauliFrame::Standard, [1, 3, 2]) => (&one - &z * i) * r,
        (PauliFrame::Standard, [2, 1, 3]) => (&one - &x * i) * r,
        (PauliFrame::Standard, [3, 2, 1]) => (&one - &y * i) * r,
        (PauliFrame::Flipped, [2, 3, 1]) => &z * (&one - (&z + &y + &x) * i) * h,
        (PauliFrame::Flipped, [3, 1, 2]) => &y * (&one + (&x + &y + &z) * i) * h,
        (PauliFrame::Flipped, [1, 3, 2]) => &y * (&y - &x) * r,
        (PauliFrame::Flipped, [2, 1, 3]) => &y * (&y - &z) * r,
        (PauliFrame::Flipped, [3, 2, 1]) => &x * (&x - &z) * r,
        _ => unreachable!("Permutation holds a bijection"),
    }
}

/// The second spelling of the transpositions, e.g. `G_132 = X(X − Y)/√2`.
/// `None` for the even permutations.
pub fn g_eta_alternate_form(eta: Permutation) -> Option<CMatrix> {
    let (x, y, z) = paulis(PauliFrame::Standard);
    let r = c(FRAC_1_SQRT_2, 0.0);
    match eta.images() {
        [1, 3, 2] => Some(&x * (&x - &y) * r),
        [2, 1, 3] => Some(&y * (&y - &z) * r),
        [3, 2, 1] => Some(&z * (&z - &x) * r),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gates::matrix_equiv;

    #[test]
    fn identity_is_empty() {
        assert!(g_eta(Permutation::IDENTITY).is_empty());
    }

    #[test]
    fn closed_forms_in_both_frames() {
        for eta in Permutation::ALL {
            let u = g_eta(eta).unitary().unwrap();
            for frame in [PauliFrame::Standard, PauliFrame::Flipped] {
                let r = matrix_equiv(&u, &g_eta_closed_form(eta, frame), 1e-12).unwrap();
                assert!(r.equivalent, "{eta} {frame:?}: {}", r.deviation);
            }
            if let Some(alt) = g_eta_alternate_form(eta) {
                assert!(matrix_equiv(&u, &alt, 1e-12).unwrap().equivalent, "{eta}");
            }
        }
    }

    #[test]
    fn transposition_132_matches_literal() {
        let u = g_eta("132".parse().unwrap()).unitary().unwrap();
        let expected = (identity2() - pauli_z() * c(0.0, 1.0)) * c(FRAC_1_SQRT_2, 0.0);
        assert!((u - expected).norm() < 1e-15);
    }

    #[test]
    fn sequence_321_is_y_plus() {
        let u = g_eta("321".parse().unwrap()).unitary().unwrap();
        let y_plus = GateKind::YPlus.matrix().unwrap();
        assert!(matrix_equiv(&u, &y_plus, 1e-12).unwrap().equivalent);
    }
}
