use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{
    decompose, g_eta, g_eta_alternate_form, g_eta_closed_form, matrix_equiv, GateError,
    GateSequence, PauliFrame, DEFAULT_EQUIV_TOL,
};
use crate::qsim::{c, kron, pauli_x, pauli_y, Direction, GateKind};
use crate::witness::Permutation;
use crate::CMatrix;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CatalogOptions {
    /// Negative control: use `CR⁺` where `CR⁻` belongs.
    pub flip_cr_minus: bool,
}

/// A claimed equality `lhs ≅ rhs` up to global phase.
#[derive(Clone, Debug, PartialEq)]
pub struct Identity {
    pub name: String,
    pub lhs: GateSequence,
    pub rhs: CMatrix,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub name: String,
    pub passed: bool,
    pub deviation: f64,
    pub phase: Complex64,
}

fn seq(n: usize) -> GateSequence {
    GateSequence::new(n).expect("1 or 2 qubits")
}

fn op(kind: GateKind) -> CMatrix {
    kind.matrix().expect("built-in gate")
}

fn sequence(name: &str, lhs: GateSequence, rhs: &GateSequence) -> Identity {
    Identity {
        name: name.to_string(),
        lhs,
        rhs: rhs.unitary().expect("built-in gates"),
    }
}

/// Every decomposition used by the transpiler and every `G_η` closed form.
pub fn identity_catalog(opts: CatalogOptions) -> Vec<Identity> {
    use GateKind::*;
    let ecr = Ecr(Direction::Down);
    let cr_minus = if opts.flip_cr_minus {
        CrPlus(Direction::Down)
    } else {
        CrMinus(Direction::Down)
    };
    let ecr_seq = seq(2).two(ecr.clone(), 0, 1);
    let mut out = vec![
        sequence(
            "ECR↓ = CR⁻ (X⊗I) CR⁺",
            seq(2).two(CrPlus(Direction::Down), 0, 1).one(X, 0).two(cr_minus, 0, 1),
            &ecr_seq,
        ),
        Identity {
            name: "ECR↓ = (X⊗I − Y⊗X)/√2".into(),
            lhs: ecr_seq.clone(),
            rhs: (kron(&pauli_x(), &CMatrix::identity(2, 2)) - kron(&pauli_y(), &pauli_x()))
                * c(FRAC_1_SQRT_2, 0.0),
        },
        sequence("ECR↓ ECR↓ = I⊗I", seq(2).two(ecr.clone(), 0, 1).two(ecr.clone(), 0, 1), &seq(2)),
        sequence(
            "ECR↑ = (H⊗H) ECR↓ (Y₊⊗Y₋)",
            seq(2).one(YPlus, 0).one(YMinus, 1).two(ecr.clone(), 0, 1).one(H, 0).one(H, 1),
            &seq(2).two(Ecr(Direction::Up), 0, 1),
        ),
        sequence(
            "CNOT↓ = (Z₊⊗I) ECR↓ (X⊗X₊)",
            seq(2).one(X, 0).one(XPlus, 1).two(ecr.clone(), 0, 1).one(ZPlus, 0),
            &seq(2).two(Cnot(Direction::Down), 0, 1),
        ),
        sequence(
            "CNOT↑ = (H⊗H) CNOT↓ (H⊗H)",
            seq(2).one(H, 0).one(H, 1).two(Cnot(Direction::Down), 0, 1).one(H, 0).one(H, 1),
            &seq(2).two(Cnot(Direction::Up), 0, 1),
        ),
        sequence(
            "CNOT↑ = (H⊗H) ECR↓ (X₊⊗X₊)(Z₋⊗H)",
            seq(2)
                .one(ZMinus, 0)
                .one(H, 1)
                .one(XPlus, 0)
                .one(XPlus, 1)
                .two(ecr, 0, 1)
                .one(H, 0)
                .one(H, 1),
            &seq(2).two(Cnot(Direction::Up), 0, 1),
        ),
        Identity {
            name: "H = Z₊X₊Z₊".into(),
            lhs: seq(1).one(ZPlus, 0).one(XPlus, 0).one(ZPlus, 0),
            rhs: op(H),
        },
        Identity {
            name: "Y₊ = Z₊X₊Z₋".into(),
            lhs: seq(1).one(ZMinus, 0).one(XPlus, 0).one(ZPlus, 0),
            rhs: op(YPlus),
        },
        Identity {
            name: "Y₋ = Z₋X₊Z₊".into(),
            lhs: seq(1).one(ZPlus, 0).one(XPlus, 0).one(ZMinus, 0),
            rhs: op(YMinus),
        },
        Identity {
            name: "Y₊ = HZ".into(),
            lhs: seq(1).one(Z, 0).one(H, 0),
            rhs: op(YPlus),
        },
        Identity {
            name: "Y₋ = ZH".into(),
            lhs: seq(1).one(H, 0).one(Z, 0),
            rhs: op(YMinus),
        },
    ];
    for kind in [
        Cnot(Direction::Down),
        Cnot(Direction::Up),
        Ecr(Direction::Up),
        H,
        YPlus,
        YMinus,
    ] {
        out.push(Identity {
            name: format!("native {kind}"),
            lhs: decompose(&kind).expect("registered decomposition"),
            rhs: op(kind),
        });
    }
    for eta in Permutation::ALL {
        let g = g_eta(eta);
        out.push(Identity {
            name: format!("G_{eta} closed form"),
            lhs: g.clone(),
            rhs: g_eta_closed_form(eta, PauliFrame::Standard),
        });
        out.push(Identity {
            name: format!("G_{eta} flipped-frame form"),
            lhs: g.clone(),
            rhs: g_eta_closed_form(eta, PauliFrame::Flipped),
        });
        if let Some(alt) = g_eta_alternate_form(eta) {
            out.push(Identity {
                name: format!("G_{eta} alternate form"),
                lhs: g,
                rhs: alt,
            });
        }
    }
    out
}

/// Check every catalog entry at [`DEFAULT_EQUIV_TOL`].
pub fn verify_identities(opts: CatalogOptions) -> Result<Vec<IdentityCheck>, GateError> {
    identity_catalog(opts)
        .into_iter()
        .map(|id| {
            let r = matrix_equiv(&id.lhs.unitary()?, &id.rhs, DEFAULT_EQUIV_TOL)?;
            Ok(IdentityCheck {
                name: id.name,
                passed: r.equivalent,
                deviation: r.deviation,
                phase: r.phase,
            })
        })
        .collect()
}
