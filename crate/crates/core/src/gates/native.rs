use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use super::{GateError, GateSequence, LocalTargets};
use crate::qsim::{Circuit, Direction, GateKind, GateOp, Targets};
use crate::CMatrix;

const ECR: GateKind = GateKind::Ecr(Direction::Down);

fn seq(n: usize) -> GateSequence {
    GateSequence::new(n).expect("1 or 2 qubits")
}

/// Reference form of each composite gate, in time order, before the
/// one-qubit pieces are lowered.
fn rule(kind: &GateKind) -> Option<GateSequence> {
    use GateKind::*;
    let s = match kind {
        // H = Z₊X₊Z₊
        H => seq(1).one(ZPlus, 0).one(XPlus, 0).one(ZPlus, 0),
        // Y₊ = Z₊X₊Z₋, Y₋ = Z₋X₊Z₊
        YPlus => seq(1).one(ZMinus, 0).one(XPlus, 0).one(ZPlus, 0),
        YMinus => seq(1).one(ZPlus, 0).one(XPlus, 0).one(ZMinus, 0),
        // CNOT↓ = (Z₊ ⊗ I) ECR↓ (X ⊗ X₊)
        Cnot(Direction::Down) => seq(2).one(X, 0).one(XPlus, 1).two(ECR, 0, 1).one(ZPlus, 0),
        // CNOT↑ = (H ⊗ H) ECR↓ (X₊ ⊗ X₊)(Z₋ ⊗ H)
        Cnot(Direction::Up) => seq(2)
            .one(ZMinus, 0)
            .one(H, 1)
            .one(XPlus, 0)
            .one(XPlus, 1)
            .two(ECR, 0, 1)
            .one(H, 0)
            .one(H, 1),
        // ECR↑ = (H ⊗ H) ECR↓ (Y₊ ⊗ Y₋)
        Ecr(Direction::Up) => seq(2)
            .one(YPlus, 0)
            .one(YMinus, 1)
            .two(ECR, 0, 1)
            .one(H, 0)
            .one(H, 1),
        // (ZX)_θ = (I ⊗ H) CNOT (I ⊗ Z_θ) CNOT (I ⊗ H)
        CrPlus(d) | CrMinus(d) => {
            let theta = if matches!(kind, CrPlus(_)) { FRAC_PI_4 } else { -FRAC_PI_4 };
            let (ctl, tgt) = match d {
                Direction::Down => (0, 1),
                Direction::Up => (1, 0),
            };
            seq(2)
                .one(H, tgt)
                .two(Cnot(Direction::Down), ctl, tgt)
                .one(ZTheta(theta), tgt)
                .two(Cnot(Direction::Down), ctl, tgt)
                .one(H, tgt)
        }
        _ => return None,
    };
    Some(s)
}

/// ZSX Euler angles: `U ∝ Z(φ+π) X₊ Z(θ+π) X₊ Z(λ)` for `U ∝ Z(φ) Y(θ) Z(λ)`.
pub fn euler_zsx(u: &CMatrix) -> Result<GateSequence, GateError> {
    if u.shape() != (2, 2) {
        return Err(GateError::Undecomposable(format!("U{}x{}", u.nrows(), u.ncols())));
    }
    let det = u[(0, 0)] * u[(1, 1)] - u[(0, 1)] * u[(1, 0)];
    let v = u / det.sqrt();
    let (a, b) = (v[(0, 0)], v[(1, 0)]);
    let theta = 2.0 * b.norm().atan2(a.norm());
    let sum = if a.norm() > 1e-14 { -2.0 * a.arg() } else { 0.0 };
    let diff = if b.norm() > 1e-14 { 2.0 * b.arg() } else { 0.0 };
    let phi = (sum + diff) / 2.0;
    let lambda = (sum - diff) / 2.0;
    Ok(seq(1)
        .one(GateKind::ZTheta(lambda), 0)
        .one(GateKind::XPlus, 0)
        .one(GateKind::ZTheta(theta + PI), 0)
        .one(GateKind::XPlus, 0)
        .one(GateKind::ZTheta(phi + PI), 0))
}

/// One gate over the native basis, on local qubits `0..arity`.
pub fn lower(kind: &GateKind) -> Result<GateSequence, GateError> {
    use GateKind::*;
    if kind.is_native() {
        let s = seq(kind.arity());
        return Ok(match kind.arity() {
            1 => s.one(kind.clone(), 0),
            _ => s.two(kind.clone(), 0, 1),
        });
    }
    let direct = match kind {
        I => Some(seq(1)),
        ZPlus => Some(seq(1).one(ZTheta(FRAC_PI_2), 0)),
        ZMinus => Some(seq(1).one(ZTheta(-FRAC_PI_2), 0)),
        Z => Some(seq(1).one(ZTheta(PI), 0)),
        // X·Z = −iY
        Y => Some(seq(1).one(ZTheta(PI), 0).one(X, 0)),
        Custom(m) if m.nrows() == 2 => Some(euler_zsx(m)?),
        Custom(m) => return Err(GateError::Undecomposable(format!("U{}x{}", m.nrows(), m.ncols()))),
        _ => None,
    };
    if let Some(s) = direct {
        return Ok(s);
    }
    let reference = rule(kind).ok_or_else(|| GateError::Unsupported(kind.to_string()))?;
    let mut out = seq(reference.n_qubits());
    for op in reference.ops() {
        let (piece, map) = match op.targets {
            LocalTargets::One(q) => (lower(&op.kind)?, vec![q]),
            LocalTargets::Two(a, b) => (lower(&op.kind)?, vec![a, b]),
        };
        out = out.then(&piece.embedded(reference.n_qubits(), &map)?)?;
    }
    Ok(out)
}

/// Native form of the gates with reference decompositions.
pub fn decompose(kind: &GateKind) -> Result<GateSequence, GateError> {
    use GateKind::*;
    match kind {
        Cnot(_) | Ecr(Direction::Up) | H | YPlus | YMinus | CrPlus(_) | CrMinus(_) => lower(kind),
        _ => Err(GateError::Unsupported(kind.to_string())),
    }
}

/// Rewrite a circuit over `{X, X₊, Z_θ, ECR↓}`. Native ops are kept as is.
pub fn to_native(circuit: &Circuit) -> Result<Circuit, GateError> {
    let mut out = Circuit::new();
    for op in circuit.ops() {
        op.validate()?;
        if op.kind.is_native() {
            out.push(op.clone());
            continue;
        }
        let wires = op.targets.wires();
        for piece in lower(&op.kind)?.ops() {
            let targets = match piece.targets {
                LocalTargets::One(q) => Targets::One(wires[q]),
                LocalTargets::Two(a, b) => Targets::Two(wires[a], wires[b]),
            };
            out.push(GateOp {
                kind: piece.kind.clone(),
                targets,
            });
        }
    }
    Ok(out)
}
