use crate::gates::g_eta;
use crate::qsim::{Circuit, Direction, GateKind, Wire};

use super::SettingTuple;

/// Local basis change `U_x` so that measuring `Z` afterwards measures
/// `A_1 = Z`, `A_2 = Y`, `A_3 = X`. Time order.
pub fn basis_rotation(setting: u8) -> Vec<GateKind> {
    match setting {
        1 => vec![],
        2 => vec![GateKind::XPlus],
        3 => vec![GateKind::ZPlus, GateKind::XPlus],
        _ => panic!("A/C setting {setting} out of range"),
    }
}

/// The four-qubit test circuit for one `(x, η, z)`.
///
/// Both sources prepare `(|00⟩ − |11⟩)/√2` with `Y₋` and a CNOT controlled by
/// the outer qubit; `A` and `C` rotate into their measurement bases; `P`
/// receives `G_η`, then the Bell-basis readout `CNOT↓(P,Q)` followed by `Y₋`
/// on `P`.
pub fn witness_circuit(setting: &SettingTuple) -> Circuit {
    let mut c = Circuit::new()
        .gate(GateKind::YMinus, Wire::A)
        .gate(GateKind::YMinus, Wire::C)
        .gate2(GateKind::Cnot(Direction::Down), Wire::A, Wire::P)
        .gate2(GateKind::Cnot(Direction::Down), Wire::C, Wire::Q);
    for g in basis_rotation(setting.x) {
        c = c.gate(g, Wire::A);
    }
    for g in basis_rotation(setting.z) {
        c = c.gate(g, Wire::C);
    }
    for g in g_eta(setting.eta).single_qubit_kinds() {
        c = c.gate(g, Wire::P);
    }
    c.gate2(GateKind::Cnot(Direction::Down), Wire::P, Wire::Q)
        .gate(GateKind::YMinus, Wire::P)
}
