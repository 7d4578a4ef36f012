use std::f64::consts::FRAC_1_SQRT_2;

use crate::qsim::{c, identity2, pauli_x, pauli_y, pauli_z, sigma};
use crate::witness::{sign, witness_value, CorrelationTerm, Permutation, SettingTuple, WitnessResult};
use crate::CMatrix;

/// `R_η`: `I`, the `2π/3` rotation about the diagonal and its square for the
/// even permutations, and `(Z − Y)/√2`, `(Y − X)/√2`, `(X − Z)/√2` for
/// `132`, `213`, `321`.
pub fn rotation(eta: Permutation) -> CMatrix {
    let (x, y, z) = (pauli_x(), pauli_y(), pauli_z());
    let r = c(FRAC_1_SQRT_2, 0.0);
    let cyclic = (identity2() - (&x + &y + &z) * c(0.0, 1.0)) * c(0.5, 0.0);
    match eta.images() {
        [1, 2, 3] => identity2(),
        [2, 3, 1] => cyclic,
        [3, 1, 2] => &cyclic * &cyclic,
        [1, 3, 2] => (z - y) * r,
        [2, 1, 3] => (y - x) * r,
        [3, 2, 1] => (x - z) * r,
        _ => unreachable!("Permutation holds a bijection"),
    }
}

/// `⟨A_x B_{bη} C_z⟩ = −Tr(R_η† σ_x R_η σ_b σ_z σ_b)/8`.
pub fn analytic_correlation(eta: Permutation, z: u8, b: u8) -> f64 {
    let r = rotation(eta);
    let x = eta.apply(z) as usize;
    let sb = sigma(b as usize);
    let m = r.adjoint() * sigma(x) * &r * &sb * sigma(z as usize) * &sb;
    -m.trace().re / 8.0
}

/// All 72 terms of the maximal complex strategy.
pub fn complex_construction() -> WitnessResult {
    let mut terms = Vec::with_capacity(72);
    for eta in Permutation::ALL {
        for z in 1..=3u8 {
            let setting = SettingTuple::new(eta.apply(z), eta, z).expect("valid setting");
            for b in 0..4u8 {
                terms.push(CorrelationTerm {
                    setting,
                    b,
                    signed_value: f64::from(sign(eta, z, b)) * analytic_correlation(eta, z, b),
                });
            }
        }
    }
    witness_value(&terms).expect("complete term set")
}
