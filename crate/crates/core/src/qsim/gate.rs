use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use super::QsimError;
use crate::CMatrix;

/// Matrices built here are unitary to machine precision; user matrices get a
/// looser allowance.
pub const UNITARITY_TOL: f64 = 1e-10;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I_UNIT: Complex64 = Complex64::new(0.0, 1.0);

/// Direction of a two-qubit gate.
///
/// `Down` acts with the first listed qubit as the "upper" one (control for
/// CNOT). The two are related by `⟨a'b'|G↑|ab⟩ = ⟨b'a'|G↓|ba⟩`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Down,
    Up,
}

impl Direction {
    fn arrow(self) -> &'static str {
        match self {
            Direction::Down => "↓",
            Direction::Up => "↑",
        }
    }
}

/// Every gate the simulator understands.
///
/// `V₊`/`V₋` follow `V_± = exp(∓iπV/4)`; `Z_θ = exp(−iθZ/2)`.
#[derive(Clone, Debug, PartialEq)]
pub enum GateKind {
    I,
    X,
    Y,
    Z,
    XPlus,
    ZPlus,
    ZMinus,
    YPlus,
    YMinus,
    ZTheta(f64),
    H,
    Cnot(Direction),
    Ecr(Direction),
    /// `CR⁺ = (ZX)_{π/4} = exp(−iπ(Z⊗X)/8)`
    CrPlus(Direction),
    /// `CR⁻ = (ZX)_{−π/4} = exp(+iπ(Z⊗X)/8)`
    CrMinus(Direction),
    Custom(CMatrix),
}

impl GateKind {
    /// Number of qubits the gate acts on.
    pub fn arity(&self) -> usize {
        match self {
            GateKind::Cnot(_) | GateKind::Ecr(_) | GateKind::CrPlus(_) | GateKind::CrMinus(_) => 2,
            GateKind::Custom(m) if m.nrows() == 4 => 2,
            _ => 1,
        }
    }

    /// Members of the native basis `{X, X₊, Z_θ, ECR↓}`.
    pub fn is_native(&self) -> bool {
        matches!(
            self,
            GateKind::X | GateKind::XPlus | GateKind::ZTheta(_) | GateKind::Ecr(Direction::Down)
        )
    }

    pub fn is_two_qubit(&self) -> bool {
        self.arity() == 2
    }

    pub fn matrix(&self) -> Result<CMatrix, QsimError> {
        gate_matrix(self)
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GateKind::I => f.write_str("I"),
            GateKind::X => f.write_str("X"),
            GateKind::Y => f.write_str("Y"),
            GateKind::Z => f.write_str("Z"),
            GateKind::XPlus => f.write_str("X+"),
            GateKind::ZPlus => f.write_str("Z+"),
            GateKind::ZMinus => f.write_str("Z-"),
            GateKind::YPlus => f.write_str("Y+"),
            GateKind::YMinus => f.write_str("Y-"),
            GateKind::ZTheta(theta) => write!(f, "Z({theta})"),
            GateKind::H => f.write_str("H"),
            GateKind::Cnot(d) => write!(f, "CNOT{}", d.arrow()),
            GateKind::Ecr(d) => write!(f, "ECR{}", d.arrow()),
            GateKind::CrPlus(d) => write!(f, "CR+{}", d.arrow()),
            GateKind::CrMinus(d) => write!(f, "CR-{}", d.arrow()),
            GateKind::Custom(m) => write!(f, "U{}x{}", m.nrows(), m.ncols()),
        }
    }
}

impl FromStr for GateKind {
    type Err = QsimError;

    /// Parses the names produced by `Display` (ASCII spellings `_down`/`_up`
    /// are accepted for the arrows). `Z(θ)` takes the angle in radians.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if let Some(angle) = s.strip_prefix("Z(").and_then(|r| r.strip_suffix(')')) {
            let theta: f64 = angle
                .trim()
                .parse()
                .map_err(|_| QsimError::UnknownGate(s.to_string()))?;
            return Ok(GateKind::ZTheta(theta));
        }
        let (stem, dir) = if let Some(stem) = s.strip_suffix('↓').or_else(|| s.strip_suffix("_down")) {
            (stem, Some(Direction::Down))
        } else if let Some(stem) = s.strip_suffix('↑').or_else(|| s.strip_suffix("_up")) {
            (stem, Some(Direction::Up))
        } else {
            (s, None)
        };
        let kind = match (stem, dir) {
            ("I", None) => GateKind::I,
            ("X", None) => GateKind::X,
            ("Y", None) => GateKind::Y,
            ("Z", None) => GateKind::Z,
            ("X+", None) => GateKind::XPlus,
            ("Z+", None) => GateKind::ZPlus,
            ("Z-", None) => GateKind::ZMinus,
            ("Y+", None) => GateKind::YPlus,
            ("Y-", None) => GateKind::YMinus,
            ("H", None) => GateKind::H,
            ("CNOT", Some(d)) => GateKind::Cnot(d),
            ("ECR", Some(d)) => GateKind::Ecr(d),
            ("CR+", Some(d)) => GateKind::CrPlus(d),
            ("CR-", Some(d)) => GateKind::CrMinus(d),
            _ => return Err(QsimError::UnknownGate(s.to_string())),
        };
        Ok(kind)
    }
}

pub(crate) fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub(crate) fn mat2(entries: [Complex64; 4]) -> CMatrix {
    CMatrix::from_row_slice(2, 2, &entries)
}

pub(crate) fn mat4(entries: [Complex64; 16]) -> CMatrix {
    CMatrix::from_row_slice(4, 4, &entries)
}

pub fn identity2() -> CMatrix {
    CMatrix::identity(2, 2)
}

pub fn pauli_x() -> CMatrix {
    mat2([ZERO, ONE, ONE, ZERO])
}

pub fn pauli_y() -> CMatrix {
    mat2([ZERO, -I_UNIT, I_UNIT, ZERO])
}

pub fn pauli_z() -> CMatrix {
    mat2([ONE, ZERO, ZERO, -ONE])
}

/// `σ_0..σ_3 = I, X, Y, Z`.
pub fn sigma(index: usize) -> CMatrix {
    match index {
        0 => identity2(),
        1 => pauli_x(),
        2 => pauli_y(),
        3 => pauli_z(),
        _ => panic!("Pauli index {index} out of range"),
    }
}

/// `V_θ = cos(θ/2) − i V sin(θ/2)` for an involution `V`.
pub fn involution_rotation(v: &CMatrix, theta: f64) -> CMatrix {
    let n = v.nrows();
    let half = theta / 2.0;
    CMatrix::identity(n, n) * c(half.cos(), 0.0) - v * c(0.0, half.sin())
}

pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

pub fn swap() -> CMatrix {
    let mut m = CMatrix::zeros(4, 4);
    m[(0, 0)] = ONE;
    m[(1, 2)] = ONE;
    m[(2, 1)] = ONE;
    m[(3, 3)] = ONE;
    m
}

fn oriented(down: CMatrix, dir: Direction) -> CMatrix {
    match dir {
        Direction::Down => down,
        Direction::Up => {
            let s = swap();
            &s * down * &s
        }
    }
}

fn cnot_down() -> CMatrix {
    let o = ONE;
    let z = ZERO;
    mat4([o, z, z, z, z, o, z, z, z, z, z, o, z, z, o, z])
}

fn ecr_down() -> CMatrix {
    let r = FRAC_1_SQRT_2;
    let (z, one, i) = (ZERO, c(r, 0.0), c(0.0, r));
    mat4([z, z, one, i, z, z, i, one, one, -i, z, z, -i, one, z, z])
}

fn cross_resonance(theta: f64) -> CMatrix {
    involution_rotation(&kron(&pauli_z(), &pauli_x()), theta)
}

/// Frobenius norm of `U†U − I`.
pub fn unitarity_deviation(m: &CMatrix) -> f64 {
    let n = m.nrows();
    (m.adjoint() * m - CMatrix::identity(n, n)).norm()
}

/// The exact matrix of a gate kind in the `|0⟩,|1⟩` (resp. `|00⟩..|11⟩`) basis.
pub fn gate_matrix(kind: &GateKind) -> Result<CMatrix, QsimError> {
    let m = match kind {
        GateKind::I => identity2(),
        GateKind::X => pauli_x(),
        GateKind::Y => pauli_y(),
        GateKind::Z => pauli_z(),
        GateKind::XPlus => involution_rotation(&pauli_x(), FRAC_PI_2),
        GateKind::ZPlus => involution_rotation(&pauli_z(), FRAC_PI_2),
        GateKind::ZMinus => involution_rotation(&pauli_z(), -FRAC_PI_2),
        GateKind::YPlus => involution_rotation(&pauli_y(), FRAC_PI_2),
        GateKind::YMinus => involution_rotation(&pauli_y(), -FRAC_PI_2),
        GateKind::ZTheta(theta) => {
            if !theta.is_finite() {
                return Err(QsimError::NonFiniteAngle(*theta));
            }
            let half = theta / 2.0;
            mat2([Complex64::from_polar(1.0, -half), ZERO, ZERO, Complex64::from_polar(1.0, half)])
        }
        GateKind::H => (pauli_z() + pauli_x()) * c(FRAC_1_SQRT_2, 0.0),
        GateKind::Cnot(d) => oriented(cnot_down(), *d),
        GateKind::Ecr(d) => oriented(ecr_down(), *d),
        GateKind::CrPlus(d) => oriented(cross_resonance(FRAC_PI_4), *d),
        GateKind::CrMinus(d) => oriented(cross_resonance(-FRAC_PI_4), *d),
        GateKind::Custom(m) => {
            if !(m.is_square() && (m.nrows() == 2 || m.nrows() == 4)) {
                return Err(QsimError::BadDimension {
                    rows: m.nrows(),
                    cols: m.ncols(),
                });
            }
            let deviation = unitarity_deviation(m);
            if deviation.is_nan() || deviation > UNITARITY_TOL {
                return Err(QsimError::NotUnitary { deviation });
            }
            m.clone()
        }
    };
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_kinds() -> Vec<GateKind> {
        use Direction::*;
        vec![
            GateKind::I,
            GateKind::X,
            GateKind::Y,
            GateKind::Z,
            GateKind::XPlus,
            GateKind::ZPlus,
            GateKind::ZMinus,
            GateKind::YPlus,
            GateKind::YMinus,
            GateKind::ZTheta(0.3),
            GateKind::ZTheta(-2.0),
            GateKind::H,
            GateKind::Cnot(Down),
            GateKind::Cnot(Up),
            GateKind::Ecr(Down),
            GateKind::Ecr(Up),
            GateKind::CrPlus(Down),
            GateKind::CrPlus(Up),
            GateKind::CrMinus(Down),
            GateKind::CrMinus(Up),
        ]
    }

    fn close(a: &CMatrix, b: &CMatrix, tol: f64) -> bool {
        (a - b).norm() < tol
    }

    #[test]
    fn y_minus_matches_explicit_form() {
        let r = FRAC_1_SQRT_2;
        let expected = mat2([c(r, 0.0), c(r, 0.0), c(-r, 0.0), c(r, 0.0)]);
        assert!(close(&gate_matrix(&GateKind::YMinus).unwrap(), &expected, 1e-15));
    }

    #[test]
    fn zero_angle_rotation_is_identity() {
        assert_eq!(gate_matrix(&GateKind::ZTheta(0.0)).unwrap(), identity2());
    }

    #[test]
    fn ecr_down_literal_equals_pauli_form() {
        let ecr = gate_matrix(&GateKind::Ecr(Direction::Down)).unwrap();
        let form = (kron(&pauli_x(), &identity2()) - kron(&pauli_y(), &pauli_x())) * c(FRAC_1_SQRT_2, 0.0);
        assert!(close(&ecr, &form, 1e-15));
        assert_eq!(ecr[(0, 3)], c(0.0, FRAC_1_SQRT_2));
        assert_eq!(ecr[(3, 0)], c(0.0, -FRAC_1_SQRT_2));
    }

    #[test]
    fn every_kind_is_unitary() {
        for kind in all_kinds() {
            let m = gate_matrix(&kind).unwrap();
            assert!(unitarity_deviation(&m) < 1e-12, "{kind} not unitary");
        }
    }

    #[test]
    fn up_is_swap_conjugate_of_down() {
        use Direction::*;
        let s = swap();
        for (down, up) in [
            (GateKind::Cnot(Down), GateKind::Cnot(Up)),
            (GateKind::Ecr(Down), GateKind::Ecr(Up)),
            (GateKind::CrPlus(Down), GateKind::CrPlus(Up)),
            (GateKind::CrMinus(Down), GateKind::CrMinus(Up)),
        ] {
            let d = gate_matrix(&down).unwrap();
            let u = gate_matrix(&up).unwrap();
            assert!(close(&u, &(&s * &d * &s), 1e-15));
            // elementwise form of the orientation rule
            for a in 0..2 {
                for b in 0..2 {
                    for a2 in 0..2 {
                        for b2 in 0..2 {
                            let lhs = u[(2 * a2 + b2, 2 * a + b)];
                            let rhs = d[(2 * b2 + a2, 2 * b + a)];
                            assert!((lhs - rhs).norm() < 1e-15);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn cnot_up_literal() {
        let m = gate_matrix(&GateKind::Cnot(Direction::Up)).unwrap();
        let nonzero: Vec<(usize, usize)> = (0..4)
            .flat_map(|r| (0..4).map(move |c| (r, c)))
            .filter(|&(r, col)| m[(r, col)].norm() > 0.5)
            .collect();
        assert_eq!(nonzero, vec![(0, 0), (1, 3), (2, 2), (3, 1)]);
    }

    #[test]
    fn custom_non_unitary_reports_deviation() {
        let m = mat2([ONE, ONE, ZERO, ONE]);
        match gate_matrix(&GateKind::Custom(m)) {
            Err(QsimError::NotUnitary { deviation }) => assert!(deviation > 0.5),
            other => panic!("expected NotUnitary, got {other:?}"),
        }
        let m3 = CMatrix::identity(3, 3);
        assert!(matches!(
            gate_matrix(&GateKind::Custom(m3)),
            Err(QsimError::BadDimension { .. })
        ));
    }

    #[test]
    fn non_finite_angle_rejected() {
        assert!(matches!(
            gate_matrix(&GateKind::ZTheta(f64::NAN)),
            Err(QsimError::NonFiniteAngle(_))
        ));
    }

    #[test]
    fn parse_round_trip_and_unknown() {
        for kind in all_kinds() {
            let text = kind.to_string();
            let parsed: GateKind = text.parse().unwrap();
            assert_eq!(parsed, kind, "{text}");
        }
        assert_eq!("CNOT_up".parse::<GateKind>().unwrap(), GateKind::Cnot(Direction::Up));
        assert!(matches!("SWAP".parse::<GateKind>(), Err(QsimError::UnknownGate(_))));
        assert!(matches!("CNOT".parse::<GateKind>(), Err(QsimError::UnknownGate(_))));
    }
}
