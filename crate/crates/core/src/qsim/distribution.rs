use std::fmt;
use std::str::FromStr;

use super::{Circuit, QsimError, Wire};

/// One of the 16 measurement outcomes, bits in `a p q c` order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Outcome(u8);

impl Outcome {
    pub fn new(index: u8) -> Self {
        assert!(index < 16, "outcome index {index} out of range");
        Outcome(index)
    }

    pub fn all() -> impl Iterator<Item = Outcome> {
        (0..16u8).map(Outcome)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn bit(self, wire: Wire) -> u8 {
        (self.0 >> wire.bit()) & 1
    }

    /// Two-bit value `2p + q` read by the middle party.
    pub fn pq(self) -> u8 {
        (self.0 >> 1) & 0b11
    }

    /// `+1` for bit 0, `−1` for bit 1.
    pub fn z_value(self, wire: Wire) -> f64 {
        if self.bit(wire) == 0 {
            1.0
        } else {
            -1.0
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:04b}", self.0)
    }
}

impl FromStr for Outcome {
    type Err = QsimError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.len() != 4 || !s.bytes().all(|b| b == b'0' || b == b'1') {
            return Err(QsimError::BadOutcome(s.to_string()));
        }
        let v = u8::from_str_radix(s, 2).map_err(|_| QsimError::BadOutcome(s.to_string()))?;
        Ok(Outcome(v))
    }
}

/// Born-rule weights over the 16 outcomes.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Distribution {
    probs: [f64; 16],
}

impl Distribution {
    /// Probabilities must be nonnegative and sum to 1 within `1e-12`.
    pub fn from_probabilities(probs: [f64; 16]) -> Result<Self, QsimError> {
        if let Some(&bad) = probs.iter().find(|p| p.is_nan() || **p < 0.0) {
            return Err(QsimError::BadProbability {
                name: "outcome probability",
                value: bad,
            });
        }
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(QsimError::NotNormalized(total));
        }
        Ok(Distribution { probs })
    }

    pub(crate) fn from_probabilities_unchecked(probs: [f64; 16]) -> Self {
        Distribution { probs }
    }

    pub fn uniform() -> Self {
        Distribution { probs: [1.0 / 16.0; 16] }
    }

    pub fn point(outcome: Outcome) -> Self {
        let mut probs = [0.0; 16];
        probs[outcome.index()] = 1.0;
        Distribution { probs }
    }

    pub fn probabilities(&self) -> &[f64; 16] {
        &self.probs
    }

    pub fn get(&self, outcome: Outcome) -> f64 {
        self.probs[outcome.index()]
    }

    pub fn iter(&self) -> impl Iterator<Item = (Outcome, f64)> + '_ {
        Outcome::all().map(move |o| (o, self.probs[o.index()]))
    }

    /// Total-variation distance `½ Σ |p − q|`.
    pub fn total_variation(&self, other: &Distribution) -> f64 {
        0.5 * self
            .probs
            .iter()
            .zip(other.probs.iter())
            .map(|(p, q)| (p - q).abs())
            .sum::<f64>()
    }

    /// Marginal over one wire: `[P(bit=0), P(bit=1)]`.
    pub fn wire_marginal(&self, wire: Wire) -> [f64; 2] {
        let mut m = [0.0; 2];
        for (o, p) in self.iter() {
            m[o.bit(wire) as usize] += p;
        }
        m
    }
}

/// `|amplitude|²` of the circuit's final state, deterministic.
pub fn exact_distribution(circuit: &Circuit) -> Result<Distribution, QsimError> {
    Ok(circuit.run()?.probabilities())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qsim::{Direction, GateKind};

    #[test]
    fn outcome_string_order_is_apqc() {
        let o: Outcome = "1000".parse().unwrap();
        assert_eq!(o.bit(Wire::A), 1);
        assert_eq!(o.bit(Wire::C), 0);
        assert_eq!("0110".parse::<Outcome>().unwrap().pq(), 0b11);
        assert_eq!(Outcome::new(5).to_string(), "0101");
        assert!("012".parse::<Outcome>().is_err());
        assert!("0a10".parse::<Outcome>().is_err());
    }

    #[test]
    fn empty_circuit_is_point_mass() {
        let d = exact_distribution(&Circuit::new()).unwrap();
        assert_eq!(d.get("0000".parse().unwrap()), 1.0);
        assert_eq!(d.probabilities().iter().sum::<f64>(), 1.0);
    }

    #[test]
    fn bell_pair_on_ap() {
        let circuit = Circuit::new()
            .gate(GateKind::YMinus, Wire::A)
            .gate2(GateKind::Cnot(Direction::Down), Wire::A, Wire::P);
        let d = exact_distribution(&circuit).unwrap();
        let p00: f64 = d.iter().filter(|(o, _)| o.bit(Wire::A) == 0 && o.bit(Wire::P) == 0).map(|(_, p)| p).sum();
        let p11: f64 = d.iter().filter(|(o, _)| o.bit(Wire::A) == 1 && o.bit(Wire::P) == 1).map(|(_, p)| p).sum();
        assert!((p00 - 0.5).abs() < 1e-15);
        assert!((p11 - 0.5).abs() < 1e-15);
        assert!((p00 + p11 - 1.0).abs() < 1e-15);
    }

    #[test]
    fn validation() {
        let mut probs = [0.0; 16];
        probs[0] = 1.1;
        probs[1] = -0.1;
        assert!(Distribution::from_probabilities(probs).is_err());
        probs[1] = 0.0;
        assert!(matches!(
            Distribution::from_probabilities(probs),
            Err(QsimError::NotNormalized(_))
        ));
        assert!(Distribution::from_probabilities([1.0 / 16.0; 16]).is_ok());
    }
}
