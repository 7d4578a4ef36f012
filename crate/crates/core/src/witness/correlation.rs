use serde::{Deserialize, Serialize};

use super::{outcome_map, sign, SettingTuple, WitnessError};
use crate::qsim::{Counts, Distribution, Outcome, Wire};

/// Anything that yields weights over the 16 `a p q c` outcomes.
pub trait OutcomeWeights {
    fn weights(&self) -> Option<[f64; 16]>;
}

impl OutcomeWeights for Distribution {
    fn weights(&self) -> Option<[f64; 16]> {
        Some(*self.probabilities())
    }
}

impl OutcomeWeights for Counts {
    fn weights(&self) -> Option<[f64; 16]> {
        self.frequencies()
    }
}

/// One signed term `sgn η (−1)^{δ_zb+δ_0b} ⟨A_x B_{bη} C_z⟩` of the witness.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorrelationTerm {
    pub setting: SettingTuple,
    pub b: u8,
    pub signed_value: f64,
}

/// Unsigned `⟨A_x B_{bη} C_z⟩` for `b = 0..3`, with `a, c` read as Z eigenvalues.
pub fn raw_correlations(weights: &[f64; 16], setting: &SettingTuple) -> [f64; 4] {
    let mut out = [0.0; 4];
    for o in Outcome::all() {
        let b = outcome_map(setting.eta, o.pq());
        out[b as usize] += o.z_value(Wire::A) * o.z_value(Wire::C) * weights[o.index()];
    }
    out
}

/// The four signed terms of a setting.
pub fn correlations<S: OutcomeWeights + ?Sized>(
    source: &S,
    setting: &SettingTuple,
) -> Result<[CorrelationTerm; 4], WitnessError> {
    let weights = source.weights().ok_or(WitnessError::EmptyCounts(*setting))?;
    let raw = raw_correlations(&weights, setting);
    Ok(std::array::from_fn(|b| {
        let b = b as u8;
        CorrelationTerm {
            setting: *setting,
            b,
            signed_value: f64::from(sign(setting.eta, setting.z, b)) * raw[b as usize],
        }
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::witness::Permutation;

    fn setting(eta: &str, z: u8) -> SettingTuple {
        let eta: Permutation = eta.parse().unwrap();
        SettingTuple::new(eta.apply(z), eta, z).unwrap()
    }

    #[test]
    fn uniform_gives_zero() {
        for eta in Permutation::ALL {
            for z in 1..=3 {
                let s = SettingTuple::new(eta.apply(z), eta, z).unwrap();
                let terms = correlations(&Distribution::uniform(), &s).unwrap();
                assert!(terms.iter().all(|t| t.signed_value.abs() < 1e-15));
            }
        }
    }

    #[test]
    fn point_mass_on_zero_string() {
        // "0000" with η=123: pq=00 maps to b=2, a=c=+1, sign(123,3,2)=+1
        let s = setting("123", 3);
        let terms = correlations(&Distribution::point(Outcome::new(0)), &s).unwrap();
        let values: Vec<f64> = terms.iter().map(|t| t.signed_value).collect();
        assert_eq!(values, vec![0.0, 0.0, 1.0, 0.0]);
    }

    #[test]
    fn point_mass_with_odd_parity() {
        // "1011": a=-1, pq=01, c=-1 ; η=321 maps 01 -> b=2 ; sign(321, 2, 2) = -1 * (-1)^1 = +1
        let s = setting("321", 2);
        let o: Outcome = "1011".parse().unwrap();
        let terms = correlations(&Distribution::point(o), &s).unwrap();
        assert_eq!(terms[2].signed_value, 1.0);
        assert_eq!(terms.iter().filter(|t| t.signed_value != 0.0).count(), 1);
    }

    #[test]
    fn empty_counts_rejected() {
        let s = setting("123", 1);
        assert_eq!(
            correlations(&Counts::default(), &s),
            Err(WitnessError::EmptyCounts(s))
        );
    }

    #[test]
    fn counts_use_frequencies() {
        let s = setting("123", 1);
        let mut counts = Counts::default();
        counts.add(Outcome::new(0), 3); // b=2, ac=+1, sign(123,1,2)=+1
        counts.add("1000".parse().unwrap(), 1); // b=2, ac=-1
        let terms = correlations(&counts, &s).unwrap();
        assert!((terms[2].signed_value - 0.5).abs() < 1e-15);
    }
}
