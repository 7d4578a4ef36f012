use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{CountsRecord, OutcomeWeights, SettingTuple, WitnessError};
use crate::qsim::{Distribution, Outcome, Wire};

/// Multiplier on the pooled binomial standard error.
pub const NO_SIGNALING_SIGMAS: f64 = 3.0;

/// Rounding slack when comparing exact distributions.
const EXACT_SLACK: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Party {
    A,
    B,
    C,
}

impl Party {
    pub const ALL: [Party; 3] = [Party::A, Party::B, Party::C];

    fn own_setting(self, s: &SettingTuple) -> String {
        match self {
            Party::A => format!("x={}", s.x),
            Party::B => format!("eta={}", s.eta),
            Party::C => format!("z={}", s.z),
        }
    }

    fn marginal(self, weights: &[f64; 16]) -> Vec<f64> {
        let mut m = vec![0.0; self.outcome_count()];
        for o in Outcome::all() {
            let k = match self {
                Party::A => o.bit(Wire::A) as usize,
                Party::B => o.pq() as usize,
                Party::C => o.bit(Wire::C) as usize,
            };
            m[k] += weights[o.index()];
        }
        m
    }

    fn outcome_count(self) -> usize {
        match self {
            Party::B => 4,
            _ => 2,
        }
    }
}

impl fmt::Display for Party {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// One party's outcome marginal compared across two foreign-setting contexts.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MarginalComparison {
    pub party: Party,
    pub own_setting: String,
    pub context_1: SettingTuple,
    pub context_2: SettingTuple,
    /// Total-variation distance between the two marginals.
    pub deviation: f64,
    pub tolerance: f64,
    pub flagged: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct NoSignalingReport {
    pub comparisons: Vec<MarginalComparison>,
}

impl NoSignalingReport {
    pub fn flagged(&self) -> impl Iterator<Item = &MarginalComparison> {
        self.comparisons.iter().filter(|c| c.flagged)
    }

    pub fn passed(&self) -> bool {
        self.flagged().next().is_none()
    }

    pub fn max_deviation(&self) -> f64 {
        self.comparisons.iter().map(|c| c.deviation).fold(0.0, f64::max)
    }
}

struct Observation {
    setting: SettingTuple,
    weights: [f64; 16],
    shots: Option<u64>,
}

/// Audit sampled records; counts sharing a setting are pooled.
pub fn no_signaling_report(records: &[CountsRecord]) -> Result<NoSignalingReport, WitnessError> {
    let mut pooled: BTreeMap<SettingTuple, crate::qsim::Counts> = BTreeMap::new();
    for r in records {
        pooled.entry(r.setting).or_default().merge(&r.counts);
    }
    let mut observations = Vec::with_capacity(pooled.len());
    for (setting, counts) in pooled {
        let weights = counts.weights().ok_or(WitnessError::EmptyCounts(setting))?;
        observations.push(Observation {
            setting,
            weights,
            shots: Some(counts.shots()),
        });
    }
    report(&observations)
}

/// Audit exact distributions; quantum predictions satisfy it to rounding.
pub fn no_signaling_report_exact(
    distributions: &[(SettingTuple, Distribution)],
) -> Result<NoSignalingReport, WitnessError> {
    let observations: Vec<Observation> = distributions
        .iter()
        .map(|(setting, d)| Observation {
            setting: *setting,
            weights: *d.probabilities(),
            shots: None,
        })
        .collect();
    report(&observations)
}

fn report(observations: &[Observation]) -> Result<NoSignalingReport, WitnessError> {
    let mut comparisons = Vec::new();
    for party in Party::ALL {
        let mut groups: BTreeMap<String, Vec<&Observation>> = BTreeMap::new();
        for obs in observations {
            groups.entry(party.own_setting(&obs.setting)).or_default().push(obs);
        }
        for (own, group) in groups {
            for (i, first) in group.iter().enumerate() {
                for second in &group[i + 1..] {
                    comparisons.push(compare(party, &own, first, second));
                }
            }
        }
    }
    if comparisons.is_empty() {
        return Err(WitnessError::NotEnoughContexts);
    }
    Ok(NoSignalingReport { comparisons })
}

fn compare(party: Party, own: &str, first: &Observation, second: &Observation) -> MarginalComparison {
    let m1 = party.marginal(&first.weights);
    let m2 = party.marginal(&second.weights);
    let deviation = 0.5 * m1.iter().zip(&m2).map(|(a, b)| (a - b).abs()).sum::<f64>();
    let tolerance = match (first.shots, second.shots) {
        (Some(n1), Some(n2)) => {
            let (n1, n2) = (n1 as f64, n2 as f64);
            let spread: f64 = m1
                .iter()
                .zip(&m2)
                .map(|(a, b)| {
                    let pooled = (a * n1 + b * n2) / (n1 + n2);
                    (pooled * (1.0 - pooled) * (1.0 / n1 + 1.0 / n2)).max(0.0).sqrt()
                })
                .sum();
            NO_SIGNALING_SIGMAS * 0.5 * spread
        }
        _ => 0.0,
    };
    MarginalComparison {
        party,
        own_setting: own.to_string(),
        context_1: first.setting,
        context_2: second.setting,
        deviation,
        tolerance,
        flagged: deviation > tolerance + EXACT_SLACK,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qsim::Counts;
    use crate::witness::Permutation;

    fn record(x: u8, eta: &str, z: u8, tallies: [u64; 16]) -> CountsRecord {
        CountsRecord {
            setting: SettingTuple::new(x, eta.parse().unwrap(), z).unwrap(),
            counts: Counts::from_tallies(tallies),
        }
    }

    #[test]
    fn single_record_has_no_contexts() {
        let r = record(1, "123", 1, [1; 16]);
        assert_eq!(no_signaling_report(&[r]), Err(WitnessError::NotEnoughContexts));
    }

    #[test]
    fn identical_marginals_pass() {
        let r1 = record(1, "123", 1, [10; 16]);
        let r2 = record(1, "132", 1, [10; 16]);
        let rep = no_signaling_report(&[r1, r2]).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.max_deviation(), 0.0);
        // A (x=1) and C (z=1) each compare the two contexts; B has no shared eta
        assert_eq!(rep.comparisons.len(), 2);
    }

    #[test]
    fn a_marginal_depending_on_z_is_flagged() {
        // x=1 reached by (123, z=1) and (231, z=3); A always 0 in the first, always 1 in the second
        let mut t1 = [0u64; 16];
        t1[0b0000] = 5000;
        let mut t2 = [0u64; 16];
        t2[0b1000] = 5000;
        let rep = no_signaling_report(&[record(1, "123", 1, t1), record(1, "231", 3, t2)]).unwrap();
        let flagged: Vec<_> = rep.flagged().collect();
        assert_eq!(flagged.len(), 1);
        assert_eq!(flagged[0].party, Party::A);
        assert!((flagged[0].deviation - 1.0).abs() < 1e-15);
    }

    #[test]
    fn exact_uniform_is_clean() {
        let d = Distribution::uniform();
        let items: Vec<_> = Permutation::ALL
            .iter()
            .flat_map(|&eta| (1..=3).map(move |z| (SettingTuple::new(eta.apply(z), eta, z).unwrap(), d)))
            .collect();
        let rep = no_signaling_report_exact(&items).unwrap();
        assert!(rep.passed());
        // A: 3 values of x with 6 contexts each -> 3*15, same for C; B: 6 etas * 3 pairs
        assert_eq!(rep.comparisons.len(), 45 + 45 + 18);
    }
}
