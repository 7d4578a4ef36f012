use std::collections::BTreeMap;

use rayon::prelude::*;

use super::{
    correlations, error_estimate_per_setting, partial_witness_value, settings_for, witness_circuit,
    CorrelationTerm, Permutation, SettingTuple, ShotsPerSetting, WitnessError, WitnessResult,
    WitnessSetting,
};
use crate::gates::to_native;
use super::{outcome_map, sign};
use crate::qsim::{noisy_distribution, Counts, Distribution, NoiseModel, SeedStream, Wire};

/// Counts observed for one setting.
#[derive(Clone, Debug, PartialEq)]
pub struct CountsRecord {
    pub setting: SettingTuple,
    pub counts: Counts,
}

#[derive(Clone, Debug, PartialEq)]
pub struct WitnessRunOptions {
    /// Rewrite every circuit into `{X, X₊, Z_θ, ECR↓}` first.
    pub native: bool,
    pub permutations: Vec<Permutation>,
    pub noise: NoiseModel,
}

impl Default for WitnessRunOptions {
    fn default() -> Self {
        Self {
            native: false,
            permutations: Permutation::ALL.to_vec(),
            noise: NoiseModel::ideal(),
        }
    }
}

impl WitnessRunOptions {
    fn settings(&self) -> Result<Vec<WitnessSetting>, WitnessError> {
        if self.permutations.is_empty() {
            return Err(WitnessError::NoPermutations);
        }
        Ok(settings_for(&self.permutations))
    }
}

fn distribution_for(setting: WitnessSetting, opts: &WitnessRunOptions) -> Result<Distribution, WitnessError> {
    let mut circuit = witness_circuit(&setting.tuple());
    if opts.native {
        circuit = to_native(&circuit)?;
    }
    Ok(noisy_distribution(&circuit, &opts.noise)?)
}

/// Output distributions of every requested setting, in setting order.
pub fn exact_distributions(
    opts: &WitnessRunOptions,
) -> Result<Vec<(WitnessSetting, Distribution)>, WitnessError> {
    opts.settings()?
        .into_par_iter()
        .map(|s| Ok((s, distribution_for(s, opts)?)))
        .collect()
}

/// `F` from exact (possibly noisy) distributions; `sigma = 0`.
pub fn exact_witness(opts: &WitnessRunOptions) -> Result<WitnessResult, WitnessError> {
    let mut terms = Vec::with_capacity(72);
    for (s, d) in exact_distributions(opts)? {
        terms.extend(correlations(&d, &s.tuple())?);
    }
    partial_witness_value(&terms, &opts.permutations)
}

/// Draw `shots` per setting; setting `s` uses stream `s.index()` of `seed`.
pub fn sample_records(
    shots: u64,
    seed: u64,
    opts: &WitnessRunOptions,
) -> Result<Vec<CountsRecord>, WitnessError> {
    if shots == 0 {
        return Err(WitnessError::ZeroShots);
    }
    opts.settings()?
        .into_par_iter()
        .map(|s| {
            let d = distribution_for(s, opts)?;
            let counts = d.sample_counts(shots, SeedStream::new(seed, s.index() as u64))?;
            Ok(CountsRecord {
                setting: s.tuple(),
                counts,
            })
        })
        .collect()
}

/// Sample every setting and evaluate `F` with its shot-noise `sigma`.
pub fn sample_witness(
    shots: u64,
    seed: u64,
    opts: &WitnessRunOptions,
) -> Result<(WitnessResult, Vec<CountsRecord>), WitnessError> {
    let records = sample_records(shots, seed, opts)?;
    let result = witness_from_records(&records, &opts.permutations, None)?;
    Ok((result, records))
}

/// `F_{xηz}` as a ratio of integer tallies, so `±1` partials are exact.
fn integer_partial(counts: &Counts, s: WitnessSetting) -> f64 {
    let t = s.tuple();
    let mut num: i64 = 0;
    for (o, n) in counts.iter() {
        let b = outcome_map(t.eta, o.pq());
        let ac = if o.bit(Wire::A) == o.bit(Wire::C) { 1 } else { -1 };
        let weight = i64::from(sign(t.eta, t.z, b) * t.eta.sign()) * ac;
        num += weight * n as i64;
    }
    num as f64 / counts.shots() as f64
}

/// Evaluate `F` and `sigma` from counts. Records sharing a setting are pooled;
/// `F` is summed from the per-setting partials.
///
/// `shots_override` replaces the per-setting `N` in the error formula.
pub fn witness_from_records(
    records: &[CountsRecord],
    etas: &[Permutation],
    shots_override: Option<u64>,
) -> Result<WitnessResult, WitnessError> {
    if etas.is_empty() {
        return Err(WitnessError::NoPermutations);
    }
    let mut pooled: BTreeMap<SettingTuple, Counts> = BTreeMap::new();
    for r in records {
        pooled.entry(r.setting).or_default().merge(&r.counts);
    }
    let mut terms: Vec<CorrelationTerm> = Vec::with_capacity(pooled.len() * 4);
    for (setting, counts) in &pooled {
        terms.extend(correlations(counts, setting)?);
    }
    let mut result = partial_witness_value(&terms, etas)?;
    let partials: Vec<(f64, u64)> = settings_for(etas)
        .into_iter()
        .map(|s| {
            let counts = &pooled[&s.tuple()];
            let n = shots_override.unwrap_or_else(|| counts.shots());
            (integer_partial(counts, s), n)
        })
        .collect();
    result.f = settings_for(etas)
        .iter()
        .zip(&partials)
        .map(|(s, &(p, _))| f64::from(s.eta().sign()) * p)
        .sum();
    result.sigma = error_estimate_per_setting(&partials)?;
    let first = partials[0].1;
    result.shots_per_setting = ShotsPerSetting::Shots(partials.iter().map(|&(_, n)| n).min().unwrap_or(first));
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ideal_terms_are_a_quarter() {
        let r = exact_witness(&WitnessRunOptions::default()).unwrap();
        assert!((r.f - 18.0).abs() < 1e-9);
        assert_eq!(r.terms.len(), 72);
        for t in &r.terms {
            assert!((t.signed_value - 0.25).abs() < 1e-12, "{t:?}");
        }
    }

    #[test]
    fn single_eta_gives_three() {
        let opts = WitnessRunOptions {
            permutations: vec![Permutation::IDENTITY],
            ..Default::default()
        };
        let r = exact_witness(&opts).unwrap();
        assert!((r.f - 3.0).abs() < 1e-12);
    }

    #[test]
    fn no_permutations_rejected() {
        let opts = WitnessRunOptions {
            permutations: vec![],
            ..Default::default()
        };
        assert_eq!(exact_witness(&opts), Err(WitnessError::NoPermutations));
    }

    #[test]
    fn sampling_is_deterministic_and_ideal_is_noiseless() {
        let opts = WitnessRunOptions::default();
        let (a, ra) = sample_witness(2000, 7, &opts).unwrap();
        let (b, rb) = sample_witness(2000, 7, &opts).unwrap();
        assert_eq!(ra, rb);
        assert_eq!(a, b);
        // every ideal partial is ±1, so sampling is deterministic in value
        assert_eq!(a.f, 18.0);
        assert_eq!(a.sigma, 0.0);
        assert_eq!(a.shots_per_setting, ShotsPerSetting::Shots(2000));
    }

    #[test]
    fn records_round_trip() {
        let opts = WitnessRunOptions {
            noise: NoiseModel::depolarizing(0.05),
            ..Default::default()
        };
        let (a, records) = sample_witness(5000, 11, &opts).unwrap();
        let b = witness_from_records(&records, &Permutation::ALL, None).unwrap();
        assert_eq!(a.f.to_bits(), b.f.to_bits());
        assert_eq!(a.sigma.to_bits(), b.sigma.to_bits());
        assert!(a.sigma > 0.0);
    }

    #[test]
    fn integer_partials_match_term_sums() {
        let opts = WitnessRunOptions {
            noise: NoiseModel::depolarizing(0.1),
            ..Default::default()
        };
        let (r, _) = sample_witness(3000, 2, &opts).unwrap();
        let from_terms: f64 = r.terms.iter().map(|t| t.signed_value).sum();
        assert!((r.f - from_terms).abs() < 1e-12);
    }

    #[test]
    fn missing_setting_is_named() {
        let records = sample_records(100, 1, &WitnessRunOptions::default()).unwrap();
        let dropped = records[5].setting;
        let rest: Vec<_> = records.into_iter().filter(|r| r.setting != dropped).collect();
        match witness_from_records(&rest, &Permutation::ALL, None) {
            Err(WitnessError::MissingTerm(s, 0)) => assert_eq!(s, dropped),
            other => panic!("{other:?}"),
        }
    }
}
