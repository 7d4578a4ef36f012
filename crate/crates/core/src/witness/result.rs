use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{settings_for, CorrelationTerm, Permutation, WitnessError, WitnessSetting};

/// Shots behind each setting's estimate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ShotsPerSetting {
    Exact,
    #[serde(untagged)]
    Shots(u64),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessResult {
    #[serde(rename = "F")]
    pub f: f64,
    pub terms: Vec<CorrelationTerm>,
    pub sigma: f64,
    pub shots_per_setting: ShotsPerSetting,
}

impl WitnessResult {
    /// Partial contributions `F_{xηz} = Σ_b (−1)^{δ_zb+δ_0b} ⟨A_x B_{bη} C_z⟩`
    /// (the `sgn η` factor removed), in setting order.
    pub fn partials(&self) -> Vec<(WitnessSetting, f64)> {
        let mut sums: BTreeMap<usize, (WitnessSetting, f64)> = BTreeMap::new();
        for term in &self.terms {
            let setting = term
                .setting
                .as_witness()
                .expect("witness results only hold witness settings");
            let entry = sums.entry(setting.index()).or_insert((setting, 0.0));
            entry.1 += term.signed_value;
        }
        sums.into_values()
            .map(|(s, v)| (s, v * f64::from(s.eta().sign())))
            .collect()
    }

    /// Signed sum over the four `b` of one setting.
    pub fn setting_total(&self, setting: WitnessSetting) -> f64 {
        self.terms
            .iter()
            .filter(|t| t.setting == setting.tuple())
            .map(|t| t.signed_value)
            .sum()
    }
}

/// `F` as the plain sum of all 72 witness terms.
pub fn witness_value(terms: &[CorrelationTerm]) -> Result<WitnessResult, WitnessError> {
    partial_witness_value(terms, &Permutation::ALL)
}

/// `F` restricted to the listed middle-party settings; exactly the `3·|etas|·4`
/// matching terms must be present.
pub fn partial_witness_value(
    terms: &[CorrelationTerm],
    etas: &[Permutation],
) -> Result<WitnessResult, WitnessError> {
    let expected = settings_for(etas);
    let mut slots: BTreeMap<(usize, u8), Option<f64>> = BTreeMap::new();
    for s in &expected {
        for b in 0..4 {
            slots.insert((s.index(), b), None);
        }
    }
    for term in terms {
        let setting = term
            .setting
            .as_witness()
            .ok_or(WitnessError::NotAWitnessSetting(term.setting))?;
        let slot = slots
            .get_mut(&(setting.index(), term.b))
            .ok_or(WitnessError::UnexpectedTerm(term.setting, term.b))?;
        if slot.replace(term.signed_value).is_some() {
            return Err(WitnessError::DuplicateTerm(term.setting, term.b));
        }
    }
    if let Some((&(idx, b), _)) = slots.iter().find(|(_, v)| v.is_none()) {
        let setting = expected
            .iter()
            .find(|s| s.index() == idx)
            .expect("slot keys come from expected settings");
        return Err(WitnessError::MissingTerm(setting.tuple(), b));
    }
    let mut ordered = Vec::with_capacity(slots.len());
    let mut f = 0.0;
    for &(idx, b) in slots.keys() {
        let term = terms
            .iter()
            .find(|t| t.b == b && t.setting.as_witness().map(|s| s.index()) == Some(idx))
            .expect("every slot is filled");
        f += term.signed_value;
        ordered.push(*term);
    }
    Ok(WitnessResult {
        f,
        terms: ordered,
        sigma: 0.0,
        shots_per_setting: ShotsPerSetting::Exact,
    })
}

/// Shot-noise error of `F`: `σ = sqrt(Σ (1 − F²_{xηz}) / N)`.
///
/// Each setting's estimate is a mean of `N` values `±1`, so its variance is
/// `(1 − F²_{xηz})/N`, and settings are sampled independently.
pub fn error_estimate(partials: &[f64], shots_per_setting: u64) -> Result<f64, WitnessError> {
    if shots_per_setting == 0 {
        return Err(WitnessError::ZeroShots);
    }
    let mut total = 0.0;
    for &p in partials {
        if p.is_nan() || p.abs() > 1.0 + 1e-12 {
            return Err(WitnessError::PartialOutOfRange(p));
        }
        total += (1.0 - p * p).max(0.0);
    }
    Ok((total / shots_per_setting as f64).sqrt())
}

/// As [`error_estimate`] with a separate shot count per setting.
pub fn error_estimate_per_setting(partials: &[(f64, u64)]) -> Result<f64, WitnessError> {
    let mut total = 0.0;
    for &(p, n) in partials {
        if n == 0 {
            return Err(WitnessError::ZeroShots);
        }
        if p.is_nan() || p.abs() > 1.0 + 1e-12 {
            return Err(WitnessError::PartialOutOfRange(p));
        }
        total += (1.0 - p * p).max(0.0) / n as f64;
    }
    Ok(total.sqrt())
}
