//! The three-party functional `F`: settings, sign rule, outcome table,
//! correlation assembly, error propagation and no-signaling audits.

mod circuit;
mod correlation;
mod nosignal;
mod permutation;
mod result;
mod rules;
mod run;
mod setting;

use thiserror::Error;

pub use circuit::{basis_rotation, witness_circuit};
pub use correlation::{correlations, raw_correlations, CorrelationTerm, OutcomeWeights};
pub use nosignal::{
    no_signaling_report, no_signaling_report_exact, MarginalComparison, NoSignalingReport, Party,
    NO_SIGNALING_SIGMAS,
};
pub use permutation::Permutation;
pub use result::{
    error_estimate, error_estimate_per_setting, partial_witness_value, witness_value,
    ShotsPerSetting, WitnessResult,
};
pub use rules::{outcome_map, sign};
pub use run::{
    exact_distributions, exact_witness, sample_records, sample_witness, witness_from_records,
    CountsRecord, WitnessRunOptions,
};
pub use setting::{settings_for, witness_settings, SettingTuple, WitnessSetting};

use crate::gates::GateError;
use crate::qsim::QsimError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum WitnessError {
    #[error("invalid permutation {0:?}")]
    BadPermutation(String),
    #[error("settings must lie in 1..=3, got x={x}, z={z}")]
    BadSetting { x: u8, z: u8 },
    #[error("no counts for setting {0}")]
    EmptyCounts(SettingTuple),
    #[error("setting {0} violates x = eta(z)")]
    NotAWitnessSetting(SettingTuple),
    #[error("term ({0}, b={1}) is not part of the requested functional")]
    UnexpectedTerm(SettingTuple, u8),
    #[error("duplicate term ({0}, b={1})")]
    DuplicateTerm(SettingTuple, u8),
    #[error("missing term ({0}, b={1})")]
    MissingTerm(SettingTuple, u8),
    #[error("shots per setting must be positive")]
    ZeroShots,
    #[error("partial value {0} outside [-1, 1]")]
    PartialOutOfRange(f64),
    #[error("fewer than two comparable contexts for any party")]
    NotEnoughContexts,
    #[error("no permutations requested")]
    NoPermutations,
    #[error(transparent)]
    Qsim(#[from] QsimError),
    #[error(transparent)]
    Gates(#[from] GateError),
}
