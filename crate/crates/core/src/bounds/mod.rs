//! Reference values of the functional: the classical maximum by enumeration,
//! the complex maximum by construction, and real-separable bounds from exact
//! sum-of-squares certificates, plus random-strategy oracles.

mod certificate;
mod coefficient;
mod complex;
mod field;
mod lvm;
mod poly;
mod quadratic;
mod random;
mod word;

use thiserror::Error;

pub use certificate::{
    analyze_certificate, check_certificate, cubic_certificate, load_certificate, quadratic_certificate,
    quadratic_closed_form, BoundResult, CertificateAnalysis, ResidualTerm, SoSCertificate, Square, Sweep,
};
pub use coefficient::Coefficient;
pub use complex::{analytic_correlation, complex_construction, rotation};
pub use field::QSqrt6;
pub use lvm::{lvm_max, lvm_value, LvmMode, LvmResult, LvmStrategy, LVM_STRATEGY_COUNT};
pub use poly::{expand_square, nc_multiply, NcPolynomial};
pub use quadratic::{optimize_quadratic, quadratic_bound, QuadraticOptimum};
pub use random::{
    evaluate_via_circuits, random_strategy_max, Field, RandomSearchConfig, RandomSearchResult, Search, Strategy,
};
pub use word::BracketWord;

/// Classical maximum.
pub const CLASSICAL_BOUND: f64 = 12.0;
/// `6√6`, the real-separable bound.
pub const REAL_BOUND: f64 = 14.696938456699067;
/// Algebraic and complex maximum.
pub const COMPLEX_BOUND: f64 = 18.0;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BoundsError {
    #[error("bracket letters are 1, 2, 3; got {0}")]
    BadLetter(u8),
    #[error("invalid bracket word {0:?}")]
    BadWord(String),
    #[error("invalid coefficient {0}")]
    BadCoefficient(String),
    #[error("linear coefficients differ: {0:?}")]
    Asymmetric(Vec<String>),
    #[error("linear coefficient {0} is not negative, no bound follows")]
    NoBound(String),
    #[error("coefficient {0} still depends on t or x; instantiate first")]
    Parametric(String),
    #[error("t must be nonzero")]
    ZeroT,
    #[error("invalid rational parameter {0:?}")]
    BadParameter(String),
    #[error("certificate file: {0}")]
    BadCertificateFile(String),
    #[error("at least one trial is required")]
    ZeroTrials,
    #[error("perturbation scale must be positive and finite, got {0}")]
    BadScale(f64),
}
