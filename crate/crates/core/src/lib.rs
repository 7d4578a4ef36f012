//! Tools for the three-party real-versus-complex quantum network test.
//!
//! Two entangled sources feed the parties `A`, `B` and `C`; the middle party
//! `B` performs a joint two-qubit measurement chosen from six settings, one per
//! permutation of `{1, 2, 3}`. The Bell-type functional `F` assembled from the
//! 72 signed three-party correlations separates three models:
//!
//! | model | maximum of `F` |
//! |-------|----------------|
//! | local hidden variables | 12 |
//! | real quantum theory, separable sources | ≤ 6√6 ≈ 14.6969 |
//! | complex quantum theory | 18 |
//!
//! The crate is organised by capability:
//!
//! - [`qsim`]: dense four-qubit statevector simulation (wires `A,P,Q,C`),
//!   exact outcome distributions, noisy distributions and seeded shot sampling.
//! - [`gates`]: gate sequences, the `G_η` pre-rotations, decompositions into
//!   the native basis `{X, X₊, Z_θ, ECR↓}` and equivalence up to global phase.
//! - [`witness`]: settings, sign rules, the `pq → b` outcome table, correlation
//!   assembly, `F`, its shot-noise error and no-signaling audits.
//! - [`bounds`]: the classical bound by enumeration, the complex construction
//!   reaching 18, exact sum-of-squares certificate checking for the real
//!   bounds, and random-strategy sampling oracles.
//! - [`cli`]: run configuration, the counts file schema, result emission and
//!   the subcommands behind the `qreal` binary.
//!
//! ```
//! use qreal::witness::{exact_witness, WitnessRunOptions};
//!
//! let result = exact_witness(&WitnessRunOptions::default()).unwrap();
//! assert!((result.f - 18.0).abs() < 1e-9);
//! ```

pub mod bounds;
pub mod cli;
pub mod gates;
pub mod qsim;
pub mod witness;

pub use num_complex::Complex64;

/// Dense complex matrix used for 2×2 and 4×4 gate unitaries.
pub type CMatrix = nalgebra::DMatrix<Complex64>;
