//! Estimation of additive Gaussian noise variance from the eigenvalue
//! spectrum of a sample covariance matrix.
//!
//! The estimator splits a descending eigenvalue spectrum into signal and
//! noise subsets with a detection threshold derived from the Tracy-Widom
//! law for the largest Wishart eigenvalue, averages the noise subset, and
//! caps the result with a bias-corrected bound built from an
//! overestimation threshold. A Monte Carlo harness with a counter-based
//! RNG validates the estimators against ground truth.
//!
//! Module map:
//! - [`rmt`]: Tracy-Widom CDF/quantiles, Marchenko-Pastur quantities, and
//!   the centering/scaling constants the thresholds depend on.
//! - [`spectrum`]: sample covariance construction and the symmetric
//!   eigensolvers behind it.
//! - [`estimator`]: thresholds, spectrum split, and the min-rule noise
//!   variance estimate.
//! - [`simulation`]: reproducible Gaussian/Wishart ensembles and the
//!   coverage/comparison experiments.
//! - [`io`]: CSV matrices, PGM images, and patch extraction.
//! - [`report`]: stable JSON/CSV report types emitted by the service and
//!   the CLI.

pub mod error;
pub mod estimator;
pub mod io;
pub mod matrix;
pub mod report;
pub mod rmt;
pub mod rng;
pub mod simulation;
pub mod spectrum;

pub use error::Error;

/// Crate version embedded in every report for provenance.
pub const ARTIFACT_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Convenience alias used across the crate.
pub type Result<T> = std::result::Result<T, Error>;
