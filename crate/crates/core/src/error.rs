//! Error type shared by all operations, with stable machine-readable
//! codes used by the HTTP service and the CLI exit-code mapping.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A probability level outside the supported range, or one that
    /// produces a non-positive threshold.
    #[error("invalid level: {0}")]
    InvalidLevel(String),

    /// Fewer than two observations; the covariance normalization 1/(s-1)
    /// is undefined.
    #[error("insufficient samples: {0}")]
    InsufficientSamples(String),

    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    /// The corrected deviation is undefined for this (N, s): the radicand
    /// of the finite-sample correction is non-positive.
    #[error("degenerate shape: {0}")]
    DegenerateShape(String),

    /// N = s makes the detection-threshold denominator vanish.
    #[error("degenerate aspect ratio: {0}")]
    DegenerateAspect(String),

    /// No eigenvalue beyond the first satisfies the detection bound.
    #[error("no noise subspace: {0}")]
    NoNoiseSubspace(String),

    /// The smallest retained eigenvalue sits at or below the rank
    /// tolerance, so ratio tests against it are meaningless.
    #[error("degenerate eigenvalue floor: {0}")]
    DegenerateFloor(String),

    #[error("degenerate spike: {0}")]
    DegenerateSpike(String),

    #[error("empty noise set: {0}")]
    EmptyNoiseSet(String),

    /// The median baseline is only defined for aspect ratios in (0, 1].
    #[error("unsupported regime: {0}")]
    UnsupportedRegime(String),

    #[error("degenerate spectrum: {0}")]
    DegenerateSpectrum(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Stable kebab-case code for transport and exit-code mapping.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidArgument(_) => "invalid-argument",
            Error::InvalidLevel(_) => "invalid-level",
            Error::InsufficientSamples(_) => "insufficient-samples",
            Error::InvalidMatrix(_) => "invalid-matrix",
            Error::DegenerateShape(_) => "degenerate-shape",
            Error::DegenerateAspect(_) => "degenerate-aspect",
            Error::NoNoiseSubspace(_) => "no-noise-subspace",
            Error::DegenerateFloor(_) => "degenerate-floor",
            Error::DegenerateSpike(_) => "degenerate-spike",
            Error::EmptyNoiseSet(_) => "empty-noise-set",
            Error::UnsupportedRegime(_) => "unsupported-regime",
            Error::DegenerateSpectrum(_) => "degenerate-spectrum",
            Error::Parse(_) => "parse",
            Error::Io(_) => "io",
        }
    }
}
