//! Crate-wide error type.
//!
//! Errors fall into three classes that the CLI maps to distinct exit codes:
//! configuration (bad arguments, invalid filter/model settings), data
//! (missing or malformed files, shape mismatches in inputs), and numerical
//! failures (NaN/Inf detected during training).

use std::path::PathBuf;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    // -- audio --
    #[error("audio file not found: {0}")]
    AudioFileMissing(PathBuf),
    #[error("malformed WAV file {path}: {detail}")]
    MalformedWav { path: PathBuf, detail: String },
    #[error("unsupported WAV format in {path}: {detail}")]
    UnsupportedWav { path: PathBuf, detail: String },
    #[error("cannot write audio to {path}: {detail}")]
    AudioWrite { path: PathBuf, detail: String },
    #[error("empty audio buffer")]
    EmptyBuffer,

    // -- dsp --
    #[error("filter cutoff {0} outside (0, 1)")]
    CutoffOutOfRange(f64),
    #[error("invalid filter design parameter: {0}")]
    FilterDesign(String),
    #[error("buffer too short for zero-phase filtering: {len} samples, need > {min}")]
    BufferTooShort { len: usize, min: usize },
    #[error("decimation requires an integer ratio, got {0} (use fft_resample)")]
    NonIntegerRatio(f64),
    #[error("sample rate mismatch: buffer at {actual} Hz, expected {expected} Hz")]
    RateMismatch { actual: u32, expected: u32 },
    #[error("invalid ratio spec: {0}")]
    InvalidRatio(String),

    // -- spectral --
    #[error("STFT hop length must be positive")]
    ZeroHop,
    #[error("invalid STFT configuration: {0}")]
    InvalidStftConfig(String),
    #[error("signal length mismatch: {a} vs {b} samples")]
    LengthMismatch { a: usize, b: usize },

    // -- nn --
    #[error("tensor shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("backward requires a scalar loss, got shape {0:?}")]
    NonScalarLoss(Vec<usize>),
    #[error("checkpoint error: {0}")]
    Checkpoint(String),

    // -- pipeline --
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("corpus error: {0}")]
    Corpus(String),
    #[error("non-finite value detected during training at step {step}: {detail}")]
    NumericalFailure { step: u64, detail: String },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("serialization error: {0}")]
    Serde(#[from] serde_json::Error),
}

/// Coarse error class, used for CLI exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Config,
    Data,
    Numerical,
    Other,
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        use Error::*;
        match self {
            CutoffOutOfRange(_) | FilterDesign(_) | InvalidRatio(_) | ZeroHop
            | InvalidStftConfig(_) | Config(_) | NonScalarLoss(_) => ErrorClass::Config,
            AudioFileMissing(_) | MalformedWav { .. } | UnsupportedWav { .. }
            | AudioWrite { .. } | EmptyBuffer | BufferTooShort { .. } | NonIntegerRatio(_)
            | RateMismatch { .. } | LengthMismatch { .. } | ShapeMismatch(_)
            | Checkpoint(_) | Corpus(_) => ErrorClass::Data,
            NumericalFailure { .. } => ErrorClass::Numerical,
            Io(_) | Serde(_) => ErrorClass::Other,
        }
    }

    /// Exit code for the CLI: 0 success, 1 other, 2 config, 3 data, 4 numerical.
    pub fn exit_code(&self) -> i32 {
        match self.class() {
            ErrorClass::Config => 2,
            ErrorClass::Data => 3,
            ErrorClass::Numerical => 4,
            ErrorClass::Other => 1,
        }
    }
}
