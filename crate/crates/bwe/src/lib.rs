//! Speech bandwidth expansion toolkit.
//!
//! Reconstructs wideband speech from narrowband input with a GAN vocoder:
//! the narrowband signal is resampled to the target rate, encoded as a
//! mel-spectrogram, and a convolutional generator synthesizes the missing
//! high-frequency content directly in the waveform domain. Because the
//! resampling step normalizes every input to the same rate, one model
//! serves arbitrary upsampling ratios, including ratios never seen in
//! training.
//!
//! The crate is organized as a library with a thin `bwe` CLI on top:
//!
//! - [`audio`] — WAV I/O and peak normalization
//! - [`dsp`] — Chebyshev low-pass design, zero-phase filtering, decimation,
//!   FFT resampling (corpus preparation and the interpolation baseline)
//! - [`spectral`] — STFT, mel-spectrogram, and the log-spectral-distance
//!   metric used for evaluation
//! - [`nn`] — a small f64 tensor library with reverse-mode differentiation,
//!   the convolution/activation ops the models need, AdamW, and checkpoints
//! - [`model`] — the upsampling generator (transposed convolutions with
//!   multi-receptive-field residual fusion) and the multi-period /
//!   multi-scale discriminators
//! - [`losses`] — least-squares adversarial, mel-reconstruction, and
//!   feature-matching objectives
//! - [`pipeline`] — corpus preparation, training loops, evaluation,
//!   zero-shot ratio sweeps, and report/spectrogram emission
//!
//! See the `examples/` directory for a runnable walkthrough of each
//! capability.

pub mod audio;
pub mod dsp;
pub mod error;
pub mod losses;
pub mod model;
pub mod nn;
pub mod pipeline;
pub mod spectral;

pub use audio::AudioBuffer;
pub use error::{Error, Result};
