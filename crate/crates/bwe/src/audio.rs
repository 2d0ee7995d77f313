//! WAV I/O and waveform normalization.
//!
//! All signals in the toolkit are mono `f64` sample vectors in `[-1, 1]`
//! paired with a sample rate. Files are read from RIFF/WAVE (integer PCM or
//! 32-bit float, 1-2 channels, averaged to mono) and always written back as
//! 16-bit PCM mono, little-endian.

use std::path::Path;

use crate::error::{Error, Result};

/// Mono waveform with its sample rate.
#[derive(Debug, Clone, PartialEq)]
pub struct AudioBuffer {
    samples: Vec<f64>,
    sample_rate: u32,
}

impl AudioBuffer {
    /// Wraps samples at a given rate. Rejects a zero rate and non-finite samples.
    pub fn new(samples: Vec<f64>, sample_rate: u32) -> Result<Self> {
        if sample_rate == 0 {
            return Err(Error::Config("sample rate must be positive".into()));
        }
        if samples.iter().any(|s| !s.is_finite()) {
            return Err(Error::Config("non-finite sample value".into()));
        }
        Ok(Self { samples, sample_rate })
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn into_samples(self) -> Vec<f64> {
        self.samples
    }

    pub fn sample_rate(&self) -> u32 {
        self.sample_rate
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn duration_seconds(&self) -> f64 {
        self.samples.len() as f64 / self.sample_rate as f64
    }

    /// Largest absolute sample value (0 for an empty buffer).
    pub fn peak(&self) -> f64 {
        self.samples.iter().fold(0.0, |m, s| m.max(s.abs()))
    }

    /// Root-mean-square amplitude.
    pub fn rms(&self) -> f64 {
        if self.samples.is_empty() {
            return 0.0;
        }
        (self.samples.iter().map(|s| s * s).sum::<f64>() / self.samples.len() as f64).sqrt()
    }
}

/// Reads a WAV file as a mono buffer.
///
/// Integer PCM samples are scaled by `1 / 2^(bits-1)`; 32-bit float samples
/// are clamped to `[-1, 1]`. Stereo files are averaged to mono. Files with
/// more than two channels are rejected.
pub fn read_wav<P: AsRef<Path>>(path: P) -> Result<AudioBuffer> {
    let path = path.as_ref();
    if !path.exists() {
        return Err(Error::AudioFileMissing(path.to_path_buf()));
    }
    let reader = hound::WavReader::open(path).map_err(|e| Error::MalformedWav {
        path: path.to_path_buf(),
        detail: e.to_string(),
    })?;
    let spec = reader.spec();
    if spec.channels == 0 || spec.channels > 2 {
        return Err(Error::UnsupportedWav {
            path: path.to_path_buf(),
            detail: format!("{} channels (supported: 1-2)", spec.channels),
        });
    }

    let interleaved: Vec<f64> = match spec.sample_format {
        hound::SampleFormat::Int => {
            let scale = 1.0 / f64::from(1u32 << (spec.bits_per_sample - 1));
            reader
                .into_samples::<i32>()
                .map(|s| s.map(|v| v as f64 * scale))
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| Error::MalformedWav {
                    path: path.to_path_buf(),
                    detail: e.to_string(),
                })?
        }
        hound::SampleFormat::Float => reader
            .into_samples::<f32>()
            .map(|s| s.map(|v| f64::from(v).clamp(-1.0, 1.0)))
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::MalformedWav {
                path: path.to_path_buf(),
                detail: e.to_string(),
            })?,
    };

    let samples = if spec.channels == 1 {
        interleaved
    } else {
        interleaved.chunks_exact(2).map(|c| 0.5 * (c[0] + c[1])).collect()
    };
    AudioBuffer::new(samples, spec.sample_rate)
}

/// Writes a buffer as mono 16-bit PCM.
///
/// Samples are clamped to `[-1, 1]` and quantized as `round(s * 32768)`
/// saturated to `i16`, so a read-back differs from the original by at most
/// `2^-15` per sample.
pub fn write_wav<P: AsRef<Path>>(buf: &AudioBuffer, path: P) -> Result<()> {
    let path = path.as_ref();
    let spec = hound::WavSpec {
        channels: 1,
        sample_rate: buf.sample_rate(),
        bits_per_sample: 16,
        sample_format: hound::SampleFormat::Int,
    };
    let mut writer = hound::WavWriter::create(path, spec).map_err(|e| Error::AudioWrite {
        path: path.to_path_buf(),
        detail: e.to_string(),
    })?;
    for &s in buf.samples() {
        let q = (s.clamp(-1.0, 1.0) * 32768.0).round().clamp(-32768.0, 32767.0) as i16;
        writer.write_sample(q).map_err(|e| Error::AudioWrite {
            path: path.to_path_buf(),
            detail: e.to_string(),
        })?;
    }
    writer.finalize().map_err(|e| Error::AudioWrite {
        path: path.to_path_buf(),
        detail: e.to_string(),
    })
}

/// Scales the buffer so its peak equals `target`.
///
/// An all-zero buffer is returned unchanged (silence clips are common in
/// corpora). Errors on an empty buffer or a target outside `(0, 1]`.
pub fn peak_normalize(buf: &AudioBuffer, target: f64) -> Result<AudioBuffer> {
    if buf.is_empty() {
        return Err(Error::EmptyBuffer);
    }
    if !(target > 0.0 && target <= 1.0) {
        return Err(Error::Config(format!("normalization target {target} outside (0, 1]")));
    }
    let peak = buf.peak();
    if peak == 0.0 {
        return Ok(buf.clone());
    }
    let gain = target / peak;
    AudioBuffer::new(buf.samples().iter().map(|s| s * gain).collect(), buf.sample_rate())
}
