//! Filter design, decimation, and resampling.
//!
//! Narrowband training data is produced the classical way: an order-8
//! Chebyshev type I low-pass (0.05 dB ripple, cutoff at 0.8x the new
//! Nyquist) applied forward-backward for zero phase, followed by
//! subsampling. Arbitrary-rate conversion, including the interpolation
//! baseline and the preprocessing in front of the generator, goes through
//! `fft_resample` (frequency-domain zero padding / truncation).

use rustfft::num_complex::Complex;
use rustfft::FftPlanner;

use crate::audio::AudioBuffer;
use crate::error::{Error, Result};

/// One biquad stage: numerator `b0,b1,b2` over denominator `1,a1,a2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SosSection {
    pub b: [f64; 3],
    pub a: [f64; 2],
}

impl SosSection {
    /// Larger pole magnitude of this section.
    pub fn pole_magnitude(&self) -> f64 {
        // roots of z^2 + a1 z + a2
        let (a1, a2) = (self.a[0], self.a[1]);
        let disc = a1 * a1 - 4.0 * a2;
        if disc >= 0.0 {
            let r = disc.sqrt();
            ((-a1 + r) * 0.5).abs().max(((-a1 - r) * 0.5).abs())
        } else {
            a2.sqrt()
        }
    }

    fn dc_gain(&self) -> f64 {
        (self.b[0] + self.b[1] + self.b[2]) / (1.0 + self.a[0] + self.a[1])
    }
}

/// Cascade of second-order sections with its design metadata.
#[derive(Debug, Clone, PartialEq)]
pub struct SosFilter {
    sections: Vec<SosSection>,
    order: usize,
    ripple_db: f64,
    cutoff: f64,
}

impl SosFilter {
    pub fn sections(&self) -> &[SosSection] {
        &self.sections
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn ripple_db(&self) -> f64 {
        self.ripple_db
    }

    /// Cutoff as a fraction of Nyquist.
    pub fn cutoff(&self) -> f64 {
        self.cutoff
    }

    /// Complex frequency response at `freq` (fraction of Nyquist, 0..=1).
    pub fn response(&self, freq: f64) -> Complex<f64> {
        let w = std::f64::consts::PI * freq;
        let z_inv = Complex::from_polar(1.0, -w);
        let z_inv2 = z_inv * z_inv;
        self.sections.iter().fold(Complex::new(1.0, 0.0), |acc, s| {
            let num = Complex::new(s.b[0], 0.0) + z_inv * s.b[1] + z_inv2 * s.b[2];
            let den = Complex::new(1.0, 0.0) + z_inv * s.a[0] + z_inv2 * s.a[1];
            acc * num / den
        })
    }

    pub fn is_stable(&self) -> bool {
        self.sections.iter().all(|s| s.pole_magnitude() < 1.0)
    }
}

/// Upsampling ratio between a narrowband and a wideband rate.
///
/// The ratio `s = f_high / f_low` is kept as the exact rate pair, so
/// `f_high = s * f_low` holds by construction. For requested ratios whose
/// narrowband rate is not an integer (e.g. 3x from 16 kHz), the narrowband
/// rate is rounded to the nearest Hz and the effective ratio shifts
/// accordingly.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RatioSpec {
    f_low: u32,
    f_high: u32,
}

impl RatioSpec {
    pub fn new(f_low: u32, f_high: u32) -> Result<Self> {
        if f_low == 0 || f_high <= f_low {
            return Err(Error::InvalidRatio(format!(
                "need 0 < f_low < f_high, got {f_low}/{f_high}"
            )));
        }
        Ok(Self { f_low, f_high })
    }

    /// Builds the spec for a requested ratio at a fixed wideband rate.
    pub fn from_target(f_high: u32, ratio: f64) -> Result<Self> {
        if !(ratio > 1.0) || !ratio.is_finite() {
            return Err(Error::InvalidRatio(format!("ratio {ratio} must be > 1")));
        }
        let f_low = (f_high as f64 / ratio).round() as u32;
        Self::new(f_low.max(1), f_high)
    }

    pub fn f_low(&self) -> u32 {
        self.f_low
    }

    pub fn f_high(&self) -> u32 {
        self.f_high
    }

    /// The exact upsampling ratio `f_high / f_low`.
    pub fn s(&self) -> f64 {
        self.f_high as f64 / self.f_low as f64
    }

    /// Narrowband bandwidth `f_low / 2` in Hz.
    pub fn b_low(&self) -> f64 {
        self.f_low as f64 / 2.0
    }

    /// Wideband bandwidth `f_high / 2` in Hz.
    pub fn b_high(&self) -> f64 {
        self.f_high as f64 / 2.0
    }

    /// Integer ratio if `f_low` divides `f_high` exactly.
    pub fn integer_ratio(&self) -> Option<usize> {
        if self.f_high % self.f_low == 0 {
            Some((self.f_high / self.f_low) as usize)
        } else {
            None
        }
    }
}

/// Designs an even-order Chebyshev type I low-pass filter.
///
/// `cutoff` is a fraction of Nyquist in (0, 1). The gain is normalized so
/// the DC response is exactly unity; the passband then ripples within
/// `+ripple_db` of unity. Design is fully deterministic.
pub fn design_cheby1_lowpass(order: usize, ripple_db: f64, cutoff: f64) -> Result<SosFilter> {
    if !(cutoff > 0.0 && cutoff < 1.0) {
        return Err(Error::CutoffOutOfRange(cutoff));
    }
    if !(ripple_db > 0.0) {
        return Err(Error::FilterDesign(format!("ripple {ripple_db} dB must be > 0")));
    }
    if order == 0 || order % 2 != 0 {
        return Err(Error::FilterDesign(format!("order {order} must be even and > 0")));
    }

    let n = order;
    let eps = (10f64.powf(ripple_db / 10.0) - 1.0).sqrt();
    let mu = (1.0 / eps).asinh() / n as f64;

    // Analog prototype poles on the Chebyshev ellipse (cutoff 1 rad/s),
    // scaled to the prewarped cutoff, then mapped by the bilinear transform
    // (fs = 2, so the transform constant is 4).
    let warped = 4.0 * (std::f64::consts::PI * cutoff / 2.0).tan();
    let mut gain = Complex::new(1.0, 0.0);
    let mut digital_poles: Vec<Complex<f64>> = Vec::with_capacity(n);
    for k in 1..=n {
        let theta = std::f64::consts::PI * (2 * k - 1) as f64 / (2 * n) as f64;
        let p = Complex::new(-mu.sinh() * theta.sin(), mu.cosh() * theta.cos()) * warped;
        gain *= -p; // analog gain = prod(-p) (even order adjusted below)
        let fs2 = Complex::new(4.0, 0.0);
        digital_poles.push((fs2 + p) / (fs2 - p));
        gain /= fs2 - p; // bilinear gain factor (zeros of the prototype are at infinity)
    }
    let mut k_digital = gain.re / (1.0 + eps * eps).sqrt(); // even order: |H(0)| = 1/sqrt(1+eps^2)

    // Pair conjugate poles into sections, innermost pole pairs first.
    let mut upper: Vec<Complex<f64>> = digital_poles.into_iter().filter(|p| p.im > 0.0).collect();
    if upper.len() != n / 2 {
        return Err(Error::FilterDesign("expected strictly complex pole pairs".into()));
    }
    upper.sort_by(|a, b| a.norm_sqr().partial_cmp(&b.norm_sqr()).unwrap());

    // All numerator zeros sit at z = -1; fold the cascade gain plus the
    // unity-DC normalization into the first section.
    let dc_total: f64 = upper
        .iter()
        .map(|p| {
            let (a1, a2) = (-2.0 * p.re, p.norm_sqr());
            4.0 / (1.0 + a1 + a2) // (1 + z^-1)^2 numerator evaluates to 4 at z = 1
        })
        .product::<f64>()
        * k_digital;
    k_digital /= dc_total;

    let sections = upper
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let scale = if i == 0 { k_digital } else { 1.0 };
            SosSection {
                b: [scale, 2.0 * scale, scale],
                a: [-2.0 * p.re, p.norm_sqr()],
            }
        })
        .collect::<Vec<_>>();

    let filter = SosFilter { sections, order: n, ripple_db, cutoff };
    if !filter.is_stable() {
        return Err(Error::FilterDesign("unstable design".into()));
    }
    Ok(filter)
}

/// Steady-state initial conditions per section for a unit-amplitude input,
/// scaled through the cascade DC gains (the standard transient-suppression
/// initialization for forward-backward filtering).
fn sosfilt_zi(filter: &SosFilter) -> Vec<[f64; 2]> {
    let mut zis = Vec::with_capacity(filter.sections.len());
    let mut scale = 1.0;
    for s in &filter.sections {
        let g = s.dc_gain();
        zis.push([scale * (g - s.b[0]), scale * (s.b[2] - s.a[1] * g)]);
        scale *= g;
    }
    zis
}

/// Direct-form II transposed cascade with initial conditions `zi` scaled by `x0`.
fn sosfilt(filter: &SosFilter, x: &[f64], zi: &[[f64; 2]], x0: f64) -> Vec<f64> {
    let mut y = x.to_vec();
    for (s, z) in filter.sections.iter().zip(zi) {
        let (mut z1, mut z2) = (z[0] * x0, z[1] * x0);
        for v in y.iter_mut() {
            let xn = *v;
            let yn = s.b[0] * xn + z1;
            z1 = s.b[1] * xn - s.a[0] * yn + z2;
            z2 = s.b[2] * xn - s.a[1] * yn;
            *v = yn;
        }
    }
    y
}

/// Zero-phase (forward-backward) filtering with odd-symmetric edge padding
/// of `3 * order` samples. The effective magnitude response is the squared
/// filter response; phase distortion cancels exactly.
pub fn sosfiltfilt(filter: &SosFilter, buf: &AudioBuffer) -> Result<AudioBuffer> {
    let pad = 3 * filter.order();
    let n = buf.len();
    if n <= pad {
        return Err(Error::BufferTooShort { len: n, min: pad });
    }
    let x = buf.samples();

    // odd extension: 2*x[edge] - x[mirrored]
    let mut ext = Vec::with_capacity(n + 2 * pad);
    for i in (1..=pad).rev() {
        ext.push(2.0 * x[0] - x[i]);
    }
    ext.extend_from_slice(x);
    for i in (n - pad - 1..n - 1).rev() {
        ext.push(2.0 * x[n - 1] - x[i]);
    }

    let zi = sosfilt_zi(filter);
    let fwd = sosfilt(filter, &ext, &zi, ext[0]);
    let mut rev: Vec<f64> = fwd.into_iter().rev().collect();
    rev = sosfilt(filter, &rev, &zi, rev[0]);
    rev.reverse();

    AudioBuffer::new(rev[pad..pad + n].to_vec(), buf.sample_rate())
}

/// Anti-alias filters and subsamples by an integer ratio.
///
/// The buffer must already be at the wideband rate of `ratio`; the output
/// is at `f_low` with `floor(len / s)` samples. Non-integer ratios are
/// rejected (use [`fft_resample`] for those).
pub fn decimate(buf: &AudioBuffer, ratio: &RatioSpec) -> Result<AudioBuffer> {
    let s = ratio.integer_ratio().ok_or(Error::NonIntegerRatio(ratio.s()))?;
    if s < 2 {
        return Err(Error::InvalidRatio(format!("decimation ratio {s} must be >= 2")));
    }
    if buf.sample_rate() != ratio.f_high() {
        return Err(Error::RateMismatch { actual: buf.sample_rate(), expected: ratio.f_high() });
    }
    let filter = design_cheby1_lowpass(8, 0.05, 0.8 / s as f64)?;
    let filtered = sosfiltfilt(&filter, buf)?;
    let out_len = buf.len() / s;
    let samples: Vec<f64> = (0..out_len).map(|i| filtered.samples()[i * s]).collect();
    AudioBuffer::new(samples, ratio.f_low())
}

/// Resamples by zero-padding or truncating the spectrum.
///
/// Output length is `round(len * target_rate / source_rate)`. Band-limited
/// content in the shared band is preserved exactly up to rounding; content
/// above the new Nyquist is removed, and no new content appears above the
/// old Nyquist when upsampling.
pub fn fft_resample(buf: &AudioBuffer, target_rate: u32) -> Result<AudioBuffer> {
    if buf.is_empty() {
        return Err(Error::EmptyBuffer);
    }
    if target_rate == 0 {
        return Err(Error::Config("target rate must be positive".into()));
    }
    if target_rate == buf.sample_rate() {
        return Ok(buf.clone());
    }
    let n = buf.len();
    let src = buf.sample_rate() as u128;
    let m_exact = (n as u128) * (target_rate as u128);
    let m = ((2 * m_exact + src) / (2 * src)) as usize; // round(n * target / src)
    if m == 0 {
        return Err(Error::Config(format!(
            "resampling {n} samples to rate {target_rate} yields an empty signal"
        )));
    }

    let mut planner = FftPlanner::<f64>::new();
    let fft = planner.plan_fft_forward(n);
    let mut spec: Vec<Complex<f64>> =
        buf.samples().iter().map(|&v| Complex::new(v, 0.0)).collect();
    fft.process(&mut spec);

    let mut out_spec = vec![Complex::new(0.0, 0.0); m];
    let keep = n.min(m);
    let nyq = keep / 2 + 1;
    out_spec[..nyq].copy_from_slice(&spec[..nyq]);
    if keep > 2 {
        let tail = keep - nyq;
        out_spec[m - tail..].copy_from_slice(&spec[n - tail..]);
    }
    if keep % 2 == 0 {
        if m < n {
            // fold the aliased negative-frequency component onto the new Nyquist bin
            out_spec[keep / 2] += spec[n - keep / 2];
        } else if m > n {
            // split the old Nyquist bin between the two half-spectra
            out_spec[keep / 2] *= 0.5;
            out_spec[m - keep / 2] = out_spec[keep / 2];
        }
    }

    let ifft = planner.plan_fft_inverse(m);
    ifft.process(&mut out_spec);
    // rustfft is unnormalized: ifft/n restores amplitude, times m/n for the
    // length change -> net 1/n.
    let samples: Vec<f64> = out_spec.iter().map(|c| c.re / n as f64).collect();
    AudioBuffer::new(samples, target_rate)
}
