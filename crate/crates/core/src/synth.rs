//! Seeded synthetic motion with a known clean/noisy decomposition.
//!
//! Everything here is an oracle for the refinement pipeline: the clean
//! signal is known exactly, noise is injected in the DCT domain so the true
//! high-band energy ratio is controllable in closed form, and all
//! randomness flows from one 64-bit seed through documented per-channel
//! sub-streams (see [`crate::rng`]), so outputs are reproducible bit for
//! bit.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::motion::{reassemble, split_channels, Channel, CoreError, MotionSequence};
use crate::rng::SplitMix64;
use crate::spectral::{high_freq_ratio, ChannelSpectrum, DctPlan, SpectralError};

/// Epsilon used when translating a target ratio into a target energy; the
/// same guard [`high_freq_ratio`] applies, so the measured ratio lands on
/// the target exactly up to rounding.
const RATIO_EPSILON: f64 = 1e-8;
/// Sinusoid-mix bins stay strictly below this index, which matches the
/// default refinement cutoff, so generated motion is band-limited for the
/// default config.
const LOW_BAND_BINS: usize = 10;
const MAX_POLY_DEGREE: usize = 3;

#[derive(Debug, Error, PartialEq)]
pub enum SynthError {
    #[error("target ratio must lie strictly inside (0, 1), got {value}")]
    TargetRatioOutOfRange { value: f64 },
    #[error("sigma must be nonnegative and finite, got {value}")]
    BadSigma { value: f64 },
    #[error("cutoff k0 = {k0} must be below the frame count {frames}")]
    CutoffOutOfRange { k0: usize, frames: usize },
    #[error("channel {channel} has zero energy, no spectral ratio can be targeted")]
    DegenerateChannel { channel: usize },
    #[error("channel {channel}: existing high-band energy exceeds what the target ratio allows")]
    TargetRatioUnreachable { channel: usize },
    #[error("polynomial degree {degree} exceeds the supported maximum {MAX_POLY_DEGREE}")]
    DegreeTooHigh { degree: usize },
    #[error(transparent)]
    Motion(#[from] CoreError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum MotionKind {
    /// Up to five cosines per channel, all below the default cutoff.
    SinusoidMix,
    /// Per-channel polynomial in the frame index with dyadic coefficients,
    /// so evaluation is exact in f64 and low degrees have bitwise-zero jerk.
    Polynomial { max_degree: usize },
    /// Offset sinusoid with per-channel phase and a slow linear drift.
    WalkLike,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum NoiseSpec {
    None,
    /// Gaussian DCT coefficients added at `k >= k0`, scaled so the channel's
    /// measured high-band ratio equals `target_ratio`.
    HighBand { k0: usize, target_ratio: f64 },
    /// I.i.d. Gaussian displacement of every position.
    White { sigma: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SynthSpec {
    pub frames: usize,
    pub joints: usize,
    pub fps: f64,
    pub kind: MotionKind,
    pub seed: u64,
    pub noise: NoiseSpec,
}

impl SynthSpec {
    pub fn validate(&self) -> Result<(), SynthError> {
        if self.frames == 0 || self.joints == 0 {
            return Err(SynthError::Motion(CoreError::EmptySequence));
        }
        if !(self.fps.is_finite() && self.fps > 0.0) {
            return Err(SynthError::Motion(CoreError::InvalidFps { fps: self.fps }));
        }
        if let MotionKind::Polynomial { max_degree } = self.kind {
            if max_degree > MAX_POLY_DEGREE {
                return Err(SynthError::DegreeTooHigh { degree: max_degree });
            }
        }
        match self.noise {
            NoiseSpec::None => {}
            NoiseSpec::HighBand { k0, target_ratio } => {
                if !(target_ratio > 0.0 && target_ratio < 1.0) {
                    return Err(SynthError::TargetRatioOutOfRange { value: target_ratio });
                }
                if k0 >= self.frames {
                    return Err(SynthError::CutoffOutOfRange { k0, frames: self.frames });
                }
            }
            NoiseSpec::White { sigma } => {
                if !(sigma.is_finite() && sigma >= 0.0) {
                    return Err(SynthError::BadSigma { value: sigma });
                }
            }
        }
        Ok(())
    }
}

/// Clean signal plus its noisy counterpart and per-channel bookkeeping.
#[derive(Debug, Clone, PartialEq)]
pub struct SynthOutput {
    pub clean: MotionSequence,
    pub noisy: MotionSequence,
    /// Energy of the added noise per channel, canonical channel order.
    pub noise_energy: Vec<f64>,
    /// Measured post-injection high-band ratio per channel; present only
    /// for high-band noise.
    pub measured_rho: Option<Vec<f64>>,
}

/// Dyadic coefficient with magnitude in [0.5, 2.0]: an integer multiple of
/// 2^-20, scaled by 8^-degree to keep high-degree terms bounded. All exact
/// in f64.
fn dyadic_coeff(rng: &mut SplitMix64, degree: usize) -> f64 {
    let lo = 1u64 << 19; // 0.5 in units of 2^-20
    let hi = 1u64 << 21; // 2.0
    let m = lo + rng.next_u64() % (hi - lo + 1);
    let sign = if rng.next_u64() & 1 == 0 { 1.0 } else { -1.0 };
    sign * m as f64 * (0.5f64).powi(20) * (0.125f64).powi(degree as i32)
}

fn clean_channel(spec: &SynthSpec, channel: usize, plan: &DctPlan) -> Vec<f64> {
    let mut rng = SplitMix64::new(SplitMix64::sub_seed(spec.seed, channel));
    let n = spec.frames;
    match spec.kind {
        MotionKind::SinusoidMix => {
            let bins = LOW_BAND_BINS.min(n);
            let mut coeffs = vec![0.0; n];
            let components = 1 + rng.next_u64() % 5;
            for _ in 0..components {
                let bin = (rng.next_u64() % bins as u64) as usize;
                let sign = if rng.next_u64() & 1 == 0 { 1.0 } else { -1.0 };
                coeffs[bin] += sign * rng.next_range(0.5, 2.0);
            }
            let spectrum = ChannelSpectrum::from_coeffs(coeffs).expect("nonempty");
            plan.idct(&spectrum).expect("plan length matches")
        }
        MotionKind::Polynomial { max_degree } => {
            let coeffs: Vec<f64> =
                (0..=max_degree).map(|d| dyadic_coeff(&mut rng, d)).collect();
            // Horner on the integer frame index: exact for dyadic coefficients
            (0..n)
                .map(|t| coeffs.iter().rev().fold(0.0, |acc, &c| acc * t as f64 + c))
                .collect()
        }
        MotionKind::WalkLike => {
            let offset = rng.next_range(-1.0, 1.0);
            let stride = rng.next_range(0.2, 1.0);
            let cycles = (1 + rng.next_u64() % 4) as f64;
            let phase = rng.next_range(0.0, std::f64::consts::TAU);
            let drift = rng.next_range(-0.5, 0.5);
            (0..n)
                .map(|t| {
                    let u = t as f64 / n as f64;
                    offset + stride * (std::f64::consts::TAU * cycles * u + phase).sin()
                        + drift * u
                })
                .collect()
        }
    }
}

/// Deterministic clean motion for `spec` (the noise field is ignored here).
pub fn generate_clean(spec: &SynthSpec) -> Result<MotionSequence, SynthError> {
    spec.validate()?;
    let plan = DctPlan::new(spec.frames)?;
    let channels: Vec<Channel> = (0..spec.joints * 3)
        .map(|c| Channel {
            joint_index: c / 3,
            axis: crate::motion::Axis::from_index(c % 3),
            series: clean_channel(spec, c, &plan),
        })
        .collect();
    Ok(reassemble(&channels, spec.joints, spec.frames, spec.fps)?)
}

/// Adds zero-mean Gaussian DCT coefficients at `k >= k0` to every channel,
/// scaled per channel (closed-form quadratic in the scale) so the measured
/// high-band ratio equals `target_ratio`. Returns the noisy sequence and
/// the added energy per channel. Low-band coefficients are untouched.
pub fn inject_high_band_noise(
    motion: &MotionSequence,
    k0: usize,
    target_ratio: f64,
    seed: u64,
) -> Result<(MotionSequence, Vec<f64>), SynthError> {
    if !(target_ratio > 0.0 && target_ratio < 1.0) {
        return Err(SynthError::TargetRatioOutOfRange { value: target_ratio });
    }
    let frames = motion.frames();
    if k0 >= frames {
        return Err(SynthError::CutoffOutOfRange { k0, frames });
    }
    let plan = DctPlan::new(frames)?;
    let channels = split_channels(motion)?;
    let mut noisy = Vec::with_capacity(channels.len());
    let mut energies = Vec::with_capacity(channels.len());
    for (i, ch) in channels.iter().enumerate() {
        let spectrum = plan.dct(&ch.series)?;
        let total = spectrum.energy();
        if total == 0.0 {
            return Err(SynthError::DegenerateChannel { channel: i });
        }
        let high0 = spectrum.high_band_energy(k0);
        let low = total - high0;
        // ratio = high / (total + eps)  =>  target high-band energy:
        let target = target_ratio * (low + RATIO_EPSILON) / (1.0 - target_ratio);

        let mut rng = SplitMix64::new(SplitMix64::sub_seed(seed, i));
        let g: Vec<f64> = (k0..frames).map(|_| rng.next_normal()).collect();
        let mut coeffs = spectrum.coeffs().to_vec();
        let a: f64 = g.iter().map(|v| v * v).sum();
        let b: f64 = 2.0 * g.iter().zip(&coeffs[k0..]).map(|(gv, cv)| gv * cv).sum::<f64>();
        let c = high0 - target;
        let disc = b * b - 4.0 * a * c;
        if disc < 0.0 || a == 0.0 {
            return Err(SynthError::TargetRatioUnreachable { channel: i });
        }
        // larger root of a s^2 + b s + c, in the cancellation-free form
        let s = if b <= 0.0 {
            (-b + disc.sqrt()) / (2.0 * a)
        } else {
            -2.0 * c / (b + disc.sqrt())
        };
        for (cv, gv) in coeffs[k0..].iter_mut().zip(&g) {
            *cv += s * gv;
        }
        energies.push(s * s * a);
        let series = plan.idct(&ChannelSpectrum::from_coeffs(coeffs)?)?;
        noisy.push(Channel { joint_index: ch.joint_index, axis: ch.axis, series });
    }
    let out = reassemble(&noisy, motion.joints(), frames, motion.fps())?;
    Ok((out, energies))
}

/// Adds i.i.d. Gaussian displacement `sigma * N(0,1)` to every position,
/// one sub-seeded stream per channel.
pub fn add_white_noise(
    motion: &MotionSequence,
    sigma: f64,
    seed: u64,
) -> Result<MotionSequence, SynthError> {
    if !(sigma.is_finite() && sigma >= 0.0) {
        return Err(SynthError::BadSigma { value: sigma });
    }
    let channels = split_channels(motion)?;
    let noisy: Vec<Channel> = channels
        .iter()
        .enumerate()
        .map(|(i, ch)| {
            let mut rng = SplitMix64::new(SplitMix64::sub_seed(seed, i));
            Channel {
                joint_index: ch.joint_index,
                axis: ch.axis,
                series: ch.series.iter().map(|&x| x + sigma * rng.next_normal()).collect(),
            }
        })
        .collect();
    Ok(reassemble(&noisy, motion.joints(), motion.frames(), motion.fps())?)
}

/// Runs the full recipe: clean signal, then the requested noise. The noise
/// stream is seeded from `spec.seed` one step past the clean channels'
/// sub-seeds, so clean and noise randomness never overlap.
pub fn generate(spec: &SynthSpec) -> Result<SynthOutput, SynthError> {
    spec.validate()?;
    let clean = generate_clean(spec)?;
    let channel_count = spec.joints * 3;
    let noise_seed = SplitMix64::sub_seed(spec.seed, channel_count);
    match spec.noise {
        NoiseSpec::None => {
            let noisy = clean.clone();
            Ok(SynthOutput {
                clean,
                noisy,
                noise_energy: vec![0.0; channel_count],
                measured_rho: None,
            })
        }
        NoiseSpec::HighBand { k0, target_ratio } => {
            let (noisy, noise_energy) =
                inject_high_band_noise(&clean, k0, target_ratio, noise_seed)?;
            let plan = DctPlan::new(spec.frames)?;
            let measured: Result<Vec<f64>, SynthError> = split_channels(&noisy)?
                .iter()
                .map(|ch| {
                    let sp = plan.dct(&ch.series)?;
                    Ok(high_freq_ratio(&sp, k0, true, RATIO_EPSILON))
                })
                .collect();
            Ok(SynthOutput { clean, noisy, noise_energy, measured_rho: Some(measured?) })
        }
        NoiseSpec::White { sigma } => {
            let noisy = add_white_noise(&clean, sigma, noise_seed)?;
            let noise_energy = split_channels(&noisy)?
                .iter()
                .zip(split_channels(&clean)?.iter())
                .map(|(n, c)| {
                    n.series.iter().zip(&c.series).map(|(a, b)| (a - b) * (a - b)).sum()
                })
                .collect();
            Ok(SynthOutput { clean, noisy, noise_energy, measured_rho: None })
        }
    }
}
