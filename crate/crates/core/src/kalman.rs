//! Scalar Kalman recursion over frequency indices, the SNR-driven variance
//! schedule, steady-state analysis, and the non-adaptive baselines.
//!
//! The filter treats the ordered high-band DCT coefficients `z_{k0..}` of
//! one channel as a time series: constant-state prediction with process
//! variance Q, observation variance R. Low-band coefficients never enter
//! the filter; they are copied verbatim into the output spectrum.

use rayon::prelude::*;

use thiserror::Error;

use crate::config::{ConfigError, RefineMode, RefinementConfig};
use crate::motion::{reassemble, split_channels, Axis, Channel, CoreError, MotionSequence};
use crate::spectral::{estimate_snr, high_freq_ratio, ChannelSpectrum, DctPlan, SpectralError};

#[derive(Debug, Error)]
pub enum KalmanError {
    #[error("{name} must be strictly positive and finite, got {value}")]
    NonPositiveVariance { name: &'static str, value: f64 },
    #[error("observation vector is empty")]
    EmptyObservations,
    #[error("cutoff k0 = {k0} exceeds spectrum length {len}")]
    CutoffOutOfRange { k0: usize, len: usize },
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Motion(#[from] CoreError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}

/// Process and observation variances of one filter run. Always strictly
/// positive and finite; construction enforces it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KalmanParams {
    q: f64,
    r: f64,
}

impl KalmanParams {
    pub fn new(q: f64, r: f64) -> Result<Self, KalmanError> {
        for (name, value) in [("q", q), ("r", r)] {
            if !(value.is_finite() && value > 0.0) {
                return Err(KalmanError::NonPositiveVariance { name, value });
            }
        }
        Ok(KalmanParams { q, r })
    }

    pub fn q(self) -> f64 {
        self.q
    }

    pub fn r(self) -> f64 {
        self.r
    }
}

/// One predict/update cycle, recorded as computed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KalmanStep {
    pub predicted_state: f64,
    pub predicted_cov: f64,
    pub gain: f64,
    pub posterior_state: f64,
    pub posterior_cov: f64,
}

/// Full filter trace: initialization plus every subsequent step. For Q, R
/// positive every gain lies in (0, 1) and `posterior_cov` equals
/// `(1 - gain) * predicted_cov` bit for bit.
#[derive(Debug, Clone, PartialEq)]
pub struct KalmanTrace {
    pub init_state: f64,
    pub init_cov: f64,
    pub steps: Vec<KalmanStep>,
}

/// Per-channel diagnostics of one refinement pass.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct ChannelReport {
    pub joint_index: usize,
    pub axis: Axis,
    /// High-band fraction of spectral energy, in [0, 1).
    pub rho: f64,
    pub snr_est: f64,
    pub q: f64,
    pub r: f64,
    pub steady_state_p: f64,
    pub steady_state_k: f64,
    pub energy_total: f64,
    pub energy_high: f64,
}

/// Variance schedule: `Q = Q0 * (1 + lambda_q / (snr + eps))`,
/// `R = R0 / (1 + lambda_r * snr)`. Low SNR inflates Q and keeps R at its
/// base; high SNR shrinks R toward zero so observations pass through.
///
/// No clamping is applied: with the default parameters and snr near zero, Q
/// rises above R, which raises the gain again and weakens smoothing in that
/// extreme. That is the formula's behavior, reported as computed.
pub fn adaptive_params(snr_est: f64, config: &RefinementConfig) -> KalmanParams {
    debug_assert!(snr_est >= 0.0);
    let q = config.q0 * (1.0 + config.lambda_q / (snr_est + config.epsilon));
    let r = config.r0 / (1.0 + config.lambda_r * snr_est);
    KalmanParams::new(q, r)
        .expect("scheduled variances are positive and finite for a validated config")
}

/// Runs the scalar recursion over `observations`. State initializes to the
/// first observation with covariance R, so `estimates[0]` is that
/// observation unfiltered; filtering proper starts at the second element.
pub fn kalman_filter(
    observations: &[f64],
    params: KalmanParams,
) -> Result<(Vec<f64>, KalmanTrace), KalmanError> {
    if observations.is_empty() {
        return Err(KalmanError::EmptyObservations);
    }
    let (q, r) = (params.q(), params.r());
    let mut x = observations[0];
    let mut p = r;
    let mut estimates = Vec::with_capacity(observations.len());
    estimates.push(x);
    let mut steps = Vec::with_capacity(observations.len() - 1);
    for &z in &observations[1..] {
        let predicted_state = x;
        let predicted_cov = p + q;
        let gain = predicted_cov / (predicted_cov + r);
        x = predicted_state + gain * (z - predicted_state);
        p = (1.0 - gain) * predicted_cov;
        estimates.push(x);
        steps.push(KalmanStep {
            predicted_state,
            predicted_cov,
            gain,
            posterior_state: x,
            posterior_cov: p,
        });
    }
    Ok((estimates, KalmanTrace { init_state: observations[0], init_cov: r, steps }))
}

/// Steady-state posterior covariance: the positive root of
/// `P*^2 + Q P* - Q R = 0`, evaluated in the rationalized form
/// `2QR / (Q + sqrt(Q^2 + 4QR))` which avoids cancellation when Q >> R.
/// Satisfies 0 < P* < R for all positive Q, R.
pub fn steady_state_error(q: f64, r: f64) -> Result<f64, KalmanError> {
    let params = KalmanParams::new(q, r)?;
    let (q, r) = (params.q(), params.r());
    Ok(2.0 * q * r / (q + (q * q + 4.0 * q * r).sqrt()))
}

/// Steady-state gain `K* = (P* + Q) / (P* + Q + R)`, in (0, 1).
pub fn steady_state_gain(q: f64, r: f64) -> Result<f64, KalmanError> {
    let p = steady_state_error(q, r)?;
    Ok((p + q) / (p + q + r))
}

/// Refines one spectrum: low band (`k < k0`) copied verbatim, high band
/// filtered or suppressed per `config.mode`. `k0 == len` leaves the
/// spectrum untouched (empty high band).
///
/// The report's identity tags default to joint 0, axis x; callers that
/// know the channel identity ([`refine_motion`]) overwrite them. In
/// fixed-suppress mode no filter runs, so the variance and steady-state
/// fields report the base (q0, r0) figures.
pub fn refine_channel(
    spectrum: &ChannelSpectrum,
    config: &RefinementConfig,
) -> Result<(ChannelSpectrum, ChannelReport), KalmanError> {
    config.validate()?;
    let len = spectrum.len();
    if config.k0 > len {
        return Err(KalmanError::CutoffOutOfRange { k0: config.k0, len });
    }
    let rho = high_freq_ratio(spectrum, config.k0, config.include_dc, config.epsilon);
    let snr = estimate_snr(rho, config.epsilon);
    let params = match config.mode {
        RefineMode::Adaptive => adaptive_params(snr, config),
        RefineMode::FixedKalman | RefineMode::FixedSuppress => {
            KalmanParams::new(config.q0, config.r0)?
        }
    };

    let mut coeffs = spectrum.coeffs().to_vec();
    match config.mode {
        RefineMode::Adaptive | RefineMode::FixedKalman => {
            if config.k0 < len {
                let (estimates, _) = kalman_filter(&coeffs[config.k0..], params)?;
                coeffs[config.k0..].copy_from_slice(&estimates);
            }
        }
        RefineMode::FixedSuppress => {
            for c in coeffs.iter_mut().skip(config.k0) {
                *c *= config.gamma;
            }
        }
    }

    let report = ChannelReport {
        joint_index: 0,
        axis: Axis::X,
        rho,
        snr_est: snr,
        q: params.q(),
        r: params.r(),
        steady_state_p: steady_state_error(params.q(), params.r())?,
        steady_state_k: steady_state_gain(params.q(), params.r())?,
        energy_total: spectrum.energy(),
        energy_high: spectrum.high_band_energy(config.k0),
    };
    Ok((ChannelSpectrum::from_coeffs(coeffs)?, report))
}

/// Multiplies coefficients `k >= k0` by `gamma`, leaving the rest alone.
/// The fixed frequency-domain smoothing baseline.
pub fn fixed_suppress(
    spectrum: &ChannelSpectrum,
    k0: usize,
    gamma: f64,
) -> Result<ChannelSpectrum, KalmanError> {
    if !(0.0..=1.0).contains(&gamma) {
        return Err(KalmanError::Config(ConfigError::GammaOutOfRange { value: gamma }));
    }
    let mut coeffs = spectrum.coeffs().to_vec();
    for c in coeffs.iter_mut().skip(k0) {
        *c *= gamma;
    }
    Ok(ChannelSpectrum::from_coeffs(coeffs)?)
}

/// Full pipeline over a sequence: per channel, DCT, [`refine_channel`],
/// inverse DCT. Output shape equals input shape; one report per channel in
/// canonical order (joint-major, then x, y, z).
///
/// Channels are processed in parallel; results are collected in canonical
/// order and each channel's arithmetic is independent, so the output is
/// bitwise-identical regardless of thread count.
pub fn refine_motion(
    motion: &MotionSequence,
    config: &RefinementConfig,
) -> Result<(MotionSequence, Vec<ChannelReport>), KalmanError> {
    config.validate()?;
    if config.k0 > motion.frames() {
        return Err(KalmanError::CutoffOutOfRange { k0: config.k0, len: motion.frames() });
    }
    let channels = split_channels(motion)?;
    let plan = DctPlan::new(motion.frames())?;
    let pairs: Vec<(Channel, ChannelReport)> = channels
        .par_iter()
        .map(|ch| -> Result<(Channel, ChannelReport), KalmanError> {
            let spectrum = plan.dct(&ch.series)?;
            let (refined, mut report) = refine_channel(&spectrum, config)?;
            report.joint_index = ch.joint_index;
            report.axis = ch.axis;
            let series = plan.idct(&refined)?;
            Ok((Channel { joint_index: ch.joint_index, axis: ch.axis, series }, report))
        })
        .collect::<Result<_, _>>()?;
    let (refined_channels, reports): (Vec<Channel>, Vec<ChannelReport>) =
        pairs.into_iter().unzip();
    let mut refined = reassemble(&refined_channels, motion.joints(), motion.frames(), motion.fps())?;
    refined.set_joint_names(motion.joint_names().map(|n| n.to_vec()))?;
    Ok((refined, reports))
}
