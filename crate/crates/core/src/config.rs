//! Refinement configuration shared by the filtering pipeline and the CLI.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ConfigError {
    #[error("{name} must be strictly positive and finite, got {value}")]
    NonPositiveVariance { name: &'static str, value: f64 },
    #[error("{name} must be nonnegative and finite, got {value}")]
    NegativeSensitivity { name: &'static str, value: f64 },
    #[error("epsilon must be strictly positive and finite, got {value}")]
    BadEpsilon { value: f64 },
    #[error("gamma must lie in [0, 1], got {value}")]
    GammaOutOfRange { value: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RefineMode {
    /// Per-channel Kalman variances scheduled from the spectral SNR estimate.
    Adaptive,
    /// Kalman filtering with the constant base variances (q0, r0).
    FixedKalman,
    /// No filter: high-band coefficients multiplied by `gamma`.
    FixedSuppress,
}

impl std::fmt::Display for RefineMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            RefineMode::Adaptive => "adaptive",
            RefineMode::FixedKalman => "fixed-kalman",
            RefineMode::FixedSuppress => "fixed-suppress",
        })
    }
}

/// Knobs of the frequency-domain refinement.
///
/// `k0` splits each spectrum into a low band (copied verbatim) and a high
/// band (filtered or suppressed). In adaptive mode the variances become
/// `q = q0 * (1 + lambda_q / (snr + epsilon))` and
/// `r = r0 / (1 + lambda_r * snr)`, so low-SNR channels are smoothed harder.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RefinementConfig {
    pub k0: usize,
    pub q0: f64,
    pub r0: f64,
    pub lambda_q: f64,
    pub lambda_r: f64,
    pub epsilon: f64,
    pub mode: RefineMode,
    /// Suppression factor in [0, 1]; consulted only in fixed-suppress mode.
    pub gamma: f64,
    /// Whether the DC coefficient enters the spectral energy totals.
    pub include_dc: bool,
}

impl Default for RefinementConfig {
    fn default() -> Self {
        RefinementConfig {
            k0: 10,
            q0: 1e-6,
            r0: 1e-2,
            lambda_q: 0.2,
            lambda_r: 0.5,
            epsilon: 1e-8,
            mode: RefineMode::Adaptive,
            gamma: 0.5,
            include_dc: true,
        }
    }
}

impl RefinementConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        let positive = |name, value: f64| {
            if value.is_finite() && value > 0.0 {
                Ok(())
            } else {
                Err(ConfigError::NonPositiveVariance { name, value })
            }
        };
        positive("q0", self.q0)?;
        positive("r0", self.r0)?;
        for (name, v) in [("lambda_q", self.lambda_q), ("lambda_r", self.lambda_r)] {
            if !(v.is_finite() && v >= 0.0) {
                return Err(ConfigError::NegativeSensitivity { name, value: v });
            }
        }
        if !(self.epsilon.is_finite() && self.epsilon > 0.0) {
            return Err(ConfigError::BadEpsilon { value: self.epsilon });
        }
        if !(0.0..=1.0).contains(&self.gamma) {
            return Err(ConfigError::GammaOutOfRange { value: self.gamma });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_validate_and_match_published_values() {
        let c = RefinementConfig::default();
        c.validate().unwrap();
        assert_eq!(c.k0, 10);
        assert_eq!(c.q0, 1e-6);
        assert_eq!(c.r0, 1e-2);
        assert_eq!(c.lambda_q, 0.2);
        assert_eq!(c.lambda_r, 0.5);
        assert_eq!(c.epsilon, 1e-8);
        assert!(c.include_dc);
        assert_eq!(c.mode, RefineMode::Adaptive);
    }

    #[test]
    fn rejects_bad_values() {
        let base = RefinementConfig::default();
        let cases: Vec<(RefinementConfig, ConfigError)> = vec![
            (
                RefinementConfig { q0: 0.0, ..base.clone() },
                ConfigError::NonPositiveVariance { name: "q0", value: 0.0 },
            ),
            (
                RefinementConfig { r0: -1.0, ..base.clone() },
                ConfigError::NonPositiveVariance { name: "r0", value: -1.0 },
            ),
            (
                RefinementConfig { lambda_q: -0.1, ..base.clone() },
                ConfigError::NegativeSensitivity { name: "lambda_q", value: -0.1 },
            ),
            (
                RefinementConfig { epsilon: 0.0, ..base.clone() },
                ConfigError::BadEpsilon { value: 0.0 },
            ),
            (
                RefinementConfig { gamma: 1.5, ..base.clone() },
                ConfigError::GammaOutOfRange { value: 1.5 },
            ),
        ];
        for (cfg, want) in cases {
            assert_eq!(cfg.validate(), Err(want));
        }
    }

    #[test]
    fn zero_sensitivities_are_legal() {
        let c = RefinementConfig { lambda_q: 0.0, lambda_r: 0.0, ..Default::default() };
        assert!(c.validate().is_ok());
    }
}
