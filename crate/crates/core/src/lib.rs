//! Frequency-domain Kalman refinement for 3D motion sequences.
//!
//! A motion sequence is split into per-(joint, axis) scalar channels, each
//! channel is taken to the frequency domain with an orthonormal DCT-II, and a
//! scalar Kalman filter is run *along the frequency axis* of the high band
//! (indices `k >= k0`). Process/observation variances are scheduled per
//! channel from a spectral SNR estimate, so noisy channels get smoothed hard
//! while clean channels pass through nearly untouched.
//!
//! The crate also ships the surrounding evaluation toolkit: physical
//! plausibility losses with analytic gradients ([`physics`]), stochastic
//! prediction metrics and jerk-based jitter measurement ([`metrics`]),
//! non-adaptive baselines, and a seeded synthetic-motion oracle ([`synth`])
//! that makes denoising claims testable against a known clean signal.

pub mod config;
pub mod kalman;
pub mod metrics;
pub mod motion;
pub mod physics;
pub mod rng;
pub mod skeleton;
pub mod spectral;
pub mod synth;

pub use config::{RefineMode, RefinementConfig};
pub use motion::{Axis, Channel, MotionSequence};
pub use skeleton::{AngleConstraint, Skeleton, VectorSpec};
