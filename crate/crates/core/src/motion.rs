//! Motion sequences and their decomposition into scalar channels.
//!
//! A sequence is a dense `frames x joints x 3` array of positions stored
//! flat in frame-major, joint-major, axis-minor order. Units are opaque:
//! nothing in the crate converts or interprets them. A channel is one
//! (joint, axis) series; channel order is fixed as joint-major then x, y, z
//! so reports and parallel reductions are reproducible.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum CoreError {
    #[error("non-finite value at frame {frame}, joint {joint}, axis {axis}")]
    NonFinite { frame: usize, joint: usize, axis: Axis },
    #[error("{context}: expected {expected} elements, got {actual}")]
    ShapeMismatch { context: &'static str, expected: usize, actual: usize },
    #[error("expected {expected} channels, got {actual}")]
    ChannelCountMismatch { expected: usize, actual: usize },
    #[error("channel {index} has length {actual}, expected {expected}")]
    LengthMismatch { index: usize, expected: usize, actual: usize },
    #[error("fps must be positive and finite, got {fps}")]
    InvalidFps { fps: f64 },
    #[error("frames and joints must both be at least 1")]
    EmptySequence,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    pub fn index(self) -> usize {
        match self {
            Axis::X => 0,
            Axis::Y => 1,
            Axis::Z => 2,
        }
    }

    pub fn from_index(i: usize) -> Axis {
        Axis::ALL[i]
    }
}

impl std::fmt::Display for Axis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Axis::X => "x",
            Axis::Y => "y",
            Axis::Z => "z",
        })
    }
}

/// Dense T'xJx3 position array with frame rate and optional joint labels.
#[derive(Debug, Clone, PartialEq)]
pub struct MotionSequence {
    frames: usize,
    joints: usize,
    fps: f64,
    joint_names: Option<Vec<String>>,
    data: Vec<f64>,
}

impl MotionSequence {
    /// Builds a sequence from a flat buffer laid out `[t][j][axis]`.
    /// Checks structure (counts, fps, label count) but not finiteness;
    /// call [`validate`] before handing the sequence to numeric code.
    pub fn from_flat(
        frames: usize,
        joints: usize,
        fps: f64,
        joint_names: Option<Vec<String>>,
        data: Vec<f64>,
    ) -> Result<Self, CoreError> {
        if frames == 0 || joints == 0 {
            return Err(CoreError::EmptySequence);
        }
        if !(fps.is_finite() && fps > 0.0) {
            return Err(CoreError::InvalidFps { fps });
        }
        let expected = frames * joints * 3;
        if data.len() != expected {
            return Err(CoreError::ShapeMismatch {
                context: "position buffer",
                expected,
                actual: data.len(),
            });
        }
        if let Some(names) = &joint_names {
            if names.len() != joints {
                return Err(CoreError::ShapeMismatch {
                    context: "joint_names",
                    expected: joints,
                    actual: names.len(),
                });
            }
        }
        Ok(MotionSequence { frames, joints, fps, joint_names, data })
    }

    /// Convenience constructor: fills positions from `f(frame, joint, axis)`.
    pub fn from_fn(
        frames: usize,
        joints: usize,
        fps: f64,
        mut f: impl FnMut(usize, usize, Axis) -> f64,
    ) -> Result<Self, CoreError> {
        let mut data = Vec::with_capacity(frames * joints * 3);
        for t in 0..frames {
            for j in 0..joints {
                for axis in Axis::ALL {
                    data.push(f(t, j, axis));
                }
            }
        }
        MotionSequence::from_flat(frames, joints, fps, None, data)
    }

    pub fn frames(&self) -> usize {
        self.frames
    }

    pub fn joints(&self) -> usize {
        self.joints
    }

    pub fn fps(&self) -> f64 {
        self.fps
    }

    pub fn joint_names(&self) -> Option<&[String]> {
        self.joint_names.as_deref()
    }

    pub fn set_joint_names(&mut self, names: Option<Vec<String>>) -> Result<(), CoreError> {
        if let Some(n) = &names {
            if n.len() != self.joints {
                return Err(CoreError::ShapeMismatch {
                    context: "joint_names",
                    expected: self.joints,
                    actual: n.len(),
                });
            }
        }
        self.joint_names = names;
        Ok(())
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn index(&self, frame: usize, joint: usize, axis: Axis) -> usize {
        (frame * self.joints + joint) * 3 + axis.index()
    }

    pub fn get(&self, frame: usize, joint: usize, axis: Axis) -> f64 {
        self.data[self.index(frame, joint, axis)]
    }

    /// The J*3 position slice of one frame.
    pub fn frame(&self, t: usize) -> &[f64] {
        let w = self.joints * 3;
        &self.data[t * w..(t + 1) * w]
    }

    pub fn same_shape(&self, other: &MotionSequence) -> bool {
        self.frames == other.frames && self.joints == other.joints
    }
}

/// One (joint, axis) scalar series.
#[derive(Debug, Clone, PartialEq)]
pub struct Channel {
    pub joint_index: usize,
    pub axis: Axis,
    pub series: Vec<f64>,
}

/// Checks every sequence invariant: element count (structural, already
/// enforced at construction) and finiteness of all positions.
pub fn validate(motion: &MotionSequence) -> Result<(), CoreError> {
    for (i, v) in motion.data.iter().enumerate() {
        if !v.is_finite() {
            let joint = (i / 3) % motion.joints;
            return Err(CoreError::NonFinite {
                frame: i / (motion.joints * 3),
                joint,
                axis: Axis::from_index(i % 3),
            });
        }
    }
    Ok(())
}

/// Splits a sequence into its 3J channels in canonical order
/// (joint-major, then x, y, z).
pub fn split_channels(motion: &MotionSequence) -> Result<Vec<Channel>, CoreError> {
    validate(motion)?;
    let mut out = Vec::with_capacity(motion.joints * 3);
    for j in 0..motion.joints {
        for axis in Axis::ALL {
            let series = (0..motion.frames).map(|t| motion.get(t, j, axis)).collect();
            out.push(Channel { joint_index: j, axis, series });
        }
    }
    Ok(out)
}

/// Inverse of [`split_channels`]. Channels are consumed positionally in
/// canonical order; the identity tags on each [`Channel`] are not consulted.
pub fn reassemble(
    channels: &[Channel],
    joints: usize,
    frames: usize,
    fps: f64,
) -> Result<MotionSequence, CoreError> {
    if channels.len() != joints * 3 {
        return Err(CoreError::ChannelCountMismatch {
            expected: joints * 3,
            actual: channels.len(),
        });
    }
    for (i, ch) in channels.iter().enumerate() {
        if ch.series.len() != frames {
            return Err(CoreError::LengthMismatch {
                index: i,
                expected: frames,
                actual: ch.series.len(),
            });
        }
    }
    let mut data = vec![0.0; frames * joints * 3];
    for (c, ch) in channels.iter().enumerate() {
        let (j, a) = (c / 3, c % 3);
        for (t, &v) in ch.series.iter().enumerate() {
            data[(t * joints + j) * 3 + a] = v;
        }
    }
    MotionSequence::from_flat(frames, joints, fps, None, data)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arb_motion(frames: usize, joints: usize, seed: u64) -> MotionSequence {
        let mut r = crate::rng::SplitMix64::new(seed);
        MotionSequence::from_fn(frames, joints, 30.0, |_, _, _| r.next_range(-5.0, 5.0)).unwrap()
    }

    #[test]
    fn validate_accepts_wellformed() {
        let m = arb_motion(10, 17, 1);
        assert!(validate(&m).is_ok());
    }

    #[test]
    fn validate_flags_nan_with_location() {
        let mut data = vec![0.0; 10 * 17 * 3];
        data[(3 * 17 + 5) * 3 + 1] = f64::NAN;
        let m = MotionSequence::from_flat(10, 17, 30.0, None, data).unwrap();
        assert_eq!(
            validate(&m),
            Err(CoreError::NonFinite { frame: 3, joint: 5, axis: Axis::Y })
        );
    }

    #[test]
    fn short_buffer_is_shape_mismatch() {
        let err = MotionSequence::from_flat(10, 17, 30.0, None, vec![0.0; 9 * 17 * 3]).unwrap_err();
        assert!(matches!(err, CoreError::ShapeMismatch { .. }));
    }

    #[test]
    fn split_roundtrip_is_bitwise() {
        let m = arb_motion(23, 5, 2);
        let channels = split_channels(&m).unwrap();
        assert_eq!(channels.len(), 15);
        let back = reassemble(&channels, 5, 23, m.fps()).unwrap();
        assert_eq!(back.data().len(), m.data().len());
        for (a, b) in back.data().iter().zip(m.data()) {
            assert_eq!(a.to_bits(), b.to_bits());
        }
    }

    #[test]
    fn channel_order_is_joint_major_then_xyz() {
        let m = arb_motion(4, 2, 3);
        let channels = split_channels(&m).unwrap();
        assert_eq!(channels[4].joint_index, 1);
        assert_eq!(channels[4].axis, Axis::Y);
        assert_eq!(channels[4].series, (0..4).map(|t| m.get(t, 1, Axis::Y)).collect::<Vec<_>>());
    }

    #[test]
    fn reassemble_rejects_bad_counts() {
        let m = arb_motion(4, 1, 4);
        let mut channels = split_channels(&m).unwrap();
        assert!(matches!(
            reassemble(&channels[..2], 1, 4, 30.0),
            Err(CoreError::ChannelCountMismatch { expected: 3, actual: 2 })
        ));
        channels[1].series.pop();
        assert!(matches!(
            reassemble(&channels, 1, 4, 30.0),
            Err(CoreError::LengthMismatch { index: 1, .. })
        ));
    }

    #[test]
    fn fps_must_be_positive_finite() {
        for fps in [0.0, -1.0, f64::NAN, f64::INFINITY] {
            assert!(MotionSequence::from_flat(1, 1, fps, None, vec![0.0; 3]).is_err());
        }
    }
}
