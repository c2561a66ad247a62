//! Accuracy and diversity metrics for stochastic prediction sets, and the
//! jerk statistic used to quantify jitter.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::motion::MotionSequence;

#[derive(Debug, Error, PartialEq)]
pub enum MetricsError {
    #[error("need at least two samples for pairwise diversity")]
    NeedTwoSamples,
    #[error("sample set is empty")]
    EmptySampleSet,
    #[error("ground-truth set is empty")]
    EmptyGtSet,
    #[error("{context}: sequence shapes differ")]
    ShapeMismatch { context: &'static str },
    #[error("{pasts} pasts but {futures} futures; pairs must align")]
    MisalignedPairs { pasts: usize, futures: usize },
    #[error("need at least {needed} frames, got {frames}")]
    TooShort { needed: usize, frames: usize },
    #[error("distance threshold must be nonnegative, got {value}")]
    BadThreshold { value: f64 },
}

/// Everything one evaluation run may produce; absent metrics stay `None`.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct MetricReport {
    pub apd: Option<f64>,
    pub ade: Option<f64>,
    pub fde: Option<f64>,
    pub mmade: Option<f64>,
    pub mmfde: Option<f64>,
    pub per_joint_jerk: Option<Vec<f64>>,
    /// Sample count the set metrics were computed over.
    pub k: Option<usize>,
    /// Multimodal ground-truth count.
    pub m: Option<usize>,
    pub frames: Option<usize>,
    pub joints: Option<usize>,
}

fn l1_distance(a: &MotionSequence, b: &MotionSequence) -> f64 {
    a.data().iter().zip(b.data()).map(|(x, y)| (x - y).abs()).sum()
}

fn frame_distance(a: &MotionSequence, b: &MotionSequence, t: usize) -> f64 {
    a.frame(t)
        .iter()
        .zip(b.frame(t))
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

fn check_shapes(
    samples: &[MotionSequence],
    reference: &MotionSequence,
    context: &'static str,
) -> Result<(), MetricsError> {
    if samples.iter().all(|s| s.same_shape(reference)) {
        Ok(())
    } else {
        Err(MetricsError::ShapeMismatch { context })
    }
}

/// Average pairwise L1 distance over all sample pairs:
/// `2/(K(K-1)) * sum_{j<k} |S_j - S_k|_1`.
pub fn apd(samples: &[MotionSequence]) -> Result<f64, MetricsError> {
    if samples.len() < 2 {
        return Err(MetricsError::NeedTwoSamples);
    }
    check_shapes(samples, &samples[0], "samples")?;
    let k = samples.len();
    let mut total = 0.0;
    for j in 0..k {
        for l in (j + 1)..k {
            total += l1_distance(&samples[j], &samples[l]);
        }
    }
    Ok(2.0 * total / (k * (k - 1)) as f64)
}

fn per_sample_ade(sample: &MotionSequence, gt: &MotionSequence) -> f64 {
    (0..gt.frames()).map(|t| frame_distance(sample, gt, t)).sum::<f64>() / gt.frames() as f64
}

/// Time-averaged pose distance of the closest sample:
/// `min_k (1/T) sum_t |Y_t - S_{k,t}|_F`.
pub fn ade(samples: &[MotionSequence], gt: &MotionSequence) -> Result<f64, MetricsError> {
    if samples.is_empty() {
        return Err(MetricsError::EmptySampleSet);
    }
    check_shapes(samples, gt, "samples vs gt")?;
    Ok(samples
        .iter()
        .map(|s| per_sample_ade(s, gt))
        .fold(f64::INFINITY, f64::min))
}

/// Final-frame pose distance of the closest sample.
pub fn fde(samples: &[MotionSequence], gt: &MotionSequence) -> Result<f64, MetricsError> {
    if samples.is_empty() {
        return Err(MetricsError::EmptySampleSet);
    }
    check_shapes(samples, gt, "samples vs gt")?;
    let last = gt.frames() - 1;
    Ok(samples
        .iter()
        .map(|s| frame_distance(s, gt, last))
        .fold(f64::INFINITY, f64::min))
}

/// Mean over ground-truth variants of the per-variant [`ade`].
pub fn mmade(samples: &[MotionSequence], gt_set: &[MotionSequence]) -> Result<f64, MetricsError> {
    if gt_set.is_empty() {
        return Err(MetricsError::EmptyGtSet);
    }
    let mut total = 0.0;
    for gt in gt_set {
        total += ade(samples, gt)?;
    }
    Ok(total / gt_set.len() as f64)
}

/// Mean over ground-truth variants of the per-variant [`fde`].
pub fn mmfde(samples: &[MotionSequence], gt_set: &[MotionSequence]) -> Result<f64, MetricsError> {
    if gt_set.is_empty() {
        return Err(MetricsError::EmptyGtSet);
    }
    let mut total = 0.0;
    for gt in gt_set {
        total += fde(samples, gt)?;
    }
    Ok(total / gt_set.len() as f64)
}

/// Selects the futures whose paired past lies within `eps_threshold`
/// (full-sequence Frobenius distance) of `query_past`. This is how a
/// multimodal ground-truth set is assembled from a pool of observed
/// (past, future) pairs.
pub fn multimodal_gt(
    pasts: &[MotionSequence],
    futures: &[MotionSequence],
    query_past: &MotionSequence,
    eps_threshold: f64,
) -> Result<Vec<MotionSequence>, MetricsError> {
    if pasts.len() != futures.len() {
        return Err(MetricsError::MisalignedPairs {
            pasts: pasts.len(),
            futures: futures.len(),
        });
    }
    if eps_threshold.is_nan() || eps_threshold < 0.0 {
        return Err(MetricsError::BadThreshold { value: eps_threshold });
    }
    check_shapes(pasts, query_past, "pasts vs query past")?;
    let mut out = Vec::new();
    for (past, future) in pasts.iter().zip(futures) {
        let dist = past
            .data()
            .iter()
            .zip(query_past.data())
            .map(|(x, y)| (x - y) * (x - y))
            .sum::<f64>()
            .sqrt();
        if dist <= eps_threshold {
            out.push(future.clone());
        }
    }
    Ok(out)
}

/// Per-joint mean jerk magnitude. Jerk is the third finite difference
/// `x_{t+3} - 3 x_{t+2} + 3 x_{t+1} - x_t` per channel (units:
/// length/frame^3, no fps scaling); the per-joint value is the mean over t
/// of the Euclidean norm of the per-axis jerks.
pub fn jerk_profile(motion: &MotionSequence) -> Result<Vec<f64>, MetricsError> {
    let t_len = motion.frames();
    if t_len < 4 {
        return Err(MetricsError::TooShort { needed: 4, frames: t_len });
    }
    let width = motion.joints() * 3;
    let data = motion.data();
    let windows = t_len - 3;
    let mut out = vec![0.0; motion.joints()];
    for t in 0..windows {
        for (j, o) in out.iter_mut().enumerate() {
            let mut sq = 0.0;
            for axis in 0..3 {
                let i = t * width + 3 * j + axis;
                let jerk = data[i + 3 * width] - 3.0 * data[i + 2 * width]
                    + 3.0 * data[i + width]
                    - data[i];
                sq += jerk * jerk;
            }
            *o += sq.sqrt();
        }
    }
    for o in &mut out {
        *o /= windows as f64;
    }
    Ok(out)
}

/// Per-joint jitter reduction percentages and their aggregate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JitterReduction {
    /// `100 * (1 - refined/base)` per joint; `None` where the baseline jerk
    /// is zero (reduction undefined there).
    pub per_joint: Vec<Option<f64>>,
    /// Aggregate over the defined joints, computed from summed jerks
    /// (`100 * (1 - sum refined / sum base)`) so high-jerk joints weigh in
    /// proportionally; `None` if no joint has nonzero baseline jerk.
    pub mean: Option<f64>,
}

/// How much jerk the refinement removed, per joint and in aggregate.
pub fn jitter_reduction(
    base: &MotionSequence,
    refined: &MotionSequence,
) -> Result<JitterReduction, MetricsError> {
    if !base.same_shape(refined) {
        return Err(MetricsError::ShapeMismatch { context: "base vs refined" });
    }
    let jb = jerk_profile(base)?;
    let jr = jerk_profile(refined)?;
    let per_joint: Vec<Option<f64>> = jb
        .iter()
        .zip(&jr)
        .map(|(&b, &r)| if b == 0.0 { None } else { Some(100.0 * (1.0 - r / b)) })
        .collect();
    let (sum_b, sum_r) = jb
        .iter()
        .zip(&jr)
        .filter(|(&b, _)| b > 0.0)
        .fold((0.0, 0.0), |(sb, sr), (&b, &r)| (sb + b, sr + r));
    let mean = if sum_b > 0.0 { Some(100.0 * (1.0 - sum_r / sum_b)) } else { None };
    Ok(JitterReduction { per_joint, mean })
}
