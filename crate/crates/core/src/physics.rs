//! Physical-plausibility losses over motion sequences, with analytic
//! gradients where the loss is differentiable.
//!
//! Gradients are hand-derived (chain rule through the guarded cosine, cross
//! products via triple-product identities) rather than autodiff, and are
//! checked against a central finite-difference oracle in the test suite.
//! Every gradient vector uses the same flat layout as
//! [`MotionSequence::data`].

use thiserror::Error;

use crate::motion::MotionSequence;
use crate::skeleton::{Skeleton, SkeletonError, VectorSpec};

/// Guard added to the norm product in cosine denominators.
pub const COS_EPSILON: f64 = 1e-8;
/// Below this norm a vector counts as degenerate: its cosine is dominated
/// by the epsilon guard and the norm-direction gradient term is dropped.
const DEGENERATE_NORM: f64 = 1e-12;

#[derive(Debug, Error, PartialEq)]
pub enum PhysicsError {
    #[error("need at least {needed} frames, got {frames}")]
    TooShort { needed: usize, frames: usize },
    #[error("skeleton defines no angle constraints")]
    NoConstraints,
    #[error("expected {expected} reference lengths for {expected} limb pairs, got {actual}")]
    LengthCountMismatch { expected: usize, actual: usize },
    #[error("sample set is empty")]
    EmptySampleSet,
    #[error("{context}: sequence shapes differ")]
    ShapeMismatch { context: &'static str },
    #[error("skeleton is for {skeleton} joints, motion has {motion}")]
    JointCountMismatch { skeleton: usize, motion: usize },
    #[error("alpha must be positive and finite, got {value}")]
    BadAlpha { value: f64 },
    #[error(transparent)]
    Skeleton(#[from] SkeletonError),
}

/// A nonnegative scalar loss plus, when the evaluator provides one, its
/// gradient with respect to every position.
#[derive(Debug, Clone, PartialEq)]
pub struct LossValue {
    pub value: f64,
    pub gradient: Option<Vec<f64>>,
}

type Vec3 = [f64; 3];

fn sub(a: &[f64], b: &[f64]) -> Vec3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn dot(a: Vec3, b: Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross(a: Vec3, b: Vec3) -> Vec3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn norm(a: Vec3) -> f64 {
    dot(a, a).sqrt()
}

fn joint_pos(frame: &[f64], j: usize) -> &[f64] {
    &frame[3 * j..3 * j + 3]
}

fn bone_vec(frame: &[f64], tail: usize, head: usize) -> Vec3 {
    sub(joint_pos(frame, head), joint_pos(frame, tail))
}

fn target_vec(frame: &[f64], spec: &VectorSpec) -> Vec3 {
    match *spec {
        VectorSpec::Bone { tail, head } => bone_vec(frame, tail, head),
        VectorSpec::Plane { a, b, c } => {
            cross(bone_vec(frame, a, b), bone_vec(frame, a, c))
        }
    }
}

fn check_skeleton(motion: &MotionSequence, skeleton: &Skeleton) -> Result<(), PhysicsError> {
    skeleton.validate()?;
    if skeleton.joint_count != motion.joints() {
        return Err(PhysicsError::JointCountMismatch {
            skeleton: skeleton.joint_count,
            motion: motion.joints(),
        });
    }
    Ok(())
}

/// Mean squared frame-to-frame displacement:
/// `1/(T-1) * sum_t ||Y_t - Y_{t-1}||_F^2`. Gradient included.
pub fn temporal_smoothness(motion: &MotionSequence) -> Result<LossValue, PhysicsError> {
    let t_len = motion.frames();
    if t_len < 2 {
        return Err(PhysicsError::TooShort { needed: 2, frames: t_len });
    }
    let data = motion.data();
    let width = motion.joints() * 3;
    let scale = 1.0 / (t_len - 1) as f64;
    let mut value = 0.0;
    let mut grad = vec![0.0; data.len()];
    for t in 1..t_len {
        for i in 0..width {
            let d = data[t * width + i] - data[(t - 1) * width + i];
            value += d * d;
            grad[t * width + i] += 2.0 * scale * d;
            grad[(t - 1) * width + i] -= 2.0 * scale * d;
        }
    }
    Ok(LossValue { value: value * scale, gradient: Some(grad) })
}

/// Cosines of every constrained angle at every frame, plus a list of the
/// (frame, constraint) pairs where a vector was degenerate (norm below
/// 1e-12, cosine pinned near zero by the epsilon guard).
#[derive(Debug, Clone, PartialEq)]
pub struct CosineTable {
    frames: usize,
    n_angles: usize,
    values: Vec<f64>,
    pub degenerate: Vec<(usize, usize)>,
}

impl CosineTable {
    pub fn frames(&self) -> usize {
        self.frames
    }

    pub fn n_angles(&self) -> usize {
        self.n_angles
    }

    pub fn get(&self, frame: usize, angle: usize) -> f64 {
        self.values[frame * self.n_angles + angle]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

/// Cosine of each constraint's angle per frame, via the guarded normalized
/// dot product `cos = (v1 . v2) / (|v1||v2| + 1e-8)`. No arccos anywhere.
pub fn joint_cosines(
    motion: &MotionSequence,
    skeleton: &Skeleton,
) -> Result<CosineTable, PhysicsError> {
    check_skeleton(motion, skeleton)?;
    let n_angles = skeleton.constraints.len();
    let mut values = Vec::with_capacity(motion.frames() * n_angles);
    let mut degenerate = Vec::new();
    for t in 0..motion.frames() {
        let frame = motion.frame(t);
        for (ci, c) in skeleton.constraints.iter().enumerate() {
            let v1 = bone_vec(frame, c.bone.0, c.bone.1);
            let v2 = target_vec(frame, &c.target);
            let (n1, n2) = (norm(v1), norm(v2));
            if n1 < DEGENERATE_NORM || n2 < DEGENERATE_NORM {
                degenerate.push((t, ci));
            }
            values.push(dot(v1, v2) / (n1 * n2 + COS_EPSILON));
        }
    }
    Ok(CosineTable { frames: motion.frames(), n_angles, values, degenerate })
}

/// Quadratic penalty on cosines outside their `[cos_min, cos_max]` band,
/// averaged over frames and constraints; zero for poses inside every band.
/// Gradient included (chain rule through the guarded cosine; for a
/// degenerate vector the norm-direction term is dropped, where the true
/// derivative vanishes in the limit anyway).
pub fn angle_loss(
    motion: &MotionSequence,
    skeleton: &Skeleton,
) -> Result<LossValue, PhysicsError> {
    check_skeleton(motion, skeleton)?;
    if skeleton.constraints.is_empty() {
        return Err(PhysicsError::NoConstraints);
    }
    let n_angles = skeleton.constraints.len();
    let scale = 1.0 / (motion.frames() * n_angles) as f64;
    let width = motion.joints() * 3;
    let mut value = 0.0;
    let mut grad = vec![0.0; motion.data().len()];
    for t in 0..motion.frames() {
        let frame = motion.frame(t);
        let base = t * width;
        for c in &skeleton.constraints {
            let v1 = bone_vec(frame, c.bone.0, c.bone.1);
            let v2 = target_vec(frame, &c.target);
            let (n1, n2) = (norm(v1), norm(v2));
            let denom = n1 * n2 + COS_EPSILON;
            let d = dot(v1, v2);
            let cos = d / denom;

            let overshoot = if cos > c.cos_max {
                cos - c.cos_max
            } else if cos < c.cos_min {
                cos - c.cos_min
            } else {
                continue;
            };
            value += overshoot * overshoot;
            let dloss_dcos = 2.0 * overshoot * scale;

            // dcos/dv1 = v2/denom - (d/denom^2) * n2 * v1/n1, and symmetrically
            // for v2; the v/n direction factor is skipped for degenerate vectors.
            let dd = d / (denom * denom);
            let mut g1 = [0.0; 3];
            let mut g2 = [0.0; 3];
            for i in 0..3 {
                g1[i] = dloss_dcos * (v2[i] / denom);
                g2[i] = dloss_dcos * (v1[i] / denom);
                if n1 >= DEGENERATE_NORM {
                    g1[i] -= dloss_dcos * dd * n2 * v1[i] / n1;
                }
                if n2 >= DEGENERATE_NORM {
                    g2[i] -= dloss_dcos * dd * n1 * v2[i] / n2;
                }
            }

            // v1 = head - tail
            for i in 0..3 {
                grad[base + 3 * c.bone.1 + i] += g1[i];
                grad[base + 3 * c.bone.0 + i] -= g1[i];
            }
            match c.target {
                VectorSpec::Bone { tail, head } => {
                    for i in 0..3 {
                        grad[base + 3 * head + i] += g2[i];
                        grad[base + 3 * tail + i] -= g2[i];
                    }
                }
                VectorSpec::Plane { a, b, c: pc } => {
                    // v2 = u x w with u = B - A, w = C - A; by the triple
                    // product, dL/dB = w x g2, dL/dC = g2 x u.
                    let u = bone_vec(frame, a, b);
                    let w = bone_vec(frame, a, pc);
                    let gb = cross(w, g2);
                    let gc = cross(g2, u);
                    for i in 0..3 {
                        grad[base + 3 * b + i] += gb[i];
                        grad[base + 3 * pc + i] += gc[i];
                        grad[base + 3 * a + i] -= gb[i] + gc[i];
                    }
                }
            }
        }
    }
    Ok(LossValue { value: value * scale, gradient: Some(grad) })
}

/// Mean over frames of the summed squared deviation of each limb's length
/// from its reference: `1/T * sum_t sum_l (|bone_{t,l}| - ref_l)^2`.
/// Gradient included (zero direction for a degenerate bone, a subgradient
/// choice at the non-smooth point).
pub fn limb_length_loss(
    pred: &MotionSequence,
    reference_lengths: &[f64],
    skeleton: &Skeleton,
) -> Result<LossValue, PhysicsError> {
    check_skeleton(pred, skeleton)?;
    if reference_lengths.len() != skeleton.limb_pairs.len() {
        return Err(PhysicsError::LengthCountMismatch {
            expected: skeleton.limb_pairs.len(),
            actual: reference_lengths.len(),
        });
    }
    let t_len = pred.frames();
    let width = pred.joints() * 3;
    let scale = 1.0 / t_len as f64;
    let mut value = 0.0;
    let mut grad = vec![0.0; pred.data().len()];
    for t in 0..t_len {
        let frame = pred.frame(t);
        let base = t * width;
        for (&(a, b), &reference) in skeleton.limb_pairs.iter().zip(reference_lengths) {
            let bone = bone_vec(frame, a, b);
            let len = norm(bone);
            let dev = len - reference;
            value += dev * dev;
            if len >= DEGENERATE_NORM {
                let coeff = 2.0 * scale * dev / len;
                for i in 0..3 {
                    grad[base + 3 * b + i] += coeff * bone[i];
                    grad[base + 3 * a + i] -= coeff * bone[i];
                }
            }
        }
    }
    Ok(LossValue { value: value * scale, gradient: Some(grad) })
}

/// Scalars of one evaluation over a prediction set. `diversity` is absent
/// for a single sample (needs a pair), `multimodal` when no alternative
/// ground-truth futures were supplied.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct SampleSetLosses {
    /// min over samples of the squared Frobenius distance to `gt`.
    pub recon: f64,
    /// mean over samples of the squared Frobenius distance to `gt`.
    pub historical: f64,
    /// mean over `mm_gt` of the per-target min over samples.
    pub multimodal: Option<f64>,
    /// mean over sample pairs of `exp(-L1 / alpha)`.
    pub diversity: Option<f64>,
}

fn sq_frobenius(a: &MotionSequence, b: &MotionSequence) -> f64 {
    a.data().iter().zip(b.data()).map(|(x, y)| (x - y) * (x - y)).sum()
}

fn l1_distance(a: &MotionSequence, b: &MotionSequence) -> f64 {
    a.data().iter().zip(b.data()).map(|(x, y)| (x - y).abs()).sum()
}

/// The sample-set losses: reconstruction (best sample vs `gt`), historical
/// (all samples vs `gt`; pass reconstructed pasts and the observed past to
/// use it as intended), multimodal reconstruction, and pairwise diversity.
pub fn sample_set_losses(
    samples: &[MotionSequence],
    gt: &MotionSequence,
    mm_gt: &[MotionSequence],
    alpha: f64,
) -> Result<SampleSetLosses, PhysicsError> {
    if samples.is_empty() {
        return Err(PhysicsError::EmptySampleSet);
    }
    if !(alpha.is_finite() && alpha > 0.0) {
        return Err(PhysicsError::BadAlpha { value: alpha });
    }
    for s in samples {
        if !s.same_shape(gt) {
            return Err(PhysicsError::ShapeMismatch { context: "samples vs gt" });
        }
    }
    for m in mm_gt {
        if !m.same_shape(gt) {
            return Err(PhysicsError::ShapeMismatch { context: "mm_gt vs gt" });
        }
    }

    let dists: Vec<f64> = samples.iter().map(|s| sq_frobenius(s, gt)).collect();
    let recon = dists.iter().copied().fold(f64::INFINITY, f64::min);
    let historical = dists.iter().sum::<f64>() / samples.len() as f64;

    let multimodal = if mm_gt.is_empty() {
        None
    } else {
        let total: f64 = mm_gt
            .iter()
            .map(|m| {
                samples
                    .iter()
                    .map(|s| sq_frobenius(s, m))
                    .fold(f64::INFINITY, f64::min)
            })
            .sum();
        Some(total / mm_gt.len() as f64)
    };

    let k = samples.len();
    let diversity = if k < 2 {
        None
    } else {
        let mut total = 0.0;
        for j in 0..k {
            for l in (j + 1)..k {
                total += (-l1_distance(&samples[j], &samples[l]) / alpha).exp();
            }
        }
        Some(2.0 * total / (k * (k - 1)) as f64)
    };

    Ok(SampleSetLosses { recon, historical, multimodal, diversity })
}

/// Weights for [`composite_loss`]. Defaults are the published tuning for
/// this refinement stack (the prior-likelihood term has no weight here
/// because that term needs a trained density model and is out of scope).
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct CompositeWeights {
    pub recon: f64,
    pub historical: f64,
    pub multimodal: f64,
    pub diversity: f64,
    pub limb: f64,
    pub angle: f64,
    pub temporal: f64,
}

impl Default for CompositeWeights {
    fn default() -> Self {
        CompositeWeights {
            recon: 11.0,
            historical: 16.0,
            multimodal: 0.1,
            diversity: 0.63,
            limb: 0.5,
            angle: 5.0,
            temporal: 1.28,
        }
    }
}

/// Weighted sum of every available term; absent sample-set terms contribute
/// nothing. A convenience combiner for reporting, not a training objective.
pub fn composite_loss(
    set: &SampleSetLosses,
    limb: f64,
    angle: f64,
    temporal: f64,
    weights: &CompositeWeights,
) -> f64 {
    weights.recon * set.recon
        + weights.historical * set.historical
        + weights.multimodal * set.multimodal.unwrap_or(0.0)
        + weights.diversity * set.diversity.unwrap_or(0.0)
        + weights.limb * limb
        + weights.angle * angle
        + weights.temporal * temporal
}
