//! Joint topology: parent links, limb pairs, and angle constraints.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum SkeletonError {
    #[error("parents list has {actual} entries for {expected} joints")]
    ParentCountMismatch { expected: usize, actual: usize },
    #[error("parent chain starting at joint {joint} contains a cycle")]
    ParentCycle { joint: usize },
    #[error("{what} references joint {index}, but joint_count is {count}")]
    IndexOutOfRange { what: &'static str, index: usize, count: usize },
    #[error("constraint '{name}': cos_min {cos_min} exceeds cos_max {cos_max}")]
    BadCosineBounds { name: String, cos_min: f64, cos_max: f64 },
    #[error("constraint '{name}': cosine bound outside [-1, 1]")]
    BoundOutOfRange { name: String },
}

/// Second leg of an angle constraint: either another bone, or the normal of
/// the plane spanned by three joints, `(b - a) x (c - a)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum VectorSpec {
    Bone { tail: usize, head: usize },
    Plane { a: usize, b: usize, c: usize },
}

impl VectorSpec {
    fn max_index(&self) -> usize {
        match *self {
            VectorSpec::Bone { tail, head } => tail.max(head),
            VectorSpec::Plane { a, b, c } => a.max(b).max(c),
        }
    }
}

/// Bounds the cosine of the angle between bone `(tail, head)` and `target`
/// to `[cos_min, cos_max]`; poses outside the band are penalized
/// quadratically by the angle loss.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AngleConstraint {
    pub name: String,
    /// (tail joint, head joint); the vector is head - tail.
    pub bone: (usize, usize),
    pub target: VectorSpec,
    pub cos_min: f64,
    pub cos_max: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Skeleton {
    pub joint_count: usize,
    /// Per-joint parent; `None` marks a root.
    pub parents: Vec<Option<usize>>,
    /// (parent joint, child joint) pairs measured by the limb-length loss.
    pub limb_pairs: Vec<(usize, usize)>,
    pub constraints: Vec<AngleConstraint>,
}

impl Skeleton {
    /// A skeleton with no topology, only angle constraints; enough for the
    /// angle loss, which never consults parents or limbs.
    pub fn from_constraints(joint_count: usize, constraints: Vec<AngleConstraint>) -> Self {
        Skeleton {
            joint_count,
            parents: vec![None; joint_count],
            limb_pairs: Vec::new(),
            constraints,
        }
    }

    pub fn validate(&self) -> Result<(), SkeletonError> {
        if self.parents.len() != self.joint_count {
            return Err(SkeletonError::ParentCountMismatch {
                expected: self.joint_count,
                actual: self.parents.len(),
            });
        }
        let check = |what: &'static str, index: usize| {
            if index >= self.joint_count {
                Err(SkeletonError::IndexOutOfRange { what, index, count: self.joint_count })
            } else {
                Ok(())
            }
        };
        for (j, p) in self.parents.iter().enumerate() {
            if let Some(p) = *p {
                check("parents", p)?;
                // walking up must terminate within joint_count hops
                let (mut cur, mut hops) = (p, 0usize);
                loop {
                    match self.parents[cur] {
                        None => break,
                        Some(next) => {
                            hops += 1;
                            if hops > self.joint_count {
                                return Err(SkeletonError::ParentCycle { joint: j });
                            }
                            cur = next;
                        }
                    }
                }
            }
        }
        for &(a, b) in &self.limb_pairs {
            check("limb_pairs", a)?;
            check("limb_pairs", b)?;
        }
        for c in &self.constraints {
            check("constraint bone", c.bone.0)?;
            check("constraint bone", c.bone.1)?;
            check("constraint target", c.target.max_index())?;
            if !(-1.0..=1.0).contains(&c.cos_min) || !(-1.0..=1.0).contains(&c.cos_max) {
                return Err(SkeletonError::BoundOutOfRange { name: c.name.clone() });
            }
            if c.cos_min > c.cos_max {
                return Err(SkeletonError::BadCosineBounds {
                    name: c.name.clone(),
                    cos_min: c.cos_min,
                    cos_max: c.cos_max,
                });
            }
        }
        Ok(())
    }
}
