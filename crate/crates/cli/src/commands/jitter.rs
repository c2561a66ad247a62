use std::path::PathBuf;

use clap::Args;
use freqkal::metrics::{jerk_profile, jitter_reduction};
use freqkal::MotionSequence;

use crate::error::{computation_error, CliError};
use crate::formats::{self, JitterReport, JitterRow, FORMAT_VERSION};

/// Tabulate per-part jerk before/after refinement.
#[derive(Args)]
pub struct JitterArgs {
    /// Unrefined sequence
    #[arg(long)]
    base: PathBuf,
    /// Refined counterpart (same shape)
    #[arg(long)]
    refined: PathBuf,
    /// JSON map from joint name to body-part label; rows then aggregate
    /// whole parts instead of single joints
    #[arg(long)]
    parts_map: Option<PathBuf>,
    /// Report jerk per second^3 instead of per frame^3 (multiplies by fps^3)
    #[arg(long)]
    fps_scale: bool,
    /// Write the table as JSON here
    #[arg(long)]
    out: Option<PathBuf>,
}

struct Group {
    part: String,
    joints: Vec<usize>,
}

/// One row per part, parts ordered by their first member joint. Joints
/// missing from the map keep their own name as a singleton part.
fn group_joints(
    motion: &MotionSequence,
    parts_map: &Option<PathBuf>,
) -> Result<Vec<Group>, CliError> {
    let joint_label = |j: usize| -> String {
        motion
            .joint_names()
            .and_then(|n| n.get(j).cloned())
            .unwrap_or_else(|| format!("joint_{j}"))
    };
    let map = match parts_map {
        Some(path) => {
            if motion.joint_names().is_none() {
                return Err(CliError::Usage(
                    "--parts-map needs named joints in the base sequence".into(),
                ));
            }
            Some(formats::read_parts_map(path)?)
        }
        None => None,
    };
    let mut groups: Vec<Group> = Vec::new();
    for j in 0..motion.joints() {
        let label = joint_label(j);
        let part = map
            .as_ref()
            .and_then(|m| m.get(&label).cloned())
            .unwrap_or(label);
        match groups.iter_mut().find(|g| g.part == part) {
            Some(g) => g.joints.push(j),
            None => groups.push(Group { part, joints: vec![j] }),
        }
    }
    Ok(groups)
}

fn fmt_opt_pct(v: Option<f64>) -> String {
    match v {
        Some(p) => format!("{p:>9.2}%"),
        None => format!("{:>10}", "n/a"),
    }
}

pub fn run(args: JitterArgs) -> Result<(), CliError> {
    let base = formats::read_motion(&args.base)?;
    let refined = formats::read_motion(&args.refined)?;
    if base.fps() != refined.fps() {
        return Err(CliError::Shape(format!(
            "fps differs: base {} vs refined {}",
            base.fps(),
            refined.fps()
        )));
    }

    let reduction =
        jitter_reduction(&base, &refined).map_err(|e| computation_error("jitter", e))?;
    let mut jerk_base = jerk_profile(&base).map_err(|e| computation_error("jitter", e))?;
    let mut jerk_ours =
        jerk_profile(&refined).map_err(|e| computation_error("jitter", e))?;
    if args.fps_scale {
        let scale = base.fps().powi(3);
        for v in jerk_base.iter_mut().chain(jerk_ours.iter_mut()) {
            *v *= scale;
        }
    }

    let groups = group_joints(&base, &args.parts_map)?;
    let mut rows = Vec::with_capacity(groups.len());
    for g in &groups {
        let n = g.joints.len() as f64;
        let b: f64 = g.joints.iter().map(|&j| jerk_base[j]).sum::<f64>();
        let o: f64 = g.joints.iter().map(|&j| jerk_ours[j]).sum::<f64>();
        rows.push(JitterRow {
            part: g.part.clone(),
            base: b / n,
            ours: o / n,
            reduction_pct: (b > 0.0).then(|| 100.0 * (1.0 - o / b)),
        });
    }
    let n_all = base.joints() as f64;
    let average = JitterRow {
        part: "Average".to_string(),
        base: jerk_base.iter().sum::<f64>() / n_all,
        ours: jerk_ours.iter().sum::<f64>() / n_all,
        reduction_pct: reduction.mean,
    };

    println!("{:<20} {:>12} {:>12} {:>10}", "Body Part", "Base", "Ours", "Reduction");
    for row in rows.iter().chain(std::iter::once(&average)) {
        println!(
            "{:<20} {:>12.6} {:>12.6} {}",
            row.part,
            row.base,
            row.ours,
            fmt_opt_pct(row.reduction_pct)
        );
    }

    if let Some(out) = &args.out {
        let doc = JitterReport {
            format_version: FORMAT_VERSION,
            command: "jitter".to_string(),
            fps_scaled: args.fps_scale,
            rows,
            average,
        };
        formats::write_json(out, &doc)?;
        println!("wrote report: {}", out.display());
    }
    Ok(())
}
