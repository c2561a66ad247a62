use std::path::{Path, PathBuf};

use clap::Args;
use freqkal::metrics::{ade, apd, fde, mmade, mmfde, multimodal_gt, MetricReport};
use freqkal::MotionSequence;

use crate::error::{computation_error, CliError};
use crate::formats::{self, EvaluateReport, FORMAT_VERSION};

/// Score a set of predicted sequences against ground truth.
#[derive(Args)]
pub struct EvaluateArgs {
    /// Directory of predicted samples (read in file-name order)
    #[arg(long)]
    pred_dir: PathBuf,
    /// Ground-truth sequence
    #[arg(long)]
    gt: PathBuf,
    /// Directory of multimodal ground-truth futures
    #[arg(long)]
    mm_gt_dir: Option<PathBuf>,
    /// Directory of pasts paired (by sorted file name) with --mm-gt-dir;
    /// enables threshold filtering
    #[arg(long, requires_all = ["mm_gt_dir", "query_past", "mm_eps"])]
    mm_past_dir: Option<PathBuf>,
    /// The query past the filter compares each candidate past against
    #[arg(long)]
    query_past: Option<PathBuf>,
    /// Distance threshold for the past filter
    #[arg(long)]
    mm_eps: Option<f64>,
    /// Comma-separated subset of apd,ade,fde,mmade,mmfde (default: all
    /// that the given inputs support)
    #[arg(long)]
    metrics: Option<String>,
    /// Write the metric report here as JSON
    #[arg(long)]
    out: Option<PathBuf>,
}

const ALL_METRICS: [&str; 5] = ["apd", "ade", "fde", "mmade", "mmfde"];

fn parse_metric_list(arg: &Option<String>) -> Result<Vec<&'static str>, CliError> {
    let Some(list) = arg else {
        return Ok(ALL_METRICS.to_vec());
    };
    let mut out = Vec::new();
    for item in list.split(',') {
        let item = item.trim();
        match ALL_METRICS.iter().find(|m| **m == item) {
            Some(m) => {
                if !out.contains(m) {
                    out.push(*m);
                }
            }
            None => {
                return Err(CliError::Usage(format!(
                    "unknown metric `{item}` (expected apd, ade, fde, mmade or mmfde)"
                )))
            }
        }
    }
    if out.is_empty() {
        return Err(CliError::Usage("--metrics names no metric".into()));
    }
    Ok(out)
}

fn read_dir_motions(dir: &Path) -> Result<Vec<MotionSequence>, CliError> {
    formats::motion_files_sorted(dir)?
        .iter()
        .map(|p| formats::read_motion(p))
        .collect()
}

pub fn run(args: EvaluateArgs) -> Result<(), CliError> {
    let requested = parse_metric_list(&args.metrics)?;
    let wants = |m: &str| requested.iter().any(|r| *r == m);
    let wants_mm = wants("mmade") || wants("mmfde");
    if wants_mm && args.metrics.is_some() && args.mm_gt_dir.is_none() {
        return Err(CliError::Usage(
            "mmade/mmfde requested but --mm-gt-dir not given".into(),
        ));
    }

    if let Some(eps) = args.mm_eps {
        if !(eps.is_finite() && eps >= 0.0) {
            return Err(CliError::Usage(format!(
                "--mm-eps must be a nonnegative finite number, got {eps}"
            )));
        }
    }

    let samples = read_dir_motions(&args.pred_dir)?;
    let gt = formats::read_motion(&args.gt)?;

    let gt_set: Option<Vec<MotionSequence>> = match (&args.mm_gt_dir, wants_mm) {
        (Some(dir), true) => {
            let futures = read_dir_motions(dir)?;
            Some(match &args.mm_past_dir {
                Some(past_dir) => {
                    // clap's `requires_all` guarantees these are present
                    let pasts = read_dir_motions(past_dir)?;
                    let query = formats::read_motion(args.query_past.as_ref().unwrap())?;
                    let eps = args.mm_eps.unwrap();
                    multimodal_gt(&pasts, &futures, &query, eps)
                        .map_err(|e| computation_error("multimodal filter", e))?
                }
                None => futures,
            })
        }
        _ => None,
    };

    let mut report = MetricReport {
        k: Some(samples.len()),
        m: gt_set.as_ref().map(Vec::len),
        frames: Some(gt.frames()),
        joints: Some(gt.joints()),
        ..MetricReport::default()
    };
    if wants("apd") {
        report.apd = Some(apd(&samples).map_err(|e| computation_error("apd", e))?);
    }
    if wants("ade") {
        report.ade = Some(ade(&samples, &gt).map_err(|e| computation_error("ade", e))?);
    }
    if wants("fde") {
        report.fde = Some(fde(&samples, &gt).map_err(|e| computation_error("fde", e))?);
    }
    if let Some(gt_set) = &gt_set {
        if wants("mmade") {
            report.mmade =
                Some(mmade(&samples, gt_set).map_err(|e| computation_error("mmade", e))?);
        }
        if wants("mmfde") {
            report.mmfde =
                Some(mmfde(&samples, gt_set).map_err(|e| computation_error("mmfde", e))?);
        }
    }

    for (name, value) in [
        ("apd", report.apd),
        ("ade", report.ade),
        ("fde", report.fde),
        ("mmade", report.mmade),
        ("mmfde", report.mmfde),
    ] {
        if let Some(v) = value {
            println!("{name} = {v}");
        }
    }

    if let Some(out) = &args.out {
        let doc = EvaluateReport {
            format_version: FORMAT_VERSION,
            command: "evaluate".to_string(),
            metrics: report,
        };
        formats::write_json(out, &doc)?;
        println!("wrote report: {}", out.display());
    }
    Ok(())
}
