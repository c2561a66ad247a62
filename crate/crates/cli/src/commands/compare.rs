use std::path::PathBuf;

use clap::Args;
use freqkal::kalman::refine_motion;
use freqkal::metrics::jerk_profile;
use freqkal::{Axis, MotionSequence, RefineMode, RefinementConfig};

use crate::error::{computation_error, kalman_error, CliError};
use crate::formats::{self, CompareReport, CompareRow, FORMAT_VERSION};
use crate::svg::{line_chart, Series};

/// Score every refinement mode against a known clean reference.
#[derive(Args)]
pub struct CompareArgs {
    /// Noisy sequence to refine
    #[arg(long)]
    input: PathBuf,
    /// Clean reference with the same shape
    #[arg(long)]
    clean: PathBuf,
    /// Suppression factors to try, comma separated
    #[arg(long, default_value = "0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9")]
    gammas: String,
    /// Schedule knobs shared by every mode
    #[arg(long)]
    k0: Option<usize>,
    #[arg(long)]
    q0: Option<f64>,
    #[arg(long)]
    r0: Option<f64>,
    #[arg(long)]
    lambda_q: Option<f64>,
    #[arg(long)]
    lambda_r: Option<f64>,
    #[arg(long)]
    exclude_dc: bool,
    /// Write the comparison as JSON here
    #[arg(long)]
    out: Option<PathBuf>,
    /// Render one channel (clean/input/adaptive) as an SVG overlay
    #[arg(long)]
    svg: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    svg_joint: usize,
    /// x | y | z
    #[arg(long, default_value = "x")]
    svg_axis: String,
}

fn parse_gammas(s: &str) -> Result<Vec<f64>, CliError> {
    let mut out = Vec::new();
    for item in s.split(',') {
        let g: f64 = item.trim().parse().map_err(|_| {
            CliError::Usage(format!("--gammas: `{}` is not a number", item.trim()))
        })?;
        if !(g.is_finite() && (0.0..=1.0).contains(&g)) {
            return Err(CliError::Usage(format!(
                "--gammas: {g} outside [0, 1]"
            )));
        }
        out.push(g);
    }
    if out.is_empty() {
        return Err(CliError::Usage("--gammas names no factor".into()));
    }
    Ok(out)
}

fn parse_axis(s: &str) -> Result<Axis, CliError> {
    match s {
        "x" => Ok(Axis::X),
        "y" => Ok(Axis::Y),
        "z" => Ok(Axis::Z),
        other => Err(CliError::Usage(format!(
            "--svg-axis must be x, y or z, got `{other}`"
        ))),
    }
}

fn mse(a: &MotionSequence, b: &MotionSequence) -> f64 {
    let n = a.data().len() as f64;
    a.data()
        .iter()
        .zip(b.data())
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        / n
}

fn mean_jerk(motion: &MotionSequence) -> Result<f64, CliError> {
    let per_joint = jerk_profile(motion).map_err(|e| computation_error("jerk", e))?;
    Ok(per_joint.iter().sum::<f64>() / per_joint.len() as f64)
}

fn row(label: String, motion: &MotionSequence, clean: &MotionSequence) -> Result<CompareRow, CliError> {
    Ok(CompareRow {
        label,
        mse_vs_clean: mse(motion, clean),
        mean_jerk: mean_jerk(motion)?,
    })
}

pub fn run(args: CompareArgs) -> Result<(), CliError> {
    let gammas = parse_gammas(&args.gammas)?;
    let axis = parse_axis(&args.svg_axis)?;
    let noisy = formats::read_motion(&args.input)?;
    let clean = formats::read_motion(&args.clean)?;
    if !noisy.same_shape(&clean) {
        return Err(CliError::Shape(format!(
            "input is {}x{} but clean is {}x{}",
            noisy.frames(),
            noisy.joints(),
            clean.frames(),
            clean.joints()
        )));
    }
    if args.svg.is_some() && args.svg_joint >= noisy.joints() {
        return Err(CliError::Usage(format!(
            "--svg-joint {} out of range (sequence has {} joints)",
            args.svg_joint,
            noisy.joints()
        )));
    }

    let mut base_config = RefinementConfig::default();
    if let Some(k0) = args.k0 {
        base_config.k0 = k0;
    }
    if let Some(q0) = args.q0 {
        base_config.q0 = q0;
    }
    if let Some(r0) = args.r0 {
        base_config.r0 = r0;
    }
    if let Some(l) = args.lambda_q {
        base_config.lambda_q = l;
    }
    if let Some(l) = args.lambda_r {
        base_config.lambda_r = l;
    }
    if args.exclude_dc {
        base_config.include_dc = false;
    }
    base_config.validate().map_err(|e| CliError::Usage(e.to_string()))?;

    let refine_with = |mode: RefineMode, gamma: f64| -> Result<MotionSequence, CliError> {
        let config = RefinementConfig { mode, gamma, ..base_config.clone() };
        let (refined, _) =
            refine_motion(&noisy, &config).map_err(|e| kalman_error("compare", e))?;
        Ok(refined)
    };

    let mut rows = vec![row("raw".to_string(), &noisy, &clean)?];
    for &g in &gammas {
        let refined = refine_with(RefineMode::FixedSuppress, g)?;
        rows.push(row(format!("fixed-suppress(gamma={g})"), &refined, &clean)?);
    }
    let fixed = refine_with(RefineMode::FixedKalman, base_config.gamma)?;
    rows.push(row("fixed-kalman".to_string(), &fixed, &clean)?);
    let adaptive = refine_with(RefineMode::Adaptive, base_config.gamma)?;
    rows.push(row("adaptive".to_string(), &adaptive, &clean)?);

    println!("{:<28} {:>14} {:>14}", "method", "mse", "mean_jerk");
    for r in &rows {
        println!("{:<28} {:>14.6e} {:>14.6e}", r.label, r.mse_vs_clean, r.mean_jerk);
    }

    if let Some(out) = &args.out {
        let doc = CompareReport {
            format_version: FORMAT_VERSION,
            command: "compare".to_string(),
            config: base_config.clone(),
            gammas: gammas.clone(),
            rows,
        };
        formats::write_json(out, &doc)?;
        println!("wrote report: {}", out.display());
    }

    if let Some(svg_path) = &args.svg {
        let trace = |m: &MotionSequence| -> Vec<(f64, f64)> {
            (0..m.frames())
                .map(|t| (t as f64, m.get(t, args.svg_joint, axis)))
                .collect()
        };
        let chart = line_chart(
            &format!("joint {} axis {} trajectory", args.svg_joint, args.svg_axis),
            "frame",
            "position",
            &[
                Series {
                    label: "input".into(),
                    color: "#d62728",
                    dashed: false,
                    points: trace(&noisy),
                },
                Series {
                    label: "adaptive".into(),
                    color: "#1f77b4",
                    dashed: false,
                    points: trace(&adaptive),
                },
                Series {
                    label: "clean".into(),
                    color: "#2ca02c",
                    dashed: true,
                    points: trace(&clean),
                },
            ],
            false,
        );
        std::fs::write(svg_path, chart).map_err(|e| CliError::io("svg", e))?;
        println!("wrote chart: {}", svg_path.display());
    }
    Ok(())
}
