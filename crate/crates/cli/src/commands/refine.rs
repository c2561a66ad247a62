use std::path::PathBuf;
use std::time::Instant;

use clap::Args;
use freqkal::kalman::refine_motion;
use freqkal::motion::validate;
use freqkal::{RefineMode, RefinementConfig};

use crate::error::{kalman_error, CliError};
use crate::formats::{self, RefineReport, FORMAT_VERSION};

/// Refine a motion sequence in the frequency domain.
#[derive(Args)]
pub struct RefineArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    output: PathBuf,
    /// adaptive | fixed-kalman | fixed-suppress
    #[arg(long, conflicts_with = "config")]
    mode: Option<String>,
    /// Cutoff bin: coefficients below it pass through untouched
    #[arg(long, conflicts_with = "config")]
    k0: Option<usize>,
    /// Base process variance
    #[arg(long, conflicts_with = "config")]
    q0: Option<f64>,
    /// Base observation variance
    #[arg(long, conflicts_with = "config")]
    r0: Option<f64>,
    #[arg(long, conflicts_with = "config")]
    lambda_q: Option<f64>,
    #[arg(long, conflicts_with = "config")]
    lambda_r: Option<f64>,
    /// Suppression factor for fixed-suppress mode
    #[arg(long, conflicts_with = "config")]
    gamma: Option<f64>,
    /// Leave the DC coefficient out of the high-band energy ratio
    #[arg(long, conflicts_with = "config")]
    exclude_dc: bool,
    /// Reuse the configuration from a config document or a previous report
    #[arg(long)]
    config: Option<PathBuf>,
    /// Write a replayable run report here
    #[arg(long)]
    report: Option<PathBuf>,
    /// Size of the worker pool for per-channel parallelism
    #[arg(long)]
    threads: Option<usize>,
    /// Record wall-clock duration in the report (makes the report
    /// non-reproducible byte for byte)
    #[arg(long)]
    timing: bool,
}

pub fn parse_mode(s: &str) -> Result<RefineMode, CliError> {
    match s.replace('_', "-").as_str() {
        "adaptive" => Ok(RefineMode::Adaptive),
        "fixed-kalman" => Ok(RefineMode::FixedKalman),
        "fixed-suppress" => Ok(RefineMode::FixedSuppress),
        other => Err(CliError::Usage(format!(
            "unknown --mode `{other}` (expected adaptive, fixed-kalman or fixed-suppress)"
        ))),
    }
}

fn build_config(args: &RefineArgs) -> Result<RefinementConfig, CliError> {
    let mut config = match &args.config {
        Some(path) => formats::read_refine_config(path)?,
        None => RefinementConfig::default(),
    };
    if let Some(mode) = &args.mode {
        config.mode = parse_mode(mode)?;
    }
    if let Some(k0) = args.k0 {
        config.k0 = k0;
    }
    if let Some(q0) = args.q0 {
        config.q0 = q0;
    }
    if let Some(r0) = args.r0 {
        config.r0 = r0;
    }
    if let Some(l) = args.lambda_q {
        config.lambda_q = l;
    }
    if let Some(l) = args.lambda_r {
        config.lambda_r = l;
    }
    if let Some(g) = args.gamma {
        config.gamma = g;
    }
    if args.exclude_dc {
        config.include_dc = false;
    }
    config.validate().map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(config)
}

pub fn run(args: RefineArgs) -> Result<(), CliError> {
    let config = build_config(&args)?;
    let motion = formats::read_motion(&args.input)?;

    let work = || refine_motion(&motion, &config).map_err(|e| kalman_error("refine", e));
    let start = Instant::now();
    let (refined, channels) = match args.threads {
        None => work()?,
        Some(0) => return Err(CliError::Usage("--threads must be at least 1".into())),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| CliError::Io(format!("thread pool: {e}")))?
            .install(work)?,
    };
    let timing_ms = args.timing.then(|| start.elapsed().as_secs_f64() * 1e3);

    // the refinement must never manufacture non-finite values
    validate(&refined)
        .map_err(|e| CliError::Numerical(format!("refined output: {e}")))?;
    formats::write_motion(&args.output, &refined)?;
    println!(
        "refined {} frames x {} joints ({} channels, mode {})",
        refined.frames(),
        refined.joints(),
        channels.len(),
        config.mode
    );
    println!("wrote: {}", args.output.display());

    if let Some(report_path) = &args.report {
        let report = RefineReport {
            format_version: FORMAT_VERSION,
            command: "refine".to_string(),
            config,
            input: args.input.display().to_string(),
            output: args.output.display().to_string(),
            frames: motion.frames(),
            joints: motion.joints(),
            fps: motion.fps(),
            channels,
            timing_ms,
        };
        formats::write_json(report_path, &report)?;
        println!("wrote report: {}", report_path.display());
    }
    Ok(())
}
