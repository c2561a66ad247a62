use std::path::PathBuf;

use clap::Args;
use freqkal::kalman::{adaptive_params, steady_state_error, steady_state_gain};
use freqkal::RefinementConfig;

use crate::error::CliError;
use crate::svg::{line_chart, Series};

/// Closed-form steady-state filter quantities, for one (Q, R) pair or
/// swept across an SNR grid through the adaptive schedule.
#[derive(Args)]
pub struct SteadyStateArgs {
    /// Process variance (with --r)
    #[arg(long, requires = "r", conflicts_with = "sweep_snr")]
    q: Option<f64>,
    /// Observation variance (with --q)
    #[arg(long, requires = "q", conflicts_with = "sweep_snr")]
    r: Option<f64>,
    /// Log-spaced SNR grid `lo:hi:n`, e.g. 0.1:1000:100
    #[arg(long)]
    sweep_snr: Option<String>,
    /// Schedule knobs used by the sweep
    #[arg(long, default_value_t = 1e-6)]
    q0: f64,
    #[arg(long, default_value_t = 1e-2)]
    r0: f64,
    #[arg(long, default_value_t = 0.2)]
    lambda_q: f64,
    #[arg(long, default_value_t = 0.5)]
    lambda_r: f64,
    /// Sweep table destination (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Render the sweep as an SVG chart (per-series normalized)
    #[arg(long, requires = "sweep_snr")]
    svg: Option<PathBuf>,
}

fn parse_grid(s: &str) -> Result<(f64, f64, usize), CliError> {
    let bad = || {
        CliError::Usage(format!(
            "--sweep-snr expects lo:hi:n with 0 < lo < hi and n >= 2, got `{s}`"
        ))
    };
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err(bad());
    }
    let lo: f64 = parts[0].parse().map_err(|_| bad())?;
    let hi: f64 = parts[1].parse().map_err(|_| bad())?;
    let n: usize = parts[2].parse().map_err(|_| bad())?;
    if !(lo.is_finite() && hi.is_finite() && lo > 0.0 && hi > lo && n >= 2) {
        return Err(bad());
    }
    Ok((lo, hi, n))
}

pub fn run(args: SteadyStateArgs) -> Result<(), CliError> {
    match (&args.q, &args.sweep_snr) {
        (Some(q), None) => run_pair(*q, args.r.unwrap()),
        (None, Some(grid)) => run_sweep(&args, grid),
        _ => Err(CliError::Usage(
            "give either --q/--r or --sweep-snr".into(),
        )),
    }
}

fn run_pair(q: f64, r: f64) -> Result<(), CliError> {
    let p = steady_state_error(q, r).map_err(|e| CliError::Usage(e.to_string()))?;
    let k = steady_state_gain(q, r).map_err(|e| CliError::Usage(e.to_string()))?;
    println!("p_star = {p}");
    println!("k_star = {k}");
    Ok(())
}

fn run_sweep(args: &SteadyStateArgs, grid: &str) -> Result<(), CliError> {
    let (lo, hi, n) = parse_grid(grid)?;
    let config = RefinementConfig {
        q0: args.q0,
        r0: args.r0,
        lambda_q: args.lambda_q,
        lambda_r: args.lambda_r,
        ..RefinementConfig::default()
    };
    config.validate().map_err(|e| CliError::Usage(e.to_string()))?;

    let ratio = hi / lo;
    let mut table = String::from("snr,q,r,k_star\n");
    let mut q_pts = Vec::with_capacity(n);
    let mut r_pts = Vec::with_capacity(n);
    let mut k_pts = Vec::with_capacity(n);
    for i in 0..n {
        let snr = lo * ratio.powf(i as f64 / (n - 1) as f64);
        let params = adaptive_params(snr, &config);
        let k = steady_state_gain(params.q(), params.r())
            .expect("scheduled variances are positive");
        table.push_str(&format!("{snr},{},{},{k}\n", params.q(), params.r()));
        let x = snr.log10();
        q_pts.push((x, params.q()));
        r_pts.push((x, params.r()));
        k_pts.push((x, k));
    }

    match &args.out {
        Some(path) => {
            std::fs::write(path, &table).map_err(|e| CliError::io("sweep table", e))?;
            println!("wrote sweep: {}", path.display());
        }
        None => print!("{table}"),
    }

    if let Some(svg_path) = &args.svg {
        let chart = line_chart(
            "Noise schedule and steady-state gain vs SNR",
            "log10(snr)",
            "per-series normalized",
            &[
                Series { label: "q".into(), color: "#d62728", dashed: false, points: q_pts },
                Series { label: "r".into(), color: "#1f77b4", dashed: false, points: r_pts },
                Series {
                    label: "k_star".into(),
                    color: "#2ca02c",
                    dashed: true,
                    points: k_pts,
                },
            ],
            true,
        );
        std::fs::write(svg_path, chart).map_err(|e| CliError::io("svg", e))?;
        println!("wrote chart: {}", svg_path.display());
    }
    Ok(())
}
