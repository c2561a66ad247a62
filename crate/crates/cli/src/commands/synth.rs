use std::path::PathBuf;

use clap::Args;
use freqkal::synth::{generate, MotionKind, NoiseSpec, SynthSpec};
use freqkal::{Axis, MotionSequence};

use crate::error::{computation_error, CliError};
use crate::formats::{self, SidecarChannel, SynthSidecar, FORMAT_VERSION};

/// Generate a seeded synthetic motion sequence, optionally with noise.
#[derive(Args)]
pub struct SynthArgs {
    /// Generator family: sinusoid-mix | polynomial | walk-like
    #[arg(long, conflicts_with = "config")]
    kind: Option<String>,
    /// Polynomial degree cap (only with --kind polynomial)
    #[arg(long, default_value_t = 3, conflicts_with = "config")]
    degree: usize,
    #[arg(long, default_value_t = 100, conflicts_with = "config")]
    frames: usize,
    #[arg(long, default_value_t = 17, conflicts_with = "config")]
    joints: usize,
    #[arg(long, default_value_t = 30.0, conflicts_with = "config")]
    fps: f64,
    #[arg(long, default_value_t = 0, conflicts_with = "config")]
    seed: u64,
    /// Target high-band energy ratio; enables band-limited noise injection
    #[arg(long, conflicts_with_all = ["config", "noise_sigma"])]
    noise_ratio: Option<f64>,
    /// White positional noise standard deviation
    #[arg(long, conflicts_with_all = ["config", "noise_ratio"])]
    noise_sigma: Option<f64>,
    /// Cutoff bin for --noise-ratio injection
    #[arg(long, default_value_t = 10, conflicts_with = "config")]
    k0: usize,
    /// Replay a previous run: a spec document or a synth sidecar
    #[arg(long)]
    config: Option<PathBuf>,
    /// Clean output path (.json or .csv); noisy and sidecar files are
    /// derived from it
    #[arg(long)]
    out: PathBuf,
}

fn parse_kind(kind: Option<&str>, degree: usize) -> Result<MotionKind, CliError> {
    match kind.unwrap_or("sinusoid-mix").replace('_', "-").as_str() {
        "sinusoid-mix" => Ok(MotionKind::SinusoidMix),
        "polynomial" => Ok(MotionKind::Polynomial { max_degree: degree }),
        "walk-like" => Ok(MotionKind::WalkLike),
        other => Err(CliError::Usage(format!(
            "unknown --kind `{other}` (expected sinusoid-mix, polynomial or walk-like)"
        ))),
    }
}

pub fn run(args: SynthArgs) -> Result<(), CliError> {
    let spec = match &args.config {
        Some(path) => formats::read_synth_spec(path)?,
        None => SynthSpec {
            frames: args.frames,
            joints: args.joints,
            fps: args.fps,
            kind: parse_kind(args.kind.as_deref(), args.degree)?,
            seed: args.seed,
            noise: match (args.noise_ratio, args.noise_sigma) {
                (Some(ratio), _) => NoiseSpec::HighBand { k0: args.k0, target_ratio: ratio },
                (None, Some(sigma)) => NoiseSpec::White { sigma },
                (None, None) => NoiseSpec::None,
            },
        },
    };
    spec.validate().map_err(|e| CliError::Usage(e.to_string()))?;

    let output = generate(&spec).map_err(|e| computation_error("synth", e))?;

    formats::write_motion(&args.out, &output.clean)?;
    println!(
        "wrote clean motion: {} ({} frames x {} joints)",
        args.out.display(),
        output.clean.frames(),
        output.clean.joints()
    );

    if spec.noise != NoiseSpec::None {
        let noisy_path = formats::with_tag(&args.out, "noisy");
        formats::write_motion(&noisy_path, &output.noisy)?;
        println!("wrote noisy motion: {}", noisy_path.display());

        let stem = args.out.file_stem().and_then(|s| s.to_str()).unwrap_or("out");
        let sidecar_path = args.out.with_file_name(format!("{stem}.rho.json"));
        let channels = channel_rows(&output.clean, &output.noise_energy, &output.measured_rho);
        let sidecar = SynthSidecar {
            format_version: FORMAT_VERSION,
            command: "synth".to_string(),
            spec,
            channels,
        };
        formats::write_json(&sidecar_path, &sidecar)?;
        println!("wrote channel report: {}", sidecar_path.display());
    }
    Ok(())
}

/// Channel bookkeeping in canonical order (joint-major, axis x/y/z).
fn channel_rows(
    clean: &MotionSequence,
    noise_energy: &[f64],
    measured_rho: &Option<Vec<f64>>,
) -> Vec<SidecarChannel> {
    let n = clean.joints() * 3;
    (0..n)
        .map(|i| SidecarChannel {
            joint_index: i / 3,
            axis: Axis::from_index(i % 3),
            rho: measured_rho.as_ref().map(|r| r[i]),
            noise_energy: noise_energy.get(i).copied().unwrap_or(0.0),
        })
        .collect()
}
