//! `freqkal` — frequency-domain Kalman refinement of 3D motion sequences.
//!
//! Every subcommand is deterministic: identical arguments and input files
//! produce byte-identical output files regardless of thread count.
//! Exit codes: 0 success, 2 usage, 3 I/O or parse, 4 a computation produced
//! a non-finite value, 5 input shapes are incompatible.

use clap::{Parser, Subcommand};
use freqkal_cli::commands;

#[derive(Parser)]
#[command(
    name = "freqkal",
    version,
    about = "Adaptive frequency-domain Kalman refinement for 3D motion sequences"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    Synth(commands::synth::SynthArgs),
    Refine(commands::refine::RefineArgs),
    Evaluate(commands::evaluate::EvaluateArgs),
    Jitter(commands::jitter::JitterArgs),
    SteadyState(commands::steady_state::SteadyStateArgs),
    Compare(commands::compare::CompareArgs),
}

fn main() {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Synth(args) => commands::synth::run(args),
        Command::Refine(args) => commands::refine::run(args),
        Command::Evaluate(args) => commands::evaluate::run(args),
        Command::Jitter(args) => commands::jitter::run(args),
        Command::SteadyState(args) => commands::steady_state::run(args),
        Command::Compare(args) => commands::compare::run(args),
    };
    if let Err(e) = result {
        eprintln!("error: {e}");
        std::process::exit(e.code());
    }
}
