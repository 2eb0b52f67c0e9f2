//! `qwass`: command-line front end for quantum Wasserstein computations.

mod commands;
mod manifest;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use qwass_core::{Error, Result};

use commands::*;
use manifest::{strip_out, RunManifest};

/// Exit status for malformed input: bad flags, files, states or parameters.
const EXIT_INVALID: u8 = 2;
/// Exit status when an SDP solve fails or its output is numerically unusable.
const EXIT_SOLVER: u8 = 3;

#[derive(Parser)]
#[command(name = "qwass", version, about = "Quantum Wasserstein distances, divergences and gap experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Squared transport distance between two states.
    Dist(DistArgs),
    /// Divergence d(ρ, ω) with its self-distance terms.
    Divergence(PairArgs),
    /// Triangle gap d(ρ,ω) + d(ω,τ) − d(ρ,τ).
    Triangle(TriangleArgs),
    /// Qubit lattice scans over a table of random (ρ, τ) pairs and observable triples.
    Lattice(LatticeArgs),
    /// Minimal triangle gap over random triplets.
    Sweep(SweepArgs),
    /// Gap surface over a two-parameter family of middle states.
    Surface(SurfaceArgs),
    /// Lower bound on the Wasserstein complexity of a channel.
    Complexity(ComplexityArgs),
    /// Re-run the command recorded in a manifest.
    Replay(ReplayArgs),
}

#[derive(clap::Args)]
struct ReplayArgs {
    manifest: PathBuf,
    /// Output directory; defaults to the manifest's directory.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn exit_code(e: &Error) -> u8 {
    match e.root() {
        Error::SolverFailure(_) | Error::ConcavityViolation(_) => EXIT_SOLVER,
        _ => EXIT_INVALID,
    }
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INVALID } else { 0 });
        }
    };
    match dispatch(cli.command, &argv[2..]) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn dispatch(command: Command, rest: &[String]) -> Result<()> {
    let start = Instant::now();
    let (name, finished) = match command {
        Command::Dist(a) => ("dist", run_dist(&a)?),
        Command::Divergence(a) => ("divergence", run_divergence(&a)?),
        Command::Triangle(a) => ("triangle", run_triangle(&a)?),
        Command::Lattice(a) => ("lattice", run_lattice(&a)?),
        Command::Sweep(a) => ("sweep", run_sweep(&a)?),
        Command::Surface(a) => ("surface", run_surface(&a)?),
        Command::Complexity(a) => ("complexity", run_complexity(&a)?),
        Command::Replay(a) => return replay(&a),
    };
    if let Some(dir) = finished.dir {
        let manifest = RunManifest {
            command: name.to_string(),
            args: strip_out(rest),
            parameters: finished.parameters,
            seed: finished.seed,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            wall_time_seconds: start.elapsed().as_secs_f64(),
            outputs: finished.outputs,
        };
        let path = manifest.write(&dir)?;
        println!("manifest: {}", path.display());
    }
    Ok(())
}

fn replay(a: &ReplayArgs) -> Result<()> {
    let m = RunManifest::load(&a.manifest)?;
    if m.command == "replay" {
        return Err(Error::InvalidParameter("a manifest cannot replay another replay".into()));
    }
    let dir = match &a.out {
        Some(d) => d.clone(),
        None => a
            .manifest
            .parent()
            .map(|p| if p.as_os_str().is_empty() { PathBuf::from(".") } else { p.to_path_buf() })
            .unwrap_or_else(|| PathBuf::from(".")),
    };
    let mut argv = vec!["qwass".to_string(), m.command.clone()];
    argv.extend(m.args.iter().cloned());
    argv.push("--out".into());
    argv.push(dir.display().to_string());
    let cli = Cli::try_parse_from(&argv)
        .map_err(|e| Error::InvalidParameter(format!("manifest arguments do not parse: {e}")))?;
    dispatch(cli.command, &argv[2..])
}
