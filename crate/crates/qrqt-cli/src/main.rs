//! qrqt: quantitative security and feasibility metrics for quantum
//! teleportation protected by post-quantum classical channels.
//!
//! Six subcommands cover the pipeline end to end: `holevo` (eavesdropper
//! information versus an independent density-matrix oracle), `leakage`
//! (information and fidelity decay under stochastic loss of the classical
//! correction bits), `lwe` (lattice-reduction success probabilities, exact
//! and approximate), `joint` (combined classical/quantum attack window),
//! `feasibility` (memory-lifetime distance budgets), and `validate`
//! (self-checks against brute-force reference implementations).
//!
//! Conventions shared by every subcommand: data goes to `--out` (default
//! standard output) and diagnostics to standard error; floating-point
//! output carries 17 significant digits; all times and distances require
//! unit suffixes (`ns`, `us`, `ms`, `s`, `km`); Monte Carlo draws are keyed
//! on `(--seed, sample index)` so results are byte-identical across runs
//! and across `--threads` settings. Exit code 0 means success, 1 means a
//! computed quantity violated its advertised tolerance, and 2 means the
//! invocation itself was invalid.

mod cmds;
mod output;

use clap::{Args, Parser, Subcommand};
use output::Format;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "qrqt",
    version,
    about = "Security and feasibility metrics for teleportation over post-quantum classical channels"
)]
struct Cli {
    #[command(flatten)]
    run: RunArgs,
    #[command(subcommand)]
    command: Command,
}

/// Options shared by every subcommand.
#[derive(Args, Debug)]
struct RunArgs {
    /// Master seed for all Monte Carlo sampling.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Output path; "-" writes to standard output.
    #[arg(long, global = true, default_value = "-")]
    out: String,
    /// Worker thread count (default: all cores). Any value produces
    /// byte-identical output.
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Eavesdropper Holevo information: closed form versus density-matrix oracle.
    Holevo(cmds::holevo::HolevoArgs),
    /// Expected information gain and teleportation fidelity as the
    /// classical correction bits leak over time.
    Leakage(cmds::leakage::LeakageArgs),
    /// Joint classical/quantum attack probability over time and the
    /// optimal attack window.
    Joint(cmds::joint::JointArgs),
    /// Lattice-reduction success probability, exact and via the
    /// rational-exponent approximation.
    Lwe(cmds::lwe::LweArgs),
    /// Maximum teleportation distance under a quantum-memory lifetime.
    Feasibility(cmds::feasibility::FeasibilityArgs),
    /// Self-validation against brute-force reference implementations.
    Validate(cmds::validate::ValidateArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();

    if let Some(n) = cli.run.threads {
        if n == 0 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: cannot configure {n} worker threads: {e}");
            return ExitCode::from(2);
        }
    }

    let result = match &cli.command {
        Command::Holevo(args) => cmds::holevo::run(&cli.run, args),
        Command::Leakage(args) => cmds::leakage::run(&cli.run, args),
        Command::Joint(args) => cmds::joint::run(&cli.run, args),
        Command::Lwe(args) => cmds::lwe::run(&cli.run, args),
        Command::Feasibility(args) => cmds::feasibility::run(&cli.run, args),
        Command::Validate(args) => cmds::validate::run(&cli.run, args),
    };

    match result {
        Ok((report, passed)) => {
            let body = report.render(cli.run.format);
            if let Err(e) = output::write_output(&cli.run.out, &body) {
                eprintln!("error: {e:#}");
                return ExitCode::from(2);
            }
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
