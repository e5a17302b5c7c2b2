//! Command-line front end: analyze a circuit's gate impact, emit reversal
//! variants, serialize high-impact layers, generate benchmarks, or just run
//! a circuit on the noisy simulator.
//!
//! Exit codes are a stable contract: 0 success, 2 usage or input validation,
//! 3 execution failure.

use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;

mod commands;

use commands::Failure;

#[derive(Parser)]
#[command(name = "gatescope", version, about = "Find the gates that dominate a circuit's output error")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

/// Execution knobs shared by every command that runs the simulator.
#[derive(Args)]
struct ExecOpts {
    /// Trajectories per circuit execution.
    #[arg(long, default_value_t = 32_000, value_parser = clap::value_parser!(u64).range(1..))]
    shots: u64,
    /// Master seed; all per-variant seeds derive from it.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Noise model: `default`, `ideal`, or a path to a model JSON file.
    #[arg(long, default_value = "default")]
    noise: String,
}

/// Reversal-suite knobs.
#[derive(Args)]
struct SuiteOpts {
    /// Reversed pairs inserted per variant.
    #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u64).range(1..))]
    reversals: u64,
    /// Also build variants for RZ gates (virtual, zero physical error).
    #[arg(long)]
    include_rz: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Rank every gate by amplified output impact and write report files.
    Analyze {
        /// Input circuit (OpenQASM 2.0).
        input: PathBuf,
        #[command(flatten)]
        suite: SuiteOpts,
        #[command(flatten)]
        exec: ExecOpts,
        /// Output directory for report.json, report.csv and track CSVs.
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Write reversed-pair variant circuits as QASM files.
    Transform {
        input: PathBuf,
        /// Build the variant for this single gate index only.
        #[arg(long)]
        gate_index: Option<usize>,
        /// Reverse this comma-separated index set as one group.
        #[arg(long, value_delimiter = ',', conflicts_with = "gate_index")]
        group: Option<Vec<usize>>,
        #[command(flatten)]
        suite: SuiteOpts,
        /// Emit `sxdg` directly instead of its plain-QASM triple.
        #[arg(long)]
        extended_gates: bool,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Serialize the highest-impact layers and compare error before/after.
    Mitigate {
        input: PathBuf,
        /// How many top-ranked records pick target layers.
        #[arg(short, value_parser = clap::value_parser!(u64).range(1..))]
        k: u64,
        /// Evaluation seeds (comma separated); defaults to the master seed.
        #[arg(long, value_delimiter = ',')]
        seeds: Option<Vec<u64>>,
        #[command(flatten)]
        suite: SuiteOpts,
        #[command(flatten)]
        exec: ExecOpts,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Generate a benchmark circuit as a QASM file.
    Bench {
        #[command(subcommand)]
        family: BenchFamily,
    },
    /// Run one circuit on the noisy simulator and write its distribution.
    Simulate {
        input: PathBuf,
        #[command(flatten)]
        exec: ExecOpts,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
}

#[derive(Subcommand)]
enum BenchFamily {
    /// Quantum Fourier transform applied to a basis state.
    Qft {
        n: usize,
        /// Input basis state as a bitstring (qubit 0 rightmost); all zeros
        /// when omitted.
        #[arg(long)]
        target: Option<String>,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// GHZ state preparation.
    Ghz {
        n: usize,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// First-order Trotterized transverse-field Ising evolution.
    Tfim {
        n: usize,
        steps: usize,
        #[arg(long, default_value_t = 0.4)]
        theta_zz: f64,
        #[arg(long, default_value_t = 0.3)]
        theta_x: f64,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.cmd {
        Cmd::Analyze { input, suite, exec, out } => commands::analyze(&input, &suite, &exec, &out),
        Cmd::Transform { input, gate_index, group, suite, extended_gates, out } => {
            commands::transform(&input, gate_index, group, &suite, extended_gates, &out)
        }
        Cmd::Mitigate { input, k, seeds, suite, exec, out } => {
            commands::mitigate(&input, k as usize, seeds, &suite, &exec, &out)
        }
        Cmd::Bench { family } => commands::bench(&family),
        Cmd::Simulate { input, exec, out } => commands::simulate(&input, &exec, &out),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure { code, message }) => {
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}
