// SPDX-License-Identifier: Apache-2.0

//! Command-line front end.
//!
//! Exit codes: 0 success; 1 a requested check failed (invariant violation or
//! oracle mismatch); 2 unreadable or malformed input, bad flags, or a graph
//! too large for the requested oracle; 3 an update deletes an absent edge.

mod commands;
mod report;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use commands::{bench, bench_report, check, check_report, generate, run};
pub use report::{
    BenchReport, BenchRow, BenchSummary, CheckReport, Mismatch, OfflineCost, QueryAnswer,
    RunReport, Stat,
};

#[derive(Debug, Parser)]
#[command(
    name = "bidyck",
    version,
    about = "Dynamic bidirected Dyck reachability"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Replay an update sequence, answering the queries in it.
    Run(RunArgs),
    /// Write a workload: an initial graph and an ops file.
    Gen(GenArgs),
    /// Time and count the work of every update, optionally against full
    /// recomputation.
    Bench(BenchArgs),
    /// Replay a sequence comparing the engine with brute-force oracles.
    Check(CheckArgs),
}

#[derive(Debug, Args)]
pub struct RunArgs {
    pub graph: PathBuf,
    pub ops: PathBuf,
    /// Print the DSCC partition after the last op.
    #[arg(long)]
    pub final_partition: bool,
    /// Verify the engine's internal invariants after every op.
    #[arg(long)]
    pub check_invariants: bool,
    /// Emit a JSON report instead of text.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Dense,
    Sparse,
}

#[derive(Debug, Args)]
#[command(group(
    clap::ArgGroup::new("mode")
        .required(true)
        .args(["incremental", "decremental", "mixed", "family"]),
))]
pub struct GenArgs {
    /// Source graph; required except with --family.
    pub graph: Option<PathBuf>,
    #[arg(long)]
    pub incremental: bool,
    #[arg(long)]
    pub decremental: bool,
    #[arg(long)]
    pub mixed: bool,
    #[arg(long, value_enum)]
    pub family: Option<FamilyArg>,
    /// Share of edge copies moved into the sequence.
    #[arg(long, default_value_t = 0.9)]
    pub ratio: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Family size parameter.
    #[arg(long)]
    pub n: Option<usize>,
    /// Output prefix; writes PREFIX.graph and PREFIX.ops.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Baseline {
    Offline,
    None,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    pub graph: PathBuf,
    pub ops: PathBuf,
    /// Also recompute from scratch after every update.
    #[arg(long, value_enum, default_value_t = Baseline::None)]
    pub baseline: Baseline,
    /// Add per-counter columns to the table.
    #[arg(long)]
    pub counters: bool,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OracleArg {
    Closure,
    Cfl,
    Both,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    pub graph: PathBuf,
    pub ops: PathBuf,
    #[arg(long, value_enum, default_value_t = OracleArg::Closure)]
    pub oracle: OracleArg,
    /// Compare after every k-th op (the last op is always compared).
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub every: u64,
}

/// A failure carrying its process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        CliError {
            code: 2,
            message: message.into(),
        }
    }

    pub fn failed(message: impl Into<String>) -> Self {
        CliError {
            code: 1,
            message: message.into(),
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.message)
    }
}

/// Parses `args` and executes the command, writing to stdout. Returns the
/// process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let mut out = std::io::stdout().lock();
    let result = match &cli.command {
        Command::Run(a) => run(a, &mut out),
        Command::Gen(a) => generate(a, &mut out),
        Command::Bench(a) => bench(a, &mut out),
        Command::Check(a) => check(a, &mut out),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.code
        }
    }
}
