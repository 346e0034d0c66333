//! `annulus`: tables, diagram enumeration, verification suites and Monte Carlo
//! experiments.

mod commands;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser, Debug, Serialize)]
#[command(name = "annulus", version, about = "Shifted Chebyshev tables, annular diagrams, Wishart moments and Wick products")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(tag = "subcommand", rename_all = "kebab-case")]
pub enum Command {
    /// Print a transition matrix or its inverse.
    Tables(TablesArgs),
    /// List diagrams of one kind with their weighted count.
    Enumerate(EnumerateArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Run a Monte Carlo experiment on Wishart matrices.
    Mc(McArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TableName {
    GammaTilde,
    GammaTildeInverse,
    Gamma,
    GammaInverse,
    Pi,
    PiInverse,
}

#[derive(Args, Debug, Serialize)]
pub struct TablesArgs {
    #[arg(value_enum)]
    pub family: TableName,
    /// Rows to print.
    #[arg(long, default_value_t = 5)]
    pub rows: usize,
    /// Compare the first five rows against the printed values.
    #[arg(long)]
    pub check: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DiagramKind {
    /// Non-crossing permutations of [n].
    Nc,
    /// Non-crossing (m,n)-annular permutations.
    Snc,
    /// Non-crossing circular half-permutations.
    Ncc,
    /// Non-crossing linear half-permutations.
    Ncl,
}

#[derive(Args, Debug, Serialize)]
pub struct EnumerateArgs {
    #[arg(value_enum)]
    pub kind: DiagramKind,
    #[arg(long, default_value_t = 3)]
    pub n: usize,
    /// Outer circle size (snc).
    #[arg(long, default_value_t = 1)]
    pub m: usize,
    /// Open blocks (ncc, ncl); every k when omitted.
    #[arg(long)]
    pub k: Option<usize>,
    /// Largest size enumerated.
    #[arg(long, default_value_t = annulus::diagrams::DEFAULT_CAP)]
    pub cap: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Recursions,
    Bijections,
    CutReassemble,
    Lineardecomp,
    Series,
    Wick,
    Oracles,
    Colored,
    Figures,
    All,
}

#[derive(Args, Debug, Serialize)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub suite: Suite,
    /// Largest n (m + n for cut-reassemble).
    #[arg(long, default_value_t = 8)]
    pub max_n: usize,
    #[arg(long, default_value_t = annulus::diagrams::DEFAULT_CAP)]
    pub cap: usize,
    /// Power-series order.
    #[arg(long, default_value_t = 12)]
    pub order: usize,
    /// Fock-space depth for the wick suite.
    #[arg(long, default_value_t = 5)]
    pub depth: usize,
    /// Longest word in the wick suite.
    #[arg(long, default_value_t = 3)]
    pub max_len: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Experiment {
    /// Means and covariances of the diagonalizing traces.
    Diagonalize,
    /// Covariance of Tr X^m and Tr X^n.
    RawCov,
    /// The raw covariance at several N.
    Convergence,
}

#[derive(Args, Debug, Serialize)]
pub struct McArgs {
    #[arg(value_enum)]
    pub experiment: Experiment,
    /// Matrix dimension.
    #[arg(long = "N", default_value_t = 200)]
    pub big_n: usize,
    /// Limiting ratio M/N.
    #[arg(long, default_value_t = 1.0)]
    pub c: f64,
    /// Explicit M; overrides --c.
    #[arg(long = "M")]
    pub big_m: Option<usize>,
    /// Independent matrices.
    #[arg(long, default_value_t = 2)]
    pub p: usize,
    #[arg(long, default_value_t = 20_000)]
    pub samples: usize,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    #[arg(long, default_value_t = 3)]
    pub max_degree: usize,
    /// Mixed trace as "m1,..,mk:i1,..,ik" with 1-based matrix indices.
    #[arg(long)]
    pub mixed: Vec<String>,
    /// Power of the first trace (raw-cov, convergence).
    #[arg(long, default_value_t = 2)]
    pub m: usize,
    /// Power of the second trace (raw-cov, convergence).
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    /// Dimensions for the convergence experiment.
    #[arg(long, value_delimiter = ',', default_values_t = [25, 50, 100, 200])]
    pub dims: Vec<usize>,
    /// Samples per unit of N in the convergence experiment.
    #[arg(long, default_value_t = 20)]
    pub samples_per_n: usize,
    /// Worker threads; 0 uses ANNULUS_THREADS or every core.
    #[arg(long, env = "ANNULUS_THREADS", default_value_t = 0)]
    pub threads: usize,
}

/// What a command produced, in every format.
pub struct Outcome {
    pub pass: bool,
    pub text: String,
    pub json: serde_json::Value,
    pub csv: String,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(pass) => ExitCode::from(if pass { 0 } else { 1 }),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> anyhow::Result<bool> {
    let out = match &cli.command {
        Command::Tables(a) => commands::tables(a)?,
        Command::Enumerate(a) => commands::enumerate(a)?,
        Command::Verify(a) => commands::verify(a)?,
        Command::Mc(a) => commands::mc(a)?,
    };
    let body = match cli.format {
        Format::Text => out.text.clone(),
        Format::Csv => out.csv.clone(),
        Format::Json => render::with_run(out.json.clone(), cli)?,
    };
    render::emit(&body, cli.output.as_deref())?;
    Ok(out.pass)
}
