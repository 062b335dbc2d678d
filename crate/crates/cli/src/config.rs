use std::path::PathBuf;

use bernoulli_core::seqcore::parse_rat;
use bernoulli_core::Rat;
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "bernoulli", version, about = "Exact Bernoulli-family numbers, identity sweeps and prime congruences")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print exact values of a sequence.
    Compute(ComputeArgs),
    /// Sweep identities from the catalog (or `all`).
    Verify(VerifyArgs),
    /// Check prime congruences (or `all`) for every odd prime up to --p-max.
    Congruence(CongruenceArgs),
    /// Dump the ordinary and exponential coefficients of a catalog series.
    Series(SeriesArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Markdown,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Omit the metadata header (timestamp and version).
    #[arg(long)]
    pub no_meta: bool,
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".to_owned()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

fn rational(s: &str) -> Result<Rat, String> {
    parse_rat(s).map_err(|e| e.to_string())
}

#[derive(Debug, Args)]
pub struct ComputeArgs {
    /// bernoulli, euler, cauchy1, stirling1, stirling2, harmonic, dibernoulli, hw, poly_bernoulli
    pub sequence: String,
    #[arg(long, default_value_t = 10, value_parser = positive)]
    pub n_max: usize,
    /// Evaluation point for hw and poly_bernoulli.
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    pub x: Option<Rat>,
    /// Polylogarithm order for poly_bernoulli.
    #[arg(long)]
    pub p: Option<u32>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Identity name from the catalog, or `all`.
    pub identity: String,
    #[arg(long, default_value_t = 40, value_parser = positive)]
    pub n_max: usize,
    #[arg(long)]
    pub j_min: Option<usize>,
    #[arg(long)]
    pub j_max: Option<usize>,
    #[arg(long, default_value_t = 20, value_parser = positive)]
    pub m_max: usize,
    /// Include the indeterminate j = n diagonal of MAIN.
    #[arg(long)]
    pub include_j_equals_n: bool,
    /// Mutation testing: shift the right side of this identity by one.
    #[arg(long, hide = true)]
    pub inject_off_by_one: Option<String>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct CongruenceArgs {
    /// Congruence name from the catalog, or `all`.
    pub congruence: String,
    #[arg(long, default_value_t = 101)]
    pub p_max: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SeriesArgs {
    /// stirling2-egf, harmonic-ogf, harmonic-sq-ogf, central-binomial-harmonic-ogf, euler-egf, polybern
    pub name: String,
    #[arg(long, default_value_t = 32, value_parser = positive)]
    pub order: usize,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub p: Option<u32>,
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    pub x: Option<Rat>,
    #[command(flatten)]
    pub output: OutputArgs,
}
