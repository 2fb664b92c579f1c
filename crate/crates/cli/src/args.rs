use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use portrait_core::entropy::DEFAULT_TOLERANCE;
use portrait_core::{BlockFactorization, EmbeddingSpec};

use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(name = "portrait", version, about = "Portrait maps, matrix entropies and entropic inequality checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute both portraits of a matrix file.
    Portrait(PortraitArgs),
    /// Check one entropic inequality and write a report.
    Check(CheckArgs),
    /// Mutual matrix information of a density matrix.
    Mutinfo(MutinfoArgs),
    /// Write a seeded random matrix file.
    Gen(GenArgs),
    /// Check an inequality on many seeded random inputs.
    Batch(BatchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InequalityKind {
    /// S(A) <= S(A1) + S(A2) for density matrices.
    Subadd,
    /// S(A) <= S(A1) + S(A2) + mu ln mu for PSD matrices with trace mu.
    Scaled,
    /// Scaled inequality for A' = embed(A) + x 1 with A Hermitian.
    Shifted,
    /// S(A) + S(A2) <= S(A12) + S(A23) over a three-factor chain.
    Ssa,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GenKind {
    Pure,
    Mixed,
    Hermitian,
    Separable,
    Unitary,
}

/// `--n` / `--m`; either one determines the other from the dimension.
#[derive(Debug, Clone, Copy, Args)]
pub struct FactorArgs {
    /// Number of blocks per side (size of the first portrait).
    #[arg(long)]
    pub n: Option<usize>,
    /// Block size (size of the second portrait).
    #[arg(long)]
    pub m: Option<usize>,
}

impl FactorArgs {
    pub fn resolve(&self, dim: usize) -> Result<BlockFactorization, CliError> {
        let (n, m) = match (self.n, self.m) {
            (Some(n), Some(m)) => (n, m),
            (Some(n), None) if n > 0 && dim.is_multiple_of(n) => (n, dim / n),
            (None, Some(m)) if m > 0 && dim.is_multiple_of(m) => (dim / m, m),
            (None, None) => return Err(CliError::input("need --n and/or --m")),
            _ => return Err(CliError::input(format!("--n/--m do not divide dimension {dim}"))),
        };
        let f = BlockFactorization::new(n, m)?;
        if f.dim() != dim {
            return Err(CliError::input(format!("{n}x{m} does not factor dimension {dim}")));
        }
        Ok(f)
    }
}

#[derive(Debug, Clone, Copy, Args)]
pub struct EmbedArgs {
    /// Zero-pad the input to this dimension before applying the maps.
    #[arg(long)]
    pub pad_to: Option<usize>,
    /// Row/column at which the input is placed inside the padded matrix.
    #[arg(long, default_value_t = 0)]
    pub offset: usize,
}

impl EmbedArgs {
    pub fn spec(&self, dim: usize) -> EmbeddingSpec {
        EmbeddingSpec::new(self.pad_to.unwrap_or(dim), self.offset)
    }
}

#[derive(Debug, Clone, Copy, Args)]
pub struct OracleArgs {
    /// Recompute every result with the reference implementations and exit
    /// with status 3 if they disagree.
    #[arg(long)]
    pub verify_oracle: bool,
    /// Largest accepted main/oracle difference.
    #[arg(long, default_value_t = 1e-8)]
    pub oracle_tol: f64,
}

#[derive(Debug, Clone, Copy, Args)]
pub struct SeedArgs {
    #[arg(long, env = "PORTRAIT_SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 0)]
    pub stream: u64,
}

#[derive(Debug, Args)]
pub struct PortraitArgs {
    pub input: PathBuf,
    #[command(flatten)]
    pub factor: FactorArgs,
    #[command(flatten)]
    pub embed: EmbedArgs,
    /// Write PREFIX.a1.json and PREFIX.a2.json instead of printing.
    #[arg(long, value_name = "PREFIX")]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub oracle: OracleArgs,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    pub input: PathBuf,
    #[arg(long, value_enum)]
    pub kind: InequalityKind,
    #[command(flatten)]
    pub factor: FactorArgs,
    /// Three chain factors for `--kind ssa`, e.g. `2,2,2`.
    #[arg(long, value_delimiter = ',')]
    pub radices: Option<Vec<usize>>,
    #[command(flatten)]
    pub embed: EmbedArgs,
    /// Shift for `--kind shifted`; defaults to |smallest eigenvalue|.
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<f64>,
    /// Violation threshold: the check fails when slack < -tol. A negative
    /// value demands a margin.
    #[arg(long, default_value_t = DEFAULT_TOLERANCE, allow_hyphen_values = true)]
    pub tol: f64,
    /// Write the JSON report here.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Print entropies in bits (the report file stays in nats).
    #[arg(long)]
    pub bits: bool,
    #[command(flatten)]
    pub oracle: OracleArgs,
}

#[derive(Debug, Args)]
pub struct MutinfoArgs {
    pub input: PathBuf,
    #[command(flatten)]
    pub factor: FactorArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub bits: bool,
    #[command(flatten)]
    pub oracle: OracleArgs,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long, value_enum)]
    pub kind: GenKind,
    #[arg(long)]
    pub dim: Option<usize>,
    /// Factor sizes for `--kind separable`.
    #[command(flatten)]
    pub factor: FactorArgs,
    /// Number of product terms for `--kind separable`.
    #[arg(long, default_value_t = 4)]
    pub terms: usize,
    /// Entry scale for `--kind hermitian`.
    #[arg(long, default_value_t = 1.0)]
    pub scale: f64,
    #[command(flatten)]
    pub seed: SeedArgs,
    /// Output file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BatchArgs {
    #[arg(long, value_enum)]
    pub kind: InequalityKind,
    /// Comma-separated matrix dimensions.
    #[arg(long, value_delimiter = ',', required = true)]
    pub dims: Vec<usize>,
    /// Random inputs per dimension.
    #[arg(long)]
    pub trials: usize,
    #[command(flatten)]
    pub seed: SeedArgs,
    #[arg(long, default_value_t = DEFAULT_TOLERANCE, allow_hyphen_values = true)]
    pub tol: f64,
    /// Chain factors for `--kind ssa`; chosen from each dimension when absent.
    #[arg(long, value_delimiter = ',')]
    pub radices: Option<Vec<usize>>,
    /// Write the JSON summary here.
    #[arg(long, visible_alias = "out")]
    pub report: Option<PathBuf>,
}
