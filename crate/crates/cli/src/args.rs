use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nestvar::experiments::DEFAULT_SEED;
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(
    name = "nestvar",
    version,
    about = "Variance decomposition over nested categorical partitions"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    /// Rank characters by stepwise optimal ordering.
    Rank {
        #[command(flatten)]
        data: DataArgs,
        /// Stop after this many characters.
        #[arg(long)]
        max_steps: Option<usize>,
    },
    /// Decompose the variance along a fixed character order.
    Decompose {
        #[command(flatten)]
        data: DataArgs,
        /// Comma-separated character names, in refinement order.
        #[arg(long, value_delimiter = ',', required = true)]
        order: Vec<String>,
    },
    /// Compare the greedy k-subset against random k-subsets.
    Baseline {
        #[command(flatten)]
        data: DataArgs,
        /// Subset size.
        #[arg(long, short = 'k', default_value_t = 10)]
        k: usize,
        #[arg(long, default_value_t = 300)]
        trials: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Bernoulli simulation: how often the greedy order matches the coefficient order.
    Simulate {
        #[arg(long, default_value_t = 10)]
        num_characters: usize,
        #[arg(long, default_value_t = 100)]
        population: usize,
        /// Comma-separated coefficients; defaults to 1.0, 0.9, ... down to 1/n.
        #[arg(long, value_delimiter = ',')]
        coefficients: Option<Vec<f64>>,
        #[arg(long, default_value_t = 0.03)]
        noise_sd: f64,
        #[arg(long, default_value_t = 0.5)]
        bernoulli_p: f64,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Rerank with each character left out in turn.
    Robustness {
        #[command(flatten)]
        data: DataArgs,
    },
    /// Histogram of the target, or of residual fractions from a baseline report.
    Histogram {
        #[command(flatten)]
        data: DataArgs,
        /// Read values from a JSON baseline report instead of a dataset.
        #[arg(long, conflicts_with_all = ["input", "exam_questions"])]
        from_report: Option<PathBuf>,
        #[arg(long)]
        bin_width: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        origin: f64,
        /// Fixed number of bins; by default enough to hold the largest value.
        #[arg(long)]
        bins: Option<usize>,
    },
}

#[derive(Debug, Args, Serialize)]
pub struct DataArgs {
    /// Delimited input file with a header row.
    #[arg(long, short = 'i')]
    pub input: Option<PathBuf>,
    /// Name of the numeric target column.
    #[arg(long, short = 't')]
    pub target: Option<String>,
    /// Comma-separated character columns; all non-target columns by default.
    #[arg(long, value_delimiter = ',')]
    pub characters: Option<Vec<String>>,
    #[arg(long, value_enum, default_value_t = Delimiter::Comma)]
    pub delimiter: Delimiter,
    #[arg(long, value_enum, default_value_t = Missing::Reject)]
    pub missing: Missing,
    /// Drop rows whose target exceeds this value.
    #[arg(long, allow_negative_numbers = true)]
    pub max_target: Option<f64>,

    /// Use a synthetic exam dataset with this many questions instead of --input.
    #[arg(long, conflicts_with = "input")]
    pub exam_questions: Option<usize>,
    #[arg(long, default_value_t = 2451)]
    pub exam_rows: usize,
    #[arg(long, default_value_t = 2.0)]
    pub exam_spread: f64,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub exam_seed: u64,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Delimiter {
    Comma,
    Semicolon,
    Tab,
}

impl Delimiter {
    pub fn byte(self) -> u8 {
        match self {
            Delimiter::Comma => b',',
            Delimiter::Semicolon => b';',
            Delimiter::Tab => b'\t',
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Missing {
    Reject,
    AsCategory,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum OutputFormat {
    Json,
    Table,
    Csv,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, short = 'f', value_enum, default_value_t = OutputFormat::Table, global = true)]
    pub format: OutputFormat,
    /// Write to this file instead of standard output.
    #[arg(long, short = 'o', global = true)]
    pub output: Option<PathBuf>,
    /// Record the wall-clock time in the report metadata.
    #[arg(long, global = true)]
    pub timestamp: bool,
}
