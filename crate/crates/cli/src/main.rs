use std::ffi::OsString;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod output;

/// Repeats, net frequencies and MUSs from run-length encoded BWT indexes.
#[derive(Parser, Debug)]
#[command(name = "rle-repeats", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build an index from a text or an RLBWT.
    Build(BuildArgs),
    /// List right-maximal repeats with their classes and net occurrences.
    Enumerate(EnumerateArgs),
    /// List every net occurrence, sorted by position.
    AllNf(ListArgs),
    /// List minimal unique substrings, sorted by position.
    Mus(ListArgs),
    /// Net frequency of query patterns.
    NfQuery(QueryArgs),
    /// Index and repeat statistics.
    Stats(StatsArgs),
    /// Check the index pipeline against a suffix-array oracle (small inputs).
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
#[group(id = "input", required = true, multiple = false)]
struct InputArgs {
    /// Raw text; a trailing NUL byte is treated as the sentinel.
    #[arg(long, group = "input")]
    text: Option<PathBuf>,
    /// RLBWT in binary form or in `n r sigma` / `head len` text form.
    #[arg(long, group = "input")]
    rlbwt: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MapperArg {
    Move,
    Baseline,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum LookupArg {
    Hashed,
    Sorted,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Tsv,
    Json,
}

#[derive(Args, Debug)]
struct BuildArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long)]
    out: PathBuf,
    #[arg(long, value_enum, default_value = "move")]
    mapper: MapperArg,
    /// Largest number of intervals a move step may scan.
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u64).range(2..))]
    balance: u64,
    /// Store net occurrences in the trie for occurrence queries.
    #[arg(long)]
    with_nocc: bool,
    #[arg(long, value_enum, default_value = "hashed")]
    lookup: LookupArg,
}

#[derive(Args, Debug)]
struct EnumerateArgs {
    #[arg(long)]
    index: PathBuf,
    /// Keep nodes in any of these classes, e.g. `mr,nsmr`.
    #[arg(long)]
    classes: Option<String>,
    /// Print each repeat's string.
    #[arg(long)]
    materialize: bool,
    #[arg(long, value_enum, default_value = "tsv")]
    format: Format,
}

#[derive(Args, Debug)]
struct ListArgs {
    #[arg(long)]
    index: PathBuf,
    /// Print the strings (repeats for `all-nf`, substrings for `mus`).
    #[arg(long)]
    materialize: bool,
    /// Leave out net occurrences of the empty string (`all-nf` only).
    #[arg(long)]
    no_epsilon: bool,
    #[arg(long, value_enum, default_value = "tsv")]
    format: Format,
}

#[derive(Args, Debug)]
#[group(id = "patterns", required = true, multiple = false)]
struct PatternSource {
    #[arg(long, group = "patterns")]
    pattern: Option<OsString>,
    /// One pattern per line.
    #[arg(long, group = "patterns")]
    patterns_file: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct QueryArgs {
    #[arg(long)]
    index: PathBuf,
    #[command(flatten)]
    source: PatternSource,
    /// Patterns are hex-encoded bytes.
    #[arg(long)]
    hex: bool,
    /// Also print net occurrences (index built with `--with-nocc`).
    #[arg(long)]
    nocc: bool,
    #[arg(long, value_enum, default_value = "tsv")]
    format: Format,
}

#[derive(Args, Debug)]
struct StatsArgs {
    #[arg(long)]
    index: PathBuf,
    #[arg(long, value_enum, default_value = "tsv")]
    format: Format,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long)]
    text: PathBuf,
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u64).range(2..))]
    balance: u64,
}

/// A failure with its exit status.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Data(anyhow::Error),
    Verify(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Data(_) => 2,
            Failure::Verify(_) => 3,
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Data(e)
    }
}

impl From<rle_repeats::Error> for Failure {
    fn from(e: rle_repeats::Error) -> Self {
        Failure::Data(e.into())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Data(e.into())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match commands::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Usage(m) => eprintln!("error: {m}"),
                Failure::Data(e) => eprintln!("error: {e:#}"),
                Failure::Verify(m) => eprintln!("verification failed: {m}"),
            }
            ExitCode::from(f.code())
        }
    }
}
