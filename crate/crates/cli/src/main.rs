//! `nontrans`: count, list and analyse nontransitive deck and dice sets.
//!
//! Exit codes: 0 success, 2 usage, 3 resource cap, 4 degree or precision,
//! 5 invariant violation.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

use nontrans::engine::{Caps, CAP_TERMS_ENV};
use nontrans::Error;

#[derive(Parser, Debug)]
#[command(name = "nontrans", version, about = "Sucker's-bet decks and dice: counts, listings, moments")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Cap on polynomial terms held by the counting table.
    #[arg(long, env = CAP_TERMS_ENV, global = true)]
    max_terms: Option<u64>,

    /// Cap on the number of sets a listing may return.
    #[arg(long, global = true)]
    max_listed: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Count sucker's-bet deck sets.
    Count(CountArgs),
    /// List sucker's-bet deck sets.
    Enumerate(EnumerateArgs),
    /// List tie-less sucker's-bet dice sets.
    Dice(DiceArgs),
    /// Exact moments, fitted closed forms and Gaussian limits.
    Moments(MomentsArgs),
    /// Cross-check the recurrence against brute force.
    Verify(VerifyArgs),
    /// Recompute every published figure and print a pass/fail table.
    Repro(ReproArgs),
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
pub struct DeckSizes {
    /// Three decks of `n` cards each; `a..b` gives a range of `n`.
    #[arg(long, value_name = "N|A..B")]
    pub equal: Option<String>,

    /// Explicit deck sizes, comma separated.
    #[arg(long, value_delimiter = ',', value_name = "A,B,C")]
    pub decks: Option<Vec<u32>>,
}

#[derive(Args, Debug)]
pub struct CountArgs {
    #[command(flatten)]
    pub sizes: DeckSizes,

    /// Write the weight enumerator as `coeff e1 .. ek` lines in graded-lex order.
    #[arg(long, value_name = "PATH")]
    pub dump_poly: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct EnumerateArgs {
    #[command(flatten)]
    pub sizes: DeckSizes,

    /// One set per cyclic relabeling orbit (equal deck sizes only).
    #[arg(long)]
    pub reduce: bool,
}

#[derive(Args, Debug)]
pub struct DiceArgs {
    /// Number of dice; defaults to the length of `--faces`.
    #[arg(long)]
    pub k: Option<usize>,

    /// Faces per die, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub faces: Vec<u32>,

    /// Number of distinct denominations across all dice.
    #[arg(long)]
    pub denoms: u32,

    /// One set per axis-rotation orbit (equal face counts only).
    #[arg(long)]
    pub reduce: bool,
}

#[derive(Args, Debug)]
#[group(skip)]
#[command(group = ArgGroup::new("mode").required(true).multiple(false))]
pub struct MomentsArgs {
    /// Deck size for `--order`.
    #[arg(long, requires = "order")]
    pub n: Option<u32>,

    /// Exact moment `E[s1^i s2^j s3^k]` at `--n`.
    #[arg(long, value_delimiter = ',', value_name = "I,J,K", requires = "n", group = "mode")]
    pub order: Option<Vec<u32>>,

    /// Fit the moment of this order as a polynomial in `n`.
    #[arg(long, value_delimiter = ',', value_name = "I,J,K", group = "mode")]
    pub fit: Option<Vec<u32>>,

    /// Degree bound for `--fit`.
    #[arg(long, requires = "fit")]
    pub degree_bound: Option<u32>,

    /// Table of scaled Gaussian limits for sorted orders with even total.
    #[arg(long, requires = "max_order", group = "mode")]
    pub limits: bool,

    #[arg(long)]
    pub max_order: Option<u32>,

    /// Scaled moment of this order for `n = 1..=--n-max`, next to its limit.
    #[arg(long, value_delimiter = ',', value_name = "I,J,K", requires = "n_max", group = "mode")]
    pub converge: Option<Vec<u32>>,

    #[arg(long)]
    pub n_max: Option<u32>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Largest total deck size checked.
    #[arg(long, default_value_t = 9)]
    pub max_total: u32,

    /// Run against a recurrence with a deliberately wrong exponent.
    #[arg(long, hide = true)]
    pub corrupt_recurrence: bool,
}

#[derive(Args, Debug)]
pub struct ReproArgs {
    /// Also recompute the counts for `n = 8, 9`.
    #[arg(long)]
    pub extended: bool,
}

/// A failure with its exit code.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Library(Error),
    Io(std::io::Error),
    /// A check failed; the report has already been written.
    Checks,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Library(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Library(e) => match e {
                Error::Size { .. } => 3,
                Error::Precision { .. } | Error::DegreeBound { .. } => 4,
                Error::Invariant(_) => 5,
                _ => 2,
            },
            Failure::Io(_) => 3,
            Failure::Checks => 5,
        }
    }
}

pub struct Context {
    pub format: Format,
    pub caps: Caps,
    pub output: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut caps = Caps::default();
    if let Some(t) = cli.max_terms {
        if t == 0 {
            eprintln!("error: --max-terms must be positive");
            return ExitCode::from(2);
        }
        caps.max_terms = t;
    }
    if let Some(l) = cli.max_listed {
        if l == 0 {
            eprintln!("error: --max-listed must be positive");
            return ExitCode::from(2);
        }
        caps.max_listed = l;
    }
    let ctx = Context {
        format: cli.format,
        caps,
        output: cli.output,
    };
    let result = match &cli.command {
        Command::Count(a) => commands::count(&ctx, a),
        Command::Enumerate(a) => commands::enumerate(&ctx, a),
        Command::Dice(a) => commands::dice(&ctx, a),
        Command::Moments(a) => commands::moments(&ctx, a),
        Command::Verify(a) => commands::verify(&ctx, a),
        Command::Repro(a) => commands::repro(&ctx, a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Usage(m) => eprintln!("error: {m}"),
                Failure::Library(e) => eprintln!("error: {e}"),
                Failure::Io(e) => eprintln!("error: {e}"),
                Failure::Checks => {}
            }
            ExitCode::from(f.code())
        }
    }
}
