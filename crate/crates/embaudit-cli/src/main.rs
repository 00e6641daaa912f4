//! Command-line surface for embedding-association audits.
//!
//! Exit status: 0 success, 1 usage/config error, 2 data error, 3 numerical
//! failure.

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

mod commands;
mod config;
mod report;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Data(String),
    Numeric(String),
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError::Usage(message.into())
    }

    pub fn data(message: impl Into<String>) -> Self {
        CliError::Data(message.into())
    }

    pub fn numeric(message: impl Into<String>) -> Self {
        CliError::Numeric(message.into())
    }

    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Data(_) => 2,
            CliError::Numeric(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Data(m) | CliError::Numeric(m) => write!(f, "{m}"),
        }
    }
}

impl From<embaudit::Error> for CliError {
    fn from(err: embaudit::Error) -> Self {
        if err.is_numerical() {
            CliError::Numeric(err.to_string())
        } else {
            CliError::Data(err.to_string())
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> Self {
        CliError::Data(err.to_string())
    }
}

#[derive(Parser)]
#[command(
    name = "embaudit",
    version,
    about = "Audit association differences between word-embedding corpora \
             and their downstream classifier effects"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct CommonArgs {
    /// JSON configuration file.
    #[arg(long)]
    config: PathBuf,
    /// Override the permutation and classifier seeds.
    #[arg(long)]
    seed: Option<u64>,
    /// Override the configured output directory.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Write the nearest neighbors of a seed word, per space, as word-list
    /// files ready for manual pruning.
    ExpandTargets {
        #[command(flatten)]
        common: CommonArgs,
        /// Word whose neighborhood to expand.
        #[arg(long)]
        seed_word: String,
        /// Number of neighbors per space.
        #[arg(long, default_value_t = 50)]
        k: usize,
    },
    /// Cross-corpus association audit: one CSV per space pair with effect
    /// sizes and permutation p-values per category and lexicon.
    AuditAssoc {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Downstream sentiment audit: classifier accuracies plus per-category
    /// mixed-effects comparisons per space pair.
    AuditSentiment {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Check that every configured input exists, parses, and is mutually
    /// consistent.
    Validate {
        #[command(flatten)]
        common: CommonArgs,
    },
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // clap's own exit code conventions differ; fold everything
            // usage-shaped into exit 1 (help/version print and exit 0).
            use clap::error::ErrorKind;
            let _ = err.print();
            return match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::ExpandTargets {
            common,
            seed_word,
            k,
        } => {
            let loaded = load_with_overrides(&common)?;
            commands::expand::run(&loaded, &seed_word, k)
        }
        Command::AuditAssoc { common } => {
            let loaded = load_with_overrides(&common)?;
            commands::assoc_cmd::run(&loaded)
        }
        Command::AuditSentiment { common } => {
            let loaded = load_with_overrides(&common)?;
            commands::sentiment_cmd::run(&loaded)
        }
        Command::Validate { common } => {
            let loaded = load_with_overrides(&common)?;
            commands::validate::run(&loaded)
        }
    }
}

fn load_with_overrides(common: &CommonArgs) -> Result<config::LoadedConfig, CliError> {
    let mut loaded = config::AuditConfig::load(&common.config)?;
    loaded
        .config
        .apply_overrides(common.seed, common.out.clone());
    Ok(loaded)
}
