mod commands;
mod output;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use wg_core::cache::DEFAULT_CACHE_DIR;
use wg_core::WgError;

#[derive(Parser, Debug)]
#[command(
    name = "wg",
    version,
    about = "Exact Weingarten functions, factorization counts and map enumeration"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalArgs {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    /// Directory for persisted character and zonal tables.
    #[arg(long, env = "WG_CACHE_DIR", default_value = DEFAULT_CACHE_DIR, global = true)]
    pub cache_dir: PathBuf,

    /// Keep tables in memory only.
    #[arg(long, global = true)]
    pub no_cache: bool,

    /// Progress messages on stderr.
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    pub verbose: u8,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Weingarten function as a rational function, series or number.
    Eval(commands::EvalArgs),
    /// Factorization counts and their series.
    Counts(commands::CountsArgs),
    /// Enumerate factorization classes by Euler characteristic.
    Enumerate(commands::EnumerateArgs),
    /// Gaussian moments by Wick's rule.
    Wick(commands::WickArgs),
    /// Run the verification suite.
    Verify(commands::VerifyArgs),
    /// Inspect or clear the table cache.
    Cache(commands::CacheArgs),
}

/// Failure of a command: domain errors exit 1, failed verification exits 2.
#[derive(Debug)]
pub enum Failure {
    Domain(WgError),
    Usage(String),
    /// The report is still printed.
    Verification(String),
}

impl From<WgError> for Failure {
    fn from(e: WgError) -> Self {
        Failure::Domain(e)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let global = cli.global;
    wg_core::cache::configure((!global.no_cache).then(|| global.cache_dir.clone()));
    if global.verbose > 0 {
        eprintln!(
            "cache: {}",
            if global.no_cache {
                "disabled".to_string()
            } else {
                global.cache_dir.display().to_string()
            }
        );
    }
    let result = match cli.command {
        Command::Eval(a) => commands::eval(&global, a),
        Command::Counts(a) => commands::counts(&global, a),
        Command::Enumerate(a) => commands::enumerate(&global, a),
        Command::Wick(a) => commands::wick(&global, a),
        Command::Verify(a) => commands::verify(&global, a),
        Command::Cache(a) => commands::cache(&global, a),
    };
    match result {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(Failure::Domain(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Verification(text)) => {
            print!("{text}");
            ExitCode::from(2)
        }
    }
}
