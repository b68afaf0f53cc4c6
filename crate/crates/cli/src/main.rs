use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;

#[derive(Parser)]
#[command(name = "rosepen", version, about = "Fiedler pencils of Rosenbrock systems and rational eigenproblems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Exact,
    Float,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BackendArg {
    Exact,
    Numeric,
}

#[derive(Args, Clone, Debug)]
pub struct Common {
    /// JSON file with a system or a rational eigenproblem spec.
    #[arg(long, short)]
    pub input: PathBuf,
    /// Write output here instead of stdout.
    #[arg(long, short)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Mode::Exact)]
    pub mode: Mode,
}

#[derive(Subcommand)]
enum Command {
    /// Build the Fiedler pencil for a bijection.
    Build {
        #[command(flatten)]
        common: Common,
        /// Product order σ⁻¹, e.g. `1,0,2,3`. Defaults to the first companion order.
        #[arg(long)]
        sigma: Option<String>,
    },
    /// Zeros and poles, classified into eigenvalues and eigenpoles.
    Zeros {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        sigma: Option<String>,
        /// Defaults to `exact` in exact mode and `numeric` in float mode.
        #[arg(long, value_enum)]
        backend: Option<BackendArg>,
    },
    /// Equivalence certificates, one JSON line per bijection.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long, conflicts_with = "all")]
        sigma: Option<String>,
        /// Every bijection (bounded by ROSEPEN_MAX_M, default 5).
        #[arg(long)]
        all: bool,
        /// Certify this pencil file instead of the constructed one.
        #[arg(long, conflicts_with = "all")]
        pencil: Option<PathBuf>,
        /// Include U, V and the step list in each line.
        #[arg(long)]
        full: bool,
    },
    /// Consecution-inversion structure sequence of a bijection.
    Ciss {
        #[arg(long)]
        sigma: String,
    },
    /// Smith form of the system matrix S(λ).
    Smith {
        #[command(flatten)]
        common: Common,
    },
    /// State-space realization of a rational eigenproblem spec.
    Realize {
        #[command(flatten)]
        common: Common,
    },
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Build { common, sigma } => commands::build(&common, sigma.as_deref()),
        Command::Zeros { common, sigma, backend } => commands::zeros(&common, sigma.as_deref(), backend),
        Command::Verify { common, sigma, all, pencil, full } => {
            commands::verify(&common, sigma.as_deref(), all, pencil.as_deref(), full)
        }
        Command::Ciss { sigma } => commands::ciss(&sigma),
        Command::Smith { common } => commands::smith(&common),
        Command::Realize { common } => commands::realize(&common),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
