//! `partspec`: prime partial spectra, commutative-subring lattices and
//! Kochen–Specker checks for small finite rings.

mod commands;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use partspec_core::Error;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Parser, Debug)]
#[command(name = "partspec", version, about)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug)]
pub struct GlobalOpts {
    /// Lattice cache directory
    #[arg(long, global = true, env = "PARTSPEC_CACHE_DIR")]
    pub cache_dir: Option<PathBuf>,
    /// Maximum search nodes per stage
    #[arg(long, global = true, default_value_t = 10_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub node_budget: u64,
    /// Wall-clock limit per stage, e.g. `60s` or `500ms`
    #[arg(long, global = true, default_value = "60s", value_parser = parse_duration)]
    pub time_budget: Duration,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Worker threads; 1 runs everything sequentially
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub jobs: Option<u64>,
    /// Log progress to stderr (repeat for more detail)
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,
    /// Add wall-clock timings to the report
    #[arg(long, global = true)]
    pub timings: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Commutative-subring lattice of a ring
    Subrings {
        #[arg(long)]
        ring: PathBuf,
    },
    /// Prime spectrum of a commutative ring
    Spec {
        #[arg(long)]
        ring: PathBuf,
    },
    /// Prime partial ideals, as compatible families of primes
    Partspec {
        #[arg(long)]
        ring: PathBuf,
    },
    /// Partial morphisms from a ring to a finite field
    Morphisms {
        #[arg(long)]
        ring: PathBuf,
        #[arg(long)]
        field: PathBuf,
    },
    /// Checks whether a set of elements is a (prime) partial ideal
    CheckIdeal {
        #[arg(long)]
        ring: PathBuf,
        /// Comma-separated element indices
        #[arg(long, value_delimiter = ',')]
        elements: Vec<usize>,
    },
    /// {0,1}-colorability of a ray system
    KsCheck {
        #[arg(long)]
        rays: PathBuf,
        /// Extra randomized orderings used to confirm an UNSAT answer
        #[arg(long, default_value_t = 5)]
        replays: u64,
    },
    /// Lifts a 3-dimensional ray system and checks colorability
    KsLift {
        #[arg(long)]
        rays: PathBuf,
        #[arg(long)]
        dim: usize,
        /// Also write the lifted system to this file
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Recomputes every claim of the obstruction report
    VerifyPaper {
        /// Ray system to use instead of the built-in Peres set
        #[arg(long)]
        rays: Option<PathBuf>,
    },
}

fn parse_duration(s: &str) -> Result<Duration, String> {
    let d = humantime::parse_duration(s).map_err(|e| e.to_string())?;
    if d.is_zero() {
        return Err("time budget must be positive".into());
    }
    Ok(d)
}

/// Process exit statuses.
pub mod status {
    pub const OK: u8 = 0;
    pub const VERIFICATION_FAILED: u8 = 1;
    pub const USAGE: u8 = 2;
    pub const BUDGET: u8 = 3;
}

fn error_status(e: &Error) -> (u8, &'static str) {
    match e {
        Error::BudgetExhausted { .. } => (status::BUDGET, "budget_exhausted"),
        Error::Io(_) => (status::USAGE, "io"),
        Error::Json(_) => (status::USAGE, "json"),
        Error::Parse { .. } => (status::USAGE, "parse"),
        Error::CapExceeded { .. } => (status::USAGE, "cap_exceeded"),
        Error::UnsupportedField { .. } => (status::USAGE, "unsupported_field"),
        Error::InvalidTables(_) | Error::LengthMismatch { .. } | Error::ElementOutOfRange { .. } => {
            (status::USAGE, "invalid_input")
        }
        Error::DimensionMismatch { .. } | Error::ZeroRay => (status::USAGE, "invalid_rays"),
        Error::NotCommutative(_) => (status::USAGE, "not_commutative"),
        Error::NotAField(_) => (status::USAGE, "not_a_field"),
        Error::Inapplicable(_) => (status::USAGE, "inapplicable"),
        Error::AxiomViolation { .. } => (status::VERIFICATION_FAILED, "axiom_violation"),
        _ => (status::VERIFICATION_FAILED, "verification_failed"),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.global.verbose {
        0 => log::LevelFilter::Warn,
        1 => log::LevelFilter::Info,
        _ => log::LevelFilter::Debug,
    };
    env_logger::Builder::new().filter_level(level).format_timestamp(None).init();
    if let Some(jobs) = cli.global.jobs {
        if let Err(e) = partspec_core::exec::set_worker_threads(jobs as usize) {
            log::warn!("{e}");
        }
    }
    match commands::run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            let (code, kind) = error_status(&e);
            let line = e.to_string().replace('\n', " ");
            eprintln!("error: {kind}: {line}");
            ExitCode::from(code)
        }
    }
}
