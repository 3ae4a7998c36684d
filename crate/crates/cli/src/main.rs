//! `energy`: solve, generate and benchmark energy games from the command line.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 engines diverged,
//! 3 resource limit (explicit oracle too large).

mod gen;
mod input;
mod random;
mod range;
mod solve;
mod sweep;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use energy_games::exec::Exec;
use energy_games::oracle::DEFAULT_EXPLOSION_LIMIT;

use crate::range::{Bounds, FloorRange};

#[derive(Parser, Debug)]
#[command(name = "energy", version, about = "Symbolic solvers for bounded energy games")]
struct Cli {
    /// Log filter, e.g. `debug` or `energy_games=debug` (overrides RUST_LOG).
    #[arg(long, global = true)]
    log: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EngineChoice {
    Bdd,
    Add,
    Both,
    Oracle,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SchemeChoice {
    /// Distance reward per served request.
    Wpf,
    /// Flat reward at the destination.
    Wtwo,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve one game and print (or write) a JSON report.
    Solve {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        weights: PathBuf,
        #[arg(long, value_enum, default_value = "both")]
        engine: EngineChoice,
        #[arg(long)]
        max_energy: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write Graphviz files of the results into this directory.
        #[arg(long)]
        dump_dot: Option<PathBuf>,
        /// Largest state count the explicit oracle will enumerate.
        #[arg(long, default_value_t = DEFAULT_EXPLOSION_LIMIT)]
        oracle_limit: u128,
    },
    /// Write an elevator specification and its weights.
    GenElevator {
        #[arg(long)]
        floors: u32,
        #[arg(long, value_enum, default_value = "wpf")]
        scheme: SchemeChoice,
        /// Reward of the two-weight scheme; defaults to `floors - 1`.
        #[arg(long)]
        reward: Option<i64>,
        #[arg(long)]
        out_dir: PathBuf,
    },
    /// Solve a grid of elevator sizes and bounds; one CSV row per cell and
    /// engine.
    Sweep {
        #[arg(long, default_value = "elevator")]
        family: String,
        /// `A..B:S` (inclusive, step S), `A..B` or a single count.
        #[arg(long)]
        floors: FloorRange,
        /// `A..B` (inclusive) or a single bound.
        #[arg(long)]
        bounds: Bounds,
        #[arg(long, value_enum, default_value = "wpf")]
        scheme: SchemeChoice,
        #[arg(long)]
        reward: Option<i64>,
        #[arg(long, value_enum, default_value = "both")]
        engine: EngineChoice,
        #[arg(long)]
        out: PathBuf,
        /// Run cells one after another (for timings without contention).
        #[arg(long)]
        sequential: bool,
    },
    /// Differential test of both engines and the oracle on seeded random games.
    Random {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: u64,
        /// Upper bound on state bits per game.
        #[arg(long, default_value_t = 6)]
        max_bits: u32,
        /// Where a reproducer is written on divergence.
        #[arg(long, default_value = ".")]
        repro_dir: PathBuf,
        #[arg(long)]
        sequential: bool,
    },
}

/// An error with the exit code it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub error: anyhow::Error,
}

impl Failure {
    pub fn divergence(error: anyhow::Error) -> Self {
        Failure { code: 2, error }
    }

    pub fn resource(error: anyhow::Error) -> Self {
        Failure { code: 3, error }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(error: anyhow::Error) -> Self {
        Failure { code: 1, error }
    }
}

pub type CliResult<T> = Result<T, Failure>;

fn exec(sequential: bool) -> Exec {
    if sequential {
        Exec::Sequential
    } else {
        Exec::default()
    }
}

fn init_logging(filter: Option<&str>) {
    use tracing_subscriber::EnvFilter;
    let filter = match filter {
        Some(f) => EnvFilter::new(f),
        None => EnvFilter::try_from_default_env().unwrap_or_else(|_| EnvFilter::new("warn")),
    };
    tracing_subscriber::fmt().with_env_filter(filter).with_writer(std::io::stderr).init();
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Solve { spec, weights, engine, max_energy, out, dump_dot, oracle_limit } => {
            solve::cmd_solve(&solve::SolveArgs { spec, weights, engine, max_energy, out, dump_dot, oracle_limit })
        }
        Command::GenElevator { floors, scheme, reward, out_dir } => gen::cmd_gen_elevator(floors, scheme, reward, &out_dir),
        Command::Sweep { family, floors, bounds, scheme, reward, engine, out, sequential } => sweep::cmd_sweep(
            &sweep::SweepArgs { family, floors, bounds, scheme, reward, engine, out },
            exec(sequential),
        ),
        Command::Random { seed, count, max_bits, repro_dir, sequential } => {
            random::cmd_random(seed, count, max_bits, &repro_dir, exec(sequential))
        }
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
    init_logging(cli.log.as_deref());
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            ExitCode::from(f.code)
        }
    }
}
