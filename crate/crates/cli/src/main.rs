use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use lcmclosed::numset::DEFAULT_DIVISOR_LIMIT;

mod commands;
mod render;

use commands::Outcome;

#[derive(Parser, Debug)]
#[command(
    name = "lcmclosed",
    version,
    about = "Checks LCM-closed sets, union-closed families and the bridge between them"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Number of primes the sieve may grow to.
    #[arg(long, global = true, value_name = "PRIMES")]
    sieve_cap: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Numset,
    Family,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum ClosureOp {
    Lcm,
    Gcd,
    Union,
    Intersection,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum NumsetKind {
    Lcm,
    Gcd,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Closedness and conjecture checks for one instance.
    Check {
        kind: Kind,
        /// Inline JSON, a file path, or "-" for stdin.
        input: String,
    },
    /// Smallest closed superset under one operation.
    Closure { op: ClosureOp, input: String },
    /// Abundance report of an LCM-closed set or union-closed family.
    Abundance {
        kind: Kind,
        input: String,
        /// Also list abundant divisors that are not prime powers.
        #[arg(long)]
        all_divisors: bool,
        /// Maximum number of divisors of the lcm to enumerate.
        #[arg(long, default_value_t = DEFAULT_DIVISOR_LIMIT, requires = "all_divisors")]
        limit: usize,
    },
    /// LCM/GCD dual of a number set, or complement dual of a family.
    Dual { kind: Kind, input: String },
    /// Family to number set or back, with a transport table.
    Convert { kind: Kind, input: String },
    /// Which known sufficient conditions apply.
    KnownCases { kind: Kind, input: String },
    /// Exhaustive scan of all families over {1..n}.
    Enumerate {
        #[arg(long)]
        n: u32,
        #[arg(long, env = "LCMCLOSED_WORKERS", default_value_t = 1,
              value_parser = clap::value_parser!(u64).range(1..))]
        workers: u64,
        /// Resume file; completed chunks are skipped on rerun.
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        /// Permit n = 5 (2^32 candidates).
        #[arg(long)]
        allow_n5: bool,
        /// Chunk progress on stderr.
        #[arg(long)]
        progress: bool,
    },
    /// Seeded instance generators.
    #[command(subcommand)]
    Gen(Gen),
}

#[derive(Subcommand, Debug)]
pub enum Gen {
    /// Closure of random numbers over the first primes.
    ClosedNumset {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = NumsetKind::Lcm)]
        kind: NumsetKind,
        /// Random generators drawn before closing.
        #[arg(long, default_value_t = 4)]
        seeds: usize,
        #[arg(long, default_value_t = 3)]
        max_prime_index: usize,
        #[arg(long, default_value_t = 2)]
        max_exponent: u32,
    },
    /// Fundamental periods of subsets of points under a permutation.
    Periods {
        /// Seed for a random permutation when --cycles is absent.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of points.
        #[arg(long)]
        size: usize,
        /// Cycle notation, e.g. "(1 2)(3 4 5)".
        #[arg(long)]
        cycles: Option<String>,
        /// Comma-separated points; defaults to every point on a cycle.
        #[arg(long, value_delimiter = ',')]
        subset: Option<Vec<usize>>,
    },
}

fn read_input(input: &str) -> Result<String, String> {
    let trimmed = input.trim_start();
    if trimmed.starts_with('[') || trimmed.starts_with('{') {
        return Ok(input.to_string());
    }
    if input == "-" {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text).map_err(|e| format!("cannot read stdin: {e}"))?;
        return Ok(text);
    }
    std::fs::read_to_string(input).map_err(|e| format!("cannot read {input}: {e}"))
}

fn run(cli: &Cli) -> Result<Outcome, String> {
    if let Some(cap) = cli.sieve_cap {
        if cap == 0 {
            return Err("--sieve-cap must be at least 1".into());
        }
        lcmclosed::arith::set_sieve_cap(cap);
    }
    let result = match &cli.command {
        Command::Check { kind, input } => commands::check(*kind, &read_input(input)?),
        Command::Closure { op, input } => commands::closure(*op, &read_input(input)?),
        Command::Abundance { kind, input, all_divisors, limit } => {
            commands::abundance(*kind, &read_input(input)?, all_divisors.then_some(*limit))
        }
        Command::Dual { kind, input } => commands::dual(*kind, &read_input(input)?),
        Command::Convert { kind, input } => commands::convert(*kind, &read_input(input)?),
        Command::KnownCases { kind, input } => commands::known_cases(*kind, &read_input(input)?),
        Command::Enumerate { n, workers, checkpoint, allow_n5, progress } => {
            let mut config = lcmclosed::EnumerationConfig::new(*n).workers(*workers as usize);
            config.allow_n5 = *allow_n5;
            config.checkpoint = checkpoint.clone();
            config.progress = *progress;
            commands::enumerate(&config)
        }
        Command::Gen(gen) => commands::generate(gen),
    };
    result.map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            let text = match cli.format {
                Format::Json => serde_json::to_string_pretty(&outcome.report).expect("report serializes"),
                Format::Table => render::table(&outcome.report),
            };
            let mut stdout = io::stdout().lock();
            if writeln!(stdout, "{text}").is_err() {
                return ExitCode::from(2);
            }
            if outcome.violated {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(message) => {
            eprintln!("lcmclosed: error: {}", message.replace('\n', " "));
            ExitCode::from(2)
        }
    }
}
