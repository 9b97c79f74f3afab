mod commands;
mod config;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{CmdError, Outcome, Status};
use config::{parse_primes, parse_schedule, ConfigError, Format, RunConfig};

#[derive(Parser, Debug)]
#[command(name = "ssplab", version, about = "Verify superspecial-locus computations for genus-2 Rosenhain curves")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    format: Format,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads for per-prime parallelism.
    #[arg(long, global = true, env = "SSPLAB_THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Separability of the Hasse polynomial for all odd primes up to a bound.
    Hasse {
        #[arg(long)]
        max_p: u64,
    },
    /// Cartier-Manin entries of the Rosenhain curve.
    Cm {
        #[arg(long)]
        primes: String,
        #[arg(long, default_value_t = 2)]
        genus: u32,
    },
    /// Truncated Lauricella series and the reconstruction of each entry.
    Lauricella {
        #[arg(long)]
        primes: String,
        #[arg(short)]
        i: Option<usize>,
        #[arg(short)]
        j: Option<usize>,
    },
    /// Differential operators annihilating every entry.
    VerifyPde {
        #[arg(long)]
        primes: String,
    },
    /// Contiguity relations between entries of a row.
    VerifyContiguity {
        #[arg(long)]
        primes: String,
    },
    /// Points of the superspecial locus.
    Locus {
        #[arg(long)]
        primes: String,
        #[arg(long, default_value = "2,4")]
        ext: String,
    },
    /// Radicality, point count and Jacobian rank at every point.
    VerifyMultOne {
        #[arg(long)]
        primes: String,
        #[arg(long, default_value = "2,4")]
        ext: String,
    },
    /// Evaluates the companion expectation at every point of the locus.
    CheckExpectation {
        #[arg(long)]
        primes: String,
        #[arg(long, default_value = "2,4")]
        ext: String,
    },
}

fn config(primes: &str, ext: Option<&str>) -> Result<RunConfig, ConfigError> {
    Ok(RunConfig {
        primes: parse_primes(primes)?,
        schedule: match ext {
            Some(e) => parse_schedule(e)?,
            None => ssplab::locus::DEFAULT_SCHEDULE.to_vec(),
        },
    })
}

fn run(cli: &Cli) -> Result<Outcome, CmdError> {
    match &cli.command {
        Command::Hasse { max_p } => commands::hasse(*max_p),
        Command::Cm { primes, genus } => commands::cm(&config(primes, None)?, *genus),
        Command::Lauricella { primes, i, j } => commands::lauricella(&config(primes, None)?, *i, *j),
        Command::VerifyPde { primes } => commands::verify_pde(&config(primes, None)?),
        Command::VerifyContiguity { primes } => commands::verify_contiguity_cmd(&config(primes, None)?),
        Command::Locus { primes, ext } => commands::locus(&config(primes, Some(ext))?),
        Command::VerifyMultOne { primes, ext } => commands::verify_mult_one(&config(primes, Some(ext))?),
        Command::CheckExpectation { primes, ext } => {
            commands::check_expectation_cmd(&config(primes, Some(ext))?)
        }
    }
}

fn render(outcome: &Outcome, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(&outcome.json).expect("serializable report") + "\n",
        Format::Csv => outcome.csv.clone(),
        Format::Text => outcome.text.clone(),
    }
}

fn emit(body: &str, out: Option<&PathBuf>) -> std::io::Result<()> {
    match out {
        Some(path) => std::fs::write(path, body),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(body.as_bytes())?;
            stdout.flush()
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if n == 0 {
            eprintln!("error: --threads must be positive");
            return ExitCode::from(Status::Invalid.code());
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(Status::Invalid.code());
        }
    }
    match run(&cli) {
        Ok(outcome) => {
            if let Err(e) = emit(&render(&outcome, cli.format), cli.out.as_ref()) {
                eprintln!("error: {e}");
                return ExitCode::from(Status::Invalid.code());
            }
            ExitCode::from(outcome.status.code())
        }
        Err(CmdError::Config(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(Status::Invalid.code())
        }
        Err(CmdError::Computation(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(Status::Failed.code())
        }
    }
}
