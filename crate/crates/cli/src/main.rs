use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

mod commands;

use commands::Output;

/// Exact tournament probabilities for random 3-sided dice.
#[derive(Parser, Debug)]
#[command(name = "tridice", version)]
struct Cli {
    /// Emit one JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Size of the worker thread pool (default: one per core).
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    threads: Option<u16>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Dimension and exact volume of a polytope file.
    Volume { path: PathBuf },
    /// Cycle probabilities for three dice.
    ThreeDice,
    /// Cycle probabilities and the tournament report for four dice.
    FourDice {
        /// Compute all 36 non-degenerate words and check cyclic equalities.
        #[arg(long)]
        full: bool,
    },
    /// Builds E_sigma (3 letters) or G_sigma (4 letters) and reports its probability.
    Sigma {
        word: String,
        /// Write the H-representation to this file.
        #[arg(long)]
        dump: Option<PathBuf>,
    },
    /// Monte Carlo estimate of tournament class frequencies.
    Simulate {
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u8).range(3..=4))]
        dice: u8,
        #[arg(long, default_value_t = 1_000_000, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Independent random streams; results depend on this, not on --threads.
        #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u16).range(1..))]
        workers: u16,
    },
}

#[derive(serde::Serialize)]
struct RunReport {
    command: &'static str,
    inputs: serde_json::Value,
    results: serde_json::Value,
    duration_seconds: f64,
}

fn run(cli: &Cli) -> anyhow::Result<(&'static str, Output)> {
    Ok(match &cli.command {
        Command::Volume { path } => ("volume", commands::volume(path)?),
        Command::ThreeDice => ("three-dice", commands::three_dice()?),
        Command::FourDice { full } => ("four-dice", commands::four_dice(*full)?),
        Command::Sigma { word, dump } => ("sigma", commands::sigma(word, dump.as_deref())?),
        Command::Simulate { dice, trials, seed, workers } => {
            ("simulate", commands::simulate(usize::from(*dice), *trials, *seed, usize::from(*workers))?)
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(usize::from(n)).build_global() {
            eprintln!("error: {e}");
            return ExitCode::FAILURE;
        }
    }
    let start = Instant::now();
    match run(&cli) {
        Ok((command, out)) => {
            if cli.json {
                let report = RunReport {
                    command,
                    inputs: out.inputs,
                    results: out.results,
                    duration_seconds: start.elapsed().as_secs_f64(),
                };
                println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
            } else {
                for line in &out.lines {
                    println!("{line}");
                }
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
