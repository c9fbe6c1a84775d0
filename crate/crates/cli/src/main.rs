//! `horseshoe`: command-line entry point.
//!
//! Exit codes: 0 success or yes, 1 definite no, 2 unknown or inconclusive,
//! 64 usage error.

mod args;
mod overlay;
mod run;

use args::{Cli, Command, RunConfig};
use clap::error::ErrorKind;
use clap::Parser;
use run::{Context, Failure};

const USAGE: i32 = 64;

fn workers(flag: Option<usize>) -> Result<Option<usize>, String> {
    match std::env::var("HORSESHOE_WORKERS") {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(format!("HORSESHOE_WORKERS must be a positive integer, got {v:?}")),
        },
        Err(_) => Ok(flag),
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => USAGE,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    match workers(cli.workers) {
        Ok(Some(n)) => {
            if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
                eprintln!("worker pool: {e}");
            }
        }
        Ok(None) => {}
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(USAGE);
        }
    }
    let ctx = Context { config: RunConfig { command: &cli.command, seed: cli.seed, timing: cli.timing } };
    let result = match &cli.command {
        Command::Certify(a) => run::certify(&ctx, a),
        Command::Cycles(a) => run::cycles(&ctx, a),
        Command::Enumerate(a) => run::enumerate(&ctx, a),
        Command::Itinerary(a) => run::itinerary_cmd(&ctx, a),
        Command::Slice(a) => run::slice(&ctx, a),
        Command::Homoclinic(a) => run::homoclinic_cmd(&ctx, a),
        Command::Decay(a) => run::decay(&ctx, a),
    };
    let code = match result {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            USAGE
        }
        Err(Failure::Inconclusive(msg)) => {
            eprintln!("inconclusive: {msg}");
            2
        }
    };
    std::process::exit(code);
}
