use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use g2lts::cli::{emit, exit_code, run, Format, RunConfig};

/// Exact verification of the g2 Lie triple system catalogue.
#[derive(Parser, Debug)]
#[command(name = "verify", version)]
struct Args {
    /// Seed for all randomised checks.
    #[arg(long, env = "G2LTS_SEED", default_value_t = 0)]
    seed: u64,

    /// Trials per randomised check.
    #[arg(long, env = "G2LTS_TRIALS", default_value_t = 25)]
    trials: usize,

    /// Check-id glob, e.g. "catalog.*"; may be repeated.
    #[arg(long, env = "G2LTS_FILTER", value_delimiter = ',')]
    filter: Vec<String>,

    #[arg(long, env = "G2LTS_FORMAT", value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Report every duration as 0.
    #[arg(long, env = "G2LTS_NO_TIMING")]
    no_timing: bool,

    /// Corrupt one g2 structure constant before running.
    #[arg(long, hide = true)]
    inject_fault: bool,
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let usage = e.use_stderr();
            let _ = e.print();
            return ExitCode::from(if usage { 2 } else { 0 });
        }
    };
    let config = RunConfig {
        seed: args.seed,
        trials: args.trials,
        filter: args.filter,
        format: args.format,
        timing: !args.no_timing,
        inject_fault: args.inject_fault,
    };
    let results = match run(&config) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("verify: {e}");
            return ExitCode::from(2);
        }
    };
    let mut out = std::io::stdout().lock();
    if out.write_all(&emit(&results, config.format)).and_then(|_| out.flush()).is_err() {
        return ExitCode::from(2);
    }
    ExitCode::from(exit_code(&results) as u8)
}
