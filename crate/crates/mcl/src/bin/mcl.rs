use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use mcl::cli::{self, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let result = cli::run(cli);
    // Timing goes to stderr so stdout stays byte-identical across runs.
    eprintln!("wall time: {} ms", started.elapsed().as_millis());
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(cli::exit_code(&e))
        }
    }
}
