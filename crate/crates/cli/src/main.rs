use std::process::ExitCode;

use clap::Parser;
use wva_sense::{run, Cli};

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(manifest) => {
            for out in &manifest.outputs {
                println!("{out}");
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
