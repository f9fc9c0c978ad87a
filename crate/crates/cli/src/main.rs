use std::env;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use zic_dgr_cli::{run, Cli, OUT_DIR_ENV};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out_dir = env::var_os(OUT_DIR_ENV).filter(|v| !v.is_empty()).map(PathBuf::from);
    let result = run(&cli.command, out_dir).and_then(|a| a.write().map(|()| a));
    match result {
        Ok(a) => {
            if !a.passed {
                eprintln!("verification failed: counterexamples recorded in the output");
            }
            ExitCode::from(a.exit_code())
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
