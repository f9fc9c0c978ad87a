//! Command-line front end of `zic-dgr`: flag parsing, parallel orchestration
//! and deterministic CSV/JSON artifacts.
//!
//! Exit status is 0 on success, 1 when a verification finds counterexamples
//! and 2 on usage or input errors.

pub mod args;
pub mod commands;
pub mod output;

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use thiserror::Error;

pub use args::{Cli, Command, Format};
use output::{render_csv, render_json, Outcome};

/// Environment variable naming the default output directory.
pub const OUT_DIR_ENV: &str = "ZIC_DGR_OUT_DIR";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Model(#[from] zic_dgr::Error),
    #[error("cannot write {path}: {source}")]
    Io { path: String, source: io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        2
    }
}

/// Rendered output of a run and where it goes.
#[derive(Debug, Clone)]
pub struct Artifact {
    pub path: Option<PathBuf>,
    pub contents: String,
    pub passed: bool,
}

impl Artifact {
    pub fn exit_code(&self) -> u8 {
        if self.passed {
            0
        } else {
            1
        }
    }

    pub fn write(&self) -> Result<(), CliError> {
        match &self.path {
            Some(p) => {
                let io = |source| CliError::Io {
                    path: p.display().to_string(),
                    source,
                };
                if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                    fs::create_dir_all(dir).map_err(io)?;
                }
                fs::write(p, &self.contents).map_err(io)
            }
            None => io::stdout()
                .lock()
                .write_all(self.contents.as_bytes())
                .map_err(|source| CliError::Io {
                    path: "stdout".into(),
                    source,
                }),
        }
    }
}

fn destination(cmd: &Command, format: Format, out_dir: Option<PathBuf>) -> Option<PathBuf> {
    let ext = match format {
        Format::Csv => "csv",
        Format::Json => "json",
    };
    cmd.output()
        .out
        .clone()
        .or_else(|| out_dir.map(|d| d.join(format!("{}.{ext}", cmd.name()))))
}

/// Runs `cmd` and renders its artifact. `out_dir` stands in for
/// [`OUT_DIR_ENV`] and is used only when `--out` is absent.
pub fn run(cmd: &Command, out_dir: Option<PathBuf>) -> Result<Artifact, CliError> {
    let format = cmd.output().format.unwrap_or(cmd.default_format());
    if format == Format::Csv && !cmd.supports_csv() {
        return Err(CliError::Usage(format!(
            "--format csv is not available for {}; use json",
            cmd.name()
        )));
    }
    let outcome: Outcome = match cmd {
        Command::Diversity(a) => commands::diversity(a)?,
        Command::Curve(a) => commands::curve(a)?,
        Command::Classify(a) => commands::classify(a)?,
        Command::VerifyOracle(a) => commands::verify_oracle(a)?,
        Command::VerifyTimeshare(a) => commands::verify_timeshare(a)?,
        Command::VerifyMixed(a) => commands::verify_mixed(a)?,
        Command::Ladder(a) => commands::ladder(a)?,
    };
    let mut config = serde_json::to_value(cmd).expect("flags serialize");
    if let Some(c) = config.as_object_mut() {
        c.insert("format".into(), serde_json::to_value(format).expect("enum serializes"));
    }
    let contents = match (format, &outcome.table) {
        (Format::Csv, Some(t)) => render_csv(&config, t),
        _ => render_json(&config, &outcome),
    };
    Ok(Artifact {
        path: destination(cmd, format, out_dir),
        contents,
        passed: outcome.passed(),
    })
}
