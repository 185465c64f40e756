//! Command-line front end: configuration, sweeps, self-tests and CSV/JSON
//! emission of solver and figure data.

pub mod commands;
pub mod config;
pub mod dataset;
pub mod error;

use std::fs;
use std::path::PathBuf;

pub use commands::{execute, CommandOutput};
pub use config::{Args, CommandKind, Format, RunConfig, THREADS_ENV};
pub use dataset::{format_number, FigureDataset};
pub use error::{CliError, CliResult};

/// Runs the command on a pool capped at `config.threads` workers.
pub fn compute(config: &RunConfig) -> CliResult<CommandOutput> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = config.threads {
        builder = builder.num_threads(n);
    }
    match builder.build() {
        Ok(pool) => pool.install(|| execute(config)),
        Err(_) => execute(config),
    }
}

/// Writes every table of `output` under `config.output_path`.
pub fn write_outputs(config: &RunConfig, output: &CommandOutput) -> CliResult<Vec<PathBuf>> {
    if output.files.is_empty() {
        return Ok(Vec::new());
    }
    let dir = &config.output_path;
    fs::create_dir_all(dir).map_err(|source| CliError::Io {
        path: dir.clone(),
        source,
    })?;
    let meta = config.meta();
    let mut written = Vec::new();
    for (stem, table) in &output.files {
        let path = dir.join(format!("{stem}.{}", config.format.extension()));
        let text = match config.format {
            Format::Csv => table.to_csv(),
            Format::Json => table.to_json(meta.clone()),
        };
        fs::write(&path, text).map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        })?;
        written.push(path);
    }
    Ok(written)
}

/// Validates, computes, then writes; nothing touches the disk unless the
/// first two steps succeed.
pub fn run(args: &Args, threads_env: Option<&str>) -> CliResult<(CommandOutput, Vec<PathBuf>)> {
    let config = RunConfig::from_args(args, threads_env)?;
    let output = compute(&config)?;
    let written = write_outputs(&config, &output)?;
    Ok((output, written))
}
