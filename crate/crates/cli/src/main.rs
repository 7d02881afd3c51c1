mod commands;
mod config;
mod error;
mod verify;

use clap::Parser;
use config::{Cli, Command, RunConfig};
use error::CliError;
use std::io::Write;
use std::process::ExitCode;

fn emit(csv: &str, out: Option<&std::path::Path>) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, csv)?,
        None => std::io::stdout().lock().write_all(csv.as_bytes())?,
    }
    Ok(())
}

fn run(config: RunConfig) -> Result<ExitCode, CliError> {
    let out = config.out.as_deref();
    match config.command {
        Command::Dist {
            family,
            grid,
            nodes,
        } => emit(&commands::dist(family, grid, nodes)?, out)?,
        Command::FiniteCdf {
            params,
            grid,
            nodes,
        } => emit(&commands::finite_cdf(params, grid, nodes)?, out)?,
        Command::Mc {
            params,
            ensemble,
            trials,
        } => emit(&commands::mc(params, ensemble, trials, config.seed)?, out)?,
        Command::Verify { suite } => {
            let checks = verify::run(suite, config.seed);
            let mut stdout = std::io::stdout().lock();
            for c in &checks {
                writeln!(stdout, "{}", c.line())?;
            }
            if !checks.iter().all(verify::Check::passed) {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match RunConfig::try_from(cli).and_then(run) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
