mod args;
mod commands;
mod config;
mod error;
mod json;
mod plot;

use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Command};
use commands::{Job, Outcome};
use config::JobConfig;
use error::CliError;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            return ExitCode::from(code);
        }
    };
    match execute(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn execute(cli: Cli) -> Result<i32, CliError> {
    let config = match &cli.config {
        Some(path) => JobConfig::load(path)?,
        None => JobConfig::default(),
    };
    let command = match (cli.command, config.command.as_deref()) {
        (Some(c), Some(name)) if c.name() != name => {
            return Err(CliError::Usage(format!(
                "the job file is for `{name}` but `{}` was requested",
                c.name()
            )))
        }
        (Some(c), _) => c,
        (None, Some(name)) => {
            Command::from_name(name).ok_or_else(|| CliError::Usage(format!("unknown command `{name}` in job file")))?
        }
        (None, None) => return Err(CliError::Usage("no command given; see --help".into())),
    };
    let output = cli.output.or_else(|| config.output.path.clone());
    let job = Job {
        config: &config,
        output: output.as_deref(),
        command_line: command_line(),
    };
    let outcome = commands::run(&command, &job)?;
    emit(&outcome, output.as_deref())?;
    Ok(outcome.code)
}

fn command_line() -> String {
    std::env::args()
        .map(|a| {
            if a.is_empty() || a.contains(|c: char| c.is_whitespace() || c == '"' || c == '\'') {
                format!("'{}'", a.replace('\'', r"'\''"))
            } else {
                a
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn emit(outcome: &Outcome, output: Option<&std::path::Path>) -> Result<(), CliError> {
    for (path, text) in &outcome.files {
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            std::fs::create_dir_all(dir)?;
        }
        std::fs::write(path, text)?;
    }
    if outcome.body.is_empty() {
        return Ok(());
    }
    match output {
        Some(path) => std::fs::write(path, &outcome.body)?,
        None => std::io::stdout().lock().write_all(outcome.body.as_bytes())?,
    }
    Ok(())
}
