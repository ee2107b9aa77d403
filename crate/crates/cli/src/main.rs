//! `fastpoly -<task> <precision> [files and flags]`

mod args;
mod tasks;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use args::Cli;
use tasks::TaskError;

/// Turns `-task` into the subcommand name and `-help` into `--help`.
fn normalise(args: Vec<String>) -> Result<Vec<String>, String> {
    let mut it = args.into_iter();
    let bin = it.next().unwrap_or_else(|| "fastpoly".to_string());
    let Some(task) = it.next() else {
        return Err("missing task; try `fastpoly -help`".to_string());
    };
    let task = match task.as_str() {
        "-help" | "--help" | "-h" => "--help".to_string(),
        t if t.starts_with('-') && !t.starts_with("--") && t.len() > 1 => t[1..].to_string(),
        t => return Err(format!("tasks are written with a leading dash, as in -eval; got {t:?}")),
    };
    let rest = it.map(|a| if a == "-help" { "--help".to_string() } else { a });
    Ok([bin, task].into_iter().chain(rest).collect())
}

fn main() -> ExitCode {
    let args = match normalise(std::env::args().collect()) {
        Ok(a) => a,
        Err(msg) => {
            eprintln!("fastpoly: {msg}");
            return ExitCode::from(1);
        }
    };
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    match tasks::run(cli.task) {
        Ok(()) => ExitCode::SUCCESS,
        Err(TaskError::Usage(msg)) => {
            eprintln!("fastpoly: {msg}");
            ExitCode::from(1)
        }
        Err(TaskError::Data(msg)) => {
            eprintln!("fastpoly: {msg}");
            ExitCode::from(2)
        }
    }
}
