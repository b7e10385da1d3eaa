mod args;
mod commands;
mod output;

use std::io::{self, Write};
use std::process::ExitCode;

use clap::{CommandFactory, Parser};
use log::info;

use args::{Cli, Command, OutputFormat};
use output::{emit, Report};

/// Invalid flag combination detected after parsing; exits like a clap error.
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn print<R: Report>(r: anyhow::Result<R>, format: OutputFormat) -> anyhow::Result<()> {
    let stdout = io::stdout();
    let mut lock = stdout.lock();
    emit(&r?, format, &mut lock)?;
    lock.flush()?;
    Ok(())
}

fn dispatch(cmd: &Command) -> anyhow::Result<()> {
    match cmd {
        Command::Estimate(a) => {
            info!("configuration: estimate {}", serde_json::to_string(a)?);
            print(commands::estimate(a), a.common.out)
        }
        Command::Run(a) => {
            info!("configuration: run {}", serde_json::to_string(a)?);
            print(commands::run(a), a.common.out)
        }
        Command::Taper(a) => {
            info!("configuration: taper {}", serde_json::to_string(a)?);
            print(commands::taper_cmd(a), a.common.out)
        }
        Command::Group(a) => {
            info!("configuration: group {}", serde_json::to_string(a)?);
            print(commands::group_cmd(a), a.common.out)
        }
        Command::Fci(a) => {
            info!("configuration: fci {}", serde_json::to_string(a)?);
            print(commands::fci(a), a.common.out)
        }
        Command::Scan(a) => {
            info!("configuration: scan {}", serde_json::to_string(a)?);
            print(commands::scan(a), a.common.out)
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info"))
        .format_timestamp(None)
        .init();
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: cannot configure {n} threads: {e}");
            return ExitCode::from(1);
        }
    }
    info!("threads: {}", rayon::current_num_threads());
    match dispatch(&cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => match e.downcast_ref::<UsageError>() {
            Some(u) => Cli::command()
                .error(clap::error::ErrorKind::ArgumentConflict, u)
                .exit(),
            None => {
                eprintln!("error: {e:#}");
                ExitCode::from(1)
            }
        },
    }
}
