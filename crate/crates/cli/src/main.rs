mod args;
mod commands;
mod context;
mod error;
mod output;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use error::CliError;

fn run(cli: &Cli) -> Result<i32, CliError> {
    let g = &cli.global;
    let (report, code) = match &cli.command {
        Command::Spectrum(a) => (commands::spectrum::run(g, a)?, 0),
        Command::Persistent(a) => (commands::persistent::run(g, a)?, 0),
        Command::Packet(a) => (commands::packet::run(g, a)?, 0),
        Command::Sweep(a) => (commands::sweep::run(g, a)?, 0),
        Command::Verify(a) => {
            let (report, passed) = commands::verify::run(g, a)?;
            (report, if passed { 0 } else { error::EXIT_VERIFY })
        }
    };
    output::emit(&report.render(g.format)?, g.out.as_deref())?;
    Ok(code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("abcyl: {e}");
            ExitCode::from(e.code as u8)
        }
    }
}
