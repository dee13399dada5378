use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use dualtruth_cli::{run, Cli, EXIT_INPUT, EXIT_OK};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_INPUT,
            };
            return ExitCode::from(code as u8);
        }
    };
    let outcome = run(&cli);
    eprint!("{}", outcome.stderr);
    match &cli.command.common().out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &outcome.stdout) {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(EXIT_INPUT as u8);
            }
        }
        None => {
            let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
        }
    }
    ExitCode::from(outcome.code as u8)
}
