use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let cli = boolfact::cli::Cli::parse();
    let stdout = std::io::stdout();
    match boolfact::cli::run(&cli, &mut stdout.lock()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
