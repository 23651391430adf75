use std::process::ExitCode;

use ballmaps_cli::commands::{configure_threads, run, Cli, EXIT_ERROR};
use clap::Parser;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_threads().and_then(|()| {
        let stdout = std::io::stdout();
        let mut out = stdout.lock();
        run(cli, &mut out)
    });
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}
