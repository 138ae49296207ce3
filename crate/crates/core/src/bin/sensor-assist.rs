use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use sensor_assist::cli::{execute, warning, write_atomic, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(w) = warning(&cli) {
        eprintln!("{w}");
    }
    let result = execute(&cli).and_then(|out| match &cli.out {
        Some(path) => write_atomic(path, &out),
        None => {
            let _ = std::io::stdout().write_all(out.as_bytes());
            Ok(())
        }
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
