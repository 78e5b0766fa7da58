use std::io::Write;

use clap::Parser;
use hodgecor_cli::{exit, render, run, Cli, CliError};

fn emit(cli: &Cli, text: &str) -> Result<(), CliError> {
    match &cli.out {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Io { path: path.display().to_string(), source }),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).map_err(|source| CliError::Io { path: "<stdout>".into(), source })
        }
    }
}

fn main() {
    let cli = Cli::parse();
    let code = match run(&cli).and_then(|o| emit(&cli, &render(&o.report)).map(|_| o.failed)) {
        Ok(false) => exit::OK,
        Ok(true) => exit::SELFTEST_FAILED,
        Err(e) => {
            eprintln!("{}", e.to_json());
            e.exit_code()
        }
    };
    std::process::exit(code);
}
