use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use moment_schur_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            let mut out = std::io::stdout().lock();
            if out
                .write_all(report.as_bytes())
                .and_then(|_| out.flush())
                .is_err()
            {
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("moment-schur: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
