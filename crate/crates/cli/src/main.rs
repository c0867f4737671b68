use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use cyclotope_cli::{exit, run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = run(&cli);
    if let Some(path) = &cli.out {
        let body = report.artifact.as_deref().unwrap_or(&report.stdout);
        if let Err(e) = std::fs::write(path, body) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(exit::USAGE as u8);
        }
    }
    let mut stdout = std::io::stdout().lock();
    if stdout.write_all(report.stdout.as_bytes()).and_then(|_| stdout.flush()).is_err() {
        return ExitCode::from(exit::USAGE as u8);
    }
    ExitCode::from(report.status as u8)
}
