//! `chargeplace` command-line driver. Failures print one JSON line on stderr
//! (`{"error": kind, "exit_code": n, "message": ...}`) and exit with a code
//! specific to the failure class; see [`failure::exit`].

mod args;
mod commands;
mod failure;

use clap::error::ErrorKind;
use clap::Parser;

use args::Cli;
use failure::Failure;

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => e.exit(),
        Err(e) => fail(Failure::Usage(one_line(&e.to_string()))),
    };
    if let Some(threads) = cli.threads {
        if threads == 0 {
            fail(Failure::Usage("--threads must be at least 1".into()));
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            fail(Failure::Usage(e.to_string()));
        }
    }
    if let Err(f) = commands::run(cli.command) {
        fail(f);
    }
}

/// Clap's message without the usage footer, folded onto one line.
fn one_line(s: &str) -> String {
    s.lines()
        .map(str::trim)
        .take_while(|l| !l.starts_with("Usage:"))
        .filter(|l| !l.is_empty() && !l.starts_with("For more information"))
        .map(|l| l.trim_start_matches("error: "))
        .collect::<Vec<_>>()
        .join(" ")
}

fn fail(f: Failure) -> ! {
    eprintln!("{}", f.to_line());
    std::process::exit(f.kind().1)
}
