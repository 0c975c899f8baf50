use std::fs;
use std::process::ExitCode;

use anyhow::Context;
use clap::Parser;

use twoloc_cli::{execute, Cli, Format};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match execute(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let text = match cli.options.format {
        Format::Structured => report.structured(),
        Format::Summary => report.summary_text(),
    };
    let written = match &cli.options.out {
        Some(path) => fs::write(path, &text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    };
    if let Err(e) = written {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    if report.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
