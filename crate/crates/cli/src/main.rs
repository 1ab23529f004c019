mod args;
mod commands;
mod svg;
mod verify;

use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{CommandFactory, Parser};

use args::{Cli, Format};
use commands::{Artifact, Context};

fn usage_error(kind: ErrorKind, message: impl std::fmt::Display) -> ! {
    Cli::command().error(kind, message).exit()
}

fn render(artifact: Artifact, format: Format) -> (String, usize) {
    match artifact {
        Artifact::Table { csv, json, plot } => {
            let text = match format {
                Format::Csv => csv,
                Format::Json => serde_json::to_string_pretty(&json).expect("serializable") + "\n",
                Format::Svg => plot.expect("plot support checked before dispatch").render(),
            };
            (text, 0)
        }
        Artifact::Verdict { csv, json, failed } => {
            let text = match format {
                Format::Json => serde_json::to_string_pretty(&json).expect("serializable") + "\n",
                _ => csv,
            };
            (text, failed)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.global.format == Format::Svg && !cli.command.supports_plot() {
        usage_error(ErrorKind::ArgumentConflict, "--format svg is only available for `enumerate` and `decay`");
    }
    let ctx = Context::new(&cli.global);
    let artifact = match commands::run(&cli.command, &ctx) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {}: {e}", e.name());
            return ExitCode::from(1);
        }
    };
    let (text, failed) = render(artifact, cli.global.format);
    let written = match &cli.global.output {
        Some(path) => std::fs::write(path, text.as_bytes()),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: Io: {e}");
        return ExitCode::from(1);
    }
    if failed > 0 {
        eprintln!("error: {failed} verification checks failed");
        return ExitCode::from(1);
    }
    ExitCode::SUCCESS
}
