use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use berline_cli::{parse, run, Command, Exit};
use clap::{Args, Parser, Subcommand, ValueEnum};

/// Modular classes of finite-groupoid representations, computed exactly.
#[derive(Parser)]
#[command(name = "berline", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check groupoid, complex and representation laws.
    Validate(Common),
    /// Cocycle check and coboundary solve for the supplied cochain.
    Cohomology(Common),
    /// Full pipeline: characteristic cocycle and its class.
    ModularClass(Common),
    /// Berezinian class of a single arrow.
    Berezinian(WithArrow),
    /// Invertible replacement of a single arrow's chain map.
    Replace(WithArrow),
    /// Homotopy certificates for every composable pair.
    HomotopyCheck(Common),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct Common {
    /// Input document (JSON).
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Add wall-clock time to the report.
    #[arg(long)]
    timing: bool,
}

#[derive(Args)]
struct WithArrow {
    #[command(flatten)]
    common: Common,
    /// Arrow identifier.
    #[arg(long)]
    arrow: String,
}

fn base_name(path: &Path) -> String {
    path.file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, common) = match cli.command {
        Cmd::Validate(c) => (Command::Validate, c),
        Cmd::Cohomology(c) => (Command::Cohomology, c),
        Cmd::ModularClass(c) => (Command::ModularClass, c),
        Cmd::Berezinian(w) => (Command::Berezinian { arrow: w.arrow }, w.common),
        Cmd::Replace(w) => (Command::Replace { arrow: w.arrow }, w.common),
        Cmd::HomotopyCheck(c) => (Command::HomotopyCheck, c),
    };
    let start = Instant::now();
    let doc = match parse(&common.input) {
        Ok(doc) => doc,
        Err(e) => {
            eprintln!(
                "error: {}: {}",
                base_name(&common.input),
                e.messages.join("\n  ")
            );
            return ExitCode::from(Exit::Usage.code() as u8);
        }
    };
    let (mut report, exit) = match run(&command, &doc, &base_name(&common.input)) {
        Ok(out) => out,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(Exit::Usage.code() as u8);
        }
    };
    if common.timing {
        report.timing_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    }
    match common.format {
        Format::Text => print!("{}", report.to_text()),
        Format::Json => print!("{}", report.to_json()),
    }
    ExitCode::from(exit.code() as u8)
}
