//! `rota`: JSON in, JSON report out.
//!
//! Exit status is 0 when every law in the report holds, 1 when one fails
//! and 2 when the input cannot be used.

mod commands;
mod demo;
mod report;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rota_core::RotaError;
use serde_json::Value;

use crate::report::Report;

#[derive(Parser, Debug)]
#[command(name = "rota", version, about = "Exact checks for Rota-Baxter algebras, modules and operator rings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// JSON input file; standard input when omitted.
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Report file; standard output when omitted.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Precision of Laurent descriptors that do not set their own.
    #[arg(long, global = true, default_value_t = 48, value_parser = clap::value_parser!(i64).range(1..))]
    precision: i64,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 7)]
    seed: u64,
}

#[derive(Subcommand, Debug, Clone, PartialEq, Eq)]
enum Command {
    /// Audit an algebra, a module or a coalgebra operator.
    Check,
    /// Multiply elements of the operator ring.
    UrbMul,
    /// Dimension and basis of the operator ring of a finite algebra.
    UrbDim,
    /// Regular-singular split of a quasi-idempotent module.
    Split,
    /// Birkhoff factorization of a rooted-tree character.
    Birkhoff,
    /// Worked examples: hecke, kernel, zerodiv, tables.
    Demo { name: String },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Check => "check",
            Command::UrbMul => "urb-mul",
            Command::UrbDim => "urb-dim",
            Command::Split => "split",
            Command::Birkhoff => "birkhoff",
            Command::Demo { .. } => "demo",
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Read { path: String, source: std::io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: String, source: std::io::Error },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("unknown instance `{0}`")]
    UnknownInstance(String),
    #[error(transparent)]
    Rota(#[from] RotaError),
}

/// Settings shared by every command.
pub struct RunConfig {
    pub precision: i64,
    pub seed: u64,
}

fn read_input(path: &Option<PathBuf>) -> Result<Value, CliError> {
    let text = match path {
        Some(p) => fs::read_to_string(p).map_err(|source| CliError::Read { path: p.display().to_string(), source })?,
        None => std::io::read_to_string(std::io::stdin())
            .map_err(|source| CliError::Read { path: "stdin".into(), source })?,
    };
    serde_json::from_str(&text).map_err(|e| CliError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

fn run(cli: &Cli) -> Result<Report, CliError> {
    let cfg = RunConfig { precision: cli.precision, seed: cli.seed };
    let mut report = match &cli.command {
        Command::Demo { name } => demo::run(name, &cfg)?,
        cmd => {
            let input = read_input(&cli.input)?;
            match cmd {
                Command::Check => commands::check(&input, &cfg)?,
                Command::UrbMul => commands::urb_mul(&input, &cfg)?,
                Command::UrbDim => commands::urb_dim(&input, &cfg)?,
                Command::Split => commands::split(&input, &cfg)?,
                Command::Birkhoff => commands::birkhoff(&input, &cfg)?,
                Command::Demo { .. } => unreachable!("handled above"),
            }
        }
    };
    report.command = cli.command.name();
    Ok(report)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let text = report.render(cli.precision, cli.seed);
    match &cli.output {
        Some(p) => {
            if let Err(source) = fs::write(p, &text) {
                eprintln!("error: {}", CliError::Write { path: p.display().to_string(), source });
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    if report.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
