//! `qfano`: searches, eliminations and oracle tables from the command line.
//!
//! Exit codes: 0 success, 1 invariant violation or internal failure, 2 usage error.

mod commands;
mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use qfano_core::Mode;

use config::FileConfig;
use output::Format;

/// A user error; maps to exit code 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

#[derive(Parser)]
#[command(name = "qfano", version, about = "Q-Fano index candidate search and elimination")]
struct Cli {
    /// Plain `key = value` file pinning qmin, jobs and out_dir.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate candidates with q above (or equal to) qmin.
    Search {
        #[arg(long)]
        qmin: Option<u64>,
        #[arg(long, default_value = "greater", value_parser = parse_mode)]
        mode: Mode,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Eliminate table cases and emit their certificates.
    Eliminate {
        #[arg(long, required_unless_present = "all", conflicts_with = "all")]
        case: Option<u32>,
        #[arg(long)]
        all: bool,
    },
    /// Search for q > qmin, then eliminate every candidate found.
    Report {
        #[arg(long)]
        qmin: Option<u64>,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Closed-form h⁰(sA) for the q = 66 group, s in A..B.
    H0 {
        #[arg(long = "s")]
        s: String,
    },
    /// Monomial counts of P(w0,w1,w2,w3) in degrees 1..=smax.
    Wps {
        #[arg(long, value_delimiter = ',', required = true)]
        weights: Vec<u64>,
        #[arg(long)]
        smax: u64,
    },
    /// LB(N) for a multiset of indices; every N in 2..=24 when --N is absent.
    Lb {
        #[arg(long = "R", value_delimiter = ',', required = true)]
        r: Vec<u64>,
        #[arg(long = "N")]
        n: Option<u64>,
    },
    /// Invariants (e, e', g, j) and class group of a Du Val type.
    Duval {
        #[arg(long = "type")]
        ty: String,
    },
}

fn parse_mode(s: &str) -> Result<Mode, String> {
    s.parse()
}

fn run(cli: Cli) -> anyhow::Result<Option<String>> {
    let file = match &cli.config {
        Some(p) => FileConfig::load(p)?,
        None => FileConfig::default(),
    };
    let jobs = |flag: Option<usize>| flag.or(file.jobs).unwrap_or(1);
    let qmin = |flag: Option<u64>| flag.or(file.qmin).unwrap_or(66);
    let outcome = match cli.command {
        Command::Search { qmin: q, mode, jobs: j } => commands::search(qmin(q), mode, jobs(j))?,
        Command::Eliminate { case, all } => commands::eliminate(if all { None } else { case })?,
        Command::Report { qmin: q, jobs: j } => commands::report(qmin(q), jobs(j))?,
        Command::H0 { s } => commands::h0(&s)?,
        Command::Wps { weights, smax } => commands::wps(&weights, smax)?,
        Command::Lb { r, n } => commands::lb(&r, n)?,
        Command::Duval { ty } => commands::duval(&ty)?,
    };
    let text = outcome.output.render(cli.format)?;
    let target = cli
        .out
        .or_else(|| file.out_dir.map(|d| d.join(format!("{}.{}", outcome.output.kind, cli.format.extension()))));
    match target {
        Some(path) => {
            if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(dir)?;
            }
            std::fs::write(&path, text)?;
        }
        None => print!("{text}"),
    }
    Ok(outcome.violation)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(None) => ExitCode::SUCCESS,
        Ok(Some(violation)) => {
            eprintln!("error: {violation}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(if e.is::<UsageError>() { 2 } else { 1 })
        }
    }
}
