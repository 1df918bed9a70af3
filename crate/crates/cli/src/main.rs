//! `dshier`: batch front end for triples, λ-brackets and hierarchy runs.
//!
//! Exit codes: 0 success, 2 invalid configuration, 3 invariant violation,
//! 4 triple construction failure, 5 window too small.

mod commands;
mod config;
mod render;
mod setup;

use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use dshier::Error;
use serde_json::json;

use commands::Outcome;
use config::{Format, JobConfig};

/// An error with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    pub fn new(code: i32, message: impl Into<String>) -> Self {
        Failure { code, message: message.into() }
    }

    pub fn config(message: impl Into<String>) -> Self {
        Failure::new(2, message)
    }

    pub fn config_err(e: Error) -> Self {
        Failure::config(e.to_string())
    }

    pub fn from_core(e: Error) -> Self {
        let code = match e {
            Error::WindowTooSmall(_) => 5,
            Error::InvalidTriple(_) | Error::NotHomogeneous | Error::OutsideHalfPiece => 4,
            Error::InvalidParameter(_) | Error::Partition(_) | Error::Parse(_) | Error::UnknownRow(..) => 2,
            _ => 3,
        };
        Failure::new(code, e.to_string())
    }

    /// Errors while building a triple: bad input stays a configuration error.
    pub fn triple(e: Error) -> Self {
        match e {
            Error::InvalidParameter(_) | Error::Partition(_) | Error::Parse(_) => Failure::config_err(e),
            Error::WindowTooSmall(_) => Failure::from_core(e),
            _ => Failure::new(4, e.to_string()),
        }
    }
}

#[derive(Parser)]
#[command(name = "dshier", version = dshier::VERSION, about = "Integrable triples, λ-brackets and Drinfeld–Sokolov hierarchies")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a Lie algebra and print its structure constants.
    Algebra {
        #[command(subcommand)]
        action: AlgebraAction,
    },
    /// Depth, nilpotent type, ω rank and cyclic / quasi-cyclic searches.
    Classify(Job),
    Triple {
        #[command(subcommand)]
        action: TripleAction,
    },
    Hierarchy {
        #[command(subcommand)]
        action: HierarchyAction,
    },
    Pva {
        #[command(subcommand)]
        action: PvaAction,
    },
    Lenard {
        #[command(subcommand)]
        action: LenardAction,
    },
    Table1 {
        #[command(subcommand)]
        action: Table1Action,
    },
}

#[derive(Subcommand)]
enum AlgebraAction {
    Build(Job),
}

#[derive(Subcommand)]
enum TripleAction {
    /// Construct an integrable triple and check it.
    Build(Job),
    /// Check the conditions of a triple (from `--triple file.json`, or built).
    Check(Job),
}

#[derive(Subcommand)]
enum HierarchyAction {
    /// Solve the hierarchy, extract densities and verify the result.
    Run(Job),
}

#[derive(Subcommand)]
enum PvaAction {
    /// Skew-symmetry and Jacobi identity of a λ-bracket table.
    Check(Job),
}

#[derive(Subcommand)]
enum LenardAction {
    /// Lenard–Magri recursion for the KdV pencil.
    Run(Job),
}

#[derive(Subcommand)]
enum Table1Action {
    /// Nilpotent-type orbits of the exceptional algebras.
    Show(Job),
}

#[derive(clap::Args)]
struct Job {
    /// JSON job configuration; flags override its fields.
    #[arg(long)]
    config: Option<std::path::PathBuf>,
    #[command(flatten)]
    flags: JobConfig,
}

impl Job {
    fn resolve(self) -> Result<JobConfig, Failure> {
        let base = match &self.config {
            Some(p) => JobConfig::load(p)?,
            None => JobConfig::default(),
        };
        let cfg = base.overlay(self.flags);
        cfg.validate()?;
        Ok(cfg)
    }
}

/// Version of the report layout documented in `docs/schemas.md`.
pub const REPORT_SCHEMA: u32 = 1;

type Handler = fn(&JobConfig) -> Result<Outcome, Failure>;

fn emit(name: &str, cfg: &JobConfig, out: &Outcome) -> Result<(), Failure> {
    let report = json!({
        "command": name,
        "schema": REPORT_SCHEMA,
        "version": dshier::VERSION,
        "config_hash": cfg.hash(name),
        "config": cfg,
        "result": out.result,
    });
    let text = match cfg.format() {
        Format::Json => serde_json::to_string_pretty(&report).expect("report serializes") + "\n",
        Format::Text => render::text(&report),
    };
    let write = |path: &Path, body: &str| {
        std::fs::write(path, body).map_err(|e| Failure::config(format!("cannot write {}: {e}", path.display())))
    };
    match &cfg.out {
        None => print!("{text}"),
        Some(dir) if !out.artifacts.is_empty() => {
            std::fs::create_dir_all(dir)
                .map_err(|e| Failure::config(format!("cannot create {}: {e}", dir.display())))?;
            let ext = if cfg.format() == Format::Json { "json" } else { "txt" };
            write(&dir.join(format!("report.{ext}")), &text)?;
            for (file, body) in &out.artifacts {
                write(&dir.join(file), body)?;
            }
        }
        Some(path) => write(path, &text)?,
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    let (name, job, handler): (&str, Job, Handler) = match cli.command {
        Command::Algebra { action: AlgebraAction::Build(j) } => ("algebra build", j, commands::algebra_build),
        Command::Classify(j) => ("classify", j, commands::classify),
        Command::Triple { action: TripleAction::Build(j) } => ("triple build", j, commands::triple_build),
        Command::Triple { action: TripleAction::Check(j) } => ("triple check", j, commands::triple_check),
        Command::Hierarchy { action: HierarchyAction::Run(j) } => ("hierarchy run", j, commands::hierarchy_run),
        Command::Pva { action: PvaAction::Check(j) } => ("pva check", j, commands::pva_check),
        Command::Lenard { action: LenardAction::Run(j) } => ("lenard run", j, commands::lenard),
        Command::Table1 { action: Table1Action::Show(j) } => ("table1 show", j, commands::table1_show),
    };
    let cfg = job.resolve()?;
    let out = handler(&cfg)?;
    emit(name, &cfg, &out)?;
    match out.failure {
        Some(f) => Err(f),
        None => Ok(()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code as u8)
        }
    }
}
