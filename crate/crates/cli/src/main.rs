//! `polylin`: batch JSON front end for exact computations with polytopal
//! algebras.

mod auto;
mod hom;
mod poly;
mod session;
mod tame;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use polylin::verify::{run_all, DEFAULT_SEED};
use polylin::Field;
use serde_json::{json, Value};

use session::{CliError, CliResult, Session};

#[derive(Debug, Parser)]
#[command(name = "polylin", version, about = "Exact computations with polytopal algebras k[P]")]
struct Cli {
    /// Coefficient field.
    #[arg(long, global = true, default_value = "Q", value_parser = ["Q", "Fp"])]
    field: String,
    /// Characteristic for `--field Fp`.
    #[arg(short = 'p', global = true)]
    prime: Option<u64>,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Degree bound for relations; defaults to the certified generation degree.
    #[arg(long, global = true)]
    relation_degree: Option<usize>,
    /// Register named polytopes from a JSON file (object or list).
    #[arg(long, global = true)]
    load: Vec<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Polytopes and their semigroup data.
    #[command(subcommand)]
    Poly(poly::PolyCommand),
    /// Graded homomorphisms.
    #[command(subcommand)]
    Hom(hom::HomCommand),
    /// Automorphisms: elementary, toric and normal forms.
    #[command(subcommand)]
    Auto(auto::AutoCommand),
    /// Retractions and the tame constructors.
    #[command(subcommand)]
    Tame(tame::TameCommand),
    /// Run the acceptance checks.
    Verify {
        /// Print a text table instead of JSON.
        #[arg(long)]
        table: bool,
    },
}

fn session(cli: &Cli) -> CliResult<Session> {
    let field = Field::parse(&cli.field, cli.prime)?;
    let mut s = Session::new(field, cli.seed, cli.relation_degree);
    for file in &cli.load {
        s.load(file)?;
    }
    Ok(s)
}

fn dispatch(cli: &Cli) -> CliResult<Value> {
    let s = session(cli)?;
    match &cli.command {
        Command::Poly(c) => poly::run(c, &s),
        Command::Hom(c) => hom::run(c, &s),
        Command::Auto(c) => auto::run(c, &s),
        Command::Tame(c) => tame::run(c, &s),
        Command::Verify { table } => {
            let reports = run_all(s.seed);
            let passed = reports.iter().all(|r| r.passed);
            if *table {
                let lines: Vec<String> = reports.iter().map(ToString::to_string).collect();
                Ok(Value::String(lines.join("\n")))
            } else {
                Ok(json!({"seed": s.seed, "passed": passed, "criteria": reports}))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let err = CliError::usage("UsageError", e.to_string().trim_end());
            println!("{}", err.to_json());
            return ExitCode::from(1);
        }
    };
    match dispatch(&cli) {
        Ok(Value::String(text)) => {
            println!("{text}");
            ExitCode::SUCCESS
        }
        Ok(value) => {
            println!("{}", serde_json::to_string(&value).expect("json"));
            ExitCode::SUCCESS
        }
        Err(e) => {
            println!("{}", e.to_json());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
