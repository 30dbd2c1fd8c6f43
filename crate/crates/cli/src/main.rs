use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};
use zipsections_cli::emit::{emit, Format};
use zipsections_cli::problem::{ProblemSpec, Task};
use zipsections_cli::run::{run, Settings};

/// Sections of automorphic vector bundles on stacks of G-zips.
#[derive(Parser)]
#[command(version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Problem file (JSON); `-` reads standard input.
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Output format; overrides `options.format` in the file (default json).
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Seed for every random sample.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Degree of the sampling field and of explicit L_φ scalars.
    #[arg(long, global = true)]
    field_degree: Option<u32>,
}

#[derive(Subcommand, Clone, Copy)]
enum Command {
    /// Derived constants of the zip datum and the L_φ description.
    Describe,
    /// Global sections H⁰ of a representation.
    H0,
    /// Morphisms between two bundles.
    Hom,
    /// E-orbits with closure order.
    Orbits,
    /// Saturated-cone membership for U(2,1).
    Cone,
    /// Run the acceptance suite.
    Selftest,
}

impl Command {
    fn task(self) -> Task {
        match self {
            Command::Describe => Task::Describe,
            Command::H0 => Task::H0,
            Command::Hom => Task::Hom,
            Command::Orbits => Task::Orbits,
            Command::Cone => Task::Cone,
            Command::Selftest => Task::Selftest,
        }
    }
}

fn read_input(path: &PathBuf) -> anyhow::Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        return Ok(s);
    }
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let task = cli.command.task();
    let result = (|| -> anyhow::Result<(String, bool)> {
        let mut spec = match &cli.input {
            Some(p) => ProblemSpec::from_json(&read_input(p)?)?,
            None if task == Task::Selftest => ProblemSpec::selftest(),
            None => anyhow::bail!("--input is required for {}", task.name()),
        };
        if let Some(d) = cli.field_degree {
            spec.field_degree = Some(d);
        }
        let settings = Settings { seed: cli.seed, field_degree: spec.field_degree };
        let doc = run(&spec, task, settings)?;
        let ok = doc.get("passed").and_then(|v| v.as_bool()).unwrap_or(true);
        let format = cli.format.or(spec.format).unwrap_or(Format::Json);
        Ok((emit(&doc, format), ok))
    })();
    match result {
        Ok((text, ok)) => {
            print!("{text}");
            if ok { ExitCode::SUCCESS } else { ExitCode::FAILURE }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
