use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use cocyclelab_cli::{explain, parse_spec, run, RunOptions, TaskKind, WitnessMode};

#[derive(Parser)]
#[command(name = "cocyclelab", version, about = "Cohomology of groups with coefficients in finite-dimensional modules")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Witnesses {
    Auto,
    All,
    None,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and resolve a problem document without running it.
    Validate { file: PathBuf },
    /// Run every task of a problem document.
    Run {
        file: PathBuf,
        /// Stop at the first task that does not pass.
        #[arg(long)]
        fail_fast: bool,
        /// Run product tasks even when a hypothesis gate fails.
        #[arg(long)]
        force: bool,
        /// Override the document's tolerance.
        #[arg(long)]
        tol: Option<f64>,
        /// Write the machine report here (`-` for stdout).
        #[arg(long)]
        json: Option<PathBuf>,
        /// Which witnesses to include in the machine report.
        #[arg(long, value_enum, default_value = "auto")]
        witnesses: Witnesses,
        /// Execute tasks one at a time.
        #[arg(long)]
        sequential: bool,
    },
    /// Describe a task type, or list them all.
    Explain { task: Option<String> },
}

fn load(file: &PathBuf) -> Result<Result<cocyclelab_cli::ProblemSpec, Vec<cocyclelab_cli::SchemaError>>> {
    let doc = std::fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;
    Ok(parse_spec(&doc))
}

fn report_schema_errors(errors: &[cocyclelab_cli::SchemaError]) -> ExitCode {
    for e in errors {
        eprintln!("schema error at {e}");
    }
    ExitCode::from(2)
}

fn main() -> Result<ExitCode> {
    let cli = Cli::parse();
    match cli.command {
        Command::Validate { file } => match load(&file)? {
            Ok(spec) => {
                println!(
                    "ok: {} groups, {} subgroups, {} measures, {} representations, {} cocycles, {} actions, {} tasks",
                    spec.groups.len(),
                    spec.subgroups.len(),
                    spec.measures.len(),
                    spec.representations.len(),
                    spec.cocycles.len(),
                    spec.actions.len(),
                    spec.tasks.len()
                );
                Ok(ExitCode::SUCCESS)
            }
            Err(errors) => Ok(report_schema_errors(&errors)),
        },
        Command::Run { file, fail_fast, force, tol, json, witnesses, sequential } => {
            let mut spec = match load(&file)? {
                Ok(spec) => spec,
                Err(errors) => return Ok(report_schema_errors(&errors)),
            };
            if let Some(tol) = tol {
                if !(tol.is_finite() && tol > 0.0) {
                    bail!("--tol must be a positive finite number");
                }
                spec.options.tol = tol;
            }
            spec.options.force |= force;
            let witnesses = match witnesses {
                Witnesses::Auto => WitnessMode::Auto,
                Witnesses::All => WitnessMode::All,
                Witnesses::None => WitnessMode::None,
            };
            let report = run(&spec, RunOptions { fail_fast, sequential, witnesses });
            match json.as_deref() {
                Some(p) if p.as_os_str() == "-" => print!("{}", report.to_json()),
                Some(p) => {
                    std::fs::write(p, report.to_json()).with_context(|| format!("writing {}", p.display()))?;
                    print!("{}", report.to_text());
                }
                None => print!("{}", report.to_text()),
            }
            Ok(ExitCode::from(report.exit_code() as u8))
        }
        Command::Explain { task: None } => {
            for k in TaskKind::ALL {
                println!("{:<26} {}", k.name(), explain::explain(*k).statement);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Explain { task: Some(name) } => {
            let Some(kind) = TaskKind::from_name(&name) else {
                bail!("unknown task `{name}`; run `cocyclelab explain` for the list");
            };
            print!("{}", explain::render(kind));
            Ok(ExitCode::SUCCESS)
        }
    }
}
