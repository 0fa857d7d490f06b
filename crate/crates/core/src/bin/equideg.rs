use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use equideg::chars::character_table;
use equideg::error::{Error, Result};
use equideg::par;
use equideg::pipeline::input::{load_group, load_hints, GroupJson};
use equideg::pipeline::{check_invariance, equivariant_euler_number, human_report, require_invariance, AnswerJson, InvarianceJson, ProblemSpec, SelfIntProblem};

#[derive(Parser)]
#[command(name = "equideg", version, about = "Exact equivariant Euler numbers in the representation ring of a finite group")]
struct Cli {
    /// Run every stage on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Euler number of a split bundle with a given invariant section.
    Compute {
        spec: PathBuf,
        /// Extra candidate zeros, as a list of coordinate lists.
        #[arg(long)]
        hints: Option<PathBuf>,
        /// Write the full answer as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Self-intersection of an equivariantly parametrized conic.
    Selfint {
        spec: PathBuf,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Character table of a group given by permutations or matrices.
    Chartable {
        group: PathBuf,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Invariance hypotheses only.
    Check { spec: PathBuf },
}

fn emit(text: &str, path: Option<&Path>) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    par::set_sequential(cli.sequential);
    match cli.command {
        Command::Compute { spec, hints, json } => {
            let mut problem = ProblemSpec::load(&spec)?;
            if let Some(h) = hints {
                problem = problem.with_hints(&load_hints(&h)?)?;
            }
            let answer = equivariant_euler_number(&problem)?;
            print!("{}", human_report(&problem, &answer));
            let out = AnswerJson::new(&problem, &answer);
            if let Some(p) = json {
                std::fs::write(p, out.to_pretty())?;
            }
            if !out.all_certificates_hold() {
                return Err(Error::Inconsistent("a certificate failed; see the JSON output".into()));
            }
        }
        Command::Selfint { spec, json } => {
            let report = SelfIntProblem::load(&spec)?.run()?;
            let text = report.to_pretty();
            emit(&text, json.as_deref())?;
            if json.is_some() {
                println!("value: {:?} over {:?}", report.value.coeffs, report.value.labels);
            }
        }
        Command::Chartable { group, json } => {
            let g: GroupJson = serde_json::from_str(&std::fs::read_to_string(&group)?)?;
            let table = character_table(load_group(&g)?.group)?;
            println!("{}", table.grid());
            let mut text = serde_json::to_string_pretty(&table.to_json())?;
            text.push('\n');
            emit(&text, json.as_deref())?;
        }
        Command::Check { spec } => {
            let problem = ProblemSpec::load(&spec)?;
            let inv = check_invariance(&problem)?;
            let out = InvarianceJson::new(&inv, problem.allow_ideal_stable);
            println!("{}", serde_json::to_string_pretty(&out)?);
            require_invariance(&problem, &inv)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
