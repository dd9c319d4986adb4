//! `dkb`: satisfiability, entailment and model reports for defeasible
//! DL-Lite_R knowledge bases.

mod check;

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use dkb_core::asp::EngineError;
use dkb_core::frontend::{load_dkb, parse_query};
use dkb_core::kb::Dkb;
use dkb_core::oracle::OracleError;
use dkb_core::reasoner::{Reasoner, ReasonerError, ReasonerOptions};
use dkb_core::translator::{export_asp_text, translate_with, TranslateOptions};
use serde_json::json;
use thiserror::Error;

#[derive(Parser, Debug)]
#[command(name = "dkb", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Limit on ground `ovr` atoms guessed by the solver.
    #[arg(long, global = true, default_value_t = 20)]
    max_ovr: usize,
    /// Skolem nesting limit for the oracle.
    #[arg(long, global = true, default_value_t = 3)]
    depth_cap: usize,
    /// Let exceptions range over auxiliary constants too.
    #[arg(long, global = true)]
    ovr_on_aux: bool,
    /// Accept negative instance queries.
    #[arg(long, global = true)]
    extended_queries: bool,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exit 0 if the knowledge base has a justified model.
    CheckSat { input: PathBuf },
    /// Exit 0 if the query holds in every justified model.
    Entail {
        input: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        query: String,
    },
    /// List the exception set and derived assertions of every justified model.
    Models { input: PathBuf },
    /// Print the logic program for the knowledge base.
    Translate { input: PathBuf },
    /// Print the knowledge base in normal form.
    Normalize { input: PathBuf },
    /// Compare the reasoner with the brute-force oracle.
    OracleCheck { input: PathBuf },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Resource(String),
}

impl From<ReasonerError> for CliError {
    fn from(e: ReasonerError) -> Self {
        match e {
            ReasonerError::Engine(EngineError::ResourceLimit { .. }) => {
                CliError::Resource(e.to_string())
            }
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::DepthExceeded { .. } | OracleError::TooManyCandidates { .. } => {
                CliError::Resource(e.to_string())
            }
            other => CliError::Usage(other.to_string()),
        }
    }
}

/// What a command printed, and whether it answered yes.
struct Outcome {
    output: String,
    success: bool,
}

impl Cli {
    fn reasoner_options(&self) -> ReasonerOptions {
        ReasonerOptions {
            max_ovr: self.max_ovr,
            ovr_on_aux: self.ovr_on_aux,
            extended_queries: self.extended_queries,
            ..Default::default()
        }
    }
}

fn load(path: &PathBuf) -> Result<Dkb, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    load_dkb(&text).map_err(|e| {
        CliError::Usage(format!(
            "{}:{}:{}: {}",
            path.display(),
            e.line,
            e.column,
            e.message
        ))
    })
}

fn to_json(value: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let json = cli.format == Format::Json;
    match &cli.command {
        Command::CheckSat { input } => {
            let r = Reasoner::new(load(input)?, cli.reasoner_options())?;
            let sat = r.satisfiable();
            let output = if json {
                to_json(&json!({ "satisfiable": sat }))
            } else if sat {
                "satisfiable\n".to_string()
            } else {
                "unsatisfiable\n".to_string()
            };
            Ok(Outcome {
                output,
                success: sat,
            })
        }
        Command::Entail { input, query } => {
            let kb = load(input)?;
            let q = parse_query(query, &kb).map_err(|e| CliError::Usage(e.to_string()))?;
            let r = Reasoner::new(kb, cli.reasoner_options())?;
            let e = r.entails(&q)?;
            let output = if json {
                to_json(
                    &json!({ "query": q.to_string(), "entailed": e.entailed, "unsat": e.unsat }),
                )
            } else {
                let verdict = if e.entailed {
                    "entailed"
                } else {
                    "not entailed"
                };
                let note = if e.unsat { " (no justified model)" } else { "" };
                format!("{q}: {verdict}{note}\n")
            };
            Ok(Outcome {
                output,
                success: e.entailed,
            })
        }
        Command::Models { input } => {
            let kb = load(input)?;
            let r = Reasoner::new(kb.clone(), cli.reasoner_options())?;
            let report = r.report()?;
            let output = if json {
                to_json(&report)
            } else {
                let mut out = String::new();
                let models = r.justified_models()?;
                writeln!(out, "{} justified model(s)", models.len()).unwrap();
                for (i, m) in models.iter().enumerate() {
                    writeln!(out, "model {}", i + 1).unwrap();
                    let chi: Vec<String> = m.chi.iter().map(|ca| kb.describe(ca)).collect();
                    writeln!(out, "  exceptions: {{{}}}", chi.join(", ")).unwrap();
                    for a in &m.positives {
                        writeln!(out, "  {a}").unwrap();
                    }
                    for a in &m.negatives {
                        writeln!(out, "  {a}").unwrap();
                    }
                }
                out
            };
            Ok(Outcome {
                output,
                success: !report.models.is_empty(),
            })
        }
        Command::Translate { input } => {
            let options = TranslateOptions {
                ovr_on_aux: cli.ovr_on_aux,
                core_only: false,
                all_negatives: cli.extended_queries,
            };
            let program = translate_with(&load(input)?, options);
            let text = export_asp_text(&program);
            let output = if json {
                to_json(&json!({ "program": text }))
            } else {
                text
            };
            Ok(Outcome {
                output,
                success: true,
            })
        }
        Command::Normalize { input } => {
            let kb = load(input)?;
            let output = if json {
                let show = |axioms: &[dkb_core::kb::Axiom]| -> Vec<String> {
                    axioms.iter().map(ToString::to_string).collect()
                };
                to_json(&json!({
                    "strict": show(&kb.strict),
                    "defeasible": show(&kb.defeasible),
                }))
            } else {
                kb.to_string()
            };
            Ok(Outcome {
                output,
                success: true,
            })
        }
        Command::OracleCheck { input } => {
            let kb = load(input)?;
            let options = ReasonerOptions {
                extended_queries: true,
                ..cli.reasoner_options()
            };
            let result = check::compare(&kb, options, cli.depth_cap)?;
            let output = if json {
                to_json(&result)
            } else {
                result.render()
            };
            Ok(Outcome {
                output,
                success: result.disagreement.is_none(),
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            print!("{}", outcome.output);
            if outcome.success {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Resource(msg)) => {
            eprintln!("resource limit: {msg}");
            ExitCode::from(3)
        }
    }
}
