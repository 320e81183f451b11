use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use bornlab_core::catalog::{self, H15_NOTE};
use bornlab_core::exec::ExecMode;
use bornlab_core::model::parse_model;
use bornlab_core::report::{render_report, run_checks_with, Check, Format, Report, RunOptions, Status};
use bornlab_core::structures::CirclePoint;
use bornlab_core::Error;
use clap::{Args, Parser, Subcommand, ValueEnum};

/// Exact verification of Born, Kunneth and hypersymplectic structures on Lie algebras.
#[derive(Parser)]
#[command(name = "bornlab", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run checks on a JSON model file.
    Check {
        file: PathBuf,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Browse the built-in examples.
    Catalog {
        #[command(subcommand)]
        action: CatalogCommand,
    },
    /// Check one member of a circle family of Born structures.
    Family {
        /// Catalog entry carrying the family (only nil3_r has one).
        name: String,
        /// Rational parameter t = tan(theta/2).
        #[arg(long = "t", allow_hyphen_values = true, conflicts_with = "theta_pi", required_unless_present = "theta_pi")]
        t: Option<String>,
        /// Use theta = pi.
        #[arg(long)]
        theta_pi: bool,
        #[command(flatten)]
        run: RunArgs,
    },
}

#[derive(Subcommand)]
enum CatalogCommand {
    /// List entry names and summaries.
    List,
    /// Show an entry's provenance and its check report.
    Show {
        name: String,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// Print an entry as a model file.
    Export { name: String },
}

#[derive(Args)]
struct RunArgs {
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
    /// Comma-separated check names; defaults to the model's list or all checks.
    #[arg(long, value_delimiter = ',')]
    checks: Option<Vec<String>>,
    /// Record per-check wall time in the report.
    #[arg(long)]
    timings: bool,
    /// Evaluate checks on one thread.
    #[arg(long)]
    sequential: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

impl From<OutputFormat> for Format {
    fn from(f: OutputFormat) -> Self {
        match f {
            OutputFormat::Text => Format::Text,
            OutputFormat::Json => Format::Json,
        }
    }
}

enum Failure {
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

impl RunArgs {
    fn options(&self) -> Result<RunOptions, Failure> {
        let checks = match &self.checks {
            None => None,
            Some(names) => Some(
                names
                    .iter()
                    .map(|n| n.trim().parse::<Check>())
                    .collect::<Result<Vec<_>, _>>()?,
            ),
        };
        Ok(RunOptions {
            mode: if self.sequential {
                ExecMode::Sequential
            } else {
                ExecMode::Parallel
            },
            checks,
            timings: self.timings,
        })
    }
}

fn emit(report: &Report, format: OutputFormat) -> ExitCode {
    print!("{}", render_report(report, format.into()));
    match report.overall() {
        Status::Fail => ExitCode::from(1),
        _ => ExitCode::SUCCESS,
    }
}

fn run(cli: Cli) -> Result<ExitCode, Failure> {
    match cli.command {
        Command::Check { file, run } => {
            let text = fs::read_to_string(&file).map_err(|e| Failure::Input(format!("{}: {e}", file.display())))?;
            let model = parse_model(&text)?;
            let report = run_checks_with(&model, &run.options()?);
            Ok(emit(&report, run.format))
        }
        Command::Catalog { action } => match action {
            CatalogCommand::List => {
                let entries = catalog::list_entries();
                let w = entries.iter().map(|(n, _)| n.len()).max().unwrap_or(0);
                for (name, summary) in entries {
                    println!("{name:<w$}  {summary}");
                }
                println!("{:<w$}  no data: {H15_NOTE}", "h15_note");
                Ok(ExitCode::SUCCESS)
            }
            CatalogCommand::Show { name, format } => {
                if name == "h15_note" {
                    println!("{H15_NOTE}");
                    return Ok(ExitCode::SUCCESS);
                }
                let entry = catalog::get_entry(&name)?;
                let (report, mismatches) = catalog::validate_entry(&entry);
                if let OutputFormat::Json = format {
                    print!("{}", render_report(&report, Format::Json));
                } else {
                    println!("{}: {}", entry.name, entry.summary);
                    println!("provenance: {}", entry.provenance);
                    for (form, closed) in &entry.closed_forms {
                        println!("form {form}: expected {}", if *closed { "closed" } else { "not closed" });
                    }
                    print!("{}", render_report(&report, Format::Text));
                    for m in &mismatches {
                        println!("MISMATCH {} {}: expected {}, found {}", m.check, m.subject, m.expected, m.found);
                    }
                }
                Ok(if mismatches.is_empty() {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::from(1)
                })
            }
            CatalogCommand::Export { name } => {
                print!("{}", catalog::export_entry(&name)?);
                Ok(ExitCode::SUCCESS)
            }
        },
        Command::Family { name, t, theta_pi, run } => {
            let p = if theta_pi {
                CirclePoint::Pi
            } else {
                let t = t.expect("clap enforces --t or --theta-pi");
                CirclePoint::t(t.parse()?)
            };
            let model = catalog::family_model(&name, &p)?;
            let report = run_checks_with(&model, &run.options()?);
            Ok(emit(&report, run.format))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
