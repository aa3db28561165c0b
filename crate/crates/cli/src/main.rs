mod dot;
mod report;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use stone_core::conformance::{sweep_theorem, SuiteTag, SweepConfig, SweepReport};
use stone_core::document::{Instance, InstanceDocument};
use stone_core::lattice::MAX_ELEMENTS_ENV;

#[derive(Parser)]
#[command(name = "stone", version, about = "Ideal-lattice inclusions, prime spectra and quasi-orbit spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the condition report of an instance document.
    Analyze {
        file: PathBuf,
        /// Machine-readable output.
        #[arg(long)]
        json: bool,
    },
    /// Write the prime spectra and quasi-orbit space as a DOT digraph.
    Spectrum {
        file: PathBuf,
        #[arg(long, value_name = "OUT")]
        dot: PathBuf,
    },
    /// Run a conformance suite.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Instances for sampled suites.
        #[arg(long, default_value_t = 1000)]
        budget: usize,
        /// Exit 2 on any violation.
        #[arg(long)]
        assert: bool,
        #[arg(long)]
        json: bool,
    },
}

/// Prints to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

/// An input error, already formatted with its location.
struct InputError(String);

/// 1-based line of the first `"field":` key, or of the `"kind"` key.
fn field_line(text: &str, field: &str) -> usize {
    let key = format!("\"{field}\"");
    let find = |key: &str| {
        text.lines().position(|line| {
            line.match_indices(key)
                .any(|(at, _)| line[at + key.len()..].trim_start().starts_with(':'))
        })
    };
    find(&key).or_else(|| find("\"kind\"")).map_or(1, |k| k + 1)
}

fn load(path: &Path) -> Result<(InstanceDocument, Instance, String), InputError> {
    let shown = path.display();
    let text = std::fs::read_to_string(path).map_err(|e| InputError(format!("{shown}: {e}")))?;
    let doc = InstanceDocument::from_json(&text)
        .map_err(|e| {
            let msg = e.to_string();
            let msg = msg.rsplit_once(" at line ").map_or(msg.as_str(), |(m, _)| m).to_string();
            InputError(format!("{shown}:{}:{}: {msg}", e.line(), e.column()))
        })?;
    let instance = doc
        .build()
        .map_err(|e| InputError(format!("{shown}:{}: {e}", field_line(&text, e.field))))?;
    Ok((doc, instance, text))
}

fn analyze(file: &Path, json: bool) -> Result<(), InputError> {
    let (doc, instance, text) = load(file)?;
    let report = report::analyze(doc.name.clone(), &instance)
        .map_err(|e| InputError(format!("{}:{}: {e}", file.display(), field_line(&text, "kind"))))?;
    if json {
        emit(&format!("{}\n", serde_json::to_string_pretty(&report).expect("reports serialize")));
    } else {
        emit(&report.to_text());
    }
    Ok(())
}

fn spectrum(file: &Path, out: &Path) -> Result<(), InputError> {
    let (_, instance, text) = load(file)?;
    let rendered = dot::render(&instance)
        .map_err(|e| InputError(format!("{}:{}: {e}", file.display(), field_line(&text, "kind"))))?;
    std::fs::write(out, rendered).map_err(|e| InputError(format!("{}: {e}", out.display())))?;
    Ok(())
}

fn summary(r: &SweepReport) -> String {
    format!(
        "{}: {} instances, {} checked, {} skipped, {} violations (seed {}, budget {})",
        r.suite, r.instances, r.checked, r.skipped, r.violations, r.seed, r.budget
    )
}

fn verify(suite: &str, config: SweepConfig, assert: bool, json: bool) -> Result<ExitCode, InputError> {
    let tag: SuiteTag = suite.parse().map_err(|e: stone_core::Error| InputError(e.to_string()))?;
    let (report, failed) = match sweep_theorem(tag, config) {
        Ok(r) => (r, false),
        Err(e) => (*e.report, true),
    };
    if json {
        emit(&format!("{}\n", serde_json::to_string_pretty(&report).expect("reports serialize")));
    } else {
        emit(&format!("{}\n", summary(&report)));
        if let Some(c) = &report.counterexample {
            emit(&format!("counterexample: {}\n", c.description));
            emit(&format!("{}\n", serde_json::to_string_pretty(c).expect("reports serialize")));
        }
    }
    Ok(if failed && assert { ExitCode::from(2) } else { ExitCode::SUCCESS })
}

fn check_env() -> Result<(), InputError> {
    match std::env::var(MAX_ELEMENTS_ENV) {
        Ok(v) if !v.trim().parse::<usize>().is_ok_and(|n| n > 0) => Err(InputError(format!(
            "{MAX_ELEMENTS_ENV} must be a positive integer, got \"{v}\""
        ))),
        _ => Ok(()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = check_env().and_then(|()| match cli.command {
        Command::Analyze { file, json } => analyze(&file, json).map(|()| ExitCode::SUCCESS),
        Command::Spectrum { file, dot } => spectrum(&file, &dot).map(|()| ExitCode::SUCCESS),
        Command::Verify {
            suite,
            seed,
            budget,
            assert,
            json,
        } => verify(&suite, SweepConfig { seed, budget }, assert, json),
    });
    match result {
        Ok(code) => code,
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
