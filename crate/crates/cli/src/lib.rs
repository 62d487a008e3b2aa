//! `wq` command-line front end. [`run`] parses arguments, prints one JSON
//! envelope on stdout for a successful command, and returns the exit code.
//!
//! | code | meaning                                            |
//! |------|----------------------------------------------------|
//! | 0    | success (an empty verified root set is a success)  |
//! | 2    | argument error                                     |
//! | 3    | domain, branch or degeneracy error                 |
//! | 4    | iteration did not converge                         |
//! | 5    | I/O failure                                        |

pub mod args;
pub mod figures;
pub mod output;

use args::{BranchArg, Cli, Command, EvalArgs, SolveCommand};
use clap::Parser;
use lambert_tsallis::{
    solve_fermat, solve_fibonacci, trinomial::solve_trinomial_with, BranchLabel, ExpoError,
    FermatProblem, QValue, Trinomial, TrinomialError, WqError, WqSolver,
};
use output::{roots_json, OutputEnvelope, WqJson, SCHEMA_VERSION};
use std::ffi::OsString;
use std::io::Write;

pub const EXIT_OK: i32 = 0;
pub const EXIT_ARGS: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_NO_CONVERGENCE: i32 = 4;
pub const EXIT_IO: i32 = 5;

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub kind: &'static str,
    pub message: String,
}

impl CliError {
    pub(crate) fn new(code: i32, kind: &'static str, message: impl Into<String>) -> Self {
        CliError {
            code,
            kind,
            message: message.into(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::json!({
            "error": { "kind": self.kind, "message": self.message, "exit_code": self.code }
        })
        .to_string()
    }
}

impl From<WqError> for CliError {
    fn from(e: WqError) -> Self {
        let (code, kind) = match e {
            WqError::NoConvergence { .. } | WqError::EmptyResult { .. } => {
                (EXIT_NO_CONVERGENCE, "no_convergence")
            }
            WqError::NonFinite => (EXIT_ARGS, "argument"),
            WqError::BranchUnavailable(_) => (EXIT_DOMAIN, "branch_unavailable"),
            _ => (EXIT_DOMAIN, "domain"),
        };
        CliError::new(code, kind, e.to_string())
    }
}

impl From<TrinomialError> for CliError {
    fn from(e: TrinomialError) -> Self {
        match e {
            TrinomialError::Invalid(_) => CliError::new(EXIT_ARGS, "argument", e.to_string()),
            _ => CliError::new(EXIT_DOMAIN, "degenerate", e.to_string()),
        }
    }
}

impl From<ExpoError> for CliError {
    fn from(e: ExpoError) -> Self {
        match e {
            ExpoError::Invalid(_) | ExpoError::Range(_) => {
                CliError::new(EXIT_ARGS, "argument", e.to_string())
            }
            ExpoError::Trinomial(t) => t.into(),
            _ => CliError::new(EXIT_DOMAIN, "degenerate", e.to_string()),
        }
    }
}

/// Runs one invocation; returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return EXIT_OK;
            }
            let text = e.to_string();
            let first = text.lines().next().unwrap_or_default();
            let err = CliError::new(EXIT_ARGS, "argument", first.trim_start_matches("error: "));
            eprintln!("{}", err.to_json());
            return err.code;
        }
    };
    match execute(&cli.command) {
        Ok(env) => {
            let text = serde_json::to_string_pretty(&env).expect("envelope serialises");
            let mut out = std::io::stdout().lock();
            if writeln!(out, "{text}").and_then(|_| out.flush()).is_err() {
                return EXIT_IO;
            }
            EXIT_OK
        }
        Err(err) => {
            eprintln!("{}", err.to_json());
            err.code
        }
    }
}

/// Runs a parsed command and builds its envelope.
pub fn execute(command: &Command) -> Result<OutputEnvelope, CliError> {
    match command {
        Command::Eval(a) => eval(a),
        Command::Solve { problem } => solve(problem),
        Command::PlotData(a) => figures::plot_data(a),
    }
}

fn envelope(
    command: &str,
    inputs: impl serde::Serialize,
    results: serde_json::Value,
    warnings: Vec<String>,
) -> OutputEnvelope {
    OutputEnvelope {
        schema_version: SCHEMA_VERSION,
        command: command.to_string(),
        inputs: serde_json::to_value(inputs).expect("inputs serialise"),
        results,
        warnings,
    }
}

fn eval(a: &EvalArgs) -> Result<OutputEnvelope, CliError> {
    let q = QValue::new(a.q).map_err(|e| CliError::new(EXIT_ARGS, "argument", e.to_string()))?;
    let solver = a.tol.map_or_else(WqSolver::default, WqSolver::with_tol);
    let complex = a.z.im != 0.0;
    let branch = a.branch.unwrap_or(if complex {
        BranchArg::All
    } else {
        BranchArg::Principal
    });
    let results = match branch {
        BranchArg::All => solver.eval_complex(q, a.z)?,
        BranchArg::Principal | BranchArg::Secondary if complex => {
            return Err(CliError::new(
                EXIT_ARGS,
                "argument",
                "real branches take a real z; use --branch all for complex z",
            ))
        }
        BranchArg::Principal => vec![solver.eval_real(q, a.z.re, BranchLabel::Principal)?],
        BranchArg::Secondary => vec![solver.eval_real(q, a.z.re, BranchLabel::Secondary)?],
    };
    let results: Vec<WqJson> = results.iter().map(WqJson::from).collect();
    let mut inputs = serde_json::to_value(a).expect("inputs serialise");
    inputs["branch"] = serde_json::to_value(branch).expect("branch serialises");
    Ok(envelope(
        "eval",
        inputs,
        serde_json::json!(results),
        Vec::new(),
    ))
}

fn solve(problem: &SolveCommand) -> Result<OutputEnvelope, CliError> {
    let (name, set) = match *problem {
        SolveCommand::Trinomial {
            a,
            alpha,
            b,
            beta,
            c,
            tol,
        } => {
            let t = Trinomial::new(a, alpha, b, beta, c)?;
            let solver = tol.map_or_else(WqSolver::default, WqSolver::with_tol);
            ("solve trinomial", solve_trinomial_with(&solver, &t)?)
        }
        SolveCommand::Fermat { a, b, c } => {
            let p = FermatProblem::new(a, b, c)?;
            ("solve fermat", empty_if_unverified(solve_fermat(&p))?)
        }
        SolveCommand::Fibonacci { y } => {
            ("solve fibonacci", empty_if_unverified(solve_fibonacci(y))?)
        }
    };
    let mut warnings = set.notes.clone();
    if set.is_empty() {
        warnings.push("no candidate root passed verification".to_string());
    }
    Ok(envelope(name, problem, roots_json(&set), warnings))
}

/// An empty verified set is a result, not an error.
fn empty_if_unverified(
    r: Result<lambert_tsallis::RootSet, ExpoError>,
) -> Result<lambert_tsallis::RootSet, ExpoError> {
    match r {
        Err(ExpoError::NoRootFound) => Ok(lambert_tsallis::RootSet::default()),
        other => other,
    }
}
