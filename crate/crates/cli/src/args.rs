use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(
    name = "wq",
    version,
    about = "Lambert-Tsallis W_q evaluation and equation solving"
)]
#[command(allow_negative_numbers = true)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate W_q(z) on a real branch, or every solution found for `all`.
    Eval(EvalArgs),
    /// Solve a trinomial, Fermat-type or Fibonacci-type equation.
    Solve {
        #[command(subcommand)]
        problem: SolveCommand,
    },
    /// Write the data behind one of the four figures as CSV.
    PlotData(PlotArgs),
}

#[derive(Args, Debug, Serialize)]
#[command(allow_negative_numbers = true)]
pub struct EvalArgs {
    #[arg(long, value_parser = finite)]
    pub q: f64,
    /// `re` or `re,im`.
    #[arg(long, value_parser = parse_z)]
    #[serde(serialize_with = "ser_complex")]
    pub z: Complex64,
    /// Defaults to `principal` for real z and `all` for complex z.
    #[arg(long, value_enum)]
    pub branch: Option<BranchArg>,
    /// Residual tolerance, relative to max(1, |z|).
    #[arg(long, value_parser = positive)]
    pub tol: Option<f64>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BranchArg {
    Principal,
    Secondary,
    All,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(untagged)]
pub enum SolveCommand {
    /// a x^α + b x^β + c = 0
    #[command(allow_negative_numbers = true)]
    Trinomial {
        #[arg(long, value_parser = finite)]
        a: f64,
        #[arg(long, value_parser = finite)]
        alpha: f64,
        #[arg(long, value_parser = finite)]
        b: f64,
        #[arg(long, value_parser = finite)]
        beta: f64,
        #[arg(long, value_parser = finite)]
        c: f64,
        /// Residual tolerance for the inner W_q evaluations.
        #[arg(long, value_parser = positive)]
        tol: Option<f64>,
    },
    /// A^x + B^x = C^x
    #[command(allow_negative_numbers = true)]
    Fermat {
        #[arg(long = "A", value_parser = finite)]
        #[serde(rename = "A")]
        a: f64,
        #[arg(long = "B", value_parser = finite)]
        #[serde(rename = "B")]
        b: f64,
        #[arg(long = "C", value_parser = finite)]
        #[serde(rename = "C")]
        c: f64,
    },
    /// φ^x - φ̄^x = y √5
    #[command(allow_negative_numbers = true)]
    Fibonacci {
        #[arg(long, value_parser = finite)]
        y: f64,
    },
}

#[derive(Args, Debug, Serialize)]
#[command(allow_negative_numbers = true)]
pub struct PlotArgs {
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4))]
    pub figure: u8,
    #[arg(long)]
    pub out: std::path::PathBuf,
    /// Figures 3 and 4: include the y = 0 row.
    #[arg(long, conflicts_with = "skip_zero")]
    pub include_zero: bool,
    /// Figures 3 and 4: omit the y = 0 row (default).
    #[arg(long)]
    pub skip_zero: bool,
    /// Figures 1 and 2: number of z samples.
    #[arg(long, value_parser = clap::value_parser!(u32).range(2..=1_000_000))]
    pub points: Option<u32>,
    #[arg(long, value_parser = finite)]
    pub z_min: Option<f64>,
    #[arg(long, value_parser = finite)]
    pub z_max: Option<f64>,
    #[arg(long)]
    pub y_min: Option<i64>,
    #[arg(long)]
    pub y_max: Option<i64>,
}

fn ser_complex<S: serde::Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
    crate::output::Cplx::from(*z).serialize(s)
}

fn finite(s: &str) -> Result<f64, String> {
    let v: f64 = s
        .trim()
        .parse()
        .map_err(|e| format!("`{s}` is not a number: {e}"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("`{s}` is not finite"))
    }
}

fn positive(s: &str) -> Result<f64, String> {
    let v = finite(s)?;
    if v > 0.0 {
        Ok(v)
    } else {
        Err(format!("`{s}` must be positive"))
    }
}

pub fn parse_z(s: &str) -> Result<Complex64, String> {
    match s.split_once(',') {
        Some((re, im)) => Ok(Complex64::new(finite(re)?, finite(im)?)),
        None => Ok(Complex64::new(finite(s)?, 0.0)),
    }
}
