//! CSV data for the four figures: `W(z)` on both real branches, `W_q(z)`
//! for q = 3/4 and 5/3, and the Fibonacci-type `x(y)` sweeps.

use crate::args::PlotArgs;
use crate::output::{csv_field, write_atomic, OutputEnvelope, SCHEMA_VERSION};
use crate::{CliError, EXIT_ARGS, EXIT_IO};
use lambert_tsallis::expo::ZERO_Y_NOTE;
use lambert_tsallis::{branch_point, fibonacci_sweep, wq_eval_real, BranchLabel, QValue, WqError};

pub const DEFAULT_POINTS: u32 = 601;
pub const FIG2_Z_RANGE: (f64, f64) = (-0.6, 6.0);
pub const FIG3_Y_RANGE: (i64, i64) = (-500, 500);
pub const FIG4_Y_RANGE: (i64, i64) = (-20, 20);

struct Table {
    header: &'static str,
    rows: Vec<String>,
    warnings: Vec<String>,
}

impl Table {
    fn render(&self) -> String {
        let mut s = String::with_capacity(32 * (self.rows.len() + 1));
        s.push_str(self.header);
        s.push('\n');
        for r in &self.rows {
            s.push_str(r);
            s.push('\n');
        }
        s
    }
}

fn qv(q: f64) -> QValue {
    QValue::new(q).expect("figure q values are finite")
}

/// `n` evenly spaced points from `lo` to `hi`, both ends exact.
fn grid(lo: f64, hi: f64, n: u32) -> impl Iterator<Item = f64> {
    let step = (hi - lo) / f64::from(n - 1);
    (0..n).map(move |i| {
        if i + 1 == n {
            hi
        } else {
            lo + step * f64::from(i)
        }
    })
}

/// A cell value, or an empty field. Out-of-domain is expected; anything
/// else is reported.
fn cell(q: f64, z: f64, branch: BranchLabel, warnings: &mut Vec<String>) -> Option<f64> {
    match wq_eval_real(qv(q), z, branch) {
        Ok(r) => Some(r.w.re),
        Err(WqError::Domain { .. }) => None,
        Err(e) => {
            warnings.push(format!("q = {q}, z = {z}, {branch}: {e}"));
            None
        }
    }
}

fn z_range(args: &PlotArgs, default: (f64, f64)) -> Result<(f64, f64, u32), CliError> {
    let lo = args.z_min.unwrap_or(default.0);
    let hi = args.z_max.unwrap_or(default.1);
    if lo >= hi {
        return Err(CliError::new(
            EXIT_ARGS,
            "argument",
            format!("z_min {lo} must be below z_max {hi}"),
        ));
    }
    Ok((lo, hi, args.points.unwrap_or(DEFAULT_POINTS)))
}

fn figure1(args: &PlotArgs) -> Result<Table, CliError> {
    let z_b = branch_point(qv(1.0)).z_b;
    let (lo, hi, n) = z_range(args, (z_b, 6.0))?;
    let mut warnings = Vec::new();
    let rows = grid(lo, hi, n)
        .map(|z| {
            let w0 = cell(1.0, z, BranchLabel::Principal, &mut warnings);
            let wm1 = if z < 0.0 {
                cell(1.0, z, BranchLabel::Secondary, &mut warnings)
            } else {
                None
            };
            format!(
                "{},{},{}",
                csv_field(Some(z)),
                csv_field(w0),
                csv_field(wm1)
            )
        })
        .collect();
    Ok(Table {
        header: "z,w0,wm1",
        rows,
        warnings,
    })
}

fn figure2(args: &PlotArgs) -> Result<Table, CliError> {
    let (lo, hi, n) = z_range(args, FIG2_Z_RANGE)?;
    let mut warnings = Vec::new();
    let rows = grid(lo, hi, n)
        .map(|z| {
            let a = cell(0.75, z, BranchLabel::Principal, &mut warnings);
            let b = cell(5.0 / 3.0, z, BranchLabel::Principal, &mut warnings);
            format!("{},{},{}", csv_field(Some(z)), csv_field(a), csv_field(b))
        })
        .collect();
    Ok(Table {
        header: "z,w_q0.75,w_q1.6667",
        rows,
        warnings,
    })
}

fn sweep(args: &PlotArgs, default: (i64, i64)) -> Result<Table, CliError> {
    let lo = args.y_min.unwrap_or(default.0);
    let hi = args.y_max.unwrap_or(default.1);
    let rows =
        fibonacci_sweep(lo, hi).map_err(|e| CliError::new(EXIT_ARGS, "argument", e.to_string()))?;
    let mut warnings = Vec::new();
    let rows = rows
        .into_iter()
        .filter(|r| args.include_zero || r.y != 0)
        .map(|r| {
            let x = match r.x {
                Ok(x) => Some(x),
                Err(e) => {
                    warnings.push(format!("y = {}: {e}", r.y));
                    None
                }
            };
            format!("{},{}", r.y, csv_field(x))
        })
        .collect();
    if args.include_zero && lo <= 0 && 0 <= hi {
        warnings.push(ZERO_Y_NOTE.to_string());
    }
    Ok(Table {
        header: "y,x",
        rows,
        warnings,
    })
}

pub fn plot_data(args: &PlotArgs) -> Result<OutputEnvelope, CliError> {
    let table = match args.figure {
        1 => figure1(args)?,
        2 => figure2(args)?,
        3 => sweep(args, FIG3_Y_RANGE)?,
        4 => sweep(args, FIG4_Y_RANGE)?,
        f => {
            return Err(CliError::new(
                EXIT_ARGS,
                "argument",
                format!("unknown figure {f}"),
            ))
        }
    };
    write_atomic(&args.out, &table.render())
        .map_err(|e| CliError::new(EXIT_IO, "io", format!("{}: {e}", args.out.display())))?;
    Ok(OutputEnvelope {
        schema_version: SCHEMA_VERSION,
        command: "plot-data".to_string(),
        inputs: serde_json::to_value(args).expect("inputs serialise"),
        results: serde_json::json!({
            "figure": args.figure,
            "columns": table.header.split(',').collect::<Vec<_>>(),
            "rows": table.rows.len(),
            "path": args.out.display().to_string(),
        }),
        warnings: table.warnings,
    })
}
