use lambert_tsallis::{RootRecord, RootSet, WqResult};
use num_complex::Complex64;
use serde::Serialize;
use std::io::Write;
use std::path::Path;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Serialize, Debug)]
pub struct OutputEnvelope {
    pub schema_version: &'static str,
    pub command: String,
    pub inputs: serde_json::Value,
    pub results: serde_json::Value,
    pub warnings: Vec<String>,
}

#[derive(Serialize, Debug, Clone, Copy)]
pub struct Cplx {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for Cplx {
    fn from(z: Complex64) -> Self {
        // -0.0 prints as "-0.0"; keep output stable across sign-of-zero noise
        Cplx {
            re: z.re + 0.0,
            im: z.im + 0.0,
        }
    }
}

#[derive(Serialize, Debug)]
pub struct WqJson {
    pub w: Cplx,
    pub branch: String,
    pub iterations: usize,
    pub residual: f64,
}

impl From<&WqResult> for WqJson {
    fn from(r: &WqResult) -> Self {
        WqJson {
            w: r.w.into(),
            branch: r.branch.to_string(),
            iterations: r.iterations,
            residual: r.residual,
        }
    }
}

#[derive(Serialize, Debug)]
pub struct RootJson {
    pub re: f64,
    pub im: f64,
    pub residual: f64,
    pub formula: String,
    pub branch: Option<String>,
    pub is_real: bool,
}

impl From<&RootRecord> for RootJson {
    fn from(r: &RootRecord) -> Self {
        let x = Cplx::from(r.x);
        RootJson {
            re: x.re,
            im: x.im,
            residual: r.residual,
            formula: r.formula.to_string(),
            branch: r.wq_branch.map(|b| b.to_string()),
            is_real: r.is_real,
        }
    }
}

pub fn roots_json(set: &RootSet) -> serde_json::Value {
    let roots: Vec<RootJson> = set.roots.iter().map(RootJson::from).collect();
    serde_json::json!({ "roots": roots })
}

/// Twelve significant digits, `%.12g`-style but keeping trailing zeros:
/// fixed notation for decimal exponents in `[-5, 12)`, scientific otherwise.
pub fn sig12(x: f64) -> String {
    if !x.is_finite() {
        return String::new();
    }
    let x = x + 0.0;
    let sci = format!("{x:.11e}");
    let exp: i32 = sci[sci.find('e').unwrap() + 1..].parse().unwrap();
    if (-5..12).contains(&exp) {
        format!("{:.*}", (11 - exp) as usize, x)
    } else {
        sci
    }
}

pub fn csv_field(x: Option<f64>) -> String {
    x.map(sig12).unwrap_or_default()
}

/// Writes through a temporary file in the target directory and renames it
/// into place, so a failure never leaves a partial file behind.
pub fn write_atomic(path: &Path, contents: &str) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sig12_formats() {
        assert_eq!(sig12(2.0), "2.00000000000");
        assert_eq!(sig12(-2.0), "-2.00000000000");
        assert_eq!(sig12(0.0), "0.00000000000");
        assert_eq!(sig12(-0.0), "0.00000000000");
        assert_eq!(sig12(0.5), "0.500000000000");
        assert_eq!(sig12(-1.0 / std::f64::consts::E), "-0.367879441171");
        assert_eq!(sig12(123456.789), "123456.789000");
        assert_eq!(sig12(9.99999999999e11), "999999999999");
        assert_eq!(sig12(9.9999999999999e11), "1.00000000000e12");
        assert_eq!(sig12(1.5e-7), "1.50000000000e-7");
        assert_eq!(sig12(1.5e-5), "0.0000150000000000");
        assert_eq!(sig12(f64::NAN), "");
    }

    #[test]
    fn atomic_write_replaces_file() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("x.csv");
        write_atomic(&p, "a\n").unwrap();
        write_atomic(&p, "b\n").unwrap();
        assert_eq!(std::fs::read_to_string(&p).unwrap(), "b\n");
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
        assert!(write_atomic(&dir.path().join("missing/x.csv"), "a\n").is_err());
    }
}
