//! Deterministic CSV and JSON serialisation of sweep and search results.
//!
//! JSON floats use the shortest representation that parses back to the same
//! bits; CSV floats are written with 17 significant digits.

use std::fmt::Write;

use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::turan::{ConjectureRecord, InequalityReport};
use crate::yturan::XNuRecord;

/// 17 significant digits, or `NaN` / `inf` / `-inf`.
pub fn fmt_f64(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        format!("{v}")
    }
}

fn opt(v: Option<f64>) -> String {
    v.map(fmt_f64).unwrap_or_default()
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| Error::Parse(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

pub fn from_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

/// A result that has a CSV form.
pub trait CsvReport {
    fn to_csv(&self) -> String;
}

impl CsvReport for InequalityReport {
    /// One row per node, `ν`-major; `margin` is empty at skipped nodes.
    fn to_csv(&self) -> String {
        let mut rows: Vec<_> = self.points.iter().collect();
        rows.sort_by(|a, b| a.nu.total_cmp(&b.nu).then(a.x.total_cmp(&b.x)));
        let mut s = String::from("nu,x,margin,skipped_flag\n");
        for p in rows {
            let _ = writeln!(s, "{},{},{},{}", fmt_f64(p.nu), fmt_f64(p.x), opt(p.margin), p.skipped.is_some() as u8);
        }
        s
    }
}

impl CsvReport for ConjectureRecord {
    fn to_csv(&self) -> String {
        let mut s = String::from("nu,n,alpha,beta\n");
        for (i, (a, b)) in self.alphas.iter().zip(&self.betas).enumerate() {
            let _ = writeln!(s, "{},{},{},{}", fmt_f64(self.nu.value()), i + 1, fmt_f64(*a), fmt_f64(*b));
        }
        s
    }
}

impl CsvReport for XNuRecord {
    fn to_csv(&self) -> String {
        format!(
            "nu,x_nu,residual,bound_ok\n{},{},{},{}\n",
            fmt_f64(self.nu.value()),
            fmt_f64(self.x_nu),
            fmt_f64(self.residual),
            self.bound_ok as u8
        )
    }
}

/// `x,margin` columns for external plotting, one block per order headed by
/// a `# nu = ...` comment; skipped nodes are left out.
pub fn plot_data(r: &InequalityReport) -> String {
    let mut rows: Vec<_> = r.points.iter().filter(|p| p.margin.is_some()).collect();
    rows.sort_by(|a, b| a.nu.total_cmp(&b.nu).then(a.x.total_cmp(&b.x)));
    let mut s = String::from("x,margin\n");
    let mut current = None;
    for p in rows {
        if current != Some(p.nu.to_bits()) {
            if current.is_some() {
                s.push('\n');
            }
            let _ = writeln!(s, "# nu = {}", fmt_f64(p.nu));
            current = Some(p.nu.to_bits());
        }
        let _ = writeln!(s, "{},{}", fmt_f64(p.x), opt(p.margin));
    }
    s
}
