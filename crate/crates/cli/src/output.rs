//! Output rendering: deterministic CSV (scientific notation, 13 significant
//! digits), JSON, and optional gnuplot companion scripts.

use anyhow::{Context, Result};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn parse(text: &str) -> Option<Format> {
        match text {
            "csv" => Some(Format::Csv),
            "json" => Some(Format::Json),
            _ => None,
        }
    }
}

/// Fixed-precision scientific rendering used by every CSV column.
pub fn sci(x: f64) -> String {
    format!("{x:.12e}")
}

/// A rectangular result: column names and rows of already-rendered cells.
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => {
                let mut out = String::new();
                let _ = writeln!(out, "{}", self.columns.join(","));
                for row in &self.rows {
                    let _ = writeln!(out, "{}", row.join(","));
                }
                out
            }
            Format::Json => {
                let rows: Vec<serde_json::Map<String, serde_json::Value>> = self
                    .rows
                    .iter()
                    .map(|row| {
                        self.columns
                            .iter()
                            .cloned()
                            .zip(row.iter().map(|cell| {
                                // numbers stay numbers in JSON when they parse
                                match cell.parse::<f64>() {
                                    Ok(v) if !cell.starts_with('"') => serde_json::Value::from(v),
                                    _ => serde_json::Value::from(cell.clone()),
                                }
                            }))
                            .collect()
                    })
                    .collect();
                let mut text = serde_json::to_string_pretty(&rows).expect("rows serialize to JSON");
                text.push('\n');
                text
            }
        }
    }
}

/// Write to the path or standard output.
pub fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)
            .with_context(|| format!("writing output to {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Companion gnuplot script next to a data file: `<out>.gp`.
pub fn write_gnuplot(out: &Path, x_column: &str, y_column: &str, logscale: bool) -> Result<()> {
    let data = out
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| out.display().to_string());
    let mut script = String::new();
    let _ = writeln!(script, "set datafile separator ','");
    let _ = writeln!(script, "set key autotitle columnhead");
    let _ = writeln!(script, "set xlabel '{x_column}'");
    let _ = writeln!(script, "set ylabel '{y_column}'");
    if logscale {
        let _ = writeln!(script, "set logscale y");
    }
    let _ = writeln!(script, "plot '{data}' using 1:2 with lines");
    let mut path = PathBuf::from(out);
    let mut name = path
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_default();
    name.push_str(".gp");
    path.set_file_name(name);
    std::fs::write(&path, script)
        .with_context(|| format!("writing gnuplot script to {}", path.display()))
}
