//! Benchmark cells and their text and JSON-lines renderings.

use std::fmt::Write as _;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::Result;

/// One (dataset, k, method) run of the benchmark grid.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchCell {
    pub dataset: String,
    pub k: usize,
    pub method: String,
    pub errors: usize,
    /// `100·errors/(m·n)` rounded half-up to two decimals.
    pub error_pct: f64,
    pub wall_ms: u64,
    pub m: usize,
    pub n: usize,
    /// Whether every solver call proved optimality.
    pub optimal: bool,
}

impl BenchCell {
    pub fn new(dataset: impl Into<String>, m: usize, n: usize, method: impl Into<String>, k: usize, errors: usize, wall_ms: u64) -> Self {
        BenchCell {
            dataset: dataset.into(),
            k,
            method: method.into(),
            errors,
            error_pct: error_pct_hundredths(errors, m * n) as f64 / 100.0,
            wall_ms,
            m,
            n,
            optimal: true,
        }
    }

    /// Percentage with exactly two decimals.
    pub fn error_pct_str(&self) -> String {
        format_error_pct(self.errors, self.m * self.n)
    }
}

/// `round_half_up(10000·errors/cells)`, i.e. the percentage in hundredths.
pub fn error_pct_hundredths(errors: usize, cells: usize) -> u64 {
    if cells == 0 {
        return 0;
    }
    let (e, c) = (errors as u128, cells as u128);
    ((20_000 * e + c) / (2 * c)) as u64
}

/// Error percentage as printed in tables: `63` of `2828` cells is `"2.23"`.
pub fn format_error_pct(errors: usize, cells: usize) -> String {
    let h = error_pct_hundredths(errors, cells);
    format!("{}.{:02}", h / 100, h % 100)
}

const HEADERS: [&str; 6] = ["dataset", "k", "method", "errors", "error_pct", "wall_ms"];

/// Aligned text table with columns dataset, k, method, errors, error_pct,
/// wall_ms.
pub fn render_table(cells: &[BenchCell]) -> String {
    let rows: Vec<[String; 6]> = cells
        .iter()
        .map(|c| {
            [
                c.dataset.clone(),
                c.k.to_string(),
                c.method.clone(),
                c.errors.to_string(),
                c.error_pct_str(),
                c.wall_ms.to_string(),
            ]
        })
        .collect();
    let mut width = HEADERS.map(str::len);
    for r in &rows {
        for (w, s) in width.iter_mut().zip(r) {
            *w = (*w).max(s.len());
        }
    }
    let mut out = String::new();
    let mut line = |fields: [&str; 6]| {
        let mut s = String::new();
        for (i, f) in fields.iter().enumerate() {
            if i > 0 {
                s.push_str("  ");
            }
            // text columns left-aligned, numbers right-aligned
            if i == 0 || i == 2 {
                let _ = write!(s, "{:<w$}", f, w = width[i]);
            } else {
                let _ = write!(s, "{:>w$}", f, w = width[i]);
            }
        }
        out.push_str(s.trim_end());
        out.push('\n');
    };
    line(HEADERS);
    for r in &rows {
        line([&r[0], &r[1], &r[2], &r[3], &r[4], &r[5]].map(String::as_str));
    }
    out
}

/// One JSON object per cell, one per line.
pub fn write_jsonl<W: Write>(cells: &[BenchCell], w: &mut W) -> Result<()> {
    for c in cells {
        serde_json::to_writer(&mut *w, c)?;
        w.write_all(b"\n")?;
    }
    Ok(())
}

/// Text table and JSON lines for `cells`.
pub fn emit_report(cells: &[BenchCell]) -> Result<(String, String)> {
    let mut jsonl = Vec::new();
    write_jsonl(cells, &mut jsonl)?;
    Ok((render_table(cells), String::from_utf8(jsonl).expect("serde_json writes UTF-8")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn percentage_rounding() {
        assert_eq!(format_error_pct(63, 2828), "2.23");
        assert_eq!(format_error_pct(0, 2828), "0.00");
        assert_eq!(format_error_pct(2828, 2828), "100.00");
        assert_eq!(format_error_pct(274, 2828), "9.69");
        // exactly half a hundredth rounds up
        assert_eq!(format_error_pct(1, 20_000), "0.01");
        assert_eq!(format_error_pct(1, 20_001), "0.00");
        assert_eq!(format_error_pct(1, 8), "12.50");
    }

    #[test]
    fn table_layout() {
        let cells = vec![
            BenchCell::new("zoo", 101, 28, "rui", 3, 274, 12),
            BenchCell::new("zoo", 101, 28, "frui", 14, 63, 1500),
        ];
        let (text, jsonl) = emit_report(&cells).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 3);
        assert!(lines[0].starts_with("dataset"));
        assert!(lines[1].contains(" 9.69"));
        assert!(lines[2].contains(" 2.23"));
        assert_eq!(lines[1].find("9.69").map(|p| p + 4), lines[2].find("2.23").map(|p| p + 4));
        let back: Vec<BenchCell> = jsonl.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
        assert_eq!(back, cells);
        assert!(jsonl.starts_with("{\"dataset\":\"zoo\",\"k\":3,\"method\":\"rui\",\"errors\":274,\"error_pct\":9.69,"));
    }
}
