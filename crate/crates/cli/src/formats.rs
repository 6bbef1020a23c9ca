//! File formats: cubic forms, Weil-polynomial lists, and count tables.
//!
//! Cubic files: one term per line `coeff e1 e2 e3 e4 e5 e6`, `#` comments,
//! optional `p=<prime>` header (default 2).
//!
//! Weil files: one polynomial per line, `q=<prime power>; c0,c1,...,c22`
//! with rational entries `a` or `a/b` ascending; with the KS flag the tail
//! is the degree-21 integer form instead.
//!
//! Count files: a `q=<prime power>` header line followed by `n count`
//! pairs, `#` comments ignored.

use std::path::Path;

use anyhow::{anyhow, Context, Result};
use nck3_core::counts::NcK3Counts;
use nck3_core::cubic::{parse_cubic, CubicForm};
use nck3_core::weil::{parse_weil_line, WeilPolynomial};
use num_bigint::BigInt;

pub fn read_cubic_file(path: &Path) -> Result<CubicForm> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading cubic file {}", path.display()))?;
    parse_cubic(&text).map_err(|e| anyhow!("{}: {}", path.display(), e))
}

/// One input line of a Weil-polynomial file: the 1-based line number and
/// either the parsed polynomial or the parse failure.
pub struct WeilEntry {
    pub line: usize,
    pub result: std::result::Result<WeilPolynomial, String>,
}

pub fn parse_weil_file(text: &str, ks: bool) -> Vec<WeilEntry> {
    let mut out = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        out.push(WeilEntry {
            line: idx + 1,
            result: parse_weil_line(trimmed, ks),
        });
    }
    out
}

pub fn read_weil_file(path: &Path, ks: bool) -> Result<Vec<WeilEntry>> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading Weil-polynomial file {}", path.display()))?;
    Ok(parse_weil_file(&text, ks))
}

pub fn parse_counts_text(text: &str) -> std::result::Result<NcK3Counts, String> {
    let mut q: Option<u64> = None;
    let mut counts = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        if let Some(val) = trimmed.strip_prefix("q=") {
            if q.is_some() {
                return Err(format!("line {line_no}: repeated q header"));
            }
            q = Some(
                val.trim()
                    .parse::<u64>()
                    .map_err(|_| format!("line {line_no}: invalid q `{}`", val.trim()))?,
            );
            continue;
        }
        let mut fields = trimmed.split_whitespace();
        let (Some(n), Some(c), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(format!("line {line_no}: expected `n count`"));
        };
        let n: u32 = n
            .parse()
            .map_err(|_| format!("line {line_no}: invalid extension `{n}`"))?;
        let c: BigInt = c
            .parse()
            .map_err(|_| format!("line {line_no}: invalid count `{c}`"))?;
        counts.push((n, c));
    }
    let q = q.ok_or_else(|| String::from("missing `q=<prime power>` header"))?;
    let mut table = NcK3Counts::new(q);
    for (n, c) in counts {
        table.counts.insert(n, c);
    }
    Ok(table)
}

pub fn read_counts_file(path: &Path) -> Result<NcK3Counts> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading counts file {}", path.display()))?;
    parse_counts_text(&text).map_err(|e| anyhow!("{}: {}", path.display(), e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_text_roundtrip() {
        let table = parse_counts_text("# comment\nq=2\n1 7\n2 13\n3 85\n").unwrap();
        assert_eq!(table.q, 2);
        assert_eq!(table.get(2), Some(&BigInt::from(13)));
        assert!(parse_counts_text("1 7\n").is_err(), "missing header");
        assert!(parse_counts_text("q=2\n1\n").is_err(), "arity");
    }

    #[test]
    fn weil_file_reports_bad_lines() {
        let text = "q=2; 1,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,1\nnot a line\n";
        let entries = parse_weil_file(text, false);
        assert_eq!(entries.len(), 2);
        assert!(entries[0].result.is_ok());
        assert_eq!(entries[1].line, 2);
        assert!(entries[1].result.is_err());
    }
}
