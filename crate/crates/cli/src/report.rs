//! Report rendering: one record per input line, order preserved, with a
//! `#`-prefixed summary block at the end. Output is byte-stable across
//! runs and worker counts.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use nck3_core::filter::{ConditionSuite, FilterReport, Verdict};
use nck3_core::weil::WeilPolynomial;

use crate::formats::WeilEntry;

/// Which condition suite a batch run applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuiteKind {
    K3,
    CubicCategory,
}

impl SuiteKind {
    pub fn name(&self) -> &'static str {
        match self {
            SuiteKind::K3 => "k3",
            SuiteKind::CubicCategory => "cubic",
        }
    }
}

fn sanitize(witness: &str) -> String {
    witness.replace(' ', "_")
}

/// `id=<id> overall=<verdict> cond:<name>=<verdict>[:witness] ...`
pub fn record_line(report: &FilterReport) -> String {
    let mut line = format!("id={} overall={}", report.id, report.overall());
    for c in &report.conditions {
        match &c.witness {
            Some(w) => {
                let _ = write!(line, " cond:{}={}:{}", c.name, c.verdict, sanitize(w));
            }
            None => {
                let _ = write!(line, " cond:{}={}", c.name, c.verdict);
            }
        }
    }
    line
}

#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct BatchSummary {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub unknown: usize,
    pub skipped: usize,
    pub fails_by_condition: BTreeMap<String, usize>,
}

impl BatchSummary {
    pub fn lines(&self) -> Vec<String> {
        let mut out = vec![format!(
            "# total={} pass={} fail={} unknown={} skipped={}",
            self.total, self.pass, self.fail, self.unknown, self.skipped
        )];
        for (name, count) in &self.fails_by_condition {
            out.push(format!("# fail:{}={}", name, count));
        }
        out
    }
}

/// Runs one suite over parsed file entries; returns the report stream
/// (records and `#` skip notes, input order preserved) and the tallies.
pub fn run_batch(
    suite: &ConditionSuite,
    kind: SuiteKind,
    entries: &[WeilEntry],
) -> (Vec<String>, BatchSummary) {
    let mut lines = Vec::with_capacity(entries.len());
    let mut summary = BatchSummary::default();
    for entry in entries {
        summary.total += 1;
        let w = match &entry.result {
            Ok(w) => w,
            Err(reason) => {
                summary.skipped += 1;
                lines.push(format!(
                    "# line {} skipped: {}",
                    entry.line,
                    sanitize(reason)
                ));
                continue;
            }
        };
        let report = match kind {
            SuiteKind::K3 => suite.check_k3_type_with_id(w, entry.line.to_string()),
            SuiteKind::CubicCategory => {
                match suite.check_cubic_category_type_with_id(w, entry.line.to_string()) {
                    Ok(r) => r,
                    Err(e) => {
                        summary.skipped += 1;
                        lines.push(format!(
                            "# line {} skipped: {}",
                            entry.line,
                            sanitize(&e.to_string())
                        ));
                        continue;
                    }
                }
            }
        };
        match report.overall() {
            Verdict::Pass => summary.pass += 1,
            Verdict::Fail => {
                summary.fail += 1;
                for c in &report.conditions {
                    if c.verdict == Verdict::Fail {
                        *summary
                            .fails_by_condition
                            .entry(c.name.to_string())
                            .or_insert(0) += 1;
                    }
                }
            }
            Verdict::Unknown => summary.unknown += 1,
        }
        lines.push(record_line(&report));
    }
    (lines, summary)
}

#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct PicardStats {
    pub rho: BTreeMap<u32, usize>,
    pub rho_bar: BTreeMap<u32, usize>,
    pub purely_transcendental: usize,
    pub counted: usize,
    pub precheck_rejected: usize,
    pub malformed: usize,
}

/// Histograms of the arithmetic and geometric Picard ranks over all inputs
/// passing the p-integrality precheck.
pub fn picard_stats(suite: &ConditionSuite, entries: &[WeilEntry]) -> PicardStats {
    let mut stats = PicardStats::default();
    for entry in entries {
        let w: &WeilPolynomial = match &entry.result {
            Ok(w) => w,
            Err(_) => {
                stats.malformed += 1;
                continue;
            }
        };
        match suite.picard_entry(w) {
            Some((rho, rho_bar)) => {
                stats.counted += 1;
                *stats.rho.entry(rho).or_insert(0) += 1;
                *stats.rho_bar.entry(rho_bar).or_insert(0) += 1;
                if rho_bar == 0 {
                    stats.purely_transcendental += 1;
                }
            }
            None => stats.precheck_rejected += 1,
        }
    }
    stats
}

impl PicardStats {
    pub fn lines(&self) -> Vec<String> {
        let mut out = Vec::new();
        out.push(String::from("# arithmetic Picard rank histogram"));
        for (value, count) in &self.rho {
            out.push(format!("rho {} {}", value, count));
        }
        out.push(String::from("# geometric Picard rank histogram"));
        for (value, count) in &self.rho_bar {
            out.push(format!("rho-bar {} {}", value, count));
        }
        out.push(format!(
            "purely-transcendental {}",
            self.purely_transcendental
        ));
        out.push(format!(
            "# counted={} precheck-rejected={} malformed={}",
            self.counted, self.precheck_rejected, self.malformed
        ));
        out
    }
}
