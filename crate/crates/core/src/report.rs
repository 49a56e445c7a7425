//! JSON Lines reports for pigeonhole scans and JSON documents for hypothesis checks.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::blocks::{target_blocks_lower, PhpScan, TauReport};
use crate::nat::{iter_len, Nat};
use crate::series::term_hash;
use crate::term::Term;

#[derive(Serialize)]
#[serde(rename_all = "kebab-case")]
struct Header<'a> {
    record: &'static str,
    tool: &'static str,
    version: &'static str,
    timestamp: u64,
    mode: &'a str,
    seed: u64,
}

#[derive(Serialize)]
#[serde(rename_all = "kebab-case")]
struct VerdictRecord {
    record: &'static str,
    term: String,
    term_hash: String,
    n: String,
    mode: &'static str,
    hole: String,
    hole_blocks: u64,
    /// `MSP(|n|² ∸ 1, 3)`.
    hole_blocks_lower: u64,
    max_value_blocks: u64,
    /// `⌊3||n||/2⌋ + 3`, the bound on `|#_B(f(x⃗))|` for large `n`.
    value_blocks_len_bound: String,
    checked: u64,
    missed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    gap: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    block_bound_held: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    missed_holes: Option<String>,
    threshold: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    wall_time_ms: Option<u128>,
}

#[derive(Serialize)]
#[serde(rename_all = "kebab-case")]
struct Summary {
    record: &'static str,
    verdicts: usize,
    missed: usize,
    hit: usize,
    thresholds: BTreeMap<String, Option<String>>,
}

/// One scan of a named term.
pub struct ScanEntry<'a> {
    pub name: &'a str,
    pub term: &'a Term,
    pub scan: &'a PhpScan,
}

fn line<T: Serialize>(out: &mut String, record: &T) {
    out.push_str(&serde_json::to_string(record).expect("report records serialize"));
    out.push('\n');
}

/// Header line, one line per `(term, n)`, and a summary line. Wall times appear only when
/// `timings` is set, so that reports of equal runs differ only in the header timestamp.
pub fn php_report(entries: &[ScanEntry<'_>], mode: &str, seed: u64, timestamp: u64, timings: bool) -> String {
    let mut out = String::new();
    line(
        &mut out,
        &Header { record: "header", tool: "sphp", version: env!("CARGO_PKG_VERSION"), timestamp, mode, seed },
    );
    let mut summary = Summary { record: "summary", verdicts: 0, missed: 0, hit: 0, thresholds: BTreeMap::new() };
    for e in entries {
        let hash = term_hash(e.term);
        for v in &e.scan.verdicts {
            let len_len = iter_len(&v.scale, 2);
            line(
                &mut out,
                &VerdictRecord {
                    record: "verdict",
                    term: e.name.to_string(),
                    term_hash: hash.clone(),
                    n: v.scale.to_string(),
                    mode: v.method,
                    hole: v.hole.to_string(),
                    hole_blocks: v.hole_blocks,
                    hole_blocks_lower: target_blocks_lower(&v.scale).unwrap_or(0),
                    max_value_blocks: v.max_value_blocks,
                    value_blocks_len_bound: ((len_len * 3u32) / 2u32 + 3u32).to_string(),
                    checked: v.checked,
                    missed: v.missed,
                    gap: v.gap,
                    block_bound_held: v.block_bound_held,
                    missed_holes: v.missed_holes.as_ref().map(Nat::to_string),
                    threshold: v.threshold_note.as_ref().map(Nat::to_string),
                    wall_time_ms: timings.then_some(v.elapsed.as_millis()),
                },
            );
            summary.verdicts += 1;
            if v.missed {
                summary.missed += 1;
            } else {
                summary.hit += 1;
            }
        }
        summary.thresholds.insert(e.name.to_string(), e.scan.threshold.as_ref().map(Nat::to_string));
    }
    line(&mut out, &summary);
    out
}

#[derive(Serialize)]
#[serde(rename_all = "kebab-case")]
struct TauSampleRecord {
    length: String,
    lhs: String,
    rhs: String,
    holds: bool,
}

#[derive(Serialize)]
#[serde(rename_all = "kebab-case")]
struct ClosureRecord {
    b1: u32,
    b2: u32,
    product_exact: bool,
    sum_bounded: bool,
    sum_threshold: Option<String>,
}

#[derive(Serialize)]
#[serde(rename_all = "kebab-case")]
struct TauDocument {
    m: u32,
    b: u32,
    samples: Vec<TauSampleRecord>,
    violations: usize,
    violations_above_threshold: usize,
    threshold_length: Option<String>,
    closure: Vec<ClosureRecord>,
}

/// The report as a JSON document; lengths `|n|` stand for the scales themselves.
pub fn tau_report(r: &TauReport) -> String {
    let doc = TauDocument {
        m: r.family.m,
        b: r.family.b,
        samples: r
            .samples
            .iter()
            .map(|s| TauSampleRecord {
                length: s.length.to_string(),
                lhs: s.lhs.to_string(),
                rhs: s.rhs.to_string(),
                holds: s.holds,
            })
            .collect(),
        violations: r.violations.len(),
        violations_above_threshold: r.violations_above_threshold(),
        threshold_length: r.threshold.as_ref().map(Nat::to_string),
        closure: r
            .closure
            .iter()
            .map(|c| ClosureRecord {
                b1: c.b1,
                b2: c.b2,
                product_exact: c.product_exact,
                sum_bounded: c.sum_bounded,
                sum_threshold: c.sum_threshold.as_ref().map(Nat::to_string),
            })
            .collect(),
    };
    let mut text = serde_json::to_string_pretty(&doc).expect("report serializes");
    text.push('\n');
    text
}
