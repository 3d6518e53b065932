//! Text, CSV and JSON renderings. Everything here is a pure function of its input
//! so identical flags give identical bytes.

use std::fmt::Write;

use clap::ValueEnum;
use hermit_core::bounds::{CosetBoundSequence, DistanceCase, RedundancyTable, SearchResult};
use hermit_core::code::{CheckDiagram, LinearCode};
use serde_json::{json, Value};

#[derive(Clone, Copy, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

fn to_json<T: serde::Serialize>(v: &T) -> serde_json::Result<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

pub fn coset_bounds(seq: &CosetBoundSequence, format: Format) -> serde_json::Result<String> {
    let mut s = String::new();
    match format {
        Format::Json => return to_json(seq),
        Format::Csv => {
            s.push_str("i,d,a,bound\n");
            for r in seq.rows() {
                writeln!(s, "{},{},{},{}", r.i, r.d, r.a, r.bound).unwrap();
            }
        }
        Format::Text => {
            writeln!(
                s,
                "q = {}, {} sequence, {} bounds",
                seq.q,
                seq.kind.name(),
                seq.method.name()
            )
            .unwrap();
            writeln!(s, "{:>5} {:>5} {:>5} {:>6}", "i", "d", "a", "bound").unwrap();
            for r in seq.rows() {
                writeln!(s, "{:>5} {:>5} {:>5} {:>6}", r.i, r.d, r.a, r.bound).unwrap();
            }
        }
    }
    Ok(s)
}

pub fn redundancy(table: &RedundancyTable, format: Format) -> serde_json::Result<String> {
    let mut s = String::new();
    match format {
        Format::Json => return to_json(table),
        Format::Csv => {
            s.push_str("delta,onepoint_classical,onepoint_improved,twopoint_classical,twopoint_improved,diff\n");
            for r in &table.rows {
                writeln!(
                    s,
                    "{},{},{},{},{},{}",
                    r.delta,
                    r.onepoint_classical,
                    r.onepoint_improved,
                    r.twopoint_classical,
                    r.twopoint_improved,
                    r.diff
                )
                .unwrap();
            }
        }
        Format::Text => {
            writeln!(s, "q = {}, optimal redundancy per designed distance", table.q).unwrap();
            writeln!(s, "{:>5}  {:>19}  {:>19}", "", "one-point", "two-point").unwrap();
            writeln!(
                s,
                "{:>5}  {:>9} {:>9}  {:>9} {:>9}  {:>4}",
                "delta", "C", "I", "C", "I", "diff"
            )
            .unwrap();
            for r in &table.rows {
                writeln!(
                    s,
                    "{:>5}  {:>9} {:>9}  {:>9} {:>9}  {:>4}",
                    r.delta,
                    r.onepoint_classical,
                    r.onepoint_improved,
                    r.twopoint_classical,
                    r.twopoint_improved,
                    r.diff
                )
                .unwrap();
            }
        }
    }
    Ok(s)
}

pub fn search(result: &SearchResult, format: Format) -> serde_json::Result<String> {
    let mut s = String::new();
    match format {
        Format::Json => return to_json(result),
        Format::Csv => {
            s.push_str("delta,min_base,min_propagated,twopoint\n");
            for r in &result.rows {
                writeln!(s, "{},{},{},{}", r.delta, r.min_base, r.min_propagated, r.twopoint).unwrap();
            }
        }
        Format::Text => {
            writeln!(
                s,
                "q = {}, sequences up to degree {}, improved redundancy",
                result.q, result.top_degree
            )
            .unwrap();
            writeln!(s, "{:>5} {:>6} {:>11} {:>6}", "delta", "base", "propagated", "iP+Q").unwrap();
            for r in &result.rows {
                writeln!(
                    s,
                    "{:>5} {:>6} {:>11} {:>6}",
                    r.delta, r.min_base, r.min_propagated, r.twopoint
                )
                .unwrap();
            }
            let verdict = if result.twopoint_is_optimal() {
                "optimal"
            } else {
                "NOT optimal"
            };
            writeln!(s, "iP + Q is {verdict} for every delta listed").unwrap();
        }
    }
    Ok(s)
}

/// Check matrix as CSV of element codes, after `#` lines with the provenance.
pub fn check_csv(code: &LinearCode) -> String {
    let chk = code.chk.clone().unwrap_or_else(|| code.check_basis());
    let p = &code.provenance;
    let mut s = String::new();
    writeln!(s, "# construction: {}", p.construction).unwrap();
    writeln!(s, "# q: {}", p.q).unwrap();
    for (k, v) in &p.params {
        writeln!(s, "# {k}: {v}").unwrap();
    }
    if let Some(d) = p.designed_distance {
        writeln!(s, "# designed_distance: {d}").unwrap();
    }
    writeln!(s, "# n: {}", code.n).unwrap();
    writeln!(s, "# k: {}", code.k).unwrap();
    writeln!(s, "# checks: {}", chk.rows()).unwrap();
    s.push_str(&chk.to_csv());
    s
}

pub fn check_json(code: &LinearCode, diagram: &CheckDiagram) -> Value {
    json!({
        "provenance": code.provenance,
        "n": code.n,
        "k": code.k,
        "r": code.redundancy(),
        "diagram": diagram,
    })
}

pub fn case_name(case: DistanceCase) -> String {
    match serde_json::to_value(case) {
        Ok(Value::String(s)) => s,
        _ => format!("{case:?}"),
    }
}
