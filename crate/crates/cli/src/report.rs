use std::collections::BTreeMap;
use std::fmt::Write as _;

use amalg_core::properties::{PropertyReport, Verdict, Witness};
use amalg_core::theorems::{clause_status, ClauseStatus, HarnessReport};
use serde::Serialize;

use crate::ast::{Expect, Goal};

pub const TOOL: &str = "amalg";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
/// Bumped whenever a field is renamed or removed.
pub const FORMAT: u32 = 1;

/// Settings that influence results. Thread counts are left out on purpose:
/// they never change a report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReportConfig {
    pub degree: usize,
    pub max_ring_size: usize,
    pub seed: Option<u64>,
    pub revalidate: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub format: u32,
    pub config: ReportConfig,
    pub complete: bool,
    pub results: Vec<DirectiveResult>,
    pub exit_code: i32,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub line: usize,
    pub target: String,
    #[serde(rename = "assert", skip_serializing_if = "Option::is_none")]
    pub expect: Option<Expect>,
    /// `None` when nothing was asserted.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub assertion_passed: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub revalidated: Option<bool>,
    pub report: PropertyReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct HarnessResult {
    pub line: usize,
    pub status: BTreeMap<String, ClauseStatus>,
    pub report: HarnessReport,
    pub corpus_notes: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Found {
    pub ring: String,
    pub size: usize,
    pub reports: Vec<PropertyReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub revalidated: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchResult {
    pub line: usize,
    pub goal: Goal,
    pub degree: usize,
    pub max_size: usize,
    pub candidates: usize,
    pub examined: usize,
    pub skipped: usize,
    pub found: Option<Found>,
    pub message: String,
}

/// A directive that could not finish.
#[derive(Clone, Debug, Serialize)]
pub struct Aborted {
    pub line: usize,
    pub reason: String,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "directive", rename_all = "snake_case")]
pub enum DirectiveResult {
    Check(CheckResult),
    Harness(HarnessResult),
    Search(SearchResult),
    Aborted(Aborted),
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.results {
            render(&mut out, r);
        }
        if !self.complete {
            out.push_str("INCOMPLETE: run interrupted or over budget; results above are partial\n");
        }
        let _ = writeln!(out, "exit {}", self.exit_code);
        out
    }
}

fn verdict(v: Verdict) -> &'static str {
    match v {
        Verdict::HoldsUpToBound => "HOLDS_UP_TO_BOUND",
        Verdict::HoldsExact => "HOLDS_EXACT",
        Verdict::Refuted => "REFUTED",
    }
}

pub fn witness_text(w: &Witness) -> String {
    match w {
        Witness::Nilpotent { label, .. } => format!("{label} squares to zero"),
        Witness::Semicommutative { labels: [a, b, r], .. } => format!("a={a} b={b} r={r}: ab=0, arb!=0"),
        Witness::Polynomial { f_text, g_text, i, j, product_label, .. } => {
            format!("f={f_text} g={g_text} a_{i}*b_{j}={product_label}")
        }
    }
}

fn property_line(out: &mut String, r: &PropertyReport) {
    let _ = write!(out, "{} {}", r.property, verdict(r.verdict));
    if let Some(d) = r.degree_bound {
        let _ = write!(out, " (degree {d}, {} pairs)", r.pairs_examined);
    }
    if let Some(w) = &r.witness {
        let _ = write!(out, " witness {}", witness_text(w));
    }
}

fn render(out: &mut String, r: &DirectiveResult) {
    match r {
        DirectiveResult::Check(c) => {
            let _ = write!(out, "line {}: check {} [{}]: ", c.line, c.target, c.report.ring);
            property_line(out, &c.report);
            match c.assertion_passed {
                Some(true) => out.push_str("; assertion ok"),
                Some(false) => out.push_str("; ASSERTION FAILED"),
                None => {}
            }
            if c.revalidated == Some(false) {
                out.push_str("; REVALIDATION FAILED");
            }
            out.push('\n');
        }
        DirectiveResult::Harness(h) => {
            let rep = &h.report;
            let _ = writeln!(
                out,
                "line {}: harness degree {}: {} scenarios, {} hard, {} candidates",
                h.line,
                rep.degree,
                rep.scenarios,
                rep.hard_violations(),
                rep.candidates()
            );
            let _ = writeln!(
                out,
                "  {:<10} {:>7} {:>7} {:>7} {:>6} {:>5} {:>6}  status",
                "clause", "tested", "hyp", "passed", "cand", "hard", "skip"
            );
            for (id, st) in &rep.clauses {
                let status = serde_json::to_value(clause_status(st)).expect("status serializes");
                let _ = writeln!(
                    out,
                    "  {:<10} {:>7} {:>7} {:>7} {:>6} {:>5} {:>6}  {}",
                    id,
                    st.tested,
                    st.hyp_satisfied,
                    st.passed,
                    st.candidates,
                    st.hard,
                    st.skipped,
                    status.as_str().unwrap_or_default()
                );
                for n in &st.notes {
                    let _ = writeln!(out, "    note: {n}");
                }
            }
            for v in &rep.violations {
                let _ = writeln!(out, "  {:?} {} on {}: {}", v.status, v.clause, v.scenario, v.detail);
            }
            let i = &rep.isos;
            let _ = writeln!(
                out,
                "  isomorphisms: {}/{} scenarios pass; disjoint case {}/{} profiles match",
                i.passed, i.checked, i.disjoint_profiles_match, i.disjoint_applicable
            );
            for n in &h.corpus_notes {
                let _ = writeln!(out, "  corpus: {n}");
            }
        }
        DirectiveResult::Search(s) => {
            let _ = writeln!(
                out,
                "line {}: search {} degree {} max-size {}: {} ({} of {} candidates examined)",
                s.line,
                s.goal.name(),
                s.degree,
                s.max_size,
                s.message,
                s.examined,
                s.candidates
            );
            if let Some(f) = &s.found {
                for r in &f.reports {
                    out.push_str("  ");
                    property_line(out, r);
                    out.push('\n');
                }
            }
        }
        DirectiveResult::Aborted(a) => {
            let _ = writeln!(out, "line {}: aborted: {}", a.line, a.reason);
        }
    }
}
