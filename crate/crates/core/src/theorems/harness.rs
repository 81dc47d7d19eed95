use std::collections::BTreeMap;
use std::sync::atomic::Ordering;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use super::{Atom, ClauseMode, Corpus, Scenario, TheoremClause};
use crate::morph::{check_canonical_isos, IsoOutcome};
use crate::properties::{PropertyCache, SearchConfig};
use crate::search::MAX_DEGREE;
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ClauseStatus {
    HypothesisFailed,
    Passed,
    /// Failed at the bound but not at the next one.
    ViolationCandidate,
    /// Failed at the bound and again at the next one.
    HardViolation,
    VacuousCorpusWide,
    SkippedBudget,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClauseOutcome {
    pub clause: String,
    pub scenario: String,
    pub status: ClauseStatus,
    pub detail: String,
}

const UNITS_NOTE: &str = "a regular central element of a finite ring is a unit, so no proper ideal contains one";
const UNSEEN_NOTE: &str = "hypothesis never satisfied in this corpus";

/// Truth of each side; `None` for a side that was short-circuited.
type Sides = (bool, Option<bool>);

fn conj(atoms: &[Atom], s: &Scenario, cfg: &SearchConfig, cache: &PropertyCache) -> Result<bool, Error> {
    for atom in atoms {
        let ok = match *atom {
            Atom::Fact(f) => s.fact(f),
            Atom::Holds(side, p) => cache.check(s.ring(side), p, cfg)?.holds(),
        };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

fn sides(c: &TheoremClause, s: &Scenario, cfg: &SearchConfig, cache: &PropertyCache) -> Result<Sides, Error> {
    let left = conj(&c.left, s, cfg, cache)?;
    if c.mode == ClauseMode::Implication && !left {
        return Ok((false, None));
    }
    Ok((left, Some(conj(&c.right, s, cfg, cache)?)))
}

fn holds(c: &TheoremClause, (left, right): Sides) -> bool {
    match c.mode {
        ClauseMode::Implication => !left || right == Some(true),
        ClauseMode::Equivalence => Some(left) == right,
    }
}

fn describe((left, right): Sides) -> String {
    match right {
        Some(r) => format!("left={left} right={r}"),
        None => format!("left={left}"),
    }
}

/// Evaluates one clause on one scenario at `cfg.degree`, re-checking a
/// failure at the next degree before calling it hard.
pub fn evaluate_clause(
    c: &TheoremClause,
    s: &Scenario,
    cfg: &SearchConfig,
    cache: &PropertyCache,
) -> Result<ClauseOutcome, Error> {
    let outcome = |status, detail: String| ClauseOutcome {
        clause: c.id.clone(),
        scenario: s.id.clone(),
        status,
        detail,
    };
    if !c.hypothesis.iter().all(|&f| s.fact(f)) {
        return Ok(outcome(ClauseStatus::HypothesisFailed, String::new()));
    }
    let budget = |e: Error| match e {
        Error::Budget { .. } => Ok(outcome(ClauseStatus::SkippedBudget, e.to_string())),
        e => Err(e),
    };
    let at_d = match sides(c, s, cfg, cache) {
        Ok(x) => x,
        Err(e) => return budget(e),
    };
    if holds(c, at_d) {
        return Ok(outcome(ClauseStatus::Passed, describe(at_d)));
    }
    let d = cfg.degree;
    let first = format!("degree {d}: {}", describe(at_d));
    if !c.degree_local || d + 1 > MAX_DEGREE {
        return Ok(outcome(ClauseStatus::ViolationCandidate, first));
    }
    let next = SearchConfig { degree: d + 1, ..cfg.clone() };
    let at_next = match sides(c, s, &next, cache) {
        Ok(x) => x,
        Err(Error::Budget { .. }) => {
            return Ok(outcome(ClauseStatus::ViolationCandidate, format!("{first}; degree {} over budget", d + 1)))
        }
        Err(e) => return Err(e),
    };
    let detail = format!("{first}; degree {}: {}", d + 1, describe(at_next));
    if holds(c, at_next) {
        Ok(outcome(ClauseStatus::ViolationCandidate, detail))
    } else {
        Ok(outcome(ClauseStatus::HardViolation, detail))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ClauseStats {
    pub tested: usize,
    pub hyp_satisfied: usize,
    pub passed: usize,
    pub candidates: usize,
    pub hard: usize,
    pub skipped: usize,
    pub vacuous: bool,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub clause: String,
    pub scenario: String,
    pub status: ClauseStatus,
    pub detail: String,
}

/// Canonical isomorphism checks across the corpus.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct IsoSummary {
    pub checked: usize,
    pub passed: usize,
    /// Scenarios with `f` injective and `f(A) ∩ J = 0`.
    pub disjoint_applicable: usize,
    /// Of those, how many have verdict-identical profiles for the amalgam
    /// and `f(A)+J`.
    pub disjoint_profiles_match: usize,
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct HarnessReport {
    pub degree: usize,
    pub scenarios: usize,
    pub complete: bool,
    pub clauses: BTreeMap<String, ClauseStats>,
    pub violations: Vec<Violation>,
    pub isos: IsoSummary,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl HarnessReport {
    pub fn hard_violations(&self) -> usize {
        self.clauses.values().map(|c| c.hard).sum()
    }

    pub fn candidates(&self) -> usize {
        self.clauses.values().map(|c| c.candidates).sum()
    }
}

struct ScenarioResult {
    outcomes: Vec<ClauseOutcome>,
    iso_ok: bool,
    iso_failure: Option<String>,
    disjoint: Option<bool>,
}

fn run_scenario(
    s: &Scenario,
    clauses: &[TheoremClause],
    cfg: &SearchConfig,
    cache: &PropertyCache,
) -> Result<ScenarioResult, Error> {
    let outcomes = clauses.iter().map(|c| evaluate_clause(c, s, cfg, cache)).collect::<Result<Vec<_>, _>>()?;
    let isos = check_canonical_isos(&s.amalgam)?;
    let iso_failure = (!isos.all_ok()).then(|| format!("{}: {isos:?}", s.id));
    let disjoint = if isos.disjoint == IsoOutcome::NotApplicable {
        None
    } else {
        match (cache.profile(&s.amalgam.ring, cfg), cache.profile(&s.faj.sub, cfg)) {
            (Ok(x), Ok(y)) => Some(x.verdicts() == y.verdicts()),
            (Err(Error::Budget { .. }), _) | (_, Err(Error::Budget { .. })) => None,
            (Err(e), _) | (_, Err(e)) => return Err(e),
        }
    };
    Ok(ScenarioResult { outcomes, iso_ok: iso_failure.is_none(), iso_failure, disjoint })
}

/// Evaluates every clause on every scenario. Scenarios run in parallel;
/// the report is assembled in corpus order and does not depend on the
/// schedule. Cancellation through `cfg.cancel` yields an incomplete report.
pub fn run_harness(
    corpus: &Corpus,
    clauses: &[TheoremClause],
    cfg: &SearchConfig,
    cache: &PropertyCache,
) -> Result<HarnessReport, Error> {
    let start = Instant::now();
    let cancelled = || cfg.cancel.as_ref().is_some_and(|c| c.load(Ordering::Relaxed));
    let results: Vec<Option<ScenarioResult>> = corpus
        .scenarios
        .par_iter()
        .map(|s| {
            if cancelled() {
                return Ok(None);
            }
            match run_scenario(s, clauses, cfg, cache) {
                Ok(r) => Ok(Some(r)),
                Err(Error::Interrupted) => Ok(None),
                Err(e) => Err(e),
            }
        })
        .collect::<Result<_, Error>>()?;

    let mut stats: BTreeMap<String, ClauseStats> =
        clauses.iter().map(|c| (c.id.clone(), ClauseStats::default())).collect();
    let mut violations = Vec::new();
    let mut isos = IsoSummary::default();
    let mut evaluated = 0;
    for r in results.iter().flatten() {
        evaluated += 1;
        isos.checked += 1;
        isos.passed += r.iso_ok as usize;
        isos.failures.extend(r.iso_failure.clone());
        if let Some(m) = r.disjoint {
            isos.disjoint_applicable += 1;
            isos.disjoint_profiles_match += m as usize;
        }
        for o in &r.outcomes {
            let st = stats.get_mut(&o.clause).expect("clause registered");
            st.tested += 1;
            match o.status {
                ClauseStatus::HypothesisFailed => continue,
                ClauseStatus::Passed => st.passed += 1,
                ClauseStatus::ViolationCandidate => st.candidates += 1,
                ClauseStatus::HardViolation => st.hard += 1,
                ClauseStatus::SkippedBudget => st.skipped += 1,
                ClauseStatus::VacuousCorpusWide => {}
            }
            st.hyp_satisfied += 1;
            if matches!(o.status, ClauseStatus::ViolationCandidate | ClauseStatus::HardViolation) {
                violations.push(Violation {
                    clause: o.clause.clone(),
                    scenario: o.scenario.clone(),
                    status: o.status,
                    detail: o.detail.clone(),
                });
            }
        }
    }
    for c in clauses {
        let st = stats.get_mut(&c.id).expect("clause registered");
        if st.tested > 0 && st.hyp_satisfied == 0 {
            st.vacuous = true;
            st.notes.push(if c.units_vacuous { UNITS_NOTE } else { UNSEEN_NOTE }.to_string());
        }
    }
    Ok(HarnessReport {
        degree: cfg.degree,
        scenarios: evaluated,
        complete: evaluated == corpus.scenarios.len(),
        clauses: stats,
        violations,
        isos,
        elapsed: start.elapsed(),
    })
}

/// Status of a clause across the whole run.
pub fn clause_status(stats: &ClauseStats) -> ClauseStatus {
    if stats.vacuous {
        ClauseStatus::VacuousCorpusWide
    } else if stats.hard > 0 {
        ClauseStatus::HardViolation
    } else if stats.candidates > 0 {
        ClauseStatus::ViolationCandidate
    } else {
        ClauseStatus::Passed
    }
}
