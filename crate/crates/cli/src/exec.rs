use std::collections::{BTreeMap, HashMap};
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;

use amalg_core::construct::DEFAULT_MAX_RING_SIZE;
use amalg_core::properties::{Property, PropertyCache, PropertyReport, SearchConfig, Verdict};
use amalg_core::theorems::{build_corpus, clause_registry, clause_status, run_harness, ClauseStatus, CorpusConfig};
use amalg_core::search::MAX_DEGREE;
use amalg_core::{Error, FiniteRing};
use log::info;

use crate::ast::{Expect, Goal};
use crate::elaborate::{Directive, SpecModel};
use crate::report::{
    Aborted, CheckResult, DirectiveResult, Found, HarnessResult, Report, ReportConfig, SearchResult, FORMAT, TOOL,
    VERSION,
};

pub const EXIT_OK: i32 = 0;
/// A hard violation or a failed assertion.
pub const EXIT_FAILED: i32 = 1;
/// Budget exhausted, interrupted, or the spec did not parse.
pub const EXIT_INCOMPLETE: i32 = 2;
/// The library contradicted itself.
pub const EXIT_BUG: i32 = 3;

const DEFAULT_SEARCH_MAX_SIZE: usize = 16;

#[derive(Clone, Debug)]
pub struct RunConfig {
    /// Degree for directives that do not name one.
    pub degree: usize,
    pub max_ring_size: usize,
    pub seed: Option<u64>,
    pub revalidate: bool,
    pub cancel: Arc<AtomicBool>,
}

impl Default for RunConfig {
    fn default() -> RunConfig {
        RunConfig {
            degree: 2,
            max_ring_size: DEFAULT_MAX_RING_SIZE,
            seed: None,
            revalidate: false,
            cancel: Arc::new(AtomicBool::new(false)),
        }
    }
}

impl RunConfig {
    fn search(&self, degree: Option<usize>) -> SearchConfig {
        SearchConfig {
            degree: degree.unwrap_or(self.degree),
            seed: self.seed,
            cancel: Some(self.cancel.clone()),
            ..SearchConfig::default()
        }
    }
}

fn exit_for(e: &Error) -> i32 {
    match e {
        Error::Inconsistent(_) => EXIT_BUG,
        _ => EXIT_INCOMPLETE,
    }
}

struct Run<'c> {
    cfg: &'c RunConfig,
    cache: PropertyCache,
    exit: i32,
    complete: bool,
    results: Vec<DirectiveResult>,
}

/// Runs the directives in order. An interrupt or a budget failure stops
/// the run; everything finished so far stays in the report.
pub fn execute(model: &SpecModel, cfg: &RunConfig) -> Report {
    let mut run = Run { cfg, cache: PropertyCache::new(), exit: EXIT_OK, complete: true, results: Vec::new() };
    for d in &model.directives {
        if cfg.cancel.load(Ordering::Relaxed) {
            run.complete = false;
            run.exit = run.exit.max(EXIT_INCOMPLETE);
            break;
        }
        let line = line_of(d);
        let outcome = match d {
            Directive::Check { target, ring, property, degree, expect, .. } => {
                run.check(line, target, ring, *property, *degree, *expect)
            }
            Directive::Harness { degree, .. } => run.harness(line, *degree),
            Directive::Search { goal, degree, max_size, .. } => run.search(line, *goal, *degree, *max_size),
        };
        if let Err(e) = outcome {
            run.results.push(DirectiveResult::Aborted(Aborted { line, reason: e.to_string() }));
            run.complete = false;
            run.exit = run.exit.max(exit_for(&e));
            break;
        }
        if !run.complete {
            break;
        }
    }
    Report {
        tool: TOOL,
        version: VERSION,
        format: FORMAT,
        config: ReportConfig {
            degree: cfg.degree,
            max_ring_size: cfg.max_ring_size,
            seed: cfg.seed,
            revalidate: cfg.revalidate,
        },
        complete: run.complete,
        results: run.results,
        exit_code: run.exit,
    }
}

fn line_of(d: &Directive) -> usize {
    match d {
        Directive::Check { line, .. } | Directive::Harness { line, .. } | Directive::Search { line, .. } => *line,
    }
}

impl Run<'_> {
    fn revalidate(&mut self, ring: &FiniteRing, reports: &[PropertyReport]) -> Option<bool> {
        if !self.cfg.revalidate {
            return None;
        }
        let mut ok = true;
        for r in reports {
            if let Some(w) = &r.witness {
                if let Err(e) = w.revalidate(ring, r.property) {
                    log::error!("witness for {} on {} does not revalidate: {e}", r.property, r.ring);
                    ok = false;
                }
            }
            if (r.verdict == Verdict::Refuted) != r.witness.is_some() {
                ok = false;
            }
        }
        if !ok {
            self.exit = self.exit.max(EXIT_BUG);
        }
        Some(ok)
    }

    fn check(
        &mut self,
        line: usize,
        target: &str,
        ring: &Arc<FiniteRing>,
        property: Property,
        degree: Option<usize>,
        expect: Option<Expect>,
    ) -> Result<(), Error> {
        let report = self.cache.check(ring, property, &self.cfg.search(degree))?;
        let assertion_passed = expect.map(|e| (e == Expect::Holds) == report.holds());
        if assertion_passed == Some(false) {
            self.exit = self.exit.max(EXIT_FAILED);
        }
        let revalidated = self.revalidate(ring, std::slice::from_ref(&report));
        info!("line {line}: {property} on {target}: {:?}", report.verdict);
        self.results.push(DirectiveResult::Check(CheckResult {
            line,
            target: target.to_string(),
            expect,
            assertion_passed,
            revalidated,
            report,
        }));
        Ok(())
    }

    fn harness(&mut self, line: usize, degree: Option<usize>) -> Result<(), Error> {
        let corpus = build_corpus(&CorpusConfig { max_ring_size: self.cfg.max_ring_size, ..CorpusConfig::default() })?;
        let cfg = self.cfg.search(degree);
        info!("line {line}: harness on {} scenarios at degree {}", corpus.scenarios.len(), cfg.degree);
        let report = run_harness(&corpus, &clause_registry(), &cfg, &self.cache)?;
        let status: BTreeMap<String, ClauseStatus> =
            report.clauses.iter().map(|(id, st)| (id.clone(), clause_status(st))).collect();
        if report.hard_violations() > 0 {
            self.exit = self.exit.max(EXIT_FAILED);
        }
        if !report.isos.failures.is_empty() {
            self.exit = self.exit.max(EXIT_BUG);
        }
        if !report.complete {
            self.complete = false;
            self.exit = self.exit.max(EXIT_INCOMPLETE);
        }
        self.results.push(DirectiveResult::Harness(HarnessResult { line, status, report, corpus_notes: corpus.notes }));
        Ok(())
    }

    fn search(&mut self, line: usize, goal: Goal, degree: Option<usize>, max_size: Option<usize>) -> Result<(), Error> {
        let max_size = max_size.unwrap_or(DEFAULT_SEARCH_MAX_SIZE).min(self.cfg.max_ring_size);
        let cfg = self.cfg.search(degree);
        let pool = candidates(max_size, self.cfg.max_ring_size)?;
        let mut result = SearchResult {
            line,
            goal,
            degree: cfg.degree,
            max_size,
            candidates: pool.len(),
            examined: 0,
            skipped: 0,
            found: None,
            message: String::new(),
        };
        for r in &pool {
            match self.try_candidate(r, goal, &cfg) {
                Ok(Some(reports)) => {
                    let revalidated = self.revalidate(r, &reports);
                    result.examined += 1;
                    result.found =
                        Some(Found { ring: r.provenance().to_string(), size: r.size(), reports, revalidated });
                    break;
                }
                Ok(None) => result.examined += 1,
                Err(Error::Budget { .. }) => result.skipped += 1,
                Err(Error::Interrupted) => {
                    self.complete = false;
                    self.exit = self.exit.max(EXIT_INCOMPLETE);
                    break;
                }
                Err(e) => return Err(e),
            }
        }
        result.message = match &result.found {
            Some(f) if goal == Goal::WeakNotNil => format!(
                "research finding, not verified beyond degree {}: {} ({} elements) is weak Armendariz but not nil-Armendariz",
                f.reports.iter().filter_map(|r| r.degree_bound).max().unwrap_or(cfg.degree),
                f.ring,
                f.size
            ),
            Some(f) => format!("found {} ({} elements)", f.ring, f.size),
            None if !self.complete => "interrupted before an example was found".into(),
            None => "no example found within budget".into(),
        };
        self.results.push(DirectiveResult::Search(result));
        Ok(())
    }

    /// Reports proving that `r` meets the goal, or `None`.
    fn try_candidate(
        &self,
        r: &Arc<FiniteRing>,
        goal: Goal,
        cfg: &SearchConfig,
    ) -> Result<Option<Vec<PropertyReport>>, Error> {
        match goal {
            Goal::ArmendarizRefutation => {
                let a = self.cache.check(r, Property::Armendariz, cfg)?;
                Ok((!a.holds()).then(|| vec![a]))
            }
            Goal::WeakNotNil => {
                let nil = self.cache.check(r, Property::NilArmendariz, cfg)?;
                if nil.holds() {
                    return Ok(None);
                }
                let weak = self.cache.check(r, Property::WeakArmendariz, cfg)?;
                if !weak.holds() {
                    return Ok(None);
                }
                // A hit answers an open question, so it must survive the next
                // degree before it is reported; nil refutations persist upward.
                let mut reports = vec![weak, nil];
                if cfg.degree < MAX_DEGREE {
                    let next = SearchConfig { degree: cfg.degree + 1, ..cfg.clone() };
                    match self.cache.check(r, Property::WeakArmendariz, &next) {
                        Ok(w) if !w.holds() => return Ok(None),
                        Ok(w) => reports.push(w),
                        Err(Error::Budget { .. }) => {}
                        Err(e) => return Err(e),
                    }
                }
                Ok(Some(reports))
            }
        }
    }
}

/// Distinct rings of at most `max_size` elements drawn from the corpus:
/// base rings, amalgams and the subrings `f(A)+J`, smallest first.
pub fn candidates(max_size: usize, max_ring_size: usize) -> Result<Vec<Arc<FiniteRing>>, Error> {
    let corpus = build_corpus(&CorpusConfig {
        max_product_size: CorpusConfig::default().max_product_size.min(max_size),
        max_amalgam_size: max_size,
        max_ring_size,
    })?;
    // Base rings first, then f(A)+J, then amalgams; smaller before larger.
    let mut pool: Vec<(usize, u8, Arc<FiniteRing>)> = corpus
        .rings
        .iter()
        .map(|r| (0, r.clone()))
        .chain(corpus.scenarios.iter().flat_map(|s| [(2, s.amalgam.ring.clone()), (1, s.faj.sub.clone())]))
        .filter(|(_, r)| r.size() <= max_size)
        .map(|(rank, r)| (r.size(), rank, r))
        .collect();
    pool.sort_by(|x, y| (x.0, x.1, x.2.provenance()).cmp(&(y.0, y.1, y.2.provenance())));
    let mut pool: Vec<Arc<FiniteRing>> = pool.into_iter().map(|(_, _, r)| r).collect();
    let mut seen: HashMap<u64, Vec<Arc<FiniteRing>>> = HashMap::new();
    pool.retain(|r| {
        let bucket = seen.entry(r.fingerprint()).or_default();
        if bucket.iter().any(|s| **s == **r) {
            false
        } else {
            bucket.push(r.clone());
            true
        }
    });
    Ok(pool)
}
