//! Checkers for reducedness, semicommutativity and the three bounded
//! Armendariz-type properties, with re-checkable witnesses.
//!
//! A polynomial property at bound `d` quantifies over `f, g` of degree
//! `<= d`: Armendariz (`fg = 0 ⇒ a_i b_j = 0`), nil-Armendariz
//! (`fg ∈ nil(R)[x] ⇒ a_i b_j ∈ nil(R)`) and weak Armendariz
//! (`fg = 0 ⇒ a_i b_j ∈ nil(R)`).

use std::fmt;
use std::str::FromStr;
use std::sync::atomic::AtomicBool;
use std::sync::Arc;
use std::time::{Duration, Instant};

use dashmap::DashMap;
use serde::Serialize;

use crate::construct::quotient_ring;
use crate::morph::Ideal;
use crate::poly::{convolve, render_coeffs};
use crate::ring::{Elem, ElementSet, FiniteRing};
use crate::search::{find_min_witness, SearchControl};
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Property {
    Reduced,
    Semicommutative,
    Armendariz,
    NilArmendariz,
    WeakArmendariz,
}

impl Property {
    pub const ALL: [Property; 5] = [
        Property::Reduced,
        Property::Semicommutative,
        Property::Armendariz,
        Property::NilArmendariz,
        Property::WeakArmendariz,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::Reduced => "reduced",
            Property::Semicommutative => "semicommutative",
            Property::Armendariz => "armendariz",
            Property::NilArmendariz => "nil-armendariz",
            Property::WeakArmendariz => "weak-armendariz",
        }
    }

    /// Whether the property is checked up to a degree bound.
    pub fn is_bounded(self) -> bool {
        matches!(self, Property::Armendariz | Property::NilArmendariz | Property::WeakArmendariz)
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Property {
    type Err = Error;

    fn from_str(s: &str) -> Result<Property, Error> {
        Property::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown property {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    HoldsUpToBound,
    HoldsExact,
    Refuted,
}

/// How a verdict was reached.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Method {
    /// Exhaustive scan over elements or triples.
    Scan,
    /// Pair search in the ring itself.
    Direct,
    /// Armendariz search in `R/nil(R)`, used when `nil(R)` is an ideal.
    NilQuotient,
}

/// Whether the nil-quotient reduction may be used.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Strategy {
    #[default]
    Auto,
    Direct,
}

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub degree: usize,
    pub strategy: Strategy,
    /// Cap on `|R|^(d+1)`; `0` selects the engine default.
    pub limit: usize,
    pub seed: Option<u64>,
    pub cancel: Option<Arc<AtomicBool>>,
}

impl Default for SearchConfig {
    fn default() -> SearchConfig {
        SearchConfig { degree: 2, strategy: Strategy::Auto, limit: 0, seed: None, cancel: None }
    }
}

impl SearchConfig {
    pub fn with_degree(degree: usize) -> SearchConfig {
        SearchConfig { degree, ..SearchConfig::default() }
    }

    fn control(&self) -> SearchControl<'_> {
        SearchControl { cancel: self.cancel.as_deref(), seed: self.seed, limit: self.limit }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// A nonzero element with square zero.
    Nilpotent { element: Elem, label: String },
    /// `ab = 0` but `arb ≠ 0`.
    Semicommutative { a: Elem, b: Elem, r: Elem, labels: [String; 3] },
    /// `fg` satisfies the hypothesis but `a_i b_j` breaks the conclusion.
    Polynomial {
        f: Vec<Elem>,
        g: Vec<Elem>,
        i: usize,
        j: usize,
        product: Elem,
        f_text: String,
        g_text: String,
        product_label: String,
    },
}

impl Witness {
    fn polynomial(r: &FiniteRing, f: Vec<Elem>, g: Vec<Elem>, i: usize, j: usize, product: Elem) -> Witness {
        Witness::Polynomial {
            f_text: render_coeffs(r, &f),
            g_text: render_coeffs(r, &g),
            product_label: r.label(product).to_string(),
            f,
            g,
            i,
            j,
            product,
        }
    }

    /// Rebuilds display strings against `r`'s labels.
    fn relabel(&self, r: &FiniteRing) -> Witness {
        match self {
            Witness::Nilpotent { element, .. } => {
                Witness::Nilpotent { element: *element, label: r.label(*element).to_string() }
            }
            Witness::Semicommutative { a, b, r: m, .. } => Witness::Semicommutative {
                a: *a,
                b: *b,
                r: *m,
                labels: [r.label(*a).to_string(), r.label(*b).to_string(), r.label(*m).to_string()],
            },
            Witness::Polynomial { f, g, i, j, product, .. } => {
                Witness::polynomial(r, f.clone(), g.clone(), *i, *j, *product)
            }
        }
    }

    /// Re-derives the refutation from the ring tables alone.
    pub fn revalidate(&self, r: &FiniteRing, property: Property) -> Result<(), String> {
        let valid = |e: Elem| e < r.size();
        match (self, property) {
            (Witness::Nilpotent { element: a, .. }, Property::Reduced) => {
                if valid(*a) && *a != r.zero() && r.mul(*a, *a) == r.zero() {
                    Ok(())
                } else {
                    Err(format!("{a} is not a nonzero square-zero element"))
                }
            }
            (Witness::Semicommutative { a, b, r: m, .. }, Property::Semicommutative) => {
                if [a, b, m].iter().all(|&&e| valid(e))
                    && r.mul(*a, *b) == r.zero()
                    && r.mul(r.mul(*a, *m), *b) != r.zero()
                {
                    Ok(())
                } else {
                    Err(format!("({a}, {b}, {m}) does not break semicommutativity"))
                }
            }
            (Witness::Polynomial { f, g, i, j, product, .. }, p) if p.is_bounded() => {
                if f.is_empty() || g.is_empty() || !f.iter().chain(g).all(|&e| valid(e)) {
                    return Err("coefficients out of range".into());
                }
                let (a, b) = match (f.get(*i), g.get(*j)) {
                    (Some(&a), Some(&b)) => (a, b),
                    _ => return Err(format!("indices ({i}, {j}) out of range")),
                };
                if r.mul(a, b) != *product {
                    return Err(format!("a_{i} b_{j} is {} not {product}", r.mul(a, b)));
                }
                let nil = r.nilradical();
                let fg = convolve(r, f, g);
                let hypothesis = match p {
                    Property::NilArmendariz => fg.iter().all(|&c| nil.contains(c)),
                    _ => fg.iter().all(|&c| c == r.zero()),
                };
                let broken = match p {
                    Property::Armendariz => *product != r.zero(),
                    _ => !nil.contains(*product),
                };
                match (hypothesis, broken) {
                    (true, true) => Ok(()),
                    (false, _) => Err("the product does not satisfy the hypothesis".into()),
                    (true, false) => Err("the coefficient product satisfies the conclusion".into()),
                }
            }
            _ => Err(format!("witness kind does not match {property}")),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PropertyReport {
    pub property: Property,
    pub ring: String,
    pub ring_size: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree_bound: Option<usize>,
    pub verdict: Verdict,
    pub witness: Option<Witness>,
    pub pairs_examined: u64,
    pub method: Method,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl PropertyReport {
    pub fn holds(&self) -> bool {
        self.verdict != Verdict::Refuted
    }

    fn for_ring(&self, r: &FiniteRing) -> PropertyReport {
        PropertyReport {
            ring: r.provenance().to_string(),
            witness: self.witness.as_ref().map(|w| w.relabel(r)),
            ..self.clone()
        }
    }
}

fn exact(r: &FiniteRing, property: Property, witness: Option<Witness>, start: Instant) -> PropertyReport {
    PropertyReport {
        property,
        ring: r.provenance().to_string(),
        ring_size: r.size(),
        degree_bound: None,
        verdict: if witness.is_some() { Verdict::Refuted } else { Verdict::HoldsExact },
        witness,
        pairs_examined: 0,
        method: Method::Scan,
        elapsed: start.elapsed(),
    }
}

pub fn check_reduced(r: &FiniteRing) -> PropertyReport {
    let start = Instant::now();
    let w = r.square_zero_witness().map(|a| Witness::Nilpotent { element: a, label: r.label(a).to_string() });
    exact(r, Property::Reduced, w, start)
}

pub fn check_semicommutative(r: &FiniteRing) -> PropertyReport {
    let start = Instant::now();
    let w = r.semicommutative_witness().map(|(a, b, m)| Witness::Semicommutative {
        a,
        b,
        r: m,
        labels: [r.label(a).to_string(), r.label(b).to_string(), r.label(m).to_string()],
    });
    exact(r, Property::Semicommutative, w, start)
}

pub fn check_armendariz(r: &Arc<FiniteRing>, cfg: &SearchConfig) -> Result<PropertyReport, Error> {
    check_bounded(r, Property::Armendariz, cfg)
}

pub fn check_nil_armendariz(r: &Arc<FiniteRing>, cfg: &SearchConfig) -> Result<PropertyReport, Error> {
    check_bounded(r, Property::NilArmendariz, cfg)
}

pub fn check_weak_armendariz(r: &Arc<FiniteRing>, cfg: &SearchConfig) -> Result<PropertyReport, Error> {
    check_bounded(r, Property::WeakArmendariz, cfg)
}

/// Runs the checker for any property.
pub fn check(r: &Arc<FiniteRing>, property: Property, cfg: &SearchConfig) -> Result<PropertyReport, Error> {
    match property {
        Property::Reduced => Ok(check_reduced(r)),
        Property::Semicommutative => Ok(check_semicommutative(r)),
        p => check_bounded(r, p, cfg),
    }
}

fn check_bounded(r: &Arc<FiniteRing>, property: Property, cfg: &SearchConfig) -> Result<PropertyReport, Error> {
    let start = Instant::now();
    let d = cfg.degree;
    let n = r.size();
    let zero = ElementSet::singleton(n, r.zero());
    let nil = r.nilradical();
    let report = |verdict, witness, pairs_examined, method| PropertyReport {
        property,
        ring: r.provenance().to_string(),
        ring_size: n,
        degree_bound: Some(d),
        verdict,
        witness,
        pairs_examined,
        method,
        elapsed: start.elapsed(),
    };

    if property != Property::Armendariz && cfg.strategy == Strategy::Auto && nil.len() > 1 {
        if let Ok(ideal) = Ideal::new(r, nil.clone()) {
            // fg ∈ N[x] and a_i b_j ∈ N both read as zero in R/N, so an
            // Armendariz R/N settles both properties affirmatively.
            let (q, _) = quotient_ring(&ideal)?;
            let qz = ElementSet::singleton(q.size(), q.zero());
            let out = find_min_witness(&q, d, &qz, &qz, cfg.control())?;
            if out.witness.is_none() {
                return Ok(report(Verdict::HoldsUpToBound, None, out.pairs_examined, Method::NilQuotient));
            }
        }
    }

    let (allowed, target) = match property {
        Property::Armendariz => (&zero, &zero),
        Property::NilArmendariz => (&nil, &nil),
        _ => (&zero, &nil),
    };
    let out = find_min_witness(r, d, allowed, target, cfg.control())?;
    let Some(w) = out.witness else {
        return Ok(report(Verdict::HoldsUpToBound, None, out.pairs_examined, Method::Direct));
    };
    let witness = Witness::polynomial(r, w.f, w.g, w.i, w.j, w.product);
    witness
        .revalidate(r, property)
        .map_err(|e| Error::Inconsistent(format!("{property} witness in {} fails re-check: {e}", r.provenance())))?;
    Ok(report(Verdict::Refuted, Some(witness), out.pairs_examined, Method::Direct))
}

/// A degree-local implication of the reduced ⇒ Armendariz ⇒ nil-Armendariz
/// ⇒ weak Armendariz chain that failed at the bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum AuditFlag {
    ReducedButNotArmendariz,
    NilButNotWeak,
    /// Not a failure: the implication is only known for unbounded degree.
    ArmendarizButNotNil,
}

impl AuditFlag {
    pub fn is_failure(self) -> bool {
        !matches!(self, AuditFlag::ArmendarizButNotNil)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PropertyProfile {
    pub degree_bound: usize,
    pub reports: Vec<PropertyReport>,
    pub audit: Vec<AuditFlag>,
}

impl PropertyProfile {
    pub fn get(&self, p: Property) -> &PropertyReport {
        self.reports.iter().find(|r| r.property == p).expect("profile covers every property")
    }

    /// Verdicts in [`Property::ALL`] order.
    pub fn verdicts(&self) -> Vec<Verdict> {
        Property::ALL.iter().map(|&p| self.get(p).verdict).collect()
    }
}

fn audit(holds: impl Fn(Property) -> bool) -> Vec<AuditFlag> {
    let mut flags = Vec::new();
    if holds(Property::Reduced) && !holds(Property::Armendariz) {
        flags.push(AuditFlag::ReducedButNotArmendariz);
    }
    if holds(Property::NilArmendariz) && !holds(Property::WeakArmendariz) {
        flags.push(AuditFlag::NilButNotWeak);
    }
    if holds(Property::Armendariz) && !holds(Property::NilArmendariz) {
        flags.push(AuditFlag::ArmendarizButNotNil);
    }
    flags
}

/// All five properties plus the implication audit.
pub fn property_profile(r: &Arc<FiniteRing>, cfg: &SearchConfig) -> Result<PropertyProfile, Error> {
    profile_with(cfg, |p| check(r, p, cfg))
}

fn profile_with(
    cfg: &SearchConfig,
    run: impl FnMut(Property) -> Result<PropertyReport, Error>,
) -> Result<PropertyProfile, Error> {
    let reports = Property::ALL.into_iter().map(run).collect::<Result<Vec<_>, _>>()?;
    let flags = audit(|p| reports.iter().any(|x| x.property == p && x.holds()));
    Ok(PropertyProfile { degree_bound: cfg.degree, reports, audit: flags })
}

type CacheKey = (u64, Property, Option<(usize, Strategy)>);

/// Reports shared between rings with identical tables. Safe for concurrent
/// use; a hit never changes a result.
#[derive(Default)]
pub struct PropertyCache {
    map: DashMap<CacheKey, Vec<(Arc<FiniteRing>, PropertyReport)>>,
}

impl PropertyCache {
    pub fn new() -> PropertyCache {
        PropertyCache::default()
    }

    pub fn len(&self) -> usize {
        self.map.iter().map(|e| e.value().len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn check(&self, r: &Arc<FiniteRing>, property: Property, cfg: &SearchConfig) -> Result<PropertyReport, Error> {
        let key = (r.fingerprint(), property, property.is_bounded().then_some((cfg.degree, cfg.strategy)));
        if let Some(entry) = self.map.get(&key) {
            if let Some((_, rep)) = entry.iter().find(|(s, _)| **s == **r) {
                return Ok(rep.for_ring(r));
            }
        }
        let rep = check(r, property, cfg)?;
        let mut entry = self.map.entry(key).or_default();
        if !entry.iter().any(|(s, _)| **s == **r) {
            entry.push((r.clone(), rep.clone()));
        }
        Ok(rep)
    }

    pub fn profile(&self, r: &Arc<FiniteRing>, cfg: &SearchConfig) -> Result<PropertyProfile, Error> {
        profile_with(cfg, |p| self.check(r, p, cfg))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{matrix_ring, upper_triangular, zmod};

    fn cfg(d: usize) -> SearchConfig {
        SearchConfig::with_degree(d)
    }

    #[test]
    fn exact_properties() {
        let z4 = zmod(4).unwrap();
        let r = check_reduced(&z4);
        assert_eq!(r.verdict, Verdict::Refuted);
        assert_eq!(r.witness, Some(Witness::Nilpotent { element: 2, label: "2".into() }));
        assert_eq!(check_reduced(&zmod(6).unwrap()).verdict, Verdict::HoldsExact);
        assert_eq!(check_semicommutative(&z4).verdict, Verdict::HoldsExact);
    }

    #[test]
    fn small_commutative_rings() {
        let z2 = zmod(2).unwrap();
        assert_eq!(check_armendariz(&z2, &cfg(2)).unwrap().verdict, Verdict::HoldsUpToBound);
        let z4 = zmod(4).unwrap();
        assert!(check_armendariz(&z4, &cfg(2)).unwrap().holds());
        let nil = check_nil_armendariz(&z4, &cfg(2)).unwrap();
        assert!(nil.holds());
        assert_eq!(nil.method, Method::NilQuotient);
        let direct = SearchConfig { strategy: Strategy::Direct, ..cfg(2) };
        let nil_direct = check_nil_armendariz(&z4, &direct).unwrap();
        assert_eq!((nil_direct.verdict, nil_direct.method), (Verdict::HoldsUpToBound, Method::Direct));
        assert!(check_weak_armendariz(&zmod(6).unwrap(), &cfg(2)).unwrap().holds());
    }

    #[test]
    fn triangular_ring_is_weak_but_not_armendariz() {
        let t2 = upper_triangular(&zmod(2).unwrap(), 2, 256).unwrap();
        let a = check_armendariz(&t2, &cfg(1)).unwrap();
        assert_eq!(a.verdict, Verdict::Refuted);
        a.witness.as_ref().unwrap().revalidate(&t2, Property::Armendariz).unwrap();
        for strategy in [Strategy::Auto, Strategy::Direct] {
            let w = check_weak_armendariz(&t2, &SearchConfig { strategy, ..cfg(1) }).unwrap();
            assert_eq!(w.verdict, Verdict::HoldsUpToBound);
        }
    }

    #[test]
    fn full_matrix_ring_refutes_all_three() {
        let m2 = matrix_ring(&zmod(2).unwrap(), 2, 256).unwrap();
        let profile = property_profile(&m2, &cfg(1)).unwrap();
        for p in [Property::Armendariz, Property::NilArmendariz, Property::WeakArmendariz] {
            let rep = profile.get(p);
            assert_eq!(rep.verdict, Verdict::Refuted, "{p}");
            rep.witness.as_ref().unwrap().revalidate(&m2, p).unwrap();
        }
        assert!(profile.audit.is_empty());
    }

    #[test]
    fn revalidation_rejects_tampering() {
        let m2 = matrix_ring(&zmod(2).unwrap(), 2, 256).unwrap();
        let rep = check_weak_armendariz(&m2, &cfg(1)).unwrap();
        let Some(Witness::Polynomial { f, g, i, j, product, .. }) = rep.witness.clone() else { panic!() };
        let mut g2 = g.clone();
        g2[0] = m2.one();
        let bad = Witness::polynomial(&m2, f.clone(), g2, i, j, product);
        assert!(bad.revalidate(&m2, Property::WeakArmendariz).is_err());
        let ok = Witness::polynomial(&m2, f, g, i, j, product);
        assert!(ok.revalidate(&m2, Property::Reduced).is_err());
    }

    #[test]
    fn cache_returns_identical_reports() {
        let cache = PropertyCache::new();
        let t2 = upper_triangular(&zmod(2).unwrap(), 2, 256).unwrap();
        let a = cache.check(&t2, Property::Armendariz, &cfg(1)).unwrap();
        let b = cache.check(&t2, Property::Armendariz, &cfg(1)).unwrap();
        assert_eq!(a.witness, b.witness);
        assert_eq!(a.pairs_examined, b.pairs_examined);
        assert_eq!(cache.len(), 1);
    }

    #[test]
    fn audit_flags() {
        let all = |_: Property| true;
        assert!(audit(all).is_empty());
        let flags = audit(|p| p != Property::NilArmendariz);
        assert_eq!(flags, vec![AuditFlag::ArmendarizButNotNil]);
        assert!(!flags[0].is_failure());
        assert!(audit(|p| p != Property::Armendariz)[0].is_failure());
    }
}
