//! Verified two-sided ideals and unital homomorphisms, their enumeration,
//! preimages, radical and semicommutative ideal tests, and the canonical
//! isomorphisms between an amalgam, its base ring and `f(A)+J`.

use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::construct::{f_plus_j, quotient_ring, AmalgamRing};
use crate::ring::{Elem, ElementSet, FiniteRing};
use crate::Error;

/// Largest ring whose ideal lattice is enumerated.
pub const IDEAL_ENUM_LIMIT: usize = 256;

/// Largest number of generator assignments tried by [`enumerate_homs`].
pub const HOM_SEARCH_LIMIT: usize = 1 << 22;

/// A verified two-sided ideal.
#[derive(Clone, Debug)]
pub struct Ideal {
    host: Arc<FiniteRing>,
    members: ElementSet,
    proper: bool,
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members && *self.host == *other.host
    }
}

impl Eq for Ideal {}

impl Ideal {
    /// Verifies additive closure, negation and two-sided absorption.
    pub fn new(host: &Arc<FiniteRing>, members: ElementSet) -> Result<Ideal, Error> {
        if members.universe() != host.size() {
            return Err(Error::HostMismatch);
        }
        let show = |e: Elem| host.label(e).to_string();
        if !members.contains(host.zero()) {
            return Err(Error::NotIdeal("missing zero".into()));
        }
        for x in members.iter() {
            if !members.contains(host.neg(x)) {
                return Err(Error::NotIdeal(format!("-{} missing", show(x))));
            }
            for y in members.iter() {
                let s = host.add(x, y);
                if !members.contains(s) {
                    return Err(Error::NotIdeal(format!("{} + {} = {} missing", show(x), show(y), show(s))));
                }
            }
            for r in host.elements() {
                for p in [host.mul(r, x), host.mul(x, r)] {
                    if !members.contains(p) {
                        return Err(Error::NotIdeal(format!(
                            "{} does not absorb {}: {} missing",
                            show(x),
                            show(r),
                            show(p)
                        )));
                    }
                }
            }
        }
        Ok(Ideal::trusted(host, members))
    }

    fn trusted(host: &Arc<FiniteRing>, members: ElementSet) -> Ideal {
        let proper = !members.contains(host.one());
        Ideal { host: host.clone(), members, proper }
    }

    pub fn zero(host: &Arc<FiniteRing>) -> Ideal {
        Ideal::trusted(host, ElementSet::singleton(host.size(), host.zero()))
    }

    pub fn whole(host: &Arc<FiniteRing>) -> Ideal {
        Ideal::trusted(host, ElementSet::all(host.size()))
    }

    pub fn host(&self) -> &Arc<FiniteRing> {
        &self.host
    }

    pub fn members(&self) -> &ElementSet {
        &self.members
    }

    pub fn contains(&self, e: Elem) -> bool {
        self.members.contains(e)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_proper(&self) -> bool {
        self.proper
    }

    pub fn is_zero(&self) -> bool {
        self.members.len() == 1
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.members.display(&self.host))
    }
}

/// Smallest two-sided ideal containing `gens`.
pub fn generated_ideal(r: &Arc<FiniteRing>, gens: &ElementSet) -> Ideal {
    let mut inside = FixedBitSet::with_capacity(r.size());
    let mut members: Vec<Elem> = Vec::new();
    let mut queue: Vec<Elem> = gens.iter().chain([r.zero()]).collect();
    while let Some(z) = queue.pop() {
        if inside.put(z) {
            continue;
        }
        members.push(z);
        queue.push(r.neg(z));
        queue.extend(members.iter().map(|&y| r.add(z, y)));
        for s in r.elements() {
            queue.extend([r.mul(s, z), r.mul(z, s)]);
        }
    }
    Ideal::trusted(r, ElementSet::from_bits(inside))
}

/// Every two-sided ideal, ordered by size and then by member sequence.
///
/// Each ideal of a finite ring is a sum of principal ideals, so the lattice
/// is the closure of the principal ideals under pairwise sums.
pub fn enumerate_ideals(r: &Arc<FiniteRing>) -> Result<Vec<Ideal>, Error> {
    if r.size() > IDEAL_ENUM_LIMIT {
        return Err(Error::Budget { what: "ideal enumeration".into(), needed: r.size(), limit: IDEAL_ENUM_LIMIT });
    }
    let mut principal: Vec<ElementSet> =
        r.elements().map(|e| generated_ideal(r, &ElementSet::singleton(r.size(), e)).members).collect();
    principal.sort_by(|a, b| a.members().cmp(b.members()));
    principal.dedup();
    let mut found: Vec<ElementSet> = principal.clone();
    let mut frontier = principal.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for i in &frontier {
            for p in &principal {
                if p.is_subset(i) {
                    continue;
                }
                let sum = ElementSet::new(r.size(), i.iter().flat_map(|x| p.iter().map(move |y| r.add(x, y))));
                if !found.contains(&sum) {
                    found.push(sum.clone());
                    next.push(sum);
                }
            }
        }
        frontier = next;
    }
    found.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.members().cmp(b.members())));
    Ok(found.into_iter().map(|m| Ideal::trusted(r, m)).collect())
}

/// Which homomorphism law a candidate map breaks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum HomLaw {
    Range,
    Unital,
    Additive,
    Multiplicative,
}

/// First failure found by [`verify_hom`]; the witness lists domain elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomViolation {
    pub law: HomLaw,
    pub witness: Vec<Elem>,
}

impl fmt::Display for HomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} at {:?}", self.law, self.witness)
    }
}

/// A verified unital ring homomorphism.
#[derive(Clone, Debug)]
pub struct RingHom {
    domain: Arc<FiniteRing>,
    codomain: Arc<FiniteRing>,
    map: Vec<Elem>,
    injective: bool,
    surjective: bool,
}

impl PartialEq for RingHom {
    fn eq(&self, other: &Self) -> bool {
        self.map == other.map && *self.domain == *other.domain && *self.codomain == *other.codomain
    }
}

impl Eq for RingHom {}

impl RingHom {
    fn trusted(domain: &Arc<FiniteRing>, codomain: &Arc<FiniteRing>, map: Vec<Elem>) -> RingHom {
        let mut hit = FixedBitSet::with_capacity(codomain.size());
        map.iter().for_each(|&y| hit.insert(y));
        let image = hit.count_ones(..);
        RingHom {
            domain: domain.clone(),
            codomain: codomain.clone(),
            injective: image == map.len(),
            surjective: image == codomain.size(),
            map,
        }
    }

    pub fn identity(r: &Arc<FiniteRing>) -> RingHom {
        RingHom::trusted(r, r, r.elements().collect())
    }

    pub fn domain(&self) -> &Arc<FiniteRing> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<FiniteRing> {
        &self.codomain
    }

    pub fn apply(&self, a: Elem) -> Elem {
        self.map[a]
    }

    pub fn map(&self) -> &[Elem] {
        &self.map
    }

    pub fn is_injective(&self) -> bool {
        self.injective
    }

    pub fn is_surjective(&self) -> bool {
        self.surjective
    }

    pub fn image(&self) -> ElementSet {
        ElementSet::new(self.codomain.size(), self.map.iter().copied())
    }

    pub fn is_identity(&self) -> bool {
        *self.domain == *self.codomain && self.map.iter().enumerate().all(|(i, &y)| i == y)
    }
}

/// Checks range, `f(1) = 1`, then additivity and multiplicativity over all
/// pairs in lexicographic order.
pub fn verify_hom(map: &[Elem], a: &Arc<FiniteRing>, b: &Arc<FiniteRing>) -> Result<RingHom, Error> {
    let fail = |law, witness| Err(Error::NotHom(HomViolation { law, witness }));
    if map.len() != a.size() {
        return fail(HomLaw::Range, vec![map.len().min(a.size())]);
    }
    if let Some(x) = map.iter().position(|&y| y >= b.size()) {
        return fail(HomLaw::Range, vec![x]);
    }
    if map[a.one()] != b.one() {
        return fail(HomLaw::Unital, vec![a.one()]);
    }
    for x in a.elements() {
        for y in a.elements() {
            if map[a.add(x, y)] != b.add(map[x], map[y]) {
                return fail(HomLaw::Additive, vec![x, y]);
            }
        }
    }
    for x in a.elements() {
        for y in a.elements() {
            if map[a.mul(x, y)] != b.mul(map[x], map[y]) {
                return fail(HomLaw::Multiplicative, vec![x, y]);
            }
        }
    }
    Ok(RingHom::trusted(a, b, map.to_vec()))
}

/// All unital homomorphisms `A → B`, sorted by their maps.
///
/// Images are chosen for a generating set of `A` as a unital ring; every
/// other image is then forced by sums and products, and clashes prune.
pub fn enumerate_homs(a: &Arc<FiniteRing>, b: &Arc<FiniteRing>) -> Result<Vec<RingHom>, Error> {
    let gens = ring_generators(a);
    let tries = gens.iter().try_fold(1usize, |acc, _| acc.checked_mul(b.size())).unwrap_or(usize::MAX);
    if tries > HOM_SEARCH_LIMIT {
        return Err(Error::Budget { what: "homomorphism search".into(), needed: tries, limit: HOM_SEARCH_LIMIT });
    }
    let mut partial = vec![None; a.size()];
    let mut known = Vec::new();
    let mut out = Vec::new();
    if assign(a, b, &mut partial, &mut known, a.zero(), b.zero()) && assign(a, b, &mut partial, &mut known, a.one(), b.one())
    {
        hom_search(a, b, &gens, partial, known, &mut out);
    }
    let mut homs: Vec<RingHom> = out
        .into_iter()
        .map(|m| verify_hom(&m, a, b))
        .collect::<Result<_, _>>()
        .map_err(|e| Error::Inconsistent(format!("hom search produced a non-hom: {e}")))?;
    homs.sort_by(|x, y| x.map.cmp(&y.map));
    homs.dedup();
    Ok(homs)
}

fn ring_generators(a: &Arc<FiniteRing>) -> Vec<Elem> {
    let mut gens = Vec::new();
    let mut span = ElementSet::new(a.size(), [a.zero(), a.one()]);
    let close = |seed: &[Elem]| {
        crate::construct::subring_closure(a, &ElementSet::new(a.size(), seed.iter().copied()), true).members
    };
    while span.len() < a.size() {
        let g = a.elements().find(|&e| !span.contains(e)).expect("span is proper");
        gens.push(g);
        span = close(&gens);
    }
    gens
}

/// Extends `partial` by `x ↦ y` and closes under sums and products of
/// known pairs. Returns false on a clash.
fn assign(
    a: &FiniteRing,
    b: &FiniteRing,
    partial: &mut [Option<Elem>],
    known: &mut Vec<Elem>,
    x: Elem,
    y: Elem,
) -> bool {
    let mut queue = vec![(x, y)];
    while let Some((x, y)) = queue.pop() {
        match partial[x] {
            Some(z) if z == y => continue,
            Some(_) => return false,
            None => {}
        }
        partial[x] = Some(y);
        known.push(x);
        for &k in known.iter() {
            let fk = partial[k].expect("known is mapped");
            queue.push((a.add(x, k), b.add(y, fk)));
            queue.push((a.mul(x, k), b.mul(y, fk)));
            queue.push((a.mul(k, x), b.mul(fk, y)));
        }
    }
    true
}

fn hom_search(
    a: &FiniteRing,
    b: &FiniteRing,
    gens: &[Elem],
    partial: Vec<Option<Elem>>,
    known: Vec<Elem>,
    out: &mut Vec<Vec<Elem>>,
) {
    let Some((&g, rest)) = gens.split_first() else {
        out.push(partial.into_iter().map(|y| y.expect("generators span the ring")).collect());
        return;
    };
    if partial[g].is_some() {
        return hom_search(a, b, rest, partial, known, out);
    }
    for y in b.elements() {
        let (mut p, mut k) = (partial.clone(), known.clone());
        if assign(a, b, &mut p, &mut k, g, y) {
            hom_search(a, b, rest, p, k, out);
        }
    }
}

/// `f⁻¹(J)` as an ideal of the domain.
pub fn preimage_ideal(f: &RingHom, j: &Ideal) -> Result<Ideal, Error> {
    if *j.host != *f.codomain {
        return Err(Error::HostMismatch);
    }
    let d = f.domain();
    Ok(Ideal::trusted(d, ElementSet::new(d.size(), d.elements().filter(|&x| j.contains(f.apply(x))))))
}

/// `x² ∈ J ⇒ x ∈ J`, which holds exactly when `R/J` is reduced.
pub fn is_radical_ideal(j: &Ideal) -> bool {
    let r = &j.host;
    r.elements().all(|x| j.contains(x) || !j.contains(r.mul(x, x)))
}

/// Semicommutativity data for an ideal viewed as a ring without identity.
#[derive(Clone, Debug)]
pub struct IdealSemicommutativity {
    /// `x, y ∈ J`, `xy = 0` ⇒ `xry = 0` for all `r ∈ J`; the variant the
    /// harness uses.
    pub holds: bool,
    /// Smallest `(x, y, r)` breaking the `J` variant.
    pub witness: Option<(Elem, Elem, Elem)>,
    /// Same condition with `r` ranging over the whole host.
    pub host_variant: bool,
    pub host_witness: Option<(Elem, Elem, Elem)>,
    /// `nil(J) = nil(R) ∩ J`.
    pub nil: ElementSet,
    /// Whether `nil(J)` is closed under `+` and under multiplication by `J`
    /// on either side.
    pub nil_is_ideal_of_j: bool,
}

pub fn is_semicommutative_ideal(j: &Ideal) -> IdealSemicommutativity {
    let r = &j.host;
    let m = j.members();
    let find = |mut middle: Box<dyn Iterator<Item = Elem> + '_>, x: Elem, y: Elem| {
        middle.find(|&s| r.mul(r.mul(x, s), y) != r.zero())
    };
    let mut witness = None;
    let mut host_witness = None;
    'outer: for x in m.iter() {
        for y in m.iter() {
            if r.mul(x, y) != r.zero() {
                continue;
            }
            if witness.is_none() {
                witness = find(Box::new(m.iter()), x, y).map(|s| (x, y, s));
            }
            if host_witness.is_none() {
                host_witness = find(Box::new(r.elements()), x, y).map(|s| (x, y, s));
            }
            if witness.is_some() && host_witness.is_some() {
                break 'outer;
            }
        }
    }
    let nil = r.nilradical().intersection(m);
    let nil_is_ideal_of_j = nil.iter().all(|u| {
        nil.iter().all(|v| nil.contains(r.add(u, v))) && m.iter().all(|s| nil.contains(r.mul(s, u)) && nil.contains(r.mul(u, s)))
    });
    IdealSemicommutativity {
        holds: witness.is_none(),
        witness,
        host_variant: host_witness.is_none(),
        host_witness,
        nil,
        nil_is_ideal_of_j,
    }
}

/// Outcome of one explicit isomorphism check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum IsoOutcome {
    Holds,
    Fails(String),
    NotApplicable,
}

impl IsoOutcome {
    pub fn is_ok(&self) -> bool {
        !matches!(self, IsoOutcome::Fails(_))
    }
}

/// The three quotient and subring isomorphisms attached to an amalgam.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CanonicalIsos {
    /// `(A ⋈^f J)/(0×J) ≅ A` via the first coordinate.
    pub mod_zero_j: IsoOutcome,
    /// `(A ⋈^f J)/(f⁻¹(J)×0) ≅ f(A)+J` via the second coordinate.
    pub mod_preimage: IsoOutcome,
    /// `A ⋈^f J ≅ f(A)+J` when `f` is injective and `f(A) ∩ J = 0`.
    pub disjoint: IsoOutcome,
}

impl CanonicalIsos {
    pub fn all_ok(&self) -> bool {
        self.mod_zero_j.is_ok() && self.mod_preimage.is_ok() && self.disjoint.is_ok()
    }
}

fn iso_outcome(map: &[Elem], from: &Arc<FiniteRing>, to: &Arc<FiniteRing>) -> IsoOutcome {
    match verify_hom(map, from, to) {
        Ok(h) if h.is_injective() && h.is_surjective() => IsoOutcome::Holds,
        Ok(_) => IsoOutcome::Fails("map is not bijective".into()),
        Err(e) => IsoOutcome::Fails(e.to_string()),
    }
}

fn quotient_iso(
    am: &AmalgamRing,
    kernel: ElementSet,
    target: &Arc<FiniteRing>,
    coord: impl Fn(Elem) -> Option<Elem>,
) -> IsoOutcome {
    let ideal = match Ideal::new(&am.ring, kernel) {
        Ok(i) => i,
        Err(e) => return IsoOutcome::Fails(e.to_string()),
    };
    let (q, proj) = match quotient_ring(&ideal) {
        Ok(x) => x,
        Err(e) => return IsoOutcome::Fails(e.to_string()),
    };
    let mut map = vec![usize::MAX; q.size()];
    for z in am.ring.elements() {
        match coord(z) {
            Some(t) if map[proj[z]] == usize::MAX || map[proj[z]] == t => map[proj[z]] = t,
            _ => return IsoOutcome::Fails(format!("coset of {} has no well-defined image", am.ring.label(z))),
        }
    }
    iso_outcome(&map, &q, target)
}

/// Verifies the three canonical isomorphisms with explicit maps.
pub fn check_canonical_isos(am: &AmalgamRing) -> Result<CanonicalIsos, Error> {
    let n = am.ring.size();
    let b = am.base_b();
    let faj = f_plus_j(&am.hom, &am.ideal)?;
    let sub_index = |y: Elem| faj.map.binary_search(&y).ok();

    let zero_j = ElementSet::new(n, am.ring.elements().filter(|&z| am.proj_a[z] == am.base_a().zero()));
    let mod_zero_j = quotient_iso(am, zero_j, am.base_a(), |z| Some(am.proj_a[z]));

    let pre_zero = ElementSet::new(n, am.ring.elements().filter(|&z| am.proj_b[z] == b.zero()));
    let mod_preimage = quotient_iso(am, pre_zero, &faj.sub, |z| sub_index(am.proj_b[z]));

    let meets = am.hom.image().intersection(am.ideal.members()).len() > 1;
    let disjoint = if am.hom.is_injective() && !meets {
        match am.ring.elements().map(|z| sub_index(am.proj_b[z])).collect::<Option<Vec<_>>>() {
            Some(map) => iso_outcome(&map, &am.ring, &faj.sub),
            None => IsoOutcome::Fails("second coordinate leaves f(A)+J".into()),
        }
    } else {
        IsoOutcome::NotApplicable
    };
    Ok(CanonicalIsos { mod_zero_j, mod_preimage, disjoint })
}
