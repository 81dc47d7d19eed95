//! Finite unital rings given by total operation tables.
//!
//! Elements are identified by their table index. Every [`FiniteRing`] in
//! circulation has passed [`verify_axioms`]; the element-level queries here
//! (powers, nilpotency, centers, semicommutativity) are exact scans.

use std::collections::hash_map::DefaultHasher;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::notation::{ElemLit, Notation};
use crate::Error;

/// Index of an element inside its ring's tables.
pub type Elem = usize;

/// Hard ceiling on table dimension; element indices are stored as `u16`.
pub const MAX_TABLE_SIZE: usize = 4096;

/// Raw candidate tables, as read from user input before verification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingTables {
    pub add: Vec<Vec<usize>>,
    pub mul: Vec<Vec<usize>>,
    pub zero: usize,
    pub one: usize,
}

impl RingTables {
    /// Builds candidate tables, taking `zero` and `one` to be the first
    /// two-sided identities of the respective tables (index 0 / 1 when none
    /// exists, so that verification reports the failing law).
    pub fn infer_identities(add: Vec<Vec<usize>>, mul: Vec<Vec<usize>>) -> RingTables {
        let zero = find_identity(&add).unwrap_or(0);
        let one = find_identity(&mul).unwrap_or(1);
        RingTables { add, mul, zero, one }
    }
}

fn find_identity(table: &[Vec<usize>]) -> Option<usize> {
    let n = table.len();
    (0..n).find(|&e| {
        (0..n).all(|x| {
            table[e].get(x) == Some(&x) && table.get(x).and_then(|row| row.get(e)) == Some(&x)
        })
    })
}

/// Ring laws checked by [`verify_axioms`], in scan order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Law {
    AddComm,
    AddAssoc,
    AddIdentity,
    AddInverse,
    MulAssoc,
    MulIdentity,
    DistribL,
    DistribR,
    Range,
}

impl Law {
    /// Number of elements quantified by the law. `Range` reports either the
    /// offending distinguished element (1) or a table cell (2).
    pub fn arity(self) -> usize {
        match self {
            Law::AddComm => 2,
            Law::AddIdentity | Law::AddInverse | Law::MulIdentity => 1,
            Law::AddAssoc | Law::MulAssoc | Law::DistribL | Law::DistribR => 3,
            Law::Range => 2,
        }
    }
}

/// First failing law found by the deterministic axiom scan.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomViolation {
    pub law: Law,
    pub witness: Vec<Elem>,
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} fails at {:?}", self.law, self.witness)
    }
}

/// Checks that the tables describe an associative unital ring with at least
/// two elements.
///
/// Malformed input (ragged rows, out-of-range entries) is reported as a
/// [`Law::Range`] violation before any algebraic law is examined; the laws
/// are then scanned in [`Law`] order with lexicographic witnesses.
pub fn verify_axioms(t: &RingTables) -> Result<(), Error> {
    let n = t.add.len();
    if n < 2 {
        return Err(Error::Degenerate { size: n });
    }
    if n > MAX_TABLE_SIZE {
        return Err(Error::Budget { what: "ring table".into(), needed: n, limit: MAX_TABLE_SIZE });
    }
    check_shape(t)?;
    let add = |a: usize, b: usize| t.add[a][b];
    let mul = |a: usize, b: usize| t.mul[a][b];
    let (zero, one) = (t.zero, t.one);
    let fail = |law, witness: &[usize]| Err(Error::Axiom(AxiomViolation { law, witness: witness.to_vec() }));

    for a in 0..n {
        for b in 0..n {
            if add(a, b) != add(b, a) {
                return fail(Law::AddComm, &[a, b]);
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if add(add(a, b), c) != add(a, add(b, c)) {
                    return fail(Law::AddAssoc, &[a, b, c]);
                }
            }
        }
    }
    for a in 0..n {
        if add(zero, a) != a || add(a, zero) != a {
            return fail(Law::AddIdentity, &[a]);
        }
    }
    for a in 0..n {
        if !(0..n).any(|b| add(a, b) == zero) {
            return fail(Law::AddInverse, &[a]);
        }
    }
    for a in 0..n {
        for b in 0..n {
            let ab = mul(a, b);
            for c in 0..n {
                if mul(ab, c) != mul(a, mul(b, c)) {
                    return fail(Law::MulAssoc, &[a, b, c]);
                }
            }
        }
    }
    for a in 0..n {
        if mul(one, a) != a || mul(a, one) != a {
            return fail(Law::MulIdentity, &[a]);
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if mul(a, add(b, c)) != add(mul(a, b), mul(a, c)) {
                    return fail(Law::DistribL, &[a, b, c]);
                }
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if mul(add(a, b), c) != add(mul(a, c), mul(b, c)) {
                    return fail(Law::DistribR, &[a, b, c]);
                }
            }
        }
    }
    // With n >= 2 the laws above already force one != zero.
    debug_assert_ne!(zero, one);
    Ok(())
}

fn check_shape(t: &RingTables) -> Result<(), Error> {
    let n = t.add.len();
    let range = |witness: Vec<usize>| Err(Error::Axiom(AxiomViolation { law: Law::Range, witness }));
    if t.mul.len() != n {
        return range(vec![t.mul.len().min(n), 0]);
    }
    for table in [&t.add, &t.mul] {
        for (r, row) in table.iter().enumerate() {
            if row.len() != n {
                return range(vec![r, row.len().min(n)]);
            }
            if let Some(c) = row.iter().position(|&v| v >= n) {
                return range(vec![r, c]);
            }
        }
    }
    for e in [t.zero, t.one] {
        if e >= n {
            return range(vec![e]);
        }
    }
    Ok(())
}

/// A finite associative ring with identity, stored as flat operation tables.
#[derive(Clone)]
pub struct FiniteRing {
    n: usize,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    zero: Elem,
    one: Elem,
    labels: Vec<String>,
    notation: Notation,
    provenance: String,
}

impl fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteRing")
            .field("provenance", &self.provenance)
            .field("size", &self.n)
            .finish()
    }
}

/// Table equality; labels and provenance are display-only.
impl PartialEq for FiniteRing {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
            && self.zero == other.zero
            && self.one == other.one
            && self.add == other.add
            && self.mul == other.mul
    }
}

impl Eq for FiniteRing {}

impl FiniteRing {
    /// Verifies raw tables and wraps them as an indexed ring.
    pub fn from_tables(t: &RingTables, provenance: impl Into<String>) -> Result<Arc<FiniteRing>, Error> {
        verify_axioms(t)?;
        let n = t.add.len();
        Self::assemble(
            n,
            |a, b| t.add[a][b],
            |a, b| t.mul[a][b],
            t.zero,
            t.one,
            Notation::Indexed,
            provenance.into(),
        )
    }

    /// Builds a ring from operation closures and verifies all axioms.
    pub(crate) fn build(
        n: usize,
        add: impl Fn(Elem, Elem) -> Elem,
        mul: impl Fn(Elem, Elem) -> Elem,
        zero: Elem,
        one: Elem,
        notation: Notation,
        provenance: String,
    ) -> Result<Arc<FiniteRing>, Error> {
        if n > MAX_TABLE_SIZE {
            return Err(Error::Budget { what: provenance, needed: n, limit: MAX_TABLE_SIZE });
        }
        let ring = Self::assemble(n, add, mul, zero, one, notation, provenance)?;
        verify_axioms(&ring.tables())?;
        Ok(ring)
    }

    fn assemble(
        n: usize,
        add: impl Fn(Elem, Elem) -> Elem,
        mul: impl Fn(Elem, Elem) -> Elem,
        zero: Elem,
        one: Elem,
        notation: Notation,
        provenance: String,
    ) -> Result<Arc<FiniteRing>, Error> {
        if n < 2 {
            return Err(Error::Degenerate { size: n });
        }
        let mut add_t = Vec::with_capacity(n * n);
        let mut mul_t = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                let (s, p) = (add(a, b), mul(a, b));
                if s >= n || p >= n {
                    return Err(Error::Axiom(AxiomViolation { law: Law::Range, witness: vec![a, b] }));
                }
                add_t.push(s as u16);
                mul_t.push(p as u16);
            }
        }
        let mut neg = vec![0u16; n];
        for a in 0..n {
            match (0..n).find(|&b| add_t[a * n + b] as usize == zero) {
                Some(b) => neg[a] = b as u16,
                None => return Err(Error::Axiom(AxiomViolation { law: Law::AddInverse, witness: vec![a] })),
            }
        }
        let mut ring = FiniteRing {
            n,
            add: add_t,
            mul: mul_t,
            neg,
            zero,
            one,
            labels: Vec::new(),
            notation,
            provenance,
        };
        ring.labels = (0..n).map(|e| ring.literal(e).to_string()).collect();
        Ok(Arc::new(ring))
    }

    /// The tables in nested form.
    pub fn tables(&self) -> RingTables {
        let n = self.n;
        let rows = |t: &[u16]| (0..n).map(|a| t[a * n..(a + 1) * n].iter().map(|&v| v as usize).collect()).collect();
        RingTables { add: rows(&self.add), mul: rows(&self.mul), zero: self.zero, one: self.one }
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn zero(&self) -> Elem {
        self.zero
    }

    #[inline]
    pub fn one(&self) -> Elem {
        self.one
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.add[a * self.n + b] as Elem
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a * self.n + b] as Elem
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.neg[a] as Elem
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.n
    }

    pub fn label(&self, e: Elem) -> &str {
        &self.labels[e]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn notation(&self) -> &Notation {
        &self.notation
    }

    /// How the ring was built, e.g. `upper(zmod(2),2)`.
    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    /// Native literal for an element.
    pub fn literal(&self, e: Elem) -> ElemLit {
        self.notation.literal(e)
    }

    /// Resolves a literal written in this ring's native notation.
    pub fn resolve(&self, lit: &ElemLit) -> Result<Elem, Error> {
        self.notation.resolve(self, lit)
    }

    /// Stable hash of the tables, used as a cache key.
    pub fn fingerprint(&self) -> u64 {
        let mut h = DefaultHasher::new();
        self.n.hash(&mut h);
        self.zero.hash(&mut h);
        self.one.hash(&mut h);
        self.add.hash(&mut h);
        self.mul.hash(&mut h);
        h.finish()
    }

    /// `a^k`, with `a^0 = one`.
    pub fn power(&self, a: Elem, mut k: u64) -> Elem {
        let mut acc = self.one;
        let mut base = a;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// Smallest `k >= 1` with `a^k = 0`, or `None` when `a` is not nilpotent.
    pub fn nilpotency_index(&self, a: Elem) -> Option<u32> {
        let mut seen = FixedBitSet::with_capacity(self.n);
        let mut p = a;
        for k in 1..=self.n as u32 {
            if p == self.zero {
                return Some(k);
            }
            if seen.put(p) {
                return None;
            }
            p = self.mul(p, a);
        }
        None
    }

    pub fn is_nilpotent(&self, a: Elem) -> bool {
        self.nilpotency_index(a).is_some()
    }

    /// The set of all nilpotent elements (not assumed to be an ideal).
    pub fn nilradical(&self) -> ElementSet {
        ElementSet::from_sorted(self.n, self.elements().filter(|&a| self.is_nilpotent(a)).collect())
    }

    /// Smallest nonzero square-zero element, if any. A ring is reduced iff
    /// this is `None`.
    pub fn square_zero_witness(&self) -> Option<Elem> {
        self.elements().find(|&a| a != self.zero && self.mul(a, a) == self.zero)
    }

    pub fn is_reduced(&self) -> bool {
        self.square_zero_witness().is_none()
    }

    pub fn is_central(&self, e: Elem) -> bool {
        self.elements().all(|r| self.mul(e, r) == self.mul(r, e))
    }

    pub fn center(&self) -> ElementSet {
        ElementSet::from_sorted(self.n, self.elements().filter(|&e| self.is_central(e)).collect())
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.n).all(|a| (a + 1..self.n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Both `x ↦ e·x` and `x ↦ x·e` are injective.
    pub fn is_regular(&self, e: Elem) -> bool {
        let mut left = FixedBitSet::with_capacity(self.n);
        let mut right = FixedBitSet::with_capacity(self.n);
        self.elements().all(|x| !left.put(self.mul(e, x)) && !right.put(self.mul(x, e)))
    }

    /// Regular central elements.
    pub fn regular_central(&self) -> ElementSet {
        ElementSet::from_sorted(
            self.n,
            self.elements().filter(|&e| self.is_central(e) && self.is_regular(e)).collect(),
        )
    }

    /// Two-sided inverse of `e`, if one exists.
    pub fn inverse(&self, e: Elem) -> Option<Elem> {
        self.elements().find(|&x| self.mul(e, x) == self.one && self.mul(x, e) == self.one)
    }

    /// Lexicographically smallest `(a, b, r)` with `a·b = 0` but `a·r·b ≠ 0`.
    pub fn semicommutative_witness(&self) -> Option<(Elem, Elem, Elem)> {
        for a in self.elements() {
            for b in self.elements() {
                if self.mul(a, b) != self.zero {
                    continue;
                }
                if let Some(r) = self.elements().find(|&r| self.mul(self.mul(a, r), b) != self.zero) {
                    return Some((a, b, r));
                }
            }
        }
        None
    }

    pub fn is_semicommutative(&self) -> bool {
        self.semicommutative_witness().is_none()
    }
}

/// A set of elements of one ring, kept as a strictly increasing index list
/// with a membership bitmap.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ElementSet {
    universe: usize,
    members: Vec<Elem>,
    bits: FixedBitSet,
}

impl ElementSet {
    pub fn new(universe: usize, members: impl IntoIterator<Item = Elem>) -> ElementSet {
        let mut bits = FixedBitSet::with_capacity(universe);
        for m in members {
            assert!(m < universe, "element {m} outside ring of size {universe}");
            bits.insert(m);
        }
        ElementSet { universe, members: bits.ones().collect(), bits }
    }

    pub(crate) fn from_sorted(universe: usize, members: Vec<Elem>) -> ElementSet {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        let mut bits = FixedBitSet::with_capacity(universe);
        members.iter().for_each(|&m| bits.insert(m));
        ElementSet { universe, members, bits }
    }

    pub(crate) fn from_bits(bits: FixedBitSet) -> ElementSet {
        ElementSet { universe: bits.len(), members: bits.ones().collect(), bits }
    }

    pub fn singleton(universe: usize, e: Elem) -> ElementSet {
        Self::new(universe, [e])
    }

    pub fn all(universe: usize) -> ElementSet {
        Self::from_sorted(universe, (0..universe).collect())
    }

    #[inline]
    pub fn contains(&self, e: Elem) -> bool {
        self.bits.contains(e)
    }

    pub fn members(&self) -> &[Elem] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn iter(&self) -> impl Iterator<Item = Elem> + '_ {
        self.members.iter().copied()
    }

    pub fn intersection(&self, other: &ElementSet) -> ElementSet {
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        Self::from_bits(bits)
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.bits.is_subset(&other.bits)
    }

    /// Position of `e` in the member list.
    pub fn position(&self, e: Elem) -> Option<usize> {
        self.members.binary_search(&e).ok()
    }

    /// Renders the members with the ring's labels: `{0, 2}`.
    pub fn display(&self, ring: &FiniteRing) -> String {
        let parts: Vec<&str> = self.iter().map(|e| ring.label(e)).collect();
        format!("{{{}}}", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{matrix_ring, upper_triangular, zmod};

    fn zmod_tables(n: usize) -> RingTables {
        RingTables {
            add: (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect(),
            mul: (0..n).map(|a| (0..n).map(|b| (a * b) % n).collect()).collect(),
            zero: 0,
            one: 1,
        }
    }

    #[test]
    fn z4_tables_verify() {
        assert!(verify_axioms(&zmod_tables(4)).is_ok());
    }

    #[test]
    fn patched_z4_reports_first_violation() {
        let mut t = zmod_tables(4);
        t.mul[2][2] = 1;
        // (2·2)·3 = 3 but 2·(2·3) = 1; (2,2,2) still associates.
        match verify_axioms(&t) {
            Err(Error::Axiom(v)) => {
                assert_eq!(v.law, Law::MulAssoc);
                assert_eq!(v.witness, vec![2, 2, 3]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn degenerate_ring_rejected() {
        let t = RingTables { add: vec![vec![0]], mul: vec![vec![0]], zero: 0, one: 0 };
        assert!(matches!(verify_axioms(&t), Err(Error::Degenerate { size: 1 })));
    }

    #[test]
    fn ragged_and_out_of_range_tables() {
        let mut t = zmod_tables(3);
        t.add[1].pop();
        assert!(matches!(verify_axioms(&t), Err(Error::Axiom(AxiomViolation { law: Law::Range, .. }))));
        let mut t = zmod_tables(3);
        t.mul[2][1] = 7;
        match verify_axioms(&t) {
            Err(Error::Axiom(v)) => assert_eq!((v.law, v.witness), (Law::Range, vec![2, 1])),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn non_commutative_addition_detected() {
        let mut t = zmod_tables(2);
        t.add[0][1] = 0;
        let err = verify_axioms(&t).unwrap_err();
        assert!(matches!(err, Error::Axiom(AxiomViolation { law: Law::AddComm, .. })));
    }

    #[test]
    fn inferred_identities() {
        let t = zmod_tables(5);
        let inferred = RingTables::infer_identities(t.add.clone(), t.mul.clone());
        assert_eq!((inferred.zero, inferred.one), (0, 1));
    }

    #[test]
    fn powers_mod_four() {
        let r = zmod(4).unwrap();
        assert_eq!(r.power(2, 2), 0);
        assert_eq!(r.power(3, 2), 1);
        for a in r.elements() {
            assert_eq!(r.power(a, 0), r.one());
        }
    }

    #[test]
    fn nilpotency_in_small_rings() {
        let r = zmod(4).unwrap();
        assert_eq!(r.nilpotency_index(2), Some(2));
        assert_eq!(r.nilpotency_index(1), None);
        assert_eq!(r.nilpotency_index(0), Some(1));
        assert_eq!(r.nilradical().members(), &[0, 2]);
        assert_eq!(zmod(6).unwrap().nilradical().members(), &[0]);
        let m2 = matrix_ring(&zmod(2).unwrap(), 2, 256).unwrap();
        let all_ones = m2.resolve(&"[[1,1],[1,1]]".parse().unwrap()).unwrap();
        assert_eq!(m2.nilpotency_index(all_ones), Some(2));
    }

    #[test]
    fn reducedness_witnesses() {
        assert!(zmod(6).unwrap().is_reduced());
        assert_eq!(zmod(4).unwrap().square_zero_witness(), Some(2));
        let t2 = upper_triangular(&zmod(2).unwrap(), 2, 256).unwrap();
        let e12 = t2.resolve(&"[[0,1],[0,0]]".parse().unwrap()).unwrap();
        assert_eq!(t2.square_zero_witness(), Some(e12));
    }

    #[test]
    fn regular_central_sets() {
        assert_eq!(zmod(4).unwrap().regular_central().members(), &[1, 3]);
        assert_eq!(zmod(6).unwrap().regular_central().members(), &[1, 5]);
        let t2 = upper_triangular(&zmod(2).unwrap(), 2, 256).unwrap();
        assert_eq!(t2.center().len(), 2);
        assert_eq!(t2.regular_central().members(), &[t2.one()]);
    }

    #[test]
    fn semicommutativity() {
        for n in 2..=8 {
            assert!(zmod(n).unwrap().is_semicommutative());
        }
        let t2 = upper_triangular(&zmod(2).unwrap(), 2, 256).unwrap();
        let lit = |s: &str| t2.resolve(&s.parse().unwrap()).unwrap();
        assert_eq!(
            t2.semicommutative_witness(),
            Some((lit("[[1,0],[0,0]]"), lit("[[0,0],[0,1]]"), lit("[[0,1],[0,0]]")))
        );
    }

    #[test]
    fn element_set_canonical() {
        let s = ElementSet::new(8, [5, 1, 3, 1]);
        assert_eq!(s.members(), &[1, 3, 5]);
        assert!(s.contains(3) && !s.contains(2));
        assert_eq!(s, ElementSet::new(8, [3, 5, 1]));
        assert_eq!(s.position(5), Some(2));
    }
}
