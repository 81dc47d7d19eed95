//! Backtracking search over polynomial pairs `(f, g)` of degree `<= d`
//! whose product has every coefficient in a set `S`.
//!
//! The witness search fixes `f` in lexicographic order and backtracks over
//! `g`. With `f = x^p f'` and `f'_0 != 0`, the coefficient of `x^k` in
//! `f'g` is complete once `b_k` is chosen, so each level reads its legal
//! choices from a precomputed table keyed by `(f'_0, partial sum)`.

use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use rustc_hash::FxHashSet;

use crate::poly::advance;
use crate::ring::{Elem, ElementSet, FiniteRing};
use crate::Error;

/// Largest supported degree bound.
pub const MAX_DEGREE: usize = 7;

/// Default cap on the number of outer polynomials, `|R|^(d+1)`.
pub const DEFAULT_SEARCH_LIMIT: usize = 1 << 26;

/// Which factor is fixed while the other is backtracked.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    FixF,
    FixG,
}

/// Minimal `(f, g, i, j)` with `fg ∈ S[x]` and `a_i b_j ∉ T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawWitness {
    pub f: Vec<Elem>,
    pub g: Vec<Elem>,
    pub i: usize,
    pub j: usize,
    pub product: Elem,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome {
    pub witness: Option<RawWitness>,
    /// Complete pairs with `fg ∈ S[x]` reached by the search.
    pub pairs_examined: u64,
}

/// Scheduling and budget knobs. None of them changes an outcome.
#[derive(Clone, Copy, Debug, Default)]
pub struct SearchControl<'a> {
    pub cancel: Option<&'a AtomicBool>,
    /// Shuffles the order in which blocks are scheduled.
    pub seed: Option<u64>,
    /// Cap on `|R|^(d+1)`; `0` selects [`DEFAULT_SEARCH_LIMIT`].
    pub limit: usize,
}

struct Tables {
    n: usize,
    d: usize,
    add: Vec<u16>,
    mul: Vec<u16>,
    zero: usize,
    allowed: Vec<bool>,
    /// CSR lists: for fixed `x` and partial sum `c`, the `y` with
    /// `x·y + c ∈ S` (or `y·x + c ∈ S` for [`Orientation::FixG`]).
    offsets: Vec<u32>,
    choices: Vec<u16>,
    side: Orientation,
}

impl Tables {
    fn new(r: &FiniteRing, d: usize, s: &ElementSet, side: Orientation, limit: usize) -> Result<Tables, Error> {
        let n = r.size();
        if d > MAX_DEGREE {
            return Err(Error::Invalid(format!("degree bound {d} exceeds the supported maximum {MAX_DEGREE}")));
        }
        if s.universe() != n {
            return Err(Error::HostMismatch);
        }
        if !s.contains(r.zero()) {
            return Err(Error::Invalid("the coefficient set must contain zero".into()));
        }
        let limit = if limit == 0 { DEFAULT_SEARCH_LIMIT } else { limit };
        match n.checked_pow(d as u32 + 1) {
            Some(space) if space <= limit => {}
            needed => {
                return Err(Error::Budget {
                    what: format!("polynomial pairs of degree <= {d} over a ring of size {n}"),
                    needed: needed.unwrap_or(usize::MAX),
                    limit,
                })
            }
        }
        let mut add = Vec::with_capacity(n * n);
        let mut mul = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                add.push(r.add(a, b) as u16);
                mul.push(r.mul(a, b) as u16);
            }
        }
        let allowed: Vec<bool> = (0..n).map(|e| s.contains(e)).collect();
        let mut offsets = Vec::with_capacity(n * n + 1);
        let mut choices = Vec::new();
        offsets.push(0);
        for x in 0..n {
            for c in 0..n {
                for y in 0..n {
                    let p = match side {
                        Orientation::FixF => r.mul(x, y),
                        Orientation::FixG => r.mul(y, x),
                    };
                    if allowed[r.add(p, c)] {
                        choices.push(y as u16);
                    }
                }
                offsets.push(choices.len() as u32);
            }
        }
        Ok(Tables { n, d, add, mul, zero: r.zero(), allowed, offsets, choices, side })
    }

    #[inline]
    fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.n + b] as usize
    }

    /// Product of a fixed coefficient with a chosen one, in ring order.
    #[inline]
    fn act(&self, fixed: usize, var: usize) -> usize {
        match self.side {
            Orientation::FixF => self.mul[fixed * self.n + var] as usize,
            Orientation::FixG => self.mul[var * self.n + fixed] as usize,
        }
    }

    #[inline]
    fn choices(&self, lead: usize, c: usize) -> &[u16] {
        let k = lead * self.n + c;
        &self.choices[self.offsets[k] as usize..self.offsets[k + 1] as usize]
    }
}

const MAX_LEN: usize = 2 * MAX_DEGREE + 2;

/// Per-thread state for backtracking under one fixed polynomial.
struct Walk<'t> {
    t: &'t Tables,
    /// Trimmed fixed polynomial, leading coefficient nonzero.
    fixed: Vec<usize>,
    /// `hits[y]`: some fixed coefficient times `y` leaves `T`.
    hits: Vec<bool>,
    var: Vec<usize>,
    memo: Vec<FxHashSet<u128>>,
    dedup: bool,
    count: u64,
}

impl<'t> Walk<'t> {
    fn new(t: &'t Tables, dedup: bool) -> Walk<'t> {
        Walk {
            t,
            fixed: Vec::with_capacity(t.d + 1),
            hits: vec![false; t.n],
            var: vec![0; t.d + 1],
            memo: (0..=t.d).map(|_| FxHashSet::default()).collect(),
            dedup,
            count: 0,
        }
    }

    /// Loads the fixed polynomial; false when it is zero.
    fn load(&mut self, full: &[usize], target: Option<&[bool]>) -> bool {
        let Some(p) = full.iter().position(|&a| a != self.t.zero) else {
            return false;
        };
        self.fixed.clear();
        self.fixed.extend_from_slice(&full[p..]);
        if let Some(target) = target {
            for y in 0..self.t.n {
                self.hits[y] = full.iter().any(|&a| !target[self.t.act(a, y)]);
            }
        }
        if self.dedup {
            self.memo.iter_mut().for_each(FxHashSet::clear);
        }
        true
    }

    /// Depth-first over the free coefficients in lexicographic order.
    /// With `want_hit`, stops at the first complete pair whose free
    /// polynomial has a coefficient in `hits`; otherwise visits all pairs.
    fn run(&mut self, want_hit: bool, visit: &mut dyn FnMut(&[usize])) -> bool {
        let partial = [self.t.zero as u16; MAX_LEN];
        self.dfs(0, &partial, false, want_hit, visit)
    }

    fn dfs(
        &mut self,
        k: usize,
        partial: &[u16; MAX_LEN],
        hit: bool,
        want_hit: bool,
        visit: &mut dyn FnMut(&[usize]),
    ) -> bool {
        let t = self.t;
        let len = self.fixed.len();
        let top = len + t.d;
        let lead = self.fixed[0];
        let choices = t.choices(lead, partial[k] as usize);
        for &y in choices {
            let y = y as usize;
            self.var[k] = y;
            let mut next = *partial;
            for (s, &a) in self.fixed.iter().enumerate().skip(1) {
                next[k + s] = t.add(next[k + s] as usize, t.act(a, y)) as u16;
            }
            let hit = hit || (want_hit && self.hits[y]);
            if k == t.d {
                if (t.d + 1..top).all(|m| t.allowed[next[m] as usize]) {
                    self.count += 1;
                    if want_hit {
                        if hit {
                            return true;
                        }
                    } else {
                        visit(&self.var);
                    }
                }
                continue;
            }
            if self.dedup {
                let mut key = hit as u128;
                for &v in &next[k + 1..k + len] {
                    key = (key << 16) | v as u128;
                }
                if !self.memo[k].insert(key) {
                    continue;
                }
            }
            if self.dfs(k + 1, &next, hit, want_hit, visit) {
                return true;
            }
        }
        false
    }
}

fn first_violation(r: &FiniteRing, f: &[Elem], g: &[Elem], target: &ElementSet) -> Option<(usize, usize, Elem)> {
    for (i, &a) in f.iter().enumerate() {
        for (j, &b) in g.iter().enumerate() {
            let p = r.mul(a, b);
            if !target.contains(p) {
                return Some((i, j, p));
            }
        }
    }
    None
}

struct BlockResult {
    count: u64,
    found: Option<(Vec<Elem>, Vec<Elem>)>,
    interrupted: bool,
}

/// Finds the lexicographically minimal `(f, g, i, j)`, ordered by the
/// coefficients of `f`, then of `g`, then `i`, then `j`, such that every
/// coefficient of `fg` lies in `allowed` and `a_i b_j ∉ target`.
///
/// The zero polynomial `f` is skipped. Blocks of `f` sharing leading
/// coefficients run in parallel; the outcome, including the count, does
/// not depend on scheduling.
pub fn find_min_witness(
    r: &FiniteRing,
    d: usize,
    allowed: &ElementSet,
    target: &ElementSet,
    ctl: SearchControl<'_>,
) -> Result<SearchOutcome, Error> {
    let t = Tables::new(r, d, allowed, Orientation::FixF, ctl.limit)?;
    if target.universe() != r.size() {
        return Err(Error::HostMismatch);
    }
    if !target.contains(r.zero()) {
        return Err(Error::Invalid("the target set must contain zero".into()));
    }
    let target_bits: Vec<bool> = r.elements().map(|e| target.contains(e)).collect();
    let n = t.n;
    let width = (1..=d + 1).find(|&m| n.pow(m as u32) >= 64).unwrap_or(d + 1);
    let blocks = n.pow(width as u32);
    let mut order: Vec<usize> = (0..blocks).collect();
    if let Some(seed) = ctl.seed {
        order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    }
    let best = AtomicUsize::new(usize::MAX);
    let run_block = |b: usize| -> BlockResult {
        let mut walk = Walk::new(&t, true);
        let mut f = vec![0usize; d + 1];
        let mut rem = b;
        for slot in f[..width].iter_mut().rev() {
            *slot = rem % n;
            rem /= n;
        }
        let mut out = BlockResult { count: 0, found: None, interrupted: false };
        loop {
            if ctl.cancel.is_some_and(|c| c.load(Ordering::Relaxed)) {
                out.interrupted = true;
                break;
            }
            if best.load(Ordering::Relaxed) < b {
                break;
            }
            if walk.load(&f, Some(&target_bits)) && walk.hits.iter().any(|&h| h) && walk.run(true, &mut |_| {}) {
                out.found = Some((f.clone(), walk.var.clone()));
                best.fetch_min(b, Ordering::Relaxed);
                break;
            }
            if !advance(&mut f[width..], n) {
                break;
            }
        }
        out.count = walk.count;
        out
    };
    let mut results: Vec<(usize, BlockResult)> = order.par_iter().map(|&b| (b, run_block(b))).collect();
    results.sort_by_key(|(b, _)| *b);
    let mut pairs_examined = 0;
    for (_, res) in results {
        if res.interrupted {
            return Err(Error::Interrupted);
        }
        pairs_examined += res.count;
        if let Some((f, g)) = res.found {
            let (i, j, product) = first_violation(r, &f, &g, target)
                .ok_or_else(|| Error::Inconsistent("search returned a pair without a violation".into()))?;
            return Ok(SearchOutcome { witness: Some(RawWitness { f, g, i, j, product }), pairs_examined });
        }
    }
    Ok(SearchOutcome { witness: None, pairs_examined })
}

/// Calls `visit(f, g)` for every pair with `fg ∈ S[x]`, including zero
/// polynomials, in lexicographic order of the fixed factor and then the
/// free one.
pub fn for_each_annihilating_pair(
    r: &FiniteRing,
    d: usize,
    allowed: &ElementSet,
    orientation: Orientation,
    limit: usize,
    mut visit: impl FnMut(&[Elem], &[Elem]),
) -> Result<u64, Error> {
    let t = Tables::new(r, d, allowed, orientation, limit)?;
    let n = t.n;
    let mut walk = Walk::new(&t, false);
    let mut fixed = vec![0usize; d + 1];
    let mut zero_free = 0u64;
    loop {
        let mut emit = |var: &[usize]| match orientation {
            Orientation::FixF => visit(&fixed, var),
            Orientation::FixG => visit(var, &fixed),
        };
        if walk.load(&fixed, None) {
            walk.run(false, &mut emit);
        } else {
            let mut free = vec![0usize; d + 1];
            loop {
                emit(&free);
                zero_free += 1;
                if !advance(&mut free, n) {
                    break;
                }
            }
        }
        if !advance(&mut fixed, n) {
            break;
        }
    }
    Ok(walk.count + zero_free)
}

/// Number of pairs with `fg ∈ S[x]`.
pub fn count_annihilating_pairs(
    r: &FiniteRing,
    d: usize,
    allowed: &ElementSet,
    orientation: Orientation,
) -> Result<u64, Error> {
    for_each_annihilating_pair(r, d, allowed, orientation, 0, |_, _| {})
}

/// Every pair with `fg ∈ S[x]`, in the order of [`for_each_annihilating_pair`]
/// with `f` fixed. Pairs are produced one outer polynomial at a time.
pub fn annihilating_pairs<'r>(
    r: &'r FiniteRing,
    d: usize,
    allowed: &ElementSet,
) -> Result<AnnihilatingPairs<'r>, Error> {
    let tables = Tables::new(r, d, allowed, Orientation::FixF, 0)?;
    Ok(AnnihilatingPairs { tables, f: vec![0; d + 1], started: false, buffer: Vec::new(), pos: 0, _ring: r })
}

/// Stream returned by [`annihilating_pairs`].
pub struct AnnihilatingPairs<'r> {
    tables: Tables,
    f: Vec<Elem>,
    started: bool,
    /// Free polynomials paired with the current `f`, flattened.
    buffer: Vec<u16>,
    pos: usize,
    _ring: &'r FiniteRing,
}

impl Iterator for AnnihilatingPairs<'_> {
    type Item = (Vec<Elem>, Vec<Elem>);

    fn next(&mut self) -> Option<(Vec<Elem>, Vec<Elem>)> {
        let w = self.tables.d + 1;
        while self.pos == self.buffer.len() {
            if self.started && !advance(&mut self.f, self.tables.n) {
                return None;
            }
            self.started = true;
            self.buffer.clear();
            self.pos = 0;
            let mut walk = Walk::new(&self.tables, false);
            let buf = &mut self.buffer;
            if walk.load(&self.f, None) {
                walk.run(false, &mut |g| buf.extend(g.iter().map(|&b| b as u16)));
            } else {
                let mut g = vec![0usize; w];
                loop {
                    buf.extend(g.iter().map(|&b| b as u16));
                    if !advance(&mut g, self.tables.n) {
                        break;
                    }
                }
            }
        }
        let g = self.buffer[self.pos..self.pos + w].iter().map(|&b| b as usize).collect();
        self.pos += w;
        Some((self.f.clone(), g))
    }
}
