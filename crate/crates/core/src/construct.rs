//! Ring constructors: the atom catalog (`Z/n`, products, matrix and
//! truncated polynomial rings), quotients, subrings, `f(A)+J`, and the
//! amalgamation `A ⋈^f J` with amalgamated duplication as the `f = id` case.

use std::collections::HashMap;
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::morph::{Ideal, RingHom};
use crate::notation::{digits, matrix_positions, undigits, Notation};
use crate::ring::{Elem, ElementSet, FiniteRing};
use crate::Error;

/// Default element budget for combinatorial constructors.
pub const DEFAULT_MAX_RING_SIZE: usize = 256;

fn budget(what: impl Into<String>, base: usize, exp: usize, max_size: usize) -> Result<usize, Error> {
    let what = what.into();
    match base.checked_pow(exp as u32) {
        Some(n) if n <= max_size => Ok(n),
        Some(n) => Err(Error::Budget { what, needed: n, limit: max_size }),
        None => Err(Error::Budget { what, needed: usize::MAX, limit: max_size }),
    }
}

/// `Z/nZ`, element `i` is the residue `i`.
pub fn zmod(n: usize) -> Result<Arc<FiniteRing>, Error> {
    if n < 2 {
        return Err(Error::Invalid(format!("zmod needs n >= 2, got {n}")));
    }
    FiniteRing::build(n, |a, b| (a + b) % n, |a, b| (a * b) % n, 0, 1 % n, Notation::ZMod(n), format!("zmod({n})"))
}

/// Componentwise ring on pairs; index of `(r, s)` is `r·|S| + s`.
pub fn direct_product(r: &Arc<FiniteRing>, s: &Arc<FiniteRing>) -> Result<Arc<FiniteRing>, Error> {
    let m = s.size();
    let n = r.size() * m;
    let split = |e: Elem| (e / m, e % m);
    FiniteRing::build(
        n,
        |x, y| {
            let ((a, b), (c, d)) = (split(x), split(y));
            r.add(a, c) * m + s.add(b, d)
        },
        |x, y| {
            let ((a, b), (c, d)) = (split(x), split(y));
            r.mul(a, c) * m + s.mul(b, d)
        },
        r.zero() * m + s.zero(),
        r.one() * m + s.one(),
        Notation::Product(r.clone(), s.clone()),
        format!("product({},{})", r.provenance(), s.provenance()),
    )
}

/// Upper triangular `k×k` matrices over `base`.
pub fn upper_triangular(base: &Arc<FiniteRing>, k: usize, max_size: usize) -> Result<Arc<FiniteRing>, Error> {
    matrices(base, k, true, max_size)
}

/// Full `k×k` matrices over `base`.
pub fn matrix_ring(base: &Arc<FiniteRing>, k: usize, max_size: usize) -> Result<Arc<FiniteRing>, Error> {
    matrices(base, k, false, max_size)
}

fn matrices(base: &Arc<FiniteRing>, k: usize, upper: bool, max_size: usize) -> Result<Arc<FiniteRing>, Error> {
    if k < 2 {
        return Err(Error::Invalid(format!("matrix dimension must be >= 2, got {k}")));
    }
    let name = format!("{}({},{k})", if upper { "upper" } else { "matrix" }, base.provenance());
    let pos = matrix_positions(k, upper);
    let q = base.size();
    let n = budget(name.clone(), q, pos.len(), max_size)?;
    let unpack = |e: Elem| {
        let mut m = vec![vec![base.zero(); k]; k];
        for (&(r, c), v) in pos.iter().zip(digits(e, q, pos.len())) {
            m[r][c] = v;
        }
        m
    };
    let pack = |m: &[Vec<Elem>]| undigits(&pos.iter().map(|&(r, c)| m[r][c]).collect::<Vec<_>>(), q);
    let mut id = vec![vec![base.zero(); k]; k];
    for (i, row) in id.iter_mut().enumerate() {
        row[i] = base.one();
    }
    let one = pack(&id);
    let decoded: Vec<Vec<Vec<Elem>>> = (0..n).map(unpack).collect();
    FiniteRing::build(
        n,
        |x, y| {
            let (a, b) = (&decoded[x], &decoded[y]);
            let sum: Vec<Vec<Elem>> =
                (0..k).map(|r| (0..k).map(|c| base.add(a[r][c], b[r][c])).collect()).collect();
            pack(&sum)
        },
        |x, y| {
            let (a, b) = (&decoded[x], &decoded[y]);
            let prod: Vec<Vec<Elem>> = (0..k)
                .map(|r| {
                    (0..k)
                        .map(|c| (0..k).fold(base.zero(), |acc, i| base.add(acc, base.mul(a[r][i], b[i][c]))))
                        .collect()
                })
                .collect();
            pack(&prod)
        },
        0,
        one,
        Notation::Matrix { base: base.clone(), dim: k, upper },
        name,
    )
}

/// `base[t]/(t^k)`: coefficient tuples of length `k` under truncated
/// convolution.
pub fn poly_quotient(base: &Arc<FiniteRing>, k: usize, max_size: usize) -> Result<Arc<FiniteRing>, Error> {
    if k < 2 {
        return Err(Error::Invalid(format!("truncation length must be >= 2, got {k}")));
    }
    let name = format!("polyquot({},{k})", base.provenance());
    let q = base.size();
    let n = budget(name.clone(), q, k, max_size)?;
    let decoded: Vec<Vec<Elem>> = (0..n).map(|e| digits(e, q, k)).collect();
    let mut one = vec![base.zero(); k];
    one[0] = base.one();
    FiniteRing::build(
        n,
        |x, y| {
            let s: Vec<Elem> = decoded[x].iter().zip(&decoded[y]).map(|(&a, &b)| base.add(a, b)).collect();
            undigits(&s, q)
        },
        |x, y| {
            let (a, b) = (&decoded[x], &decoded[y]);
            let mut c = vec![base.zero(); k];
            for i in 0..k {
                for j in 0..k - i {
                    c[i + j] = base.add(c[i + j], base.mul(a[i], b[j]));
                }
            }
            undigits(&c, q)
        },
        0,
        undigits(&one, q),
        Notation::PolyQuot { base: base.clone(), len: k },
        name,
    )
}

/// `R/I` with cosets indexed in order of their smallest member, which is
/// also the coset representative. Returns the ring and the projection.
pub fn quotient_ring(ideal: &Ideal) -> Result<(Arc<FiniteRing>, Vec<Elem>), Error> {
    let host = ideal.host();
    let n = host.size();
    let unset = usize::MAX;
    let mut proj = vec![unset; n];
    let mut reps = Vec::new();
    for x in host.elements() {
        if proj[x] != unset {
            continue;
        }
        let c = reps.len();
        reps.push(x);
        for i in ideal.members().iter() {
            proj[host.add(x, i)] = c;
        }
    }
    let ring = FiniteRing::build(
        reps.len(),
        |a, b| proj[host.add(reps[a], reps[b])],
        |a, b| proj[host.mul(reps[a], reps[b])],
        proj[host.zero()],
        proj[host.one()],
        Notation::Quotient { host: host.clone(), reps: reps.clone(), proj: proj.clone() },
        format!("quotient({},{})", host.provenance(), ideal.members().display(host)),
    )?;
    Ok((ring, proj))
}

/// An injective operation-preserving map from `sub` into `host`.
#[derive(Clone, Debug)]
pub struct Embedding {
    pub sub: Arc<FiniteRing>,
    pub host: Arc<FiniteRing>,
    pub map: Vec<Elem>,
    /// Whether `sub`'s identity maps to the host identity.
    pub unital: bool,
}

impl Embedding {
    /// Materializes a closed subset of `host` that has its own identity as a
    /// ring. Fails when the subset is not closed or lacks an identity.
    pub fn from_members(
        host: &Arc<FiniteRing>,
        members: &ElementSet,
        provenance: impl Into<String>,
    ) -> Result<Embedding, Error> {
        let embed = members.members().to_vec();
        let pos = |e: Elem| {
            members
                .position(e)
                .ok_or_else(|| Error::Inconsistent(format!("subset not closed: {} escapes", host.label(e))))
        };
        let mut closed = Ok(());
        let mut check = |e: Elem| match pos(e) {
            Ok(p) => p,
            Err(err) => {
                closed = Err(err);
                0
            }
        };
        let m = embed.len();
        let mut add = Vec::with_capacity(m * m);
        let mut mul = Vec::with_capacity(m * m);
        for &x in &embed {
            for &y in &embed {
                add.push(check(host.add(x, y)));
                mul.push(check(host.mul(x, y)));
            }
        }
        closed?;
        let identity = local_identity(host, members)
            .ok_or_else(|| Error::Invalid(format!("subset {} has no identity", members.display(host))))?;
        let sub = FiniteRing::build(
            m,
            |a, b| add[a * m + b],
            |a, b| mul[a * m + b],
            pos(host.zero())?,
            pos(identity)?,
            Notation::Sub { host: host.clone(), embed: embed.clone() },
            provenance.into(),
        )?;
        Ok(Embedding { sub, host: host.clone(), map: embed, unital: identity == host.one() })
    }

    /// Image of the embedding as a subset of the host.
    pub fn image(&self) -> ElementSet {
        ElementSet::new(self.host.size(), self.map.iter().copied())
    }
}

fn local_identity(host: &FiniteRing, members: &ElementSet) -> Option<Elem> {
    if members.contains(host.one()) {
        return Some(host.one());
    }
    members.iter().find(|&e| members.iter().all(|x| host.mul(e, x) == x && host.mul(x, e) == x))
}

/// Result of closing a seed set under `+`, `-` and `·`.
#[derive(Clone, Debug)]
pub struct SubringClosure {
    pub host: Arc<FiniteRing>,
    pub members: ElementSet,
    /// An element acting as identity on the closure, if there is one.
    pub identity: Option<Elem>,
}

impl SubringClosure {
    pub fn is_unital(&self) -> bool {
        self.identity.is_some()
    }

    pub fn embedding(&self) -> Result<Embedding, Error> {
        Embedding::from_members(&self.host, &self.members, format!("sub({})", self.host.provenance()))
    }
}

/// Smallest subset containing `seed` (and `one` when `require_one`) closed
/// under addition, negation and multiplication.
pub fn subring_closure(host: &Arc<FiniteRing>, seed: &ElementSet, require_one: bool) -> SubringClosure {
    let mut inside = FixedBitSet::with_capacity(host.size());
    let mut members: Vec<Elem> = Vec::new();
    let mut queue: Vec<Elem> = seed.iter().chain([host.zero()]).collect();
    if require_one {
        queue.push(host.one());
    }
    while let Some(z) = queue.pop() {
        if inside.put(z) {
            continue;
        }
        members.push(z);
        queue.push(host.neg(z));
        for &y in &members {
            queue.extend([host.add(z, y), host.mul(z, y), host.mul(y, z)]);
        }
    }
    let members = ElementSet::from_bits(inside);
    let identity = local_identity(host, &members);
    SubringClosure { host: host.clone(), members, identity }
}

/// The subring `f(A) + J` of `B`. It contains `1_B = f(1_A)`.
pub fn f_plus_j(f: &RingHom, j: &Ideal) -> Result<Embedding, Error> {
    let b = f.codomain();
    if !Arc::ptr_eq(b, j.host()) && **b != **j.host() {
        return Err(Error::HostMismatch);
    }
    let members = ElementSet::new(
        b.size(),
        f.domain().elements().flat_map(|a| j.members().iter().map(move |x| b.add(f.apply(a), x))),
    );
    Embedding::from_members(b, &members, format!("f(A)+J in {}", b.provenance()))
}

/// The amalgamation `A ⋈^f J = {(a, f(a)+j)}` as a ring in its own right.
///
/// Element order is lexicographic in `(a, position of j in J)`.
#[derive(Clone, Debug)]
pub struct AmalgamRing {
    pub ring: Arc<FiniteRing>,
    pub hom: RingHom,
    pub ideal: Ideal,
    /// `(a, j)` for each amalgam element, `j` an element of `B` lying in `J`.
    pub decode: Vec<(Elem, Elem)>,
    /// `(a, f(a)+j) ↦ a`.
    pub proj_a: Vec<Elem>,
    /// `(a, f(a)+j) ↦ f(a)+j`.
    pub proj_b: Vec<Elem>,
}

impl AmalgamRing {
    pub fn base_a(&self) -> &Arc<FiniteRing> {
        self.hom.domain()
    }

    pub fn base_b(&self) -> &Arc<FiniteRing> {
        self.hom.codomain()
    }

    /// Amalgam index of the pair `(a, j)`.
    pub fn encode(&self, a: Elem, j: Elem) -> Option<Elem> {
        let pos = self.ideal.members().position(j)?;
        Some(a * self.ideal.members().len() + pos)
    }
}

/// Builds `A ⋈^f J` for a verified hom `f: A → B` and a proper ideal `J`
/// of `B`.
pub fn amalgamation(f: &RingHom, j: &Ideal) -> Result<AmalgamRing, Error> {
    let (a_ring, b_ring) = (f.domain(), f.codomain());
    if **b_ring != **j.host() {
        return Err(Error::HostMismatch);
    }
    if !j.is_proper() {
        return Err(Error::NotProper(j.members().display(b_ring)));
    }
    let jm = j.members();
    let width = jm.len();
    let n = a_ring.size() * width;
    let decode: Vec<(Elem, Elem)> = (0..n).map(|e| (e / width, jm.members()[e % width])).collect();
    let proj_a: Vec<Elem> = decode.iter().map(|&(a, _)| a).collect();
    let proj_b: Vec<Elem> = decode.iter().map(|&(a, x)| b_ring.add(f.apply(a), x)).collect();
    let mut bad = None;
    let mut locate = |a: Elem, b: Elem| -> Elem {
        let x = b_ring.sub(b, f.apply(a));
        match jm.position(x) {
            Some(p) => a * width + p,
            None => {
                bad.get_or_insert((a, b));
                0
            }
        }
    };
    let mut add = Vec::with_capacity(n * n);
    let mut mul = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            add.push(locate(a_ring.add(proj_a[x], proj_a[y]), b_ring.add(proj_b[x], proj_b[y])));
            mul.push(locate(a_ring.mul(proj_a[x], proj_a[y]), b_ring.mul(proj_b[x], proj_b[y])));
        }
    }
    if let Some((a, b)) = bad {
        return Err(Error::Inconsistent(format!(
            "({}, {}) is not of the form (a, f(a)+j)",
            a_ring.label(a),
            b_ring.label(b)
        )));
    }
    let pairs: Vec<(Elem, Elem)> = (0..n).map(|e| (proj_a[e], proj_b[e])).collect();
    let index: HashMap<(Elem, Elem), Elem> = pairs.iter().enumerate().map(|(e, &p)| (p, e)).collect();
    let ring = FiniteRing::build(
        n,
        |x, y| add[x * n + y],
        |x, y| mul[x * n + y],
        0,
        a_ring.one() * width + jm.position(b_ring.zero()).expect("ideal contains zero"),
        Notation::Pair { left: a_ring.clone(), right: b_ring.clone(), pairs, index },
        format!("amalgam({} -> {} along {})", a_ring.provenance(), b_ring.provenance(), jm.display(b_ring)),
    )?;
    Ok(AmalgamRing { ring, hom: f.clone(), ideal: j.clone(), decode, proj_a, proj_b })
}

/// Amalgamated duplication `A ⋈ I`, i.e. the amalgamation along the
/// identity map.
pub fn duplication(a: &Arc<FiniteRing>, i: &Ideal) -> Result<AmalgamRing, Error> {
    amalgamation(&RingHom::identity(a), i)
}
