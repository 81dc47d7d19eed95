//! Element literals in each ring's native notation.
//!
//! Integers for `Z/n` and indexed tables, `(a,b)` pairs for products and
//! amalgams, `[[a,b],[0,c]]` row lists for matrix rings, `c0 + c1 t + c2 t^2`
//! for truncated polynomial rings. Literals nest: a product of matrix rings
//! uses `([[..]],[[..]])`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::ring::{Elem, FiniteRing};
use crate::Error;

/// Parsed element literal, before resolution against a ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ElemLit {
    Int(u64),
    /// `(x)` groups; `(x,y,..)` is a tuple.
    Tuple(Vec<ElemLit>),
    Rows(Vec<Vec<ElemLit>>),
    Poly(Vec<PolyTerm>),
}

/// One summand `c t^k` of a polynomial literal. `coeff: None` is an implicit
/// unit coefficient; `power == 0` is a constant term.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyTerm {
    pub coeff: Option<Box<ElemLit>>,
    pub power: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{message} at offset {offset}")]
pub struct LitError {
    pub offset: usize,
    pub message: String,
}

impl fmt::Display for ElemLit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ElemLit::Int(v) => write!(f, "{v}"),
            ElemLit::Tuple(items) => {
                f.write_str("(")?;
                write_list(f, items)?;
                f.write_str(")")
            }
            ElemLit::Rows(rows) => {
                f.write_str("[")?;
                for (i, row) in rows.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    f.write_str("[")?;
                    write_list(f, row)?;
                    f.write_str("]")?;
                }
                f.write_str("]")
            }
            ElemLit::Poly(terms) => {
                // A lone constant term keeps its `t^0` so it reads back as a
                // polynomial rather than a bare atom.
                let lone = terms.len() == 1;
                for (i, term) in terms.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" + ")?;
                    }
                    match (&term.coeff, term.power) {
                        (Some(c), 0) if !lone => write!(f, "{c}")?,
                        (Some(c), _) => write!(f, "{c} ")?,
                        (None, _) => {}
                    }
                    match term.power {
                        0 if !lone && term.coeff.is_some() => {}
                        1 => f.write_str("t")?,
                        k => write!(f, "t^{k}")?,
                    }
                }
                Ok(())
            }
        }
    }
}

fn write_list(f: &mut fmt::Formatter<'_>, items: &[ElemLit]) -> fmt::Result {
    for (i, item) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{item}")?;
    }
    Ok(())
}

impl FromStr for ElemLit {
    type Err = LitError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (lit, used) = ElemLit::parse_prefix(s)?;
        if !s[used..].trim().is_empty() {
            return Err(LitError { offset: used, message: "trailing input after element literal".into() });
        }
        Ok(lit)
    }
}

impl ElemLit {
    /// Parses one literal from the start of `src` and returns it with the
    /// number of bytes consumed (trailing whitespace excluded).
    pub fn parse_prefix(src: &str) -> Result<(ElemLit, usize), LitError> {
        let mut p = LitParser { src: src.as_bytes(), pos: 0 };
        let lit = p.elem(0)?;
        let end = src[..p.pos].trim_end_matches([' ', '\t']).len();
        Ok((lit, end))
    }

    fn group(self) -> ElemLit {
        ElemLit::Tuple(vec![self])
    }
}

const MAX_NESTING: usize = 64;

struct LitParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl LitParser<'_> {
    fn err<T>(&self, message: &str) -> Result<T, LitError> {
        Err(LitError { offset: self.pos, message: message.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && (self.src[self.pos] == b' ' || self.src[self.pos] == b'\t') {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<(), LitError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(&format!("expected '{}'", c as char))
        }
    }

    fn int(&mut self) -> Result<u64, LitError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected integer");
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .map_or_else(|| self.err("integer out of range"), Ok)
    }

    fn elem(&mut self, depth: usize) -> Result<ElemLit, LitError> {
        if depth > MAX_NESTING {
            return self.err("literal nested too deeply");
        }
        let mut terms = vec![self.term(depth)?];
        while self.peek() == Some(b'+') {
            self.pos += 1;
            terms.push(self.term(depth)?);
        }
        if terms.len() == 1 && matches!(terms[0], Term::Atom(_)) {
            if let Some(Term::Atom(a)) = terms.pop() {
                return Ok(a);
            }
        }
        Ok(ElemLit::Poly(terms.into_iter().map(Term::into_poly_term).collect()))
    }

    fn term(&mut self, depth: usize) -> Result<Term, LitError> {
        if self.peek() == Some(b't') {
            let power = self.t_power()?;
            return Ok(Term::Poly(PolyTerm { coeff: None, power }));
        }
        let atom = self.atom(depth)?;
        if self.peek() == Some(b't') {
            let power = self.t_power()?;
            return Ok(Term::Poly(PolyTerm { coeff: Some(Box::new(atom)), power }));
        }
        Ok(Term::Atom(atom))
    }

    fn t_power(&mut self) -> Result<u32, LitError> {
        self.pos += 1;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let k = self.int()?;
            return u32::try_from(k).map_or_else(|_| self.err("exponent out of range"), Ok);
        }
        Ok(1)
    }

    fn atom(&mut self, depth: usize) -> Result<ElemLit, LitError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let items = self.list(depth, b')')?;
                Ok(ElemLit::Tuple(items))
            }
            Some(b'[') => {
                self.pos += 1;
                let mut rows = Vec::new();
                loop {
                    self.expect(b'[')?;
                    rows.push(self.list(depth, b']')?);
                    match self.peek() {
                        Some(b',') => self.pos += 1,
                        Some(b']') => {
                            self.pos += 1;
                            return Ok(ElemLit::Rows(rows));
                        }
                        _ => return self.err("expected ',' or ']' in row list"),
                    }
                }
            }
            Some(c) if c.is_ascii_digit() => Ok(ElemLit::Int(self.int()?)),
            _ => self.err("expected element literal"),
        }
    }

    fn list(&mut self, depth: usize, close: u8) -> Result<Vec<ElemLit>, LitError> {
        let mut items = vec![self.elem(depth + 1)?];
        loop {
            match self.peek() {
                Some(b',') => {
                    self.pos += 1;
                    items.push(self.elem(depth + 1)?);
                }
                Some(c) if c == close => {
                    self.pos += 1;
                    return Ok(items);
                }
                _ => return self.err(&format!("expected ',' or '{}'", close as char)),
            }
        }
    }
}

enum Term {
    Atom(ElemLit),
    Poly(PolyTerm),
}

impl Term {
    fn into_poly_term(self) -> PolyTerm {
        match self {
            Term::Atom(a) => PolyTerm { coeff: Some(Box::new(a)), power: 0 },
            Term::Poly(p) => p,
        }
    }
}

/// How a ring's elements are written and read back.
#[derive(Clone)]
pub enum Notation {
    /// Bare table indices.
    Indexed,
    ZMod(usize),
    /// Pairs, first component most significant in the index.
    Product(Arc<FiniteRing>, Arc<FiniteRing>),
    /// Square matrices; `upper` restricts to the upper triangle. Entries are
    /// stored row-major, first entry most significant.
    Matrix { base: Arc<FiniteRing>, dim: usize, upper: bool },
    /// `base[t]/(t^len)`, coefficient of `t^0` most significant.
    PolyQuot { base: Arc<FiniteRing>, len: usize },
    /// Subring, written in the host's notation.
    Sub { host: Arc<FiniteRing>, embed: Vec<Elem> },
    /// Quotient, written by coset representative.
    Quotient { host: Arc<FiniteRing>, reps: Vec<Elem>, proj: Vec<Elem> },
    /// Subset of a product, e.g. an amalgamation inside `A × B`.
    Pair { left: Arc<FiniteRing>, right: Arc<FiniteRing>, pairs: Vec<(Elem, Elem)>, index: HashMap<(Elem, Elem), Elem> },
}

pub(crate) fn digits(mut idx: usize, base: usize, len: usize) -> Vec<usize> {
    let mut out = vec![0; len];
    for slot in out.iter_mut().rev() {
        *slot = idx % base;
        idx /= base;
    }
    out
}

pub(crate) fn undigits(ds: &[usize], base: usize) -> usize {
    ds.iter().fold(0, |acc, &d| acc * base + d)
}

pub(crate) fn matrix_positions(dim: usize, upper: bool) -> Vec<(usize, usize)> {
    (0..dim)
        .flat_map(|r| (0..dim).map(move |c| (r, c)))
        .filter(|&(r, c)| !upper || r <= c)
        .collect()
}

fn bad(ring: &FiniteRing, lit: &ElemLit, why: &str) -> Error {
    Error::Literal { literal: lit.to_string(), ring: ring.provenance().to_string(), reason: why.to_string() }
}

impl Notation {
    pub(crate) fn literal(&self, e: Elem) -> ElemLit {
        match self {
            Notation::Indexed | Notation::ZMod(_) => ElemLit::Int(e as u64),
            Notation::Product(l, r) => ElemLit::Tuple(vec![l.literal(e / r.size()), r.literal(e % r.size())]),
            Notation::Matrix { base, dim, upper } => {
                let pos = matrix_positions(*dim, *upper);
                let entries = digits(e, base.size(), pos.len());
                let mut rows = vec![vec![base.literal(base.zero()); *dim]; *dim];
                for (&(r, c), &v) in pos.iter().zip(&entries) {
                    rows[r][c] = base.literal(v);
                }
                ElemLit::Rows(rows)
            }
            Notation::PolyQuot { base, len } => {
                let coeffs = digits(e, base.size(), *len);
                let mut terms = Vec::new();
                for (k, &c) in coeffs.iter().enumerate() {
                    if c == base.zero() {
                        continue;
                    }
                    let mut lit = base.literal(c);
                    if matches!(lit, ElemLit::Poly(_)) {
                        lit = lit.group();
                    }
                    let coeff = if k > 0 && c == base.one() { None } else { Some(Box::new(lit)) };
                    terms.push(PolyTerm { coeff, power: k as u32 });
                }
                match terms.len() {
                    0 => base.literal(base.zero()),
                    1 if terms[0].power == 0 => *terms.pop().unwrap().coeff.unwrap(),
                    _ => ElemLit::Poly(terms),
                }
            }
            Notation::Sub { host, embed } => host.literal(embed[e]),
            Notation::Quotient { host, reps, .. } => host.literal(reps[e]),
            Notation::Pair { left, right, pairs, .. } => {
                let (a, b) = pairs[e];
                ElemLit::Tuple(vec![left.literal(a), right.literal(b)])
            }
        }
    }

    pub(crate) fn resolve(&self, ring: &FiniteRing, lit: &ElemLit) -> Result<Elem, Error> {
        if let ElemLit::Tuple(items) = lit {
            if items.len() == 1 {
                return self.resolve(ring, &items[0]);
            }
        }
        match self {
            Notation::Indexed | Notation::ZMod(_) => match lit {
                ElemLit::Int(v) if (*v as u128) < ring.size() as u128 => Ok(*v as Elem),
                ElemLit::Int(_) => Err(bad(ring, lit, "index out of range")),
                _ => Err(bad(ring, lit, "expected an integer")),
            },
            Notation::Product(l, r) | Notation::Pair { left: l, right: r, .. } => {
                let ElemLit::Tuple(items) = lit else {
                    return Err(bad(ring, lit, "expected a pair (a,b)"));
                };
                if items.len() != 2 {
                    return Err(bad(ring, lit, "expected a pair (a,b)"));
                }
                let (a, b) = (l.resolve(&items[0])?, r.resolve(&items[1])?);
                match self {
                    Notation::Pair { index, .. } => {
                        index.get(&(a, b)).copied().ok_or_else(|| bad(ring, lit, "pair is not an element of this ring"))
                    }
                    _ => Ok(a * r.size() + b),
                }
            }
            Notation::Matrix { base, dim, upper } => {
                let ElemLit::Rows(rows) = lit else {
                    return Err(bad(ring, lit, "expected a matrix [[..],..]"));
                };
                if rows.len() != *dim || rows.iter().any(|row| row.len() != *dim) {
                    return Err(bad(ring, lit, &format!("expected a {dim}x{dim} matrix")));
                }
                let mut entries = Vec::new();
                for (r, row) in rows.iter().enumerate() {
                    for (c, entry) in row.iter().enumerate() {
                        let v = base.resolve(entry)?;
                        if *upper && r > c {
                            if v != base.zero() {
                                return Err(bad(ring, lit, "entry below the diagonal must be zero"));
                            }
                        } else {
                            entries.push(v);
                        }
                    }
                }
                Ok(undigits(&entries, base.size()))
            }
            Notation::PolyQuot { base, len } => {
                let mut coeffs = vec![base.zero(); *len];
                let terms: Vec<PolyTerm> = match lit {
                    ElemLit::Poly(terms) => terms.clone(),
                    other => vec![PolyTerm { coeff: Some(Box::new(other.clone())), power: 0 }],
                };
                for term in &terms {
                    let k = term.power as usize;
                    if k >= *len {
                        return Err(bad(ring, lit, &format!("t^{k} vanishes; powers must stay below {len}")));
                    }
                    let c = match &term.coeff {
                        Some(c) => base.resolve(c)?,
                        None => base.one(),
                    };
                    coeffs[k] = base.add(coeffs[k], c);
                }
                Ok(undigits(&coeffs, base.size()))
            }
            Notation::Sub { host, embed } => {
                let h = host.resolve(lit)?;
                embed.binary_search(&h).map_err(|_| bad(ring, lit, "element lies outside the subring"))
            }
            Notation::Quotient { host, proj, .. } => Ok(proj[host.resolve(lit)?]),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_native_forms() {
        assert_eq!("3".parse::<ElemLit>().unwrap(), ElemLit::Int(3));
        assert_eq!(
            "(1, 0)".parse::<ElemLit>().unwrap(),
            ElemLit::Tuple(vec![ElemLit::Int(1), ElemLit::Int(0)])
        );
        let m: ElemLit = "[[1,1],[0,1]]".parse().unwrap();
        assert_eq!(m.to_string(), "[[1,1],[0,1]]");
        let p: ElemLit = "1 + 2t + t^2".parse().unwrap();
        assert_eq!(p.to_string(), "1 + 2 t + t^2");
    }

    #[test]
    fn rejects_garbage() {
        for s in ["", "(", "[1]", "(1,", "t^", "1 +", "[[1],[2]", "x", "1 1"] {
            assert!(s.parse::<ElemLit>().is_err(), "{s:?} parsed");
        }
    }

    #[test]
    fn prefix_stops_before_separator() {
        let (lit, used) = ElemLit::parse_prefix("(1,2) -> 3").unwrap();
        assert_eq!(lit.to_string(), "(1,2)");
        assert_eq!(used, 5);
    }

    #[test]
    fn deep_nesting_is_an_error_not_a_crash() {
        let s = "(".repeat(10_000);
        assert!(s.parse::<ElemLit>().is_err());
    }

    fn arb_lit() -> impl Strategy<Value = ElemLit> {
        let leaf = (0u64..20).prop_map(ElemLit::Int);
        leaf.prop_recursive(3, 24, 3, |inner| {
            let rows = inner.clone();
            prop_oneof![
                prop::collection::vec(inner.clone(), 2..4).prop_map(ElemLit::Tuple),
                (1usize..3).prop_flat_map(move |k| prop::collection::vec(
                    prop::collection::vec(rows.clone(), k..=k),
                    k..=k
                ))
                .prop_map(ElemLit::Rows),
                prop::collection::vec((prop::option::of(inner.clone()), 0u32..4), 1..4).prop_map(|terms| {
                    ElemLit::Poly(
                        terms
                            .into_iter()
                            .map(|(c, power)| PolyTerm {
                                coeff: c.map(|c| Box::new(if matches!(c, ElemLit::Poly(_)) { c.group() } else { c })),
                                power,
                            })
                            .collect(),
                    )
                }),
            ]
        })
    }

    proptest! {
        #[test]
        fn display_then_parse_is_identity(lit in arb_lit()) {
            let text = lit.to_string();
            prop_assert_eq!(text.parse::<ElemLit>().unwrap(), lit);
        }
    }
}
