//! Dense polynomials of bounded degree over a finite ring.

use std::fmt;
use std::sync::Arc;

use crate::ring::{Elem, ElementSet, FiniteRing};
use crate::Error;

/// Coefficient sequence `a_0, a_1, ...`; trailing zeros are kept.
#[derive(Clone)]
pub struct Polynomial {
    host: Arc<FiniteRing>,
    coeffs: Vec<Elem>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && *self.host == *other.host
    }
}

impl Eq for Polynomial {}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({:?})", self.coeffs)
    }
}

impl Polynomial {
    pub fn new(host: &Arc<FiniteRing>, coeffs: Vec<Elem>) -> Result<Polynomial, Error> {
        if coeffs.is_empty() {
            return Err(Error::Invalid("a polynomial needs at least one coefficient".into()));
        }
        if let Some(&bad) = coeffs.iter().find(|&&c| c >= host.size()) {
            return Err(Error::Invalid(format!("coefficient {bad} out of range for a ring of size {}", host.size())));
        }
        Ok(Polynomial { host: host.clone(), coeffs })
    }

    /// The zero polynomial with `len` coefficients.
    pub fn zero(host: &Arc<FiniteRing>, len: usize) -> Polynomial {
        Polynomial { host: host.clone(), coeffs: vec![host.zero(); len.max(1)] }
    }

    pub fn host(&self) -> &Arc<FiniteRing> {
        &self.host
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Largest `i` with `a_i ≠ 0`, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|&c| c != self.host.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.degree().is_none()
    }

    /// Coefficient-wise sum, padded to the longer length.
    pub fn add(&self, other: &Polynomial) -> Result<Polynomial, Error> {
        same_host(self, other)?;
        let r = &self.host;
        let len = self.len().max(other.len());
        let at = |p: &Polynomial, i: usize| p.coeffs.get(i).copied().unwrap_or(r.zero());
        Ok(Polynomial { host: r.clone(), coeffs: (0..len).map(|i| r.add(at(self, i), at(other, i))).collect() })
    }

    /// `c0 + c1*x + c2*x^2` over nonzero terms, using element labels.
    pub fn render(&self) -> String {
        render_coeffs(&self.host, &self.coeffs)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Renders a raw coefficient sequence as [`Polynomial::render`] does.
pub fn render_coeffs(r: &FiniteRing, coeffs: &[Elem]) -> String {
    let terms: Vec<String> = coeffs
        .iter()
        .enumerate()
        .filter(|&(_, &c)| c != r.zero())
        .map(|(i, &c)| {
            let label = r.label(c);
            let label = if i > 0 && label.contains([' ', '+']) { format!("({label})") } else { label.to_string() };
            match i {
                0 => label,
                1 => format!("{label}*x"),
                _ => format!("{label}*x^{i}"),
            }
        })
        .collect();
    if terms.is_empty() {
        r.label(r.zero()).to_string()
    } else {
        terms.join(" + ")
    }
}

fn same_host(f: &Polynomial, g: &Polynomial) -> Result<(), Error> {
    if Arc::ptr_eq(&f.host, &g.host) || *f.host == *g.host {
        Ok(())
    } else {
        Err(Error::HostMismatch)
    }
}

/// Convolution of raw coefficient slices; the result has
/// `len(a) + len(b) - 1` coefficients.
pub fn convolve(r: &FiniteRing, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    let mut c = vec![r.zero(); a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == r.zero() {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            c[i + j] = r.add(c[i + j], r.mul(x, y));
        }
    }
    c
}

pub fn poly_mul(f: &Polynomial, g: &Polynomial) -> Result<Polynomial, Error> {
    same_host(f, g)?;
    Ok(Polynomial { host: f.host.clone(), coeffs: convolve(&f.host, &f.coeffs, &g.coeffs) })
}

/// Whether every coefficient of `fg` lies in `s`.
pub fn product_coeffs_in_set(f: &Polynomial, g: &Polynomial, s: &ElementSet) -> Result<bool, Error> {
    let fg = poly_mul(f, g)?;
    if s.universe() != f.host.size() {
        return Err(Error::HostMismatch);
    }
    Ok(fg.coeffs.iter().all(|&c| s.contains(c)))
}

/// Default cap on the number of polynomials a stream may produce.
pub const POLY_STREAM_LIMIT: usize = 1 << 26;

/// All coefficient sequences of length `d + 1`, lexicographic with `a_0`
/// most significant. The first item is the zero polynomial.
pub fn enumerate_polys(r: &Arc<FiniteRing>, d: usize, cap: usize) -> Result<PolyIter, Error> {
    let total = r.size().checked_pow(d as u32 + 1).filter(|&t| t <= cap);
    match total {
        Some(total) => Ok(PolyIter { host: r.clone(), next: Some(vec![0; d + 1]), remaining: total }),
        None => Err(Error::Budget {
            what: format!("polynomials of degree <= {d} over a ring of size {}", r.size()),
            needed: r.size().checked_pow(d as u32 + 1).unwrap_or(usize::MAX),
            limit: cap,
        }),
    }
}

/// Stream produced by [`enumerate_polys`].
pub struct PolyIter {
    host: Arc<FiniteRing>,
    next: Option<Vec<Elem>>,
    remaining: usize,
}

/// Advances a mixed-radix counter with the first digit most significant.
/// Returns false after the last value.
pub(crate) fn advance(digits: &mut [Elem], base: usize) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

impl Iterator for PolyIter {
    type Item = Polynomial;

    fn next(&mut self) -> Option<Polynomial> {
        let cur = self.next.take()?;
        let mut succ = cur.clone();
        if advance(&mut succ, self.host.size()) {
            self.next = Some(succ);
        }
        self.remaining -= 1;
        Some(Polynomial { host: self.host.clone(), coeffs: cur })
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        (self.remaining, Some(self.remaining))
    }
}

impl ExactSizeIterator for PolyIter {}
