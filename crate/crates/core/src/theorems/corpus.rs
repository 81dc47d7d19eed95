use std::sync::Arc;

use log::debug;

use super::Scenario;
use crate::construct::{direct_product, matrix_ring, poly_quotient, upper_triangular, zmod, DEFAULT_MAX_RING_SIZE};
use crate::morph::{enumerate_homs, enumerate_ideals};
use crate::ring::FiniteRing;
use crate::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusConfig {
    /// Largest direct product of two atoms admitted as a base ring.
    pub max_product_size: usize,
    /// Largest amalgam `|A|·|J|` admitted as a scenario.
    pub max_amalgam_size: usize,
    /// Budget handed to the matrix and polynomial constructors.
    pub max_ring_size: usize,
}

impl Default for CorpusConfig {
    fn default() -> CorpusConfig {
        CorpusConfig { max_product_size: 16, max_amalgam_size: 64, max_ring_size: DEFAULT_MAX_RING_SIZE }
    }
}

#[derive(Clone, Debug)]
pub struct Corpus {
    pub rings: Vec<Arc<FiniteRing>>,
    pub scenarios: Vec<Scenario>,
    /// Entries skipped for budget reasons.
    pub notes: Vec<String>,
}

fn atoms(cfg: &CorpusConfig) -> Result<Vec<Arc<FiniteRing>>, Error> {
    let z2 = zmod(2)?;
    let mut out: Vec<Arc<FiniteRing>> = (2..=8).map(zmod).collect::<Result<_, _>>()?;
    out.push(upper_triangular(&z2, 2, cfg.max_ring_size)?);
    out.push(matrix_ring(&z2, 2, cfg.max_ring_size)?);
    out.push(poly_quotient(&z2, 2, cfg.max_ring_size)?);
    out.push(poly_quotient(&z2, 3, cfg.max_ring_size)?);
    out.push(poly_quotient(&zmod(3)?, 2, cfg.max_ring_size)?);
    Ok(out)
}

/// Deterministic corpus: the atoms, products of two atoms within budget,
/// and every `(A, B, f, J)` with `f` a unital hom, `J` a proper ideal of
/// `B` and `|A|·|J|` within budget.
pub fn build_corpus(cfg: &CorpusConfig) -> Result<Corpus, Error> {
    let atoms = atoms(cfg)?;
    let mut rings = atoms.clone();
    let mut notes = Vec::new();
    for (i, r) in atoms.iter().enumerate() {
        for s in &atoms[i..] {
            if r.size() * s.size() <= cfg.max_product_size {
                rings.push(direct_product(r, s)?);
            }
        }
    }
    let ideals: Vec<_> = rings
        .iter()
        .map(|b| enumerate_ideals(b).map(|v| v.into_iter().filter(|j| j.is_proper()).collect::<Vec<_>>()))
        .collect::<Result<_, _>>()?;
    let mut scenarios = Vec::new();
    let mut oversized = 0usize;
    for a in &rings {
        for (b, proper) in rings.iter().zip(&ideals) {
            let homs = match enumerate_homs(a, b) {
                Ok(h) => h,
                Err(e @ Error::Budget { .. }) => {
                    notes.push(format!("skipped homs {} -> {}: {e}", a.provenance(), b.provenance()));
                    continue;
                }
                Err(e) => return Err(e),
            };
            for f in &homs {
                for j in proper {
                    if a.size() * j.len() > cfg.max_amalgam_size {
                        oversized += 1;
                        continue;
                    }
                    scenarios.push(Scenario::new(f, j)?);
                }
            }
        }
    }
    if oversized > 0 {
        notes.push(format!("skipped {oversized} scenarios whose amalgam exceeds {} elements", cfg.max_amalgam_size));
    }
    debug!("corpus: {} rings, {} scenarios", rings.len(), scenarios.len());
    Ok(Corpus { rings, scenarios, notes })
}
