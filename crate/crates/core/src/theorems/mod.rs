//! Executable theorem clauses about amalgamations, the scenario corpus they
//! run on, and the harness that evaluates every clause on every scenario.

mod corpus;
mod harness;
mod registry;

pub use corpus::{build_corpus, Corpus, CorpusConfig};
pub use harness::{
    clause_status, evaluate_clause, run_harness, ClauseOutcome, ClauseStats, ClauseStatus, HarnessReport, IsoSummary, Violation,
};
pub use registry::{clause_registry, Atom, ClauseMode, Fact, Side, TheoremClause};

use std::sync::Arc;

use serde::Serialize;

use crate::construct::{amalgamation, f_plus_j, AmalgamRing, Embedding};
use crate::morph::{is_radical_ideal, is_semicommutative_ideal, preimage_ideal, Ideal, RingHom};
use crate::ring::FiniteRing;
use crate::Error;

/// Structural predicates of a scenario that clause hypotheses refer to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ScenarioFacts {
    /// `nil(B) ∩ J ≠ 0`.
    pub nil_b_meets_j: bool,
    /// `J ⊆ nil(B)`.
    pub j_in_nil_b: bool,
    /// `f⁻¹(J) ∩ nil(A) ≠ 0`.
    pub preimage_meets_nil_a: bool,
    /// `f⁻¹(J) ⊆ nil(A)`.
    pub preimage_in_nil_a: bool,
    pub f_injective: bool,
    /// `f(A) ∩ J ≠ 0`.
    pub image_meets_j: bool,
    /// `J` contains a regular central element of `B`.
    pub j_meets_regular_central: bool,
    /// `J` semicommutative with the middle factor ranging over `J`.
    pub j_semicommutative: bool,
    /// Same test for `f⁻¹(J)` inside `A`.
    pub preimage_semicommutative: bool,
    /// `B/J` is reduced.
    pub j_radical: bool,
    /// Whenever `J` is semicommutative, `nil(J)` is closed under `+` and
    /// under multiplication by `J`.
    pub j_nil_closed: bool,
}

/// A test case `(A, B, f, J)` with its derived rings.
#[derive(Clone, Debug)]
pub struct Scenario {
    pub id: String,
    pub hom: RingHom,
    pub ideal: Ideal,
    pub amalgam: AmalgamRing,
    pub faj: Embedding,
    pub preimage: Ideal,
    pub facts: ScenarioFacts,
}

impl Scenario {
    pub fn new(f: &RingHom, j: &Ideal) -> Result<Scenario, Error> {
        let amalgam = amalgamation(f, j)?;
        let faj = f_plus_j(f, j)?;
        let preimage = preimage_ideal(f, j)?;
        let (a, b) = (f.domain(), f.codomain());
        let nil_a = a.nilradical();
        let nil_b = b.nilradical();
        let js = j.members();
        let sc = is_semicommutative_ideal(j);
        let facts = ScenarioFacts {
            nil_b_meets_j: nil_b.intersection(js).len() > 1,
            j_in_nil_b: js.is_subset(&nil_b),
            preimage_meets_nil_a: nil_a.intersection(preimage.members()).len() > 1,
            preimage_in_nil_a: preimage.members().is_subset(&nil_a),
            f_injective: f.is_injective(),
            image_meets_j: f.image().intersection(js).len() > 1,
            j_meets_regular_central: !b.regular_central().intersection(js).is_empty(),
            j_semicommutative: sc.holds,
            preimage_semicommutative: is_semicommutative_ideal(&preimage).holds,
            j_radical: is_radical_ideal(j),
            j_nil_closed: !sc.holds || sc.nil_is_ideal_of_j,
        };
        let id = format!(
            "{} -> {} by [{}] along {}",
            a.provenance(),
            b.provenance(),
            f.map().iter().map(|&y| b.label(y)).collect::<Vec<_>>().join(", "),
            js.display(b)
        );
        Ok(Scenario { id, hom: f.clone(), ideal: j.clone(), amalgam, faj, preimage, facts })
    }

    pub fn a(&self) -> &Arc<FiniteRing> {
        self.hom.domain()
    }

    pub fn b(&self) -> &Arc<FiniteRing> {
        self.hom.codomain()
    }

    pub fn ring(&self, side: Side) -> &Arc<FiniteRing> {
        match side {
            Side::A => self.a(),
            Side::B => self.b(),
            Side::Amalgam => &self.amalgam.ring,
            Side::FPlusJ => &self.faj.sub,
        }
    }

    pub fn fact(&self, fact: Fact) -> bool {
        let x = &self.facts;
        match fact {
            Fact::NilBMeetsJTrivially => !x.nil_b_meets_j,
            Fact::JInNilB => x.j_in_nil_b,
            Fact::PreimageMeetsNilATrivially => !x.preimage_meets_nil_a,
            Fact::PreimageInNilA => x.preimage_in_nil_a,
            Fact::FInjective => x.f_injective,
            Fact::ImageMeetsJTrivially => !x.image_meets_j,
            Fact::JMeetsRegularCentral => x.j_meets_regular_central,
            Fact::JSemicommutative => x.j_semicommutative,
            Fact::PreimageSemicommutative => x.preimage_semicommutative,
            Fact::JRadical => x.j_radical,
        }
    }
}
