use std::fmt;

use serde::Serialize;

use crate::properties::Property;

/// One of the four rings attached to a scenario.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Side {
    A,
    B,
    Amalgam,
    FPlusJ,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::A => "A",
            Side::B => "B",
            Side::Amalgam => "A⋈J",
            Side::FPlusJ => "f(A)+J",
        })
    }
}

/// A structural predicate on a scenario.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Fact {
    /// `nil(B) ∩ J = 0`.
    NilBMeetsJTrivially,
    JInNilB,
    /// `f⁻¹(J) ∩ nil(A) = 0`.
    PreimageMeetsNilATrivially,
    PreimageInNilA,
    FInjective,
    /// `f(A) ∩ J = 0`.
    ImageMeetsJTrivially,
    JMeetsRegularCentral,
    JSemicommutative,
    PreimageSemicommutative,
    JRadical,
}

impl fmt::Display for Fact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Fact::NilBMeetsJTrivially => "nil(B)∩J=0",
            Fact::JInNilB => "J⊆nil(B)",
            Fact::PreimageMeetsNilATrivially => "f⁻¹(J)∩nil(A)=0",
            Fact::PreimageInNilA => "f⁻¹(J)⊆nil(A)",
            Fact::FInjective => "f injective",
            Fact::ImageMeetsJTrivially => "f(A)∩J=0",
            Fact::JMeetsRegularCentral => "J∩S≠∅",
            Fact::JSemicommutative => "J semicommutative",
            Fact::PreimageSemicommutative => "f⁻¹(J) semicommutative",
            Fact::JRadical => "J radical",
        })
    }
}

/// A conjunct of a clause side.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Atom {
    Holds(Side, Property),
    Fact(Fact),
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Holds(s, p) => write!(f, "{s} {p}"),
            Atom::Fact(x) => write!(f, "{x}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ClauseMode {
    Implication,
    Equivalence,
}

/// `hypothesis ⇒ (left ⇒ right)` or `hypothesis ⇒ (left ⇔ right)`; each
/// side is a conjunction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremClause {
    pub id: String,
    pub hypothesis: Vec<Fact>,
    pub left: Vec<Atom>,
    pub right: Vec<Atom>,
    pub mode: ClauseMode,
    /// The bounded form is asserted at every degree bound.
    pub degree_local: bool,
    /// Clauses whose hypothesis no finite proper ideal can satisfy.
    pub units_vacuous: bool,
}

impl fmt::Display for TheoremClause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |xs: &[Atom]| xs.iter().map(Atom::to_string).collect::<Vec<_>>().join(" ∧ ");
        write!(f, "{}: ", self.id)?;
        if !self.hypothesis.is_empty() {
            let h: Vec<String> = self.hypothesis.iter().map(Fact::to_string).collect();
            write!(f, "[{}] ", h.join(" ∧ "))?;
        }
        let arrow = match self.mode {
            ClauseMode::Implication => "⇒",
            ClauseMode::Equivalence => "⇔",
        };
        write!(f, "{} {arrow} {}", join(&self.left), join(&self.right))
    }
}

fn clause(id: impl Into<String>, hypothesis: &[Fact], left: &[Atom], mode: ClauseMode, right: &[Atom]) -> TheoremClause {
    TheoremClause {
        id: id.into(),
        hypothesis: hypothesis.to_vec(),
        left: left.to_vec(),
        right: right.to_vec(),
        mode,
        degree_local: true,
        units_vacuous: hypothesis.contains(&Fact::JMeetsRegularCentral),
    }
}

/// Every clause, in registry order.
pub fn clause_registry() -> Vec<TheoremClause> {
    use Atom::Holds as H;
    use ClauseMode::{Equivalence as Iff, Implication as Imp};
    use Fact::*;
    use Property::*;
    use Side::*;

    let mut out = vec![
        clause("P2.1", &[], &[H(Amalgam, Reduced)], Iff, &[H(A, Reduced), Atom::Fact(NilBMeetsJTrivially)]),
        clause("P2.1a", &[], &[H(A, Reduced), H(B, Reduced)], Imp, &[H(Amalgam, Reduced)]),
        clause("P2.1b", &[JRadical], &[H(Amalgam, Reduced)], Imp, &[H(B, Reduced), H(A, Reduced)]),
    ];
    let families: [(&str, Property); 3] = [("T2.2", Armendariz), ("T3.1", NilArmendariz), ("T4.1", WeakArmendariz)];
    for (prefix, p) in families {
        let id = |suffix: &str| format!("{prefix}-{suffix}");
        out.push(clause(id("1"), &[], &[H(Amalgam, p)], Imp, &[H(A, p)]));
        out.push(clause(id("2"), &[], &[H(A, p), H(FPlusJ, p)], Imp, &[H(Amalgam, p)]));
        out.push(clause(id("3"), &[JMeetsRegularCentral], &[H(Amalgam, p)], Iff, &[H(FPlusJ, p), H(A, p)]));
        match p {
            Armendariz => {
                out.push(clause(id("4"), &[NilBMeetsJTrivially], &[H(Amalgam, p)], Iff, &[H(A, p)]));
                out.push(clause(id("5"), &[PreimageMeetsNilATrivially], &[H(FPlusJ, p)], Imp, &[H(Amalgam, p)]));
            }
            NilArmendariz => {
                out.push(clause(id("4"), &[JInNilB], &[H(Amalgam, p)], Iff, &[H(A, p)]));
                out.push(clause(id("5"), &[PreimageInNilA], &[H(Amalgam, p)], Iff, &[H(FPlusJ, p)]));
                out.push(clause(id("6i"), &[FInjective, ImageMeetsJTrivially], &[H(Amalgam, p)], Iff, &[H(FPlusJ, p)]));
                out.push(clause(id("6ii"), &[FInjective, JInNilB], &[H(Amalgam, p)], Iff, &[H(FPlusJ, p)]));
            }
            _ => {
                out.push(clause(id("4"), &[JInNilB], &[H(A, p)], Iff, &[H(Amalgam, p)]));
                out.push(clause(id("5"), &[PreimageInNilA], &[H(FPlusJ, p)], Imp, &[H(Amalgam, p)]));
                out.push(clause(id("6i"), &[FInjective, ImageMeetsJTrivially], &[H(Amalgam, p)], Iff, &[H(FPlusJ, p)]));
                out.push(clause(id("6ii"), &[FInjective, JInNilB], &[H(FPlusJ, p)], Imp, &[H(Amalgam, p)]));
                out.push(clause(id("7"), &[JSemicommutative], &[H(A, p)], Imp, &[H(Amalgam, p)]));
                out.push(clause(id("8"), &[PreimageSemicommutative], &[H(FPlusJ, p)], Imp, &[H(Amalgam, p)]));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_shape() {
        let reg = clause_registry();
        assert_eq!(reg.len(), 24);
        let mut ids: Vec<&str> = reg.iter().map(|c| c.id.as_str()).collect();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), 24);
        let vacuous: Vec<&str> = reg.iter().filter(|c| c.units_vacuous).map(|c| c.id.as_str()).collect();
        assert_eq!(vacuous, vec!["T2.2-3", "T3.1-3", "T4.1-3"]);
        assert!(reg.iter().all(|c| c.degree_local));
    }

    #[test]
    fn rendering() {
        let reg = clause_registry();
        let t = reg.iter().find(|c| c.id == "T2.2-4").unwrap();
        assert_eq!(t.to_string(), "T2.2-4: [nil(B)∩J=0] A⋈J armendariz ⇔ A armendariz");
    }
}
