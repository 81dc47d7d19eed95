use std::fmt;
use std::str::FromStr;

use amalg_core::notation::ElemLit;
use amalg_core::properties::Property;
use serde::Serialize;

use crate::diag::Pos;

/// A node with its source position. Positions do not take part in
/// equality, so a reprinted spec compares equal to the original.
#[derive(Clone, Debug)]
pub struct Spanned<T> {
    pub node: T,
    pub pos: Pos,
}

impl<T: PartialEq> PartialEq for Spanned<T> {
    fn eq(&self, other: &Self) -> bool {
        self.node == other.node
    }
}

impl<T: Eq> Eq for Spanned<T> {}

impl<T: fmt::Display> fmt::Display for Spanned<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.node.fmt(f)
    }
}

pub type Name = Spanned<String>;
pub type Elem = Spanned<ElemLit>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingCtor {
    ZMod(u64),
    Product(Name, Name),
    Upper(Name, u64),
    Matrix(Name, u64),
    PolyQuot(Name, u64),
    Table { add: Vec<Vec<u64>>, mul: Vec<Vec<u64>> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HomDef {
    Canonical,
    Map(Vec<(Elem, Elem)>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Expect {
    Holds,
    Refuted,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Goal {
    /// A ring that is weak Armendariz but not nil-Armendariz at the bound.
    #[serde(rename = "weak-not-nil")]
    WeakNotNil,
    /// The smallest ring that is not Armendariz at the bound.
    #[serde(rename = "armendariz-refutation")]
    ArmendarizRefutation,
}

impl Goal {
    pub const ALL: [Goal; 2] = [Goal::WeakNotNil, Goal::ArmendarizRefutation];

    pub fn name(self) -> &'static str {
        match self {
            Goal::WeakNotNil => "weak-not-nil",
            Goal::ArmendarizRefutation => "armendariz-refutation",
        }
    }
}

impl FromStr for Goal {
    type Err = ();

    fn from_str(s: &str) -> Result<Goal, ()> {
        Goal::ALL.into_iter().find(|g| g.name() == s).ok_or(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Stmt {
    Ring { name: Name, ctor: RingCtor },
    Ideal { name: Name, host: Name, gens: Vec<Elem> },
    Hom { name: Name, domain: Name, codomain: Name, def: HomDef },
    Amalgam { name: Name, base: Name, hom: Name, ideal: Name },
    Check { target: Name, property: Property, degree: Option<u64>, expect: Option<Expect> },
    Harness { degree: Option<u64> },
    Search { goal: Goal, degree: Option<u64>, max_size: Option<u64> },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Spec {
    pub stmts: Vec<Spanned<Stmt>>,
}

fn rows(f: &mut fmt::Formatter<'_>, t: &[Vec<u64>]) -> fmt::Result {
    let body: Vec<String> =
        t.iter().map(|r| format!("[{}]", r.iter().map(u64::to_string).collect::<Vec<_>>().join(","))).collect();
    write!(f, "[{}]", body.join(","))
}

impl fmt::Display for RingCtor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingCtor::ZMod(n) => write!(f, "zmod {n}"),
            RingCtor::Product(a, b) => write!(f, "product({a}, {b})"),
            RingCtor::Upper(a, k) => write!(f, "upper({a}, {k})"),
            RingCtor::Matrix(a, k) => write!(f, "matrix({a}, {k})"),
            RingCtor::PolyQuot(a, k) => write!(f, "polyquot({a}, {k})"),
            RingCtor::Table { add, mul } => {
                f.write_str("table { add = ")?;
                rows(f, add)?;
                f.write_str(", mul = ")?;
                rows(f, mul)?;
                f.write_str(" }")
            }
        }
    }
}

impl fmt::Display for Stmt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Stmt::Ring { name, ctor } => write!(f, "ring {name} = {ctor}"),
            Stmt::Ideal { name, host, gens } => {
                let g: Vec<String> = gens.iter().map(|e| e.to_string()).collect();
                write!(f, "ideal {name} of {host} = generated {{ {} }}", g.join(", "))
            }
            Stmt::Hom { name, domain, codomain, def } => {
                write!(f, "hom {name} : {domain} -> {codomain} = ")?;
                match def {
                    HomDef::Canonical => f.write_str("canonical"),
                    HomDef::Map(pairs) => {
                        let p: Vec<String> = pairs.iter().map(|(a, b)| format!("{a} -> {b}")).collect();
                        write!(f, "map {{ {} }}", p.join(", "))
                    }
                }
            }
            Stmt::Amalgam { name, base, hom, ideal } => write!(f, "amalgam {name} = {base} join {hom} {ideal}"),
            Stmt::Check { target, property, degree, expect } => {
                write!(f, "check {target} {property}")?;
                if let Some(d) = degree {
                    write!(f, " degree {d}")?;
                }
                match expect {
                    Some(Expect::Holds) => f.write_str(" assert holds"),
                    Some(Expect::Refuted) => f.write_str(" assert refuted"),
                    None => Ok(()),
                }
            }
            Stmt::Harness { degree } => {
                f.write_str("harness")?;
                match degree {
                    Some(d) => write!(f, " degree {d}"),
                    None => Ok(()),
                }
            }
            Stmt::Search { goal, degree, max_size } => {
                write!(f, "search {}", goal.name())?;
                if let Some(d) = degree {
                    write!(f, " degree {d}")?;
                }
                if let Some(m) = max_size {
                    write!(f, " max-size {m}")?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for Spec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.stmts {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}
