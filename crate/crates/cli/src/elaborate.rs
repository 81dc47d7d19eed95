use std::collections::HashMap;
use std::sync::Arc;

use amalg_core::construct::{amalgamation, direct_product, matrix_ring, poly_quotient, upper_triangular, zmod, AmalgamRing};
use amalg_core::morph::{enumerate_homs, generated_ideal, Ideal, RingHom};
use amalg_core::properties::Property;
use amalg_core::search::MAX_DEGREE;
use amalg_core::{ElementSet, Error, FiniteRing, RingTables};

use crate::ast::{Expect, Goal, HomDef, Name, RingCtor, Spanned, Spec, Stmt};
use crate::diag::{Code, Diagnostic, Pos};
use crate::parser::parse;

/// Size limits applied while building the model.
#[derive(Clone, Copy, Debug)]
pub struct Limits {
    pub max_ring_size: usize,
}

impl Default for Limits {
    fn default() -> Limits {
        Limits { max_ring_size: amalg_core::construct::DEFAULT_MAX_RING_SIZE }
    }
}

/// A directive with its target resolved.
#[derive(Clone, Debug)]
pub enum Directive {
    Check {
        line: usize,
        target: String,
        ring: Arc<FiniteRing>,
        property: Property,
        degree: Option<usize>,
        expect: Option<Expect>,
    },
    Harness {
        line: usize,
        degree: Option<usize>,
    },
    Search {
        line: usize,
        goal: Goal,
        degree: Option<usize>,
        max_size: Option<usize>,
    },
}

/// A parsed and fully built spec. Amalgams are also listed among the rings
/// so that directives and later statements can name them.
#[derive(Clone, Debug)]
pub struct SpecModel {
    pub spec: Spec,
    pub rings: Vec<(String, Arc<FiniteRing>)>,
    pub ideals: Vec<(String, Ideal)>,
    pub homs: Vec<(String, RingHom)>,
    pub amalgams: Vec<(String, AmalgamRing)>,
    pub directives: Vec<Directive>,
}

impl SpecModel {
    pub fn ring(&self, name: &str) -> Option<&Arc<FiniteRing>> {
        self.rings.iter().find(|(n, _)| n == name).map(|(_, r)| r)
    }

    pub fn ideal(&self, name: &str) -> Option<&Ideal> {
        self.ideals.iter().find(|(n, _)| n == name).map(|(_, i)| i)
    }
}

/// Parses and builds a spec. Never panics; every failure is a diagnostic.
pub fn parse_spec(src: &str, limits: Limits) -> Result<SpecModel, Vec<Diagnostic>> {
    let spec = parse(src)?;
    elaborate(spec, limits).map_err(|d| vec![d])
}

struct Scope {
    limits: Limits,
    rings: HashMap<String, Arc<FiniteRing>>,
    ideals: HashMap<String, Ideal>,
    homs: HashMap<String, RingHom>,
    model: SpecModel,
}

fn constraint(pos: Pos, e: impl std::fmt::Display) -> Diagnostic {
    Diagnostic::new(Code::Constraint, pos, e.to_string())
}

fn fresh<T>(map: &HashMap<String, T>, name: &Name, kind: &str) -> Result<(), Diagnostic> {
    if map.contains_key(&name.node) {
        Err(Diagnostic::new(Code::DuplicateName, name.pos, format!("{kind} '{}' is already defined", name.node)))
    } else {
        Ok(())
    }
}

fn lookup<'m, T>(map: &'m HashMap<String, T>, name: &Name, kind: &str) -> Result<&'m T, Diagnostic> {
    map.get(&name.node)
        .ok_or_else(|| Diagnostic::new(Code::UnresolvedName, name.pos, format!("no {kind} named '{}'", name.node)))
}

fn degree(d: Option<u64>, pos: Pos) -> Result<Option<usize>, Diagnostic> {
    match d {
        Some(d) if d as usize > MAX_DEGREE || d > MAX_DEGREE as u64 => {
            Err(constraint(pos, format!("degree {d} exceeds the supported maximum {MAX_DEGREE}")))
        }
        d => Ok(d.map(|d| d as usize)),
    }
}

pub fn elaborate(spec: Spec, limits: Limits) -> Result<SpecModel, Diagnostic> {
    let mut scope = Scope {
        limits,
        rings: HashMap::new(),
        ideals: HashMap::new(),
        homs: HashMap::new(),
        model: SpecModel {
            spec: spec.clone(),
            rings: Vec::new(),
            ideals: Vec::new(),
            homs: Vec::new(),
            amalgams: Vec::new(),
            directives: Vec::new(),
        },
    };
    for stmt in &spec.stmts {
        scope.statement(stmt)?;
    }
    Ok(scope.model)
}

impl Scope {
    fn add_ring(&mut self, name: &Name, r: Arc<FiniteRing>) {
        self.rings.insert(name.node.clone(), r.clone());
        self.model.rings.push((name.node.clone(), r));
    }

    fn statement(&mut self, stmt: &Spanned<Stmt>) -> Result<(), Diagnostic> {
        let line = stmt.pos.line;
        match &stmt.node {
            Stmt::Ring { name, ctor } => {
                fresh(&self.rings, name, "ring")?;
                let r = self.ring(name, ctor)?;
                self.add_ring(name, r);
            }
            Stmt::Ideal { name, host, gens } => {
                fresh(&self.ideals, name, "ideal")?;
                let r = lookup(&self.rings, host, "ring")?.clone();
                let mut members = Vec::new();
                for g in gens {
                    members.push(r.resolve(&g.node).map_err(|e| Diagnostic::new(Code::BadElement, g.pos, e.to_string()))?);
                }
                let ideal = generated_ideal(&r, &ElementSet::new(r.size(), members));
                self.ideals.insert(name.node.clone(), ideal.clone());
                self.model.ideals.push((name.node.clone(), ideal));
            }
            Stmt::Hom { name, domain, codomain, def } => {
                fresh(&self.homs, name, "hom")?;
                let a = lookup(&self.rings, domain, "ring")?.clone();
                let b = lookup(&self.rings, codomain, "ring")?.clone();
                let f = self.hom(name, &a, &b, domain.node == codomain.node, def)?;
                self.homs.insert(name.node.clone(), f.clone());
                self.model.homs.push((name.node.clone(), f));
            }
            Stmt::Amalgam { name, base, hom, ideal } => {
                fresh(&self.rings, name, "ring")?;
                let a = lookup(&self.rings, base, "ring")?;
                let f = lookup(&self.homs, hom, "hom")?;
                let j = lookup(&self.ideals, ideal, "ideal")?;
                if **f.domain() != **a {
                    return Err(constraint(hom.pos, format!("hom '{}' does not start at '{}'", hom.node, base.node)));
                }
                if **j.host() != **f.codomain() {
                    return Err(constraint(
                        ideal.pos,
                        format!("ideal '{}' does not live in the codomain of '{}'", ideal.node, hom.node),
                    ));
                }
                let size = a.size().saturating_mul(j.len());
                if size > self.limits.max_ring_size {
                    return Err(constraint(
                        name.pos,
                        format!("amalgam would have {size} elements, limit is {}", self.limits.max_ring_size),
                    ));
                }
                let am = amalgamation(f, j).map_err(|e| constraint(ideal.pos, e))?;
                self.add_ring(name, am.ring.clone());
                self.model.amalgams.push((name.node.clone(), am));
            }
            Stmt::Check { target, property, degree: d, expect } => {
                let ring = lookup(&self.rings, target, "ring")?.clone();
                let degree = degree(*d, stmt.pos)?;
                self.model.directives.push(Directive::Check {
                    line,
                    target: target.node.clone(),
                    ring,
                    property: *property,
                    degree,
                    expect: *expect,
                });
            }
            Stmt::Harness { degree: d } => {
                let degree = degree(*d, stmt.pos)?;
                self.model.directives.push(Directive::Harness { line, degree });
            }
            Stmt::Search { goal, degree: d, max_size } => {
                let degree = degree(*d, stmt.pos)?;
                let max_size = match *max_size {
                    Some(m) if m < 2 || m > self.limits.max_ring_size as u64 => {
                        return Err(constraint(
                            stmt.pos,
                            format!("max-size must lie in 2..={}, got {m}", self.limits.max_ring_size),
                        ))
                    }
                    m => m.map(|m| m as usize),
                };
                self.model.directives.push(Directive::Search { line, goal: *goal, degree, max_size });
            }
        }
        Ok(())
    }

    fn ring(&self, name: &Name, ctor: &RingCtor) -> Result<Arc<FiniteRing>, Diagnostic> {
        let max = self.limits.max_ring_size;
        let size_arg = |k: u64, pos: Pos| -> Result<usize, Diagnostic> {
            usize::try_from(k).map_err(|_| constraint(pos, format!("{k} is out of range")))
        };
        let built = match ctor {
            RingCtor::ZMod(n) => {
                if *n < 2 {
                    return Err(constraint(name.pos, format!("zmod needs n >= 2, got {n}")));
                }
                if *n > max as u64 {
                    return Err(constraint(name.pos, format!("zmod {n} exceeds the ring size limit {max}")));
                }
                zmod(*n as usize)
            }
            RingCtor::Product(a, b) => {
                let (a, b) = (lookup(&self.rings, a, "ring")?, lookup(&self.rings, b, "ring")?);
                let size = a.size().saturating_mul(b.size());
                if size > max {
                    return Err(constraint(name.pos, format!("product would have {size} elements, limit is {max}")));
                }
                direct_product(a, b)
            }
            RingCtor::Upper(base, k) | RingCtor::Matrix(base, k) | RingCtor::PolyQuot(base, k) => {
                let r = lookup(&self.rings, base, "ring")?;
                let k = size_arg(*k, name.pos)?;
                match ctor {
                    RingCtor::Upper(..) => upper_triangular(r, k, max),
                    RingCtor::Matrix(..) => matrix_ring(r, k, max),
                    _ => poly_quotient(r, k, max),
                }
            }
            RingCtor::Table { add, mul } => {
                if add.len() > max {
                    return Err(constraint(name.pos, format!("table has {} rows, limit is {max}", add.len())));
                }
                let conv = |t: &Vec<Vec<u64>>| -> Vec<Vec<usize>> {
                    t.iter().map(|row| row.iter().map(|&v| usize::try_from(v).unwrap_or(usize::MAX)).collect()).collect()
                };
                let t = RingTables::infer_identities(conv(add), conv(mul));
                FiniteRing::from_tables(&t, format!("table {}", name.node))
            }
        };
        built.map_err(|e| constraint(name.pos, e))
    }

    fn hom(
        &self,
        name: &Name,
        a: &Arc<FiniteRing>,
        b: &Arc<FiniteRing>,
        same: bool,
        def: &HomDef,
    ) -> Result<RingHom, Diagnostic> {
        if same && *def == HomDef::Canonical {
            return Ok(RingHom::identity(a));
        }
        let mut fixed = Vec::new();
        if let HomDef::Map(pairs) = def {
            for (x, y) in pairs {
                let x = a.resolve(&x.node).map_err(|e| Diagnostic::new(Code::BadElement, x.pos, e.to_string()))?;
                let y = b.resolve(&y.node).map_err(|e| Diagnostic::new(Code::BadElement, y.pos, e.to_string()))?;
                fixed.push((x, y));
            }
        }
        let homs = enumerate_homs(a, b).map_err(|e| constraint(name.pos, e))?;
        let fits: Vec<&RingHom> = homs.iter().filter(|f| fixed.iter().all(|&(x, y)| f.apply(x) == y)).collect();
        match fits.as_slice() {
            [f] => Ok((*f).clone()),
            [] => Err(constraint(name.pos, "no unital ring homomorphism satisfies the definition")),
            many => Err(constraint(
                name.pos,
                format!("{} unital ring homomorphisms satisfy the definition; pin more values with map", many.len()),
            )),
        }
    }
}

impl From<Error> for Diagnostic {
    fn from(e: Error) -> Diagnostic {
        Diagnostic::new(Code::Constraint, Pos::default(), e.to_string())
    }
}
