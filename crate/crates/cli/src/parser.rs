use amalg_core::properties::Property;

use crate::ast::{Elem, Expect, Goal, HomDef, Name, RingCtor, Spanned, Spec, Stmt};
use crate::diag::{Code, Diagnostic, Pos};
use crate::lexer::{Lexer, Tok};

/// Diagnostics beyond this count are dropped.
pub const MAX_DIAGNOSTICS: usize = 32;

const RESERVED: &[&str] = &[
    "ring", "ideal", "hom", "amalgam", "check", "harness", "search", "of", "generated", "canonical", "map", "join",
    "degree", "assert", "max-size", "table",
];

const CONSTRUCTORS: &str = "zmod, product, upper, matrix, polyquot, table";

type PResult<T> = Result<T, Diagnostic>;

struct Parser<'a> {
    lx: Lexer<'a>,
}

/// Parses the statement syntax only; names are not resolved. Errors are
/// collected per line, so one bad statement does not hide the next.
pub fn parse(src: &str) -> Result<Spec, Vec<Diagnostic>> {
    let mut p = Parser { lx: Lexer::new(src) };
    let mut spec = Spec::default();
    let mut diags = Vec::new();
    loop {
        match p.lx.peek() {
            Ok((Tok::Eof, _)) => break,
            Ok((Tok::Newline, _)) => {
                let _ = p.lx.next_token();
                continue;
            }
            _ => {}
        }
        match p.statement() {
            Ok(stmt) => spec.stmts.push(stmt),
            Err(d) => {
                diags.push(d);
                if diags.len() >= MAX_DIAGNOSTICS {
                    break;
                }
                p.lx.recover();
            }
        }
    }
    if diags.is_empty() {
        Ok(spec)
    } else {
        Err(diags)
    }
}

fn unexpected(tok: &Tok, pos: Pos, wanted: &str) -> Diagnostic {
    Diagnostic::new(Code::Syntax, pos, format!("expected {wanted}, found {}", tok.describe()))
}

impl Parser<'_> {
    fn next(&mut self) -> PResult<(Tok, Pos)> {
        self.lx.next_token()
    }

    fn word(&mut self, wanted: &str) -> PResult<Spanned<String>> {
        match self.next()? {
            (Tok::Word(w), pos) => Ok(Spanned { node: w, pos }),
            (t, pos) => Err(unexpected(&t, pos, wanted)),
        }
    }

    fn keyword(&mut self, kw: &str) -> PResult<Pos> {
        match self.next()? {
            (Tok::Word(w), pos) if w == kw => Ok(pos),
            (t, pos) => Err(unexpected(&t, pos, &format!("'{kw}'"))),
        }
    }

    fn name(&mut self) -> PResult<Name> {
        let n = self.word("a name")?;
        if RESERVED.contains(&n.node.as_str()) {
            return Err(Diagnostic::new(Code::Syntax, n.pos, format!("'{}' is a reserved word", n.node)));
        }
        Ok(n)
    }

    fn sym(&mut self, c: char) -> PResult<Pos> {
        match self.next()? {
            (Tok::Sym(s), pos) if s == c => Ok(pos),
            (t, pos) => Err(unexpected(&t, pos, &format!("'{c}'"))),
        }
    }

    fn int(&mut self) -> PResult<(u64, Pos)> {
        match self.next()? {
            (Tok::Int(v), pos) => Ok((v, pos)),
            (t, pos) => Err(unexpected(&t, pos, "an integer")),
        }
    }

    fn peek_is_sym(&self, c: char) -> bool {
        matches!(self.lx.peek(), Ok((Tok::Sym(s), _)) if s == c)
    }

    fn statement(&mut self) -> PResult<Spanned<Stmt>> {
        let kw = self.word("a statement keyword")?;
        let node = match kw.node.as_str() {
            "ring" => self.ring()?,
            "ideal" => self.ideal()?,
            "hom" => self.hom()?,
            "amalgam" => self.amalgam()?,
            "check" => self.check()?,
            "harness" => self.harness()?,
            "search" => self.search()?,
            other => {
                return Err(Diagnostic::new(
                    Code::Syntax,
                    kw.pos,
                    format!("unknown statement '{other}' (expected ring, ideal, hom, amalgam, check, harness or search)"),
                ))
            }
        };
        match self.next()? {
            (Tok::Newline | Tok::Eof, _) => Ok(Spanned { node, pos: kw.pos }),
            (t, pos) => Err(unexpected(&t, pos, "end of statement")),
        }
    }

    fn ring(&mut self) -> PResult<Stmt> {
        let name = self.name()?;
        self.sym('=')?;
        let ctor = self.word("a ring constructor")?;
        let ctor = match ctor.node.as_str() {
            "zmod" => RingCtor::ZMod(self.int()?.0),
            "product" => {
                let (args, pos) = self.args()?;
                match <[Arg; 2]>::try_from(args) {
                    Ok([a, b]) => RingCtor::Product(a.name("product")?, b.name("product")?),
                    Err(args) => return Err(arity("product", 2, args.len(), pos)),
                }
            }
            kind @ ("upper" | "matrix" | "polyquot") => {
                let (args, pos) = self.args()?;
                let [base, k] = <[Arg; 2]>::try_from(args).map_err(|a| arity(kind, 2, a.len(), pos))?;
                let (base, k) = (base.name(kind)?, k.int(kind)?);
                match kind {
                    "upper" => RingCtor::Upper(base, k),
                    "matrix" => RingCtor::Matrix(base, k),
                    _ => RingCtor::PolyQuot(base, k),
                }
            }
            "table" => self.table()?,
            other => {
                return Err(Diagnostic::new(
                    Code::UnknownConstructor,
                    ctor.pos,
                    format!("unknown ring constructor '{other}' (expected one of {CONSTRUCTORS})"),
                ))
            }
        };
        Ok(Stmt::Ring { name, ctor })
    }

    /// `( arg, ... )` with names or integers; returns the opening position.
    fn args(&mut self) -> PResult<(Vec<Arg>, Pos)> {
        let open = self.sym('(')?;
        let mut args = Vec::new();
        if self.peek_is_sym(')') {
            self.next()?;
            return Ok((args, open));
        }
        loop {
            args.push(match self.next()? {
                (Tok::Word(w), pos) => Arg::Name(Spanned { node: w, pos }),
                (Tok::Int(v), pos) => Arg::Int(v, pos),
                (t, pos) => return Err(unexpected(&t, pos, "a ring name or an integer")),
            });
            match self.next()? {
                (Tok::Sym(','), _) => {}
                (Tok::Sym(')'), _) => return Ok((args, open)),
                (t, pos) => return Err(unexpected(&t, pos, "',' or ')'")),
            }
        }
    }

    fn table(&mut self) -> PResult<RingCtor> {
        self.sym('{')?;
        let mut add = None;
        let mut mul = None;
        loop {
            let key = self.word("'add' or 'mul'")?;
            let slot = match key.node.as_str() {
                "add" => &mut add,
                "mul" => &mut mul,
                other => {
                    return Err(Diagnostic::new(Code::Syntax, key.pos, format!("expected 'add' or 'mul', found '{other}'")))
                }
            };
            if slot.is_some() {
                return Err(Diagnostic::new(Code::Syntax, key.pos, format!("'{}' given twice", key.node)));
            }
            self.sym('=')?;
            *slot = Some(self.int_rows()?);
            match self.next()? {
                (Tok::Sym(',' | ';'), _) => {}
                (Tok::Sym('}'), pos) => {
                    return match (add, mul) {
                        (Some(add), Some(mul)) => Ok(RingCtor::Table { add, mul }),
                        _ => Err(Diagnostic::new(Code::Syntax, pos, "a table needs both 'add' and 'mul'")),
                    }
                }
                (t, pos) => return Err(unexpected(&t, pos, "',' or '}'")),
            }
        }
    }

    fn int_rows(&mut self) -> PResult<Vec<Vec<u64>>> {
        let (lit, pos) = self.lx.element()?;
        let bad = || Diagnostic::new(Code::BadElement, pos, "a table is a row list of integers, e.g. [[0,1],[1,0]]");
        let amalg_core::notation::ElemLit::Rows(rows) = lit else { return Err(bad()) };
        rows.into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|e| match e {
                        amalg_core::notation::ElemLit::Int(v) => Ok(v),
                        _ => Err(bad()),
                    })
                    .collect()
            })
            .collect()
    }

    fn element(&mut self) -> PResult<Elem> {
        let (node, pos) = self.lx.element()?;
        Ok(Spanned { node, pos })
    }

    fn ideal(&mut self) -> PResult<Stmt> {
        let name = self.name()?;
        self.keyword("of")?;
        let host = self.name()?;
        self.sym('=')?;
        self.keyword("generated")?;
        self.sym('{')?;
        let mut gens = vec![self.element()?];
        loop {
            match self.next()? {
                (Tok::Sym(','), _) => gens.push(self.element()?),
                (Tok::Sym('}'), _) => break,
                (t, pos) => return Err(unexpected(&t, pos, "',' or '}'")),
            }
        }
        Ok(Stmt::Ideal { name, host, gens })
    }

    fn hom(&mut self) -> PResult<Stmt> {
        let name = self.name()?;
        self.sym(':')?;
        let domain = self.name()?;
        match self.next()? {
            (Tok::Arrow, _) => {}
            (t, pos) => return Err(unexpected(&t, pos, "'->'")),
        }
        let codomain = self.name()?;
        self.sym('=')?;
        let how = self.word("'canonical' or 'map'")?;
        let def = match how.node.as_str() {
            "canonical" => HomDef::Canonical,
            "map" => {
                self.sym('{')?;
                let mut pairs = Vec::new();
                loop {
                    let a = self.element()?;
                    match self.next()? {
                        (Tok::Arrow, _) => {}
                        (t, pos) => return Err(unexpected(&t, pos, "'->'")),
                    }
                    pairs.push((a, self.element()?));
                    match self.next()? {
                        (Tok::Sym(','), _) => {}
                        (Tok::Sym('}'), _) => break,
                        (t, pos) => return Err(unexpected(&t, pos, "',' or '}'")),
                    }
                }
                HomDef::Map(pairs)
            }
            other => {
                return Err(Diagnostic::new(
                    Code::UnknownConstructor,
                    how.pos,
                    format!("unknown hom definition '{other}' (expected canonical or map)"),
                ))
            }
        };
        Ok(Stmt::Hom { name, domain, codomain, def })
    }

    fn amalgam(&mut self) -> PResult<Stmt> {
        let name = self.name()?;
        self.sym('=')?;
        let base = self.name()?;
        self.keyword("join")?;
        let hom = self.name()?;
        let ideal = self.name()?;
        Ok(Stmt::Amalgam { name, base, hom, ideal })
    }

    /// Trailing `key value` options; each key at most once.
    fn options(&mut self, keys: &[&str], mut take: impl FnMut(&mut Self, &str) -> PResult<()>) -> PResult<()> {
        let mut seen: Vec<String> = Vec::new();
        while let Ok((Tok::Word(w), pos)) = self.lx.peek() {
            if !keys.contains(&w.as_str()) {
                return Err(Diagnostic::new(
                    Code::UnknownKeyword,
                    pos,
                    format!("unknown option '{w}' (expected {})", keys.join(" or ")),
                ));
            }
            if seen.contains(&w) {
                return Err(Diagnostic::new(Code::Syntax, pos, format!("option '{w}' given twice")));
            }
            self.next()?;
            take(self, &w)?;
            seen.push(w);
        }
        Ok(())
    }

    fn check(&mut self) -> PResult<Stmt> {
        let target = self.name()?;
        let p = self.word("a property")?;
        let property: Property = p.node.parse().map_err(|_| {
            let names: Vec<&str> = Property::ALL.iter().map(|p| p.name()).collect();
            Diagnostic::new(
                Code::UnknownKeyword,
                p.pos,
                format!("unknown property '{}' (expected one of {})", p.node, names.join(", ")),
            )
        })?;
        let mut degree = None;
        let mut expect = None;
        self.options(&["degree", "assert"], |s, key| {
            if key == "degree" {
                degree = Some(s.int()?.0);
                return Ok(());
            }
            let v = s.word("'holds' or 'refuted'")?;
            expect = Some(match v.node.as_str() {
                "holds" => Expect::Holds,
                "refuted" => Expect::Refuted,
                other => {
                    return Err(Diagnostic::new(
                        Code::UnknownKeyword,
                        v.pos,
                        format!("unknown assertion '{other}' (expected holds or refuted)"),
                    ))
                }
            });
            Ok(())
        })?;
        Ok(Stmt::Check { target, property, degree, expect })
    }

    fn harness(&mut self) -> PResult<Stmt> {
        let mut degree = None;
        self.options(&["degree"], |s, _| {
            degree = Some(s.int()?.0);
            Ok(())
        })?;
        Ok(Stmt::Harness { degree })
    }

    fn search(&mut self) -> PResult<Stmt> {
        let g = self.word("a search goal")?;
        let goal: Goal = g.node.parse().map_err(|_| {
            let names: Vec<&str> = Goal::ALL.iter().map(|g| g.name()).collect();
            Diagnostic::new(
                Code::UnknownKeyword,
                g.pos,
                format!("unknown search goal '{}' (expected one of {})", g.node, names.join(", ")),
            )
        })?;
        let mut degree = None;
        let mut max_size = None;
        self.options(&["degree", "max-size"], |s, key| {
            let v = Some(s.int()?.0);
            if key == "degree" {
                degree = v;
            } else {
                max_size = v;
            }
            Ok(())
        })?;
        Ok(Stmt::Search { goal, degree, max_size })
    }
}

enum Arg {
    Name(Name),
    Int(u64, Pos),
}

impl Arg {
    fn name(self, ctor: &str) -> PResult<Name> {
        match self {
            Arg::Name(n) if !RESERVED.contains(&n.node.as_str()) => Ok(n),
            Arg::Name(n) => Err(Diagnostic::new(Code::Syntax, n.pos, format!("'{}' is a reserved word", n.node))),
            Arg::Int(v, pos) => Err(Diagnostic::new(Code::Syntax, pos, format!("{ctor} expects a ring name, found {v}"))),
        }
    }

    fn int(self, ctor: &str) -> PResult<u64> {
        match self {
            Arg::Int(v, _) => Ok(v),
            Arg::Name(n) => {
                Err(Diagnostic::new(Code::Syntax, n.pos, format!("{ctor} expects an integer, found '{}'", n.node)))
            }
        }
    }
}

fn arity(ctor: &str, want: usize, got: usize, pos: Pos) -> Diagnostic {
    Diagnostic::new(Code::ArityMismatch, pos, format!("{ctor} takes {want} arguments, got {got}"))
}
