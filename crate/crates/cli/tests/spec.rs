use amalg_cli::ast::{Elem, Expect, Goal, HomDef, Name, RingCtor, Spanned, Spec, Stmt};
use amalg_cli::diag::Pos;
use amalg_cli::parser::parse;
use amalg_cli::{parse_spec, Limits};
use amalg_core::notation::ElemLit;
use amalg_core::properties::Property;
use proptest::prelude::*;

fn model(src: &str) -> amalg_cli::SpecModel {
    parse_spec(src, Limits::default()).unwrap_or_else(|d| panic!("{d:?}"))
}

#[test]
fn one_ring_binding() {
    let m = model("ring A = zmod 4");
    assert_eq!(m.rings.len(), 1);
    assert_eq!(m.rings[0].0, "A");
    assert_eq!(m.rings[0].1.size(), 4);
}

#[test]
fn ideal_is_closure_of_generators() {
    let m = model("ring A = zmod 4\nideal J of A = generated { 2 }");
    assert_eq!(m.ideal("J").unwrap().members().members(), &[0, 2]);
}

#[test]
fn zmod_one_is_a_constraint_error() {
    let d = parse_spec("ring X = zmod 1", Limits::default()).unwrap_err();
    assert_eq!(d.len(), 1);
    assert_eq!(d[0].code, "E007");
    assert_eq!(d[0].pos, Pos { line: 1, col: 6 });
    assert!(d[0].message.contains("n >= 2"), "{}", d[0].message);
}

#[test]
fn every_error_class_has_its_own_code() {
    let cases = [
        ("ring A = zmod 4 4", "E001"),
        ("ring A = zmodd 4", "E002"),
        ("check B reduced", "E003"),
        ("ring A = zmod 2\nring P = product(A)", "E004"),
        ("ring A = zmod 2\nring A = zmod 3", "E005"),
        ("ring A = zmod 2\nideal J of A = generated { [[1]] }", "E006"),
        ("ring A = zmod 1", "E007"),
        ("harness depth 1", "E008"),
    ];
    for (src, code) in cases {
        let d = parse_spec(src, Limits::default()).unwrap_err();
        assert_eq!(d[0].code, code, "{src}");
    }
}

#[test]
fn sample_specs_elaborate() {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/specs");
    let mut n = 0;
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        let src = std::fs::read_to_string(&path).unwrap();
        let m = parse_spec(&src, Limits::default()).unwrap_or_else(|d| panic!("{}: {d:?}", path.display()));
        let again = parse_spec(&m.spec.to_string(), Limits::default()).unwrap();
        assert_eq!(again.spec, m.spec);
        n += 1;
    }
    assert!(n >= 4);
}

#[test]
fn ring_size_limit_applies() {
    let d = parse_spec("ring A = zmod 20", Limits { max_ring_size: 16 }).unwrap_err();
    assert_eq!(d[0].code, "E007");
}

fn sp<T>(node: T) -> Spanned<T> {
    Spanned { node, pos: Pos::default() }
}

fn arb_name() -> impl Strategy<Value = Name> {
    "[A-Za-z_][A-Za-z0-9_]{0,5}"
        .prop_filter("reserved", |s| {
            ![
                "ring", "ideal", "hom", "amalgam", "check", "harness", "search", "of", "generated", "canonical", "map",
                "join", "degree", "assert", "table",
            ]
            .contains(&s.as_str())
        })
        .prop_map(sp)
}

fn arb_lit() -> impl Strategy<Value = ElemLit> {
    let int = (0u64..20).prop_map(ElemLit::Int);
    prop_oneof![
        int.clone(),
        prop::collection::vec(int.clone(), 2..4).prop_map(ElemLit::Tuple),
        prop::collection::vec(prop::collection::vec(int, 2), 2).prop_map(ElemLit::Rows),
    ]
}

fn arb_elem() -> impl Strategy<Value = Elem> {
    arb_lit().prop_map(sp)
}

fn arb_table() -> impl Strategy<Value = Vec<Vec<u64>>> {
    (1usize..4).prop_flat_map(|n| prop::collection::vec(prop::collection::vec(0u64..9, n), n))
}

fn arb_stmt() -> impl Strategy<Value = Stmt> {
    let small = 0u64..300;
    let ctor = prop_oneof![
        small.clone().prop_map(RingCtor::ZMod),
        (arb_name(), arb_name()).prop_map(|(a, b)| RingCtor::Product(a, b)),
        (arb_name(), small.clone()).prop_map(|(a, k)| RingCtor::Upper(a, k)),
        (arb_name(), small.clone()).prop_map(|(a, k)| RingCtor::Matrix(a, k)),
        (arb_name(), small.clone()).prop_map(|(a, k)| RingCtor::PolyQuot(a, k)),
        (arb_table(), arb_table()).prop_map(|(add, mul)| RingCtor::Table { add, mul }),
    ];
    let def = prop_oneof![
        Just(HomDef::Canonical),
        prop::collection::vec((arb_elem(), arb_elem()), 1..3).prop_map(HomDef::Map),
    ];
    let opt = prop::option::of(0u64..8);
    prop_oneof![
        (arb_name(), ctor).prop_map(|(name, ctor)| Stmt::Ring { name, ctor }),
        (arb_name(), arb_name(), prop::collection::vec(arb_elem(), 1..4))
            .prop_map(|(name, host, gens)| Stmt::Ideal { name, host, gens }),
        (arb_name(), arb_name(), arb_name(), def)
            .prop_map(|(name, domain, codomain, def)| Stmt::Hom { name, domain, codomain, def }),
        (arb_name(), arb_name(), arb_name(), arb_name())
            .prop_map(|(name, base, hom, ideal)| Stmt::Amalgam { name, base, hom, ideal }),
        (
            arb_name(),
            prop::sample::select(Property::ALL.to_vec()),
            opt.clone(),
            prop::option::of(prop::sample::select(vec![Expect::Holds, Expect::Refuted]))
        )
            .prop_map(|(target, property, degree, expect)| Stmt::Check { target, property, degree, expect }),
        opt.clone().prop_map(|degree| Stmt::Harness { degree }),
        (prop::sample::select(Goal::ALL.to_vec()), opt.clone(), opt)
            .prop_map(|(goal, degree, max_size)| Stmt::Search { goal, degree, max_size }),
    ]
}

proptest! {
    #[test]
    fn printing_then_parsing_is_identity(stmts in prop::collection::vec(arb_stmt(), 0..8)) {
        let spec = Spec { stmts: stmts.into_iter().map(sp).collect() };
        let text = spec.to_string();
        let back = parse(&text).map_err(|d| TestCaseError::fail(format!("{d:?}\n{text}")))?;
        prop_assert_eq!(back, spec);
    }

    #[test]
    fn parsing_is_total(src in "[ -~\n\t]{0,200}") {
        let _ = parse_spec(&src, Limits::default());
    }

    #[test]
    fn mutated_specs_are_total(cut in 0usize..400, insert in "[ -~]{0,4}") {
        let base = include_str!("../specs/matrices.amalg");
        let mut at = cut.min(base.len());
        while !base.is_char_boundary(at) {
            at -= 1;
        }
        let src = format!("{}{insert}{}", &base[..at], &base[at..]);
        if let Err(d) = parse_spec(&src, Limits::default()) {
            prop_assert!(!d.is_empty());
            prop_assert!(d.iter().all(|d| d.pos.line >= 1 && d.pos.col >= 1));
        }
    }
}
