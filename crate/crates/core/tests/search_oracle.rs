mod common;

use std::collections::BTreeSet;
use std::sync::Arc;

use amalg_core::construct::{direct_product, poly_quotient, zmod};
use amalg_core::properties::{check, Property, SearchConfig, Strategy, Verdict, Witness};
use amalg_core::search::{annihilating_pairs, count_annihilating_pairs, for_each_annihilating_pair, Orientation};
use amalg_core::{ElementSet, FiniteRing};
use common::*;

const BOUNDED: [Property; 3] = [Property::Armendariz, Property::NilArmendariz, Property::WeakArmendariz];

fn assert_matches_oracle(r: &Arc<FiniteRing>, d: usize) {
    let expected = Oracle::of(r).bounded_witnesses(d);
    for strategy in [Strategy::Auto, Strategy::Direct] {
        let cfg = SearchConfig { strategy, ..SearchConfig::with_degree(d) };
        for (p, want) in BOUNDED.iter().zip(&expected) {
            let rep = check(r, *p, &cfg).unwrap();
            let got = match &rep.witness {
                Some(Witness::Polynomial { f, g, i, j, .. }) => Some((f.clone(), g.clone(), *i, *j)),
                Some(other) => panic!("unexpected witness {other:?}"),
                None => None,
            };
            assert_eq!(&got, want, "{p} on {} at d={d} ({strategy:?})", r.provenance());
            assert_eq!(rep.verdict == Verdict::Refuted, want.is_some());
        }
    }
}

#[test]
fn every_ring_up_to_four_elements() {
    for r in rings_up_to_4() {
        for d in 0..=2 {
            assert_matches_oracle(&r, d);
        }
    }
}

#[test]
fn eight_and_sixteen_element_rings_at_degree_one() {
    let z2 = zmod(2).unwrap();
    let rings = [
        t2(),
        m2(),
        zmod(8).unwrap(),
        poly_quotient(&z2, 3, 256).unwrap(),
        direct_product(&z2, &zmod(4).unwrap()).unwrap(),
        direct_product(&z2, &t2()).unwrap(),
    ];
    for r in &rings {
        assert_matches_oracle(r, 1);
    }
}

#[test]
fn triangular_ring_at_degree_two() {
    assert_matches_oracle(&t2(), 2);
}

fn lib_pairs(r: &FiniteRing, d: usize, allowed: &ElementSet, side: Orientation) -> Vec<Pair> {
    let mut out = Vec::new();
    let n = for_each_annihilating_pair(r, d, allowed, side, 0, |f, g| out.push((f.to_vec(), g.to_vec()))).unwrap();
    assert_eq!(n as usize, out.len());
    out
}

/// Pair count of `T₂(Z/2)` at degree one with `fg = 0`, from the oracle.
const T2_ZERO_PAIRS_D1: usize = 376;
/// Same, with `fg ∈ nil(T₂)[x]`.
const T2_NIL_PAIRS_D1: usize = 784;

#[test]
fn triangular_pair_counts() {
    let t = t2();
    let o = Oracle::of(&t);
    let zero = ElementSet::singleton(8, t.zero());
    let nil = t.nilradical();
    for (set, mask, frozen) in [(&zero, o.zero_set(), T2_ZERO_PAIRS_D1), (&nil, o.nil(), T2_NIL_PAIRS_D1)] {
        let naive = o.pairs(1, &mask);
        assert_eq!(naive.len(), frozen);
        for side in [Orientation::FixF, Orientation::FixG] {
            assert_eq!(count_annihilating_pairs(&t, 1, set, side).unwrap() as usize, frozen);
            let got: BTreeSet<Pair> = lib_pairs(&t, 1, set, side).into_iter().collect();
            assert_eq!(got, naive.iter().cloned().collect::<BTreeSet<_>>());
        }
        assert_eq!(lib_pairs(&t, 1, set, Orientation::FixF), naive, "fixed-f order is lexicographic");
        let streamed: Vec<Pair> = annihilating_pairs(&t, 1, set).unwrap().collect();
        assert_eq!(streamed, naive);
    }
}

#[test]
fn pair_streams_match_on_small_rings() {
    for r in rings_up_to_4().into_iter().chain([t2()]) {
        let o = Oracle::of(&r);
        let nil = r.nilradical();
        for d in 0..=2 {
            if r.size() > 4 && d == 2 {
                continue;
            }
            let naive = o.pairs(d, &o.nil());
            assert_eq!(lib_pairs(&r, d, &nil, Orientation::FixF), naive, "{} d={d}", r.provenance());
        }
    }
}

#[test]
fn frozen_witnesses() {
    // fg = 0 with f = E12 + E11 x, g = E12 + E22 x, a_0 b_1 = E12.
    let t = t2();
    let (e11, e12, e22) = (t2_index(E11), t2_index(E12), t2_index(E22));
    let w = Oracle::of(&t).bounded_witnesses(1);
    assert_eq!(w[0], Some((vec![e12, e11], vec![e12, e22], 0, 1)));
    assert_eq!(w[1..], [None, None]);
    // f = E22 + E21 x, g = E12 + E22 x, a_0 b_1 = E22 is idempotent.
    let m = m2();
    let (e12, e21, e22) = (m2_index(E12), m2_index(E21), m2_index(E22));
    let expected = Some((vec![e22, e21], vec![e12, e22], 0, 1));
    assert_eq!(Oracle::of(&m).bounded_witnesses(1), [expected.clone(), expected.clone(), expected]);
}

mod random_sets {
    use super::*;
    use amalg_core::search::{find_min_witness, SearchControl};
    use proptest::prelude::*;

    fn small_rings() -> Vec<Arc<FiniteRing>> {
        let mut out = rings_up_to_4();
        out.extend([t2(), zmod(6).unwrap(), zmod(8).unwrap()]);
        out
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(96))]

        #[test]
        fn minimal_witness_for_arbitrary_sets(idx in 0usize..9, d in 0usize..=1, allow in any::<u8>(), targ in any::<u8>(), seed in any::<u64>()) {
            let rings = small_rings();
            let r = &rings[idx];
            let n = r.size();
            let mask = |bits: u8| -> Vec<bool> { (0..n).map(|e| e == r.zero() || bits >> (e % 8) & 1 == 1).collect() };
            let (a, t) = (mask(allow), mask(targ));
            let set = |m: &[bool]| ElementSet::new(n, (0..n).filter(|&e| m[e]));
            let got = find_min_witness(r, d, &set(&a), &set(&t), SearchControl { seed: Some(seed), ..Default::default() }).unwrap();
            let want = Oracle::of(r).min_witness(d, &a, &t);
            prop_assert_eq!(got.witness.map(|w| (w.f, w.g, w.i, w.j)), want);
        }
    }
}
