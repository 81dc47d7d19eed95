mod common;

use amalg_core::construct::zmod;
use amalg_core::poly::{enumerate_polys, poly_mul, render_coeffs, Polynomial};
use amalg_core::theorems::{build_corpus, CorpusConfig};
use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TRIPLES_PER_RING: usize = 1000;

#[test]
fn multiplication_is_associative_and_distributive_on_every_corpus_ring() {
    let corpus = build_corpus(&CorpusConfig::default()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for r in &corpus.rings {
        let o = Oracle::of(r);
        let random = |rng: &mut ChaCha8Rng| {
            let len = rng.gen_range(1..=4);
            Polynomial::new(r, (0..len).map(|_| rng.gen_range(0..r.size())).collect()).unwrap()
        };
        for _ in 0..TRIPLES_PER_RING {
            let (f, g, h) = (random(&mut rng), random(&mut rng), random(&mut rng));
            let fg = poly_mul(&f, &g).unwrap();
            assert_eq!(fg.coeffs(), &o.convolve(f.coeffs(), g.coeffs())[..]);
            let left = poly_mul(&fg, &h).unwrap();
            let right = poly_mul(&f, &poly_mul(&g, &h).unwrap()).unwrap();
            assert_eq!(left.coeffs(), right.coeffs(), "associativity in {}", r.provenance());
            let a = poly_mul(&f, &g.add(&h).unwrap()).unwrap();
            let b = fg.add(&poly_mul(&f, &h).unwrap()).unwrap();
            assert_eq!(a.degree(), b.degree());
            assert_eq!(trimmed(a.coeffs(), r.zero()), trimmed(b.coeffs(), r.zero()), "left distributivity");
            let a = poly_mul(&f.add(&g).unwrap(), &h).unwrap();
            let b = poly_mul(&f, &h).unwrap().add(&poly_mul(&g, &h).unwrap()).unwrap();
            assert_eq!(trimmed(a.coeffs(), r.zero()), trimmed(b.coeffs(), r.zero()), "right distributivity");
        }
    }
}

fn trimmed(c: &[usize], zero: usize) -> &[usize] {
    let end = c.iter().rposition(|&x| x != zero).map_or(0, |p| p + 1);
    &c[..end]
}

#[test]
fn enumeration_is_lexicographic_and_complete() {
    let z3 = zmod(3).unwrap();
    let all: Vec<Vec<usize>> = enumerate_polys(&z3, 2, 1 << 20).unwrap().map(|p| p.coeffs().to_vec()).collect();
    assert_eq!(all, Oracle::of(&z3).polys(2));
    assert_eq!(all.len(), 27);
    assert!(enumerate_polys(&z3, 2, 26).is_err());
}

#[test]
fn rendering() {
    let z4 = zmod(4).unwrap();
    assert_eq!(render_coeffs(&z4, &[1, 0, 3]), "1 + 3*x^2");
    assert_eq!(render_coeffs(&z4, &[0, 2]), "2*x");
    assert_eq!(render_coeffs(&z4, &[0, 0]), "0");
    let f = Polynomial::new(&z4, vec![0, 1, 1]).unwrap();
    assert_eq!(f.degree(), Some(2));
    assert_eq!(f.to_string(), "1*x + 1*x^2");
}

#[test]
fn mixing_hosts_is_rejected() {
    let f = Polynomial::new(&zmod(4).unwrap(), vec![1]).unwrap();
    let g = Polynomial::new(&zmod(5).unwrap(), vec![1]).unwrap();
    assert!(poly_mul(&f, &g).is_err());
    assert!(Polynomial::new(&zmod(4).unwrap(), vec![4]).is_err());
}
