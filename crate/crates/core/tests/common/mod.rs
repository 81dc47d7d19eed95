//! Brute-force reference implementations used to cross-check the library.
//! Everything here works from raw operation tables or from first-principles
//! arithmetic and shares no code with the search engine.
#![allow(dead_code)]

use std::sync::Arc;

use amalg_core::construct::{direct_product, matrix_ring, poly_quotient, upper_triangular, zmod};
use amalg_core::{FiniteRing, RingTables};

pub type Pair = (Vec<usize>, Vec<usize>);

/// `(f, g, i, j)` coefficient vectors and indices.
pub type PolyWitness = (Vec<usize>, Vec<usize>, usize, usize);

/// Plain operation tables copied out of a ring.
pub struct Oracle {
    pub n: usize,
    pub add: Vec<Vec<usize>>,
    pub mul: Vec<Vec<usize>>,
    pub zero: usize,
}

impl Oracle {
    pub fn of(r: &FiniteRing) -> Oracle {
        let t = r.tables();
        Oracle { n: t.add.len(), add: t.add, mul: t.mul, zero: t.zero }
    }

    pub fn nilpotent(&self, a: usize) -> bool {
        let mut p = a;
        for _ in 0..=self.n {
            if p == self.zero {
                return true;
            }
            p = self.mul[p][a];
        }
        false
    }

    pub fn nil(&self) -> Vec<bool> {
        (0..self.n).map(|a| self.nilpotent(a)).collect()
    }

    pub fn convolve(&self, f: &[usize], g: &[usize]) -> Vec<usize> {
        let mut out = vec![self.zero; f.len() + g.len() - 1];
        for (i, &a) in f.iter().enumerate() {
            for (j, &b) in g.iter().enumerate() {
                out[i + j] = self.add[out[i + j]][self.mul[a][b]];
            }
        }
        out
    }

    /// All coefficient vectors of length `d + 1` in lexicographic order,
    /// first coefficient most significant.
    pub fn polys(&self, d: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = vec![0usize; d + 1];
        loop {
            out.push(cur.clone());
            let mut k = d + 1;
            loop {
                if k == 0 {
                    return out;
                }
                k -= 1;
                cur[k] += 1;
                if cur[k] < self.n {
                    break;
                }
                cur[k] = 0;
            }
        }
    }

    /// First `(f, g, i, j)` in lexicographic order with `f ≠ 0`, every
    /// coefficient of `fg` in `allowed`, and `a_i b_j ∉ target`.
    pub fn min_witness(&self, d: usize, allowed: &[bool], target: &[bool]) -> Option<(Vec<usize>, Vec<usize>, usize, usize)> {
        let polys = self.polys(d);
        for f in polys.iter().filter(|f| f.iter().any(|&c| c != self.zero)) {
            for g in &polys {
                if !self.convolve(f, g).iter().all(|&c| allowed[c]) {
                    continue;
                }
                for i in 0..=d {
                    for j in 0..=d {
                        if !target[self.mul[f[i]][g[j]]] {
                            return Some((f.clone(), g.clone(), i, j));
                        }
                    }
                }
            }
        }
        None
    }

    /// Every pair, zero polynomials included, with `fg` in `allowed`.
    pub fn pairs(&self, d: usize, allowed: &[bool]) -> Vec<Pair> {
        let polys = self.polys(d);
        let mut out = Vec::new();
        for f in &polys {
            for g in &polys {
                if self.convolve(f, g).iter().all(|&c| allowed[c]) {
                    out.push((f.clone(), g.clone()));
                }
            }
        }
        out
    }

    pub fn zero_set(&self) -> Vec<bool> {
        (0..self.n).map(|e| e == self.zero).collect()
    }

    pub fn is_reduced(&self) -> bool {
        (0..self.n).all(|a| a == self.zero || !self.nilpotent(a))
    }

    /// Verdicts of the three bounded properties, derived from minimal
    /// witnesses: armendariz, nil-armendariz, weak-armendariz.
    pub fn bounded_witnesses(&self, d: usize) -> [Option<PolyWitness>; 3] {
        let zero = self.zero_set();
        let nil = self.nil();
        [self.min_witness(d, &zero, &zero), self.min_witness(d, &nil, &nil), self.min_witness(d, &zero, &nil)]
    }

    pub fn is_ideal(&self, s: &[bool]) -> bool {
        if !s[self.zero] {
            return false;
        }
        let members: Vec<usize> = (0..self.n).filter(|&e| s[e]).collect();
        members.iter().all(|&a| {
            members.iter().all(|&b| s[self.add[a][b]])
                && (0..self.n).all(|r| s[self.mul[r][a]] && s[self.mul[a][r]])
        })
    }

    /// Ideals by subset enumeration; only for small rings.
    pub fn ideals(&self) -> Vec<Vec<usize>> {
        assert!(self.n <= 16);
        let mut out = Vec::new();
        for mask in 0u32..(1 << self.n) {
            let s: Vec<bool> = (0..self.n).map(|e| mask >> e & 1 == 1).collect();
            if self.is_ideal(&s) {
                out.push((0..self.n).filter(|&e| s[e]).collect());
            }
        }
        out.sort_by(|a: &Vec<usize>, b| (a.len(), a).cmp(&(b.len(), b)));
        out
    }
}

/// Unital homomorphisms by enumerating every map.
pub fn naive_homs(a: &FiniteRing, b: &FiniteRing) -> Vec<Vec<usize>> {
    let (oa, ob) = (Oracle::of(a), Oracle::of(b));
    let mut out = Vec::new();
    for map in ob.polys(oa.n - 1) {
        let ok = map[a.one()] == b.one()
            && (0..oa.n).all(|x| {
                (0..oa.n).all(|y| {
                    map[oa.add[x][y]] == ob.add[map[x]][map[y]] && map[oa.mul[x][y]] == ob.mul[map[x]][map[y]]
                })
            });
        if ok {
            out.push(map);
        }
    }
    out
}

/// `GF(4)` as `F2[t]/(t²+t+1)`, element `2·c1 + c0` is `c0 + c1 t`.
pub fn gf4() -> Arc<FiniteRing> {
    let mul = |a: usize, b: usize| {
        let (a0, a1, b0, b1) = (a & 1, a >> 1, b & 1, b >> 1);
        // t² = t + 1
        let c0 = (a0 * b0 + a1 * b1) % 2;
        let c1 = (a0 * b1 + a1 * b0 + a1 * b1) % 2;
        2 * c1 + c0
    };
    let t = RingTables {
        add: (0..4).map(|a| (0..4).map(|b| a ^ b).collect()).collect(),
        mul: (0..4).map(|a| (0..4).map(|b| mul(a, b)).collect()).collect(),
        zero: 0,
        one: 1,
    };
    FiniteRing::from_tables(&t, "gf4").unwrap()
}

/// Every unital ring with at most four elements, up to isomorphism.
pub fn rings_up_to_4() -> Vec<Arc<FiniteRing>> {
    let z2 = zmod(2).unwrap();
    vec![
        z2.clone(),
        zmod(3).unwrap(),
        zmod(4).unwrap(),
        direct_product(&z2, &z2).unwrap(),
        poly_quotient(&z2, 2, 256).unwrap(),
        gf4(),
    ]
}

pub fn t2() -> Arc<FiniteRing> {
    upper_triangular(&zmod(2).unwrap(), 2, 256).unwrap()
}

pub fn m2() -> Arc<FiniteRing> {
    matrix_ring(&zmod(2).unwrap(), 2, 256).unwrap()
}

/// 2×2 matrices over `Z/2` as `[[a, b], [c, d]]`.
pub type Mat = [[u8; 2]; 2];

pub fn mat_mul(x: Mat, y: Mat) -> Mat {
    let mut out = [[0u8; 2]; 2];
    for r in 0..2 {
        for c in 0..2 {
            out[r][c] = (x[r][0] * y[0][c] + x[r][1] * y[1][c]) % 2;
        }
    }
    out
}

pub fn mat_add(x: Mat, y: Mat) -> Mat {
    let mut out = [[0u8; 2]; 2];
    for r in 0..2 {
        for c in 0..2 {
            out[r][c] = (x[r][c] + y[r][c]) % 2;
        }
    }
    out
}

/// Element of `M₂(Z/2)` holding matrix `m`: row-major entries, first
/// entry most significant.
pub fn m2_index(m: Mat) -> usize {
    (m[0][0] as usize) << 3 | (m[0][1] as usize) << 2 | (m[1][0] as usize) << 1 | m[1][1] as usize
}

pub fn m2_matrix(e: usize) -> Mat {
    [[(e >> 3 & 1) as u8, (e >> 2 & 1) as u8], [(e >> 1 & 1) as u8, (e & 1) as u8]]
}

/// Element of `T₂(Z/2)` holding upper triangular `m`.
pub fn t2_index(m: Mat) -> usize {
    assert_eq!(m[1][0], 0);
    (m[0][0] as usize) << 2 | (m[0][1] as usize) << 1 | m[1][1] as usize
}

pub fn t2_matrix(e: usize) -> Mat {
    [[(e >> 2 & 1) as u8, (e >> 1 & 1) as u8], [0, (e & 1) as u8]]
}

pub const E11: Mat = [[1, 0], [0, 0]];
pub const E12: Mat = [[0, 1], [0, 0]];
pub const E21: Mat = [[0, 0], [1, 0]];
pub const E22: Mat = [[0, 0], [0, 1]];
