#![no_main]

use std::sync::{Arc, OnceLock};

use amalg_core::construct::{direct_product, matrix_ring, poly_quotient, upper_triangular, zmod};
use amalg_core::notation::ElemLit;
use amalg_core::FiniteRing;
use libfuzzer_sys::fuzz_target;

fn rings() -> &'static [Arc<FiniteRing>] {
    static RINGS: OnceLock<Vec<Arc<FiniteRing>>> = OnceLock::new();
    RINGS.get_or_init(|| {
        let z2 = zmod(2).unwrap();
        let z3 = zmod(3).unwrap();
        vec![
            zmod(6).unwrap(),
            direct_product(&z2, &z3).unwrap(),
            upper_triangular(&z2, 2, 256).unwrap(),
            matrix_ring(&z2, 2, 256).unwrap(),
            poly_quotient(&z3, 2, 256).unwrap(),
        ]
    })
}

fuzz_target!(|data: &[u8]| {
    let Ok(src) = std::str::from_utf8(data) else { return };
    let Ok((lit, used)) = ElemLit::parse_prefix(src) else { return };
    assert!(used <= src.len());
    assert_eq!(ElemLit::parse_prefix(&lit.to_string()).map(|(l, _)| l).as_ref(), Ok(&lit));
    for r in rings() {
        if let Ok(e) = r.resolve(&lit) {
            assert!(e < r.size());
            assert_eq!(r.resolve(&r.literal(e)).unwrap(), e);
        }
    }
});
