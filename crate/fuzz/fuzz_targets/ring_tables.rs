#![no_main]

use amalg_core::{verify_axioms, FiniteRing, RingTables};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Some((&first, rest)) = data.split_first() else { return };
    let n = usize::from(first % 8) + 1;
    if rest.len() < 2 * n * n {
        return;
    }
    let cell = |k: usize| usize::from(rest[k]) % (n + 1);
    let table = |off: usize| (0..n).map(|i| (0..n).map(|j| cell(off + i * n + j)).collect()).collect();
    let t = RingTables::infer_identities(table(0), table(n * n));
    let verdict = verify_axioms(&t);
    match FiniteRing::from_tables(&t, "fuzz") {
        Ok(r) => {
            assert!(verdict.is_ok());
            assert!(r.nilradical().contains(r.zero()));
            assert_eq!(r.tables().add, t.add);
        }
        Err(_) => assert!(verdict.is_err()),
    }
});
