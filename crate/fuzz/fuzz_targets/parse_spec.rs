#![no_main]

use amalg_cli::{parse_spec, parser::parse, Limits};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(src) = std::str::from_utf8(data) else { return };
    // Small rings keep hom and ideal enumeration cheap per input.
    let _ = parse_spec(src, Limits { max_ring_size: 32 });
    if let Ok(spec) = parse(src) {
        let printed = spec.to_string();
        assert_eq!(parse(&printed).expect("printed spec reparses"), spec);
    }
});
