#![no_main]

use libfuzzer_sys::fuzz_target;
use p1dyn::wire::{parse_point, parse_rat};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(p) = parse_point(s) {
        let again = parse_point(&format!("{},{}", p.x(), p.y())).expect("normalized point parses");
        assert_eq!(again, p);
    }
    let _ = parse_rat(s);
});
