#![no_main]

use libfuzzer_sys::fuzz_target;
use p1dyn::wire::{format_map, parse_map};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(phi) = parse_map(s) {
        // Anything accepted must survive a round trip.
        let again = parse_map(&format_map(&phi)).expect("formatted map parses");
        assert_eq!(again, phi);
    }
});
