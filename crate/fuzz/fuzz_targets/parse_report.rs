#![no_main]

use libfuzzer_sys::fuzz_target;
use p1dyn::census::{parse_report, verify_report};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(report) = parse_report(s) {
        // Errors are fine; panics are not.
        let _ = verify_report(&report);
    }
});
