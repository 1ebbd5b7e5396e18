#![no_main]

use libfuzzer_sys::fuzz_target;
use xxring_core::report::parse_range;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(r) = parse_range(text) {
        assert!(r.min <= r.max);
        // Canonical form parses to the same range.
        assert_eq!(parse_range(&format!("{}..={}", r.min, r.max)).unwrap(), r);
    }
});
