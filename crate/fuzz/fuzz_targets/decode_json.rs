#![no_main]

use libfuzzer_sys::fuzz_target;
use xxring_core::report::{decode_json, encode_json};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(doc) = decode_json(text) else {
        return;
    };
    // Anything accepted must re-encode, and the encoding must be a fixed point.
    if let Ok(encoded) = encode_json(&doc) {
        let again = decode_json(&encoded).expect("own output decodes");
        assert_eq!(encode_json(&again).unwrap(), encoded);
    }
});
