#![no_main]

use libfuzzer_sys::fuzz_target;
use xxring_core::report::{decode_csv, encode_csv};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(table) = decode_csv(text) else {
        return;
    };
    if table.rows.iter().any(|r| r.len() != table.columns.len()) {
        return;
    }
    if let Ok(encoded) = encode_csv(&table) {
        let again = decode_csv(&encoded).expect("own output decodes");
        assert_eq!(encode_csv(&again).unwrap(), encoded);
    }
});
