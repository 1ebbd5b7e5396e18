#![no_main]

use libfuzzer_sys::fuzz_target;
use xxring_core::report::{decode_csv, decode_json, sweep_rows_from_table, sweep_rows_to_table};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let table = if text.trim_start().starts_with('{') {
        match decode_json(text) {
            Ok(doc) => doc.table,
            Err(_) => return,
        }
    } else {
        match decode_csv(text) {
            Ok(t) => t,
            Err(_) => return,
        }
    };
    if let Ok(rows) = sweep_rows_from_table(&table) {
        for r in &rows {
            assert!((0.0..=1.0).contains(&r.concurrence));
        }
        let back = sweep_rows_from_table(&sweep_rows_to_table(&rows, true)).unwrap();
        assert_eq!(back.len(), rows.len());
    }
});
