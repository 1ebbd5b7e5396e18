#![no_main]

use arbitrary::Arbitrary;
use libfuzzer_sys::fuzz_target;
use xxring_core::report::{
    decode_csv, decode_json, encode_csv, encode_json, Cell, Document, Meta, Table,
};

#[derive(Arbitrary, Debug)]
enum RawCell {
    Null,
    Bool(bool),
    Int(i64),
    Float(f64),
    Text(String),
}

#[derive(Arbitrary, Debug)]
struct RawTable {
    columns: Vec<String>,
    rows: Vec<Vec<RawCell>>,
}

fn cell(raw: RawCell) -> Cell {
    match raw {
        RawCell::Null => Cell::Null,
        RawCell::Bool(b) => Cell::Bool(b),
        RawCell::Int(i) => Cell::Int(i),
        RawCell::Float(x) => Cell::Float(x),
        RawCell::Text(s) => Cell::Text(s),
    }
}

fuzz_target!(|raw: RawTable| {
    let width = raw.columns.len();
    if width == 0 {
        return;
    }
    let mut table = Table::new(raw.columns);
    for row in raw.rows {
        let mut cells: Vec<Cell> = row.into_iter().map(cell).collect();
        cells.resize(width, Cell::Null);
        table.rows.push(cells);
    }
    if let Ok(text) = encode_csv(&table) {
        // Encoding succeeded, so decoding must reproduce the rounded table,
        // unless duplicate or empty-looking headers make it ambiguous.
        if let Ok(back) = decode_csv(&text) {
            if back.columns == table.columns {
                assert_eq!(back, table.rounded());
            }
        }
    }
    let doc = Document {
        command: "fuzz".into(),
        config: Vec::new(),
        table,
        meta: Meta {
            version: "0".into(),
            runtime_ms: None,
        },
    };
    if let Ok(text) = encode_json(&doc) {
        let back = decode_json(&text).expect("own JSON decodes");
        assert_eq!(encode_json(&back).unwrap(), text);
    }
});
