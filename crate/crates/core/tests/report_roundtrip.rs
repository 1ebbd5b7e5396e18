use proptest::prelude::*;
use xxring_core::analysis::SweepRow;
use xxring_core::report::{
    decode_csv, decode_json, encode_csv, encode_json, parse_range, sweep_rows_from_table,
    sweep_rows_to_table, Cell, Document, Meta, Table,
};
use xxring_core::xxmodel::Regime;

fn cell() -> impl Strategy<Value = Cell> {
    prop_oneof![
        Just(Cell::Null),
        any::<bool>().prop_map(Cell::Bool),
        any::<i64>().prop_map(Cell::Int),
        (-1e12f64..1e12).prop_map(Cell::Float),
        (1e-300f64..1e-3).prop_map(Cell::Float),
        "[a-z|{][a-z0-9,+ |>}]{0,12}"
            .prop_filter("not a literal", |s| s != "true" && s != "false")
            .prop_map(Cell::Text),
    ]
}

fn table() -> impl Strategy<Value = Table> {
    (1usize..5).prop_flat_map(|width| {
        (
            prop::collection::vec("[a-z_]{1,8}", width),
            prop::collection::vec(prop::collection::vec(cell(), width), 0..6),
        )
            .prop_filter("distinct columns", |(cols, _)| {
                let mut c = cols.clone();
                c.sort();
                c.dedup();
                c.len() == cols.len()
            })
            .prop_map(|(columns, rows)| Table { columns, rows })
    })
}

proptest! {
    #[test]
    fn json_round_trips(t in table(), runtime in prop::option::of(0.0f64..1e6)) {
        let doc = Document {
            command: "sweep".into(),
            config: vec![("n".into(), Cell::Int(4)), ("j".into(), Cell::Float(-1.0))],
            table: t,
            meta: Meta { version: "0.1.0".into(), runtime_ms: runtime },
        };
        let text = encode_json(&doc).unwrap();
        let back = decode_json(&text).unwrap();
        let expected = doc.rounded();
        prop_assert_eq!(&back.command, &expected.command);
        prop_assert_eq!(&back.config, &expected.config);
        prop_assert_eq!(&back.meta, &expected.meta);
        // A table with no rows has no columns once encoded.
        if !expected.table.rows.is_empty() {
            prop_assert_eq!(&back.table, &expected.table);
        }
        prop_assert_eq!(encode_json(&back).unwrap(), text);
    }

    #[test]
    fn csv_round_trips(t in table()) {
        let text = encode_csv(&t).unwrap();
        let back = decode_csv(&text).unwrap();
        prop_assert_eq!(&back, &t.rounded());
        prop_assert_eq!(encode_csv(&back).unwrap(), text);
    }

    #[test]
    fn csv_and_json_carry_the_same_table(t in table().prop_filter("rows", |t| !t.rows.is_empty())) {
        let doc = Document {
            command: "x".into(),
            config: vec![],
            table: t,
            meta: Meta { version: "0".into(), runtime_ms: None },
        };
        let from_json = decode_json(&encode_json(&doc).unwrap()).unwrap().table;
        let from_csv = decode_csv(&encode_csv(&doc.table).unwrap()).unwrap();
        prop_assert_eq!(from_json, from_csv);
    }

    #[test]
    fn ranges_parse_back(a in 0u32..1000, b in 0u32..1000) {
        let (lo, hi) = (a.min(b), a.max(b));
        let r = parse_range(&format!("{lo}..{hi}")).unwrap();
        prop_assert_eq!((r.min, r.max), (lo, hi));
        prop_assert_eq!(parse_range(&format!("{lo}..={hi}")).unwrap(), r);
    }
}

#[test]
fn sweep_rows_survive_both_encodings() {
    let rows = vec![
        SweepRow {
            n: 4,
            regime: Regime::Ferromagnetic,
            distance: 1,
            concurrence: 0.457106781187,
            degeneracy: 1,
            energy: -2.82842712475,
            wall_ms: 0.0,
        },
        SweepRow {
            n: 5,
            regime: Regime::Antiferromagnetic,
            distance: 2,
            concurrence: 0.0,
            degeneracy: 4,
            energy: -2.61803398875,
            wall_ms: 0.0,
        },
    ];
    let table = sweep_rows_to_table(&rows, false);
    let csv = decode_csv(&encode_csv(&table).unwrap()).unwrap();
    assert_eq!(sweep_rows_from_table(&csv).unwrap(), rows);
    let doc = Document {
        command: "sweep".into(),
        config: vec![],
        table,
        meta: Meta {
            version: "0".into(),
            runtime_ms: None,
        },
    };
    let json = decode_json(&encode_json(&doc).unwrap()).unwrap();
    assert_eq!(sweep_rows_from_table(&json.table).unwrap(), rows);
}

#[test]
fn malformed_sweep_tables_are_rejected() {
    for text in [
        "n,regime,distance\n4,ferro,1\n",
        "n,regime,distance,concurrence\n-4,ferro,1,0.3\n",
        "n,regime,distance,concurrence\n4,sideways,1,0.3\n",
        "n,regime,distance,concurrence\n4,ferro,1,1.5\n",
        "n,regime,distance,concurrence\n4,ferro,1,\n",
    ] {
        let t = decode_csv(text).unwrap();
        assert!(sweep_rows_from_table(&t).is_err(), "{text}");
    }
}

/// Text that looks roughly like CSV, so the decoder gets past the header.
fn csv_like() -> impl Strategy<Value = String> {
    prop::collection::vec("[a-z0-9.,e+\"\\- \r\n|{}]{0,12}", 1..6)
        .prop_map(|lines| lines.join("\n"))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    // Same invariants as the fuzz targets, on whatever input proptest finds.
    #[test]
    fn decoders_accept_only_what_they_can_reproduce(text in prop_oneof![any::<String>(), csv_like()]) {
        if let Ok(r) = parse_range(&text) {
            prop_assert!(r.min <= r.max);
        }
        if let Ok(doc) = decode_json(&text) {
            if let Ok(encoded) = encode_json(&doc) {
                let again = decode_json(&encoded).unwrap();
                prop_assert_eq!(encode_json(&again).unwrap(), encoded);
            }
        }
        if let Ok(table) = decode_csv(&text) {
            if table.rows.iter().all(|r| r.len() == table.columns.len()) {
                if let Ok(encoded) = encode_csv(&table) {
                    let again = decode_csv(&encoded).unwrap();
                    prop_assert_eq!(encode_csv(&again).unwrap(), encoded);
                }
            }
            if let Ok(rows) = sweep_rows_from_table(&table) {
                let back = sweep_rows_from_table(&sweep_rows_to_table(&rows, true)).unwrap();
                prop_assert_eq!(back.len(), rows.len());
            }
        }
    }
}
