use std::process::{Command, Output};

fn xxring(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_xxring"))
        .args(args)
        .env_remove("XXRING_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn nearest_pair_concurrence_of_four_sites() {
    let o = xxring(&["concurrence", "--n", "4", "--j", "-1", "--pair", "1", "2"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("0.45711"), "{}", stdout(&o));

    let o = xxring(&[
        "concurrence",
        "--n",
        "4",
        "--j",
        "-1",
        "--pair",
        "1",
        "2",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let c = v["rows"][0]["concurrence"].as_f64().unwrap();
    assert!((c - (2.0 * 2f64.sqrt() - 1.0) / 4.0).abs() < 1e-11, "{c}");
}

#[test]
fn six_site_orbit_probabilities_as_csv() {
    let o = xxring(&["lp", "--n", "6", "--j", "-1", "--format", "csv"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let col = header.iter().position(|h| *h == "probability").unwrap();
    let mut reader = csv::ReaderBuilder::new().from_reader(text.as_bytes());
    let probs: Vec<f64> = reader
        .records()
        .map(|r| r.unwrap()[col].parse().unwrap())
        .collect();
    let want = [1.0 / 72.0, 1.0 / 18.0, 1.0 / 18.0, 1.0 / 8.0];
    assert_eq!(probs.len(), 4);
    for (p, w) in probs.iter().zip(want) {
        assert!((p - w).abs() < 1e-11, "{p} vs {w}");
    }
}

#[test]
fn verify_passes_for_small_rings() {
    let o = xxring(&["verify", "--n", "2..9"]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    assert!(!stdout(&o).contains("false"));
}

#[test]
fn verify_reports_mismatch_with_exit_one() {
    // A negative tolerance is rejected up front.
    let o = xxring(&["verify", "--n", "4", "--tol", "-1"]);
    assert_eq!(o.status.code(), Some(2));
    // With a zero tolerance any rounding difference is a mismatch; the exit
    // code must follow the table.
    let o = xxring(&["verify", "--n", "2..6", "--tol", "0", "--format", "csv"]);
    let failed = stdout(&o).contains(",false");
    assert_eq!(o.status.code(), Some(if failed { 1 } else { 0 }));
}

#[test]
fn json_is_byte_identical_across_runs_and_thread_counts() {
    let args = ["sweep", "--n", "2..8", "--format", "json"];
    let a = xxring(&args);
    let b = Command::new(env!("CARGO_BIN_EXE_xxring"))
        .args(args)
        .env("XXRING_THREADS", "1")
        .output()
        .unwrap();
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys, ["command", "config", "rows", "meta"]);
    assert!(v["meta"]["runtime_ms"].is_null());
    assert!(v["meta"]["version"].is_string());
}

#[test]
fn csv_and_json_agree() {
    let json = xxring(&["lp", "--n", "8", "--j", "1", "--format", "json"]);
    let csv_out = xxring(&["lp", "--n", "8", "--j", "1", "--format", "csv"]);
    let v: serde_json::Value = serde_json::from_slice(&json.stdout).unwrap();
    let rows = v["rows"].as_array().unwrap();
    let mut reader = csv::ReaderBuilder::new().from_reader(&csv_out.stdout[..]);
    let headers = reader.headers().unwrap().clone();
    let records: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(records.len(), rows.len());
    for (rec, row) in records.iter().zip(rows) {
        for (h, field) in headers.iter().zip(rec.iter()) {
            let j = &row[h];
            match j {
                serde_json::Value::String(s) => assert_eq!(s, field),
                serde_json::Value::Number(n) => {
                    assert_eq!(n.as_f64().unwrap(), field.parse::<f64>().unwrap(), "{h}")
                }
                other => panic!("unexpected {other}"),
            }
        }
    }
}

#[test]
fn extrapolate_reads_a_sweep_file() {
    let dir = std::env::temp_dir().join(format!("xxring-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("sweep.csv");
    let o = xxring(&[
        "sweep",
        "--n",
        "4..10",
        "--parity",
        "even",
        "--format",
        "csv",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let fit = xxring(&[
        "extrapolate",
        "--input",
        path.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert!(
        fit.status.success(),
        "{}",
        String::from_utf8_lossy(&fit.stderr)
    );
    let v: serde_json::Value = serde_json::from_slice(&fit.stdout).unwrap();
    let c_inf = v["rows"][0]["c_inf"].as_f64().unwrap();
    assert!((0.3..0.4).contains(&c_inf), "{c_inf}");
    assert_eq!(v["rows"][0]["n_values"], "4,6,8,10");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["frobnicate"][..],
        &["concurrence", "--n", "4"],
        &["concurrence", "--n", "4", "--j", "-1", "--pair", "1", "5"],
        &[
            "concurrence",
            "--n",
            "4",
            "--j",
            "-1",
            "--pair",
            "1",
            "2",
            "--distance",
            "1",
        ],
        &["concurrence", "--n", "4", "--j", "0"],
        &["lp", "--n", "6", "--j", "-1", "--format", "xml"],
        &["sweep", "--n", "9..2"],
        &["verify", "--n", "2..20"],
        &["spectrum", "--n", "4", "--j", "1", "--bogus"],
    ] {
        let o = xxring(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn thread_env_overrides_flag_and_is_validated() {
    let o = Command::new(env!("CARGO_BIN_EXE_xxring"))
        .args(["ground", "--n", "4", "--j", "1", "--threads", "0"])
        .env("XXRING_THREADS", "2")
        .output()
        .unwrap();
    assert!(o.status.success());
    let o = Command::new(env!("CARGO_BIN_EXE_xxring"))
        .args(["ground", "--n", "4", "--j", "1"])
        .env("XXRING_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn spectrum_and_ground_agree() {
    let spec = xxring(&["spectrum", "--n", "5", "--j", "1", "--format", "json"]);
    let ground = xxring(&["ground", "--n", "5", "--j", "1", "--format", "json"]);
    let s: serde_json::Value = serde_json::from_slice(&spec.stdout).unwrap();
    let g: serde_json::Value = serde_json::from_slice(&ground.stdout).unwrap();
    let rows = s["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 32);
    let min = rows
        .iter()
        .map(|r| r["energy"].as_f64().unwrap())
        .fold(f64::INFINITY, f64::min);
    let g_rows = g["rows"].as_array().unwrap();
    assert_eq!(g_rows.len(), 4);
    assert_eq!(g_rows[0]["energy"].as_f64().unwrap(), min);
}

#[test]
fn timing_fills_runtime() {
    let o = xxring(&[
        "ground", "--n", "3", "--j", "-1", "--format", "json", "--timing",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["meta"]["runtime_ms"].as_f64().is_some());
}
