use super::{Cell, Table};
use crate::analysis::SweepRow;
use crate::error::{invalid, Result};
use crate::xxmodel::Regime;

const SWEEP_COLUMNS: [&str; 7] = [
    "n",
    "regime",
    "distance",
    "concurrence",
    "degeneracy",
    "energy",
    "wall_ms",
];

/// `wall_ms` is written as null unless `timing` is set.
pub fn sweep_rows_to_table(rows: &[SweepRow], timing: bool) -> Table {
    let mut t = Table::new(SWEEP_COLUMNS);
    for r in rows {
        t.push(vec![
            r.n.into(),
            r.regime.as_str().into(),
            r.distance.into(),
            r.concurrence.into(),
            r.degeneracy.into(),
            r.energy.into(),
            timing.then_some(r.wall_ms).into(),
        ]);
    }
    t
}

fn get<'a>(t: &Table, row: &'a [Cell], name: &str) -> Result<&'a Cell> {
    match t.column(name) {
        Some(i) => Ok(&row[i]),
        None => invalid(format!("sweep table lacks column `{name}`")),
    }
}

fn unsigned(t: &Table, row: &[Cell], name: &str) -> Result<u32> {
    match get(t, row, name)?
        .as_i64()
        .and_then(|i| u32::try_from(i).ok())
    {
        Some(v) => Ok(v),
        None => invalid(format!("`{name}` must be a nonnegative integer")),
    }
}

fn float(t: &Table, row: &[Cell], name: &str) -> Result<f64> {
    match get(t, row, name)?.as_f64() {
        Some(v) if v.is_finite() => Ok(v),
        _ => invalid(format!("`{name}` must be a finite number")),
    }
}

/// Reads rows written by [`sweep_rows_to_table`] (from either encoding).
/// Only `n`, `regime`, `distance` and `concurrence` are required.
pub fn sweep_rows_from_table(t: &Table) -> Result<Vec<SweepRow>> {
    t.rows
        .iter()
        .map(|row| {
            if row.len() != t.columns.len() {
                return invalid("row width does not match header");
            }
            let regime: Regime = match get(t, row, "regime")?.as_str() {
                Some(s) => s.parse()?,
                None => return invalid("`regime` must be text"),
            };
            let concurrence = float(t, row, "concurrence")?;
            if !(0.0..=1.0).contains(&concurrence) {
                return invalid(format!("concurrence {concurrence} outside [0, 1]"));
            }
            let optional = |name: &str| match t.column(name) {
                Some(i) => row[i].as_f64().unwrap_or(0.0),
                None => 0.0,
            };
            Ok(SweepRow {
                n: unsigned(t, row, "n")?,
                regime,
                distance: unsigned(t, row, "distance")?,
                concurrence,
                degeneracy: optional("degeneracy") as usize,
                energy: optional("energy"),
                wall_ms: optional("wall_ms"),
            })
        })
        .collect()
}
