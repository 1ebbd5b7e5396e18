use super::{round_sig, Cell, Table};
use crate::error::{invalid, Error, Result};

/// Reads a CSV field back into a typed cell. Empty is null; integers,
/// finite floats written with `.` or an exponent, and `true`/`false` are
/// recognized; anything else is text.
fn infer(field: &str) -> Cell {
    if field.is_empty() {
        return Cell::Null;
    }
    match field {
        "true" => return Cell::Bool(true),
        "false" => return Cell::Bool(false),
        _ => {}
    }
    let digits = field.strip_prefix('-').unwrap_or(field);
    if !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit()) {
        if let Ok(i) = field.parse::<i64>() {
            return Cell::Int(i);
        }
    }
    let numeric_shape = field.bytes().any(|b| b.is_ascii_digit())
        && field
            .bytes()
            .all(|b| b.is_ascii_digit() || matches!(b, b'-' | b'+' | b'.' | b'e' | b'E'));
    if numeric_shape {
        if let Ok(x) = field.parse::<f64>() {
            if x.is_finite() {
                return Cell::Float(x);
            }
        }
    }
    Cell::Text(field.to_string())
}

fn format_cell(cell: &Cell) -> Result<String> {
    Ok(match cell {
        Cell::Null => String::new(),
        Cell::Bool(b) => b.to_string(),
        Cell::Int(i) => i.to_string(),
        Cell::Float(x) if x.is_finite() => format!("{:?}", round_sig(*x)),
        Cell::Float(x) => return invalid(format!("cannot encode non-finite float {x}")),
        Cell::Text(s) => {
            if infer(s) != *cell {
                return invalid(format!("text `{s}` would read back as a different type"));
            }
            s.clone()
        }
    })
}

fn csv_err(e: csv::Error) -> Error {
    Error::InvalidArgument(format!("csv: {e}"))
}

/// Header row plus one record per table row.
pub fn encode_csv(table: &Table) -> Result<String> {
    let mut w = csv::WriterBuilder::new().from_writer(Vec::new());
    w.write_record(&table.columns).map_err(csv_err)?;
    for row in &table.rows {
        let fields = row.iter().map(format_cell).collect::<Result<Vec<_>>>()?;
        w.write_record(&fields).map_err(csv_err)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Error::InvalidArgument(format!("csv: {e}")))?;
    String::from_utf8(bytes).map_err(|e| Error::InvalidArgument(e.to_string()))
}

pub fn decode_csv(text: &str) -> Result<Table> {
    let mut r = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_reader(text.as_bytes());
    let columns: Vec<String> = r
        .headers()
        .map_err(csv_err)?
        .iter()
        .map(str::to_string)
        .collect();
    let mut rows = Vec::new();
    for record in r.records() {
        let record = record.map_err(csv_err)?;
        rows.push(record.iter().map(infer).collect());
    }
    Ok(Table { columns, rows })
}
