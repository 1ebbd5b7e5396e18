use serde_json::{Map, Number, Value};

use super::{round_sig, Cell, Document, Meta, Table};
use crate::error::{invalid, Result};

fn cell_to_json(cell: &Cell) -> Result<Value> {
    Ok(match cell {
        Cell::Null => Value::Null,
        Cell::Bool(b) => Value::Bool(*b),
        Cell::Int(i) => Value::Number((*i).into()),
        Cell::Float(x) => match Number::from_f64(round_sig(*x)) {
            Some(n) => Value::Number(n),
            None => return invalid(format!("cannot encode non-finite float {x}")),
        },
        Cell::Text(s) => Value::String(s.clone()),
    })
}

fn cell_from_json(v: &Value) -> Result<Cell> {
    Ok(match v {
        Value::Null => Cell::Null,
        Value::Bool(b) => Cell::Bool(*b),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Cell::Int(i)
            } else if n.is_f64() {
                Cell::Float(n.as_f64().expect("f64 number"))
            } else {
                return invalid(format!("integer {n} does not fit in i64"));
            }
        }
        Value::String(s) => Cell::Text(s.clone()),
        Value::Array(_) | Value::Object(_) => return invalid("nested values are not valid cells"),
    })
}

/// `{"command", "config", "rows": [...], "meta": {"version", "runtime_ms"}}`,
/// pretty-printed with a trailing newline.
pub fn encode_json(doc: &Document) -> Result<String> {
    let mut config = Map::new();
    for (k, v) in &doc.config {
        config.insert(k.clone(), cell_to_json(v)?);
    }
    let mut rows = Vec::with_capacity(doc.table.rows.len());
    for r in &doc.table.rows {
        let mut obj = Map::new();
        for (col, cell) in doc.table.columns.iter().zip(r) {
            obj.insert(col.clone(), cell_to_json(cell)?);
        }
        rows.push(Value::Object(obj));
    }
    let mut meta = Map::new();
    meta.insert("version".into(), Value::String(doc.meta.version.clone()));
    meta.insert(
        "runtime_ms".into(),
        cell_to_json(&doc.meta.runtime_ms.into())?,
    );
    let mut top = Map::new();
    top.insert("command".into(), Value::String(doc.command.clone()));
    top.insert("config".into(), Value::Object(config));
    top.insert("rows".into(), Value::Array(rows));
    top.insert("meta".into(), Value::Object(meta));
    let mut out = serde_json::to_string_pretty(&Value::Object(top))
        .map_err(|e| crate::Error::InvalidArgument(e.to_string()))?;
    out.push('\n');
    Ok(out)
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value> {
    match obj.get(key) {
        Some(v) => Ok(v),
        None => invalid(format!("missing `{key}`")),
    }
}

pub fn decode_json(text: &str) -> Result<Document> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| crate::Error::InvalidArgument(e.to_string()))?;
    let Value::Object(top) = value else {
        return invalid("report must be a JSON object");
    };
    let Value::String(command) = field(&top, "command")? else {
        return invalid("`command` must be a string");
    };
    let Value::Object(cfg) = field(&top, "config")? else {
        return invalid("`config` must be an object");
    };
    let config = cfg
        .iter()
        .map(|(k, v)| Ok((k.clone(), cell_from_json(v)?)))
        .collect::<Result<Vec<_>>>()?;

    let Value::Array(raw_rows) = field(&top, "rows")? else {
        return invalid("`rows` must be an array");
    };
    let mut table = Table::default();
    for (i, r) in raw_rows.iter().enumerate() {
        let Value::Object(obj) = r else {
            return invalid(format!("row {i} is not an object"));
        };
        let keys: Vec<String> = obj.keys().cloned().collect();
        if i == 0 {
            table.columns = keys;
        } else if keys != table.columns {
            return invalid(format!("row {i} has different columns from row 0"));
        }
        table
            .rows
            .push(obj.values().map(cell_from_json).collect::<Result<_>>()?);
    }

    let Value::Object(meta) = field(&top, "meta")? else {
        return invalid("`meta` must be an object");
    };
    let Value::String(version) = field(meta, "version")? else {
        return invalid("`meta.version` must be a string");
    };
    let runtime_ms = match field(meta, "runtime_ms")? {
        Value::Null => None,
        Value::Number(n) => n.as_f64(),
        _ => return invalid("`meta.runtime_ms` must be a number or null"),
    };
    Ok(Document {
        command: command.clone(),
        config,
        table,
        meta: Meta {
            version: version.clone(),
            runtime_ms,
        },
    })
}
