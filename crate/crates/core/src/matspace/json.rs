use serde_json::{json, Map, Value};

use super::matrix::Matrix;
use crate::error::{Error, Result};
use crate::exactfield::{elem_from_json, elem_to_json, field_from_json, field_to_json, Field, Poly};

/// A matrix together with optional factor hints for its characteristic
/// polynomial (polynomials over the matrix field).
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixFile {
    pub matrix: Matrix,
    pub hints: Vec<Poly>,
}

pub fn matrix_to_json(a: &Matrix) -> Value {
    let f = a.field();
    let entries: Vec<Value> =
        (0..a.rows()).map(|i| Value::Array(a.row(i).iter().map(|e| elem_to_json(f, e)).collect())).collect();
    json!({"field": field_to_json(f), "rows": a.rows(), "cols": a.cols(), "entries": entries})
}

/// Reads `entries` against an already known field.
pub fn matrix_body_from_json(field: &Field, obj: &Map<String, Value>) -> Result<Matrix> {
    let dim = |k: &str| {
        obj.get(k)
            .and_then(Value::as_u64)
            .filter(|&n| n > 0)
            .map(|n| n as usize)
            .ok_or_else(|| Error::Input(format!("matrix needs a positive integer `{k}`")))
    };
    let (rows, cols) = (dim("rows")?, dim("cols")?);
    let entries = obj
        .get("entries")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Input("matrix needs an `entries` array".into()))?;
    if entries.len() != rows {
        return Err(Error::Input(format!("expected {rows} rows of entries, found {}", entries.len())));
    }
    let mut data = Vec::with_capacity(rows * cols);
    for row in entries {
        let row = row.as_array().ok_or_else(|| Error::Input("matrix row must be an array".into()))?;
        if row.len() != cols {
            return Err(Error::Input(format!("expected {cols} entries per row, found {}", row.len())));
        }
        for v in row {
            data.push(elem_from_json(field, v)?);
        }
    }
    Matrix::new(field, rows, cols, data)
}

pub fn matrix_file_from_json(v: &Value) -> Result<MatrixFile> {
    let obj = v.as_object().ok_or_else(|| Error::Input("matrix must be a JSON object".into()))?;
    let field = field_from_json(obj.get("field").ok_or_else(|| Error::Input("matrix needs a `field`".into()))?)?;
    let matrix = matrix_body_from_json(&field, obj)?;
    let hints = match obj.get("hints") {
        None | Some(Value::Null) => Vec::new(),
        Some(Value::Array(hs)) => hs.iter().map(|h| Poly::from_json(&field, h)).collect::<Result<_>>()?,
        Some(_) => return Err(Error::Input("`hints` must be an array of polynomials".into())),
    };
    Ok(MatrixFile { matrix, hints })
}

pub fn matrix_from_json(v: &Value) -> Result<Matrix> {
    Ok(matrix_file_from_json(v)?.matrix)
}

pub fn matrix_file_to_json(m: &MatrixFile) -> Value {
    let mut v = matrix_to_json(&m.matrix);
    if !m.hints.is_empty() {
        v["hints"] = Value::Array(m.hints.iter().map(Poly::to_json).collect());
    }
    v
}
