//! JSON formats.
//!
//! ```text
//! body:      {"n": 2, "normals": [[0.3333333333, 1.0], [1.0, 0.3333333333]]}
//! full:      {"n": 2, "normals": [], "full": true}
//! dual:      {"n": 2, "generators": [[-0.3333333333, -1.0]]}
//! exponents: {"n": 2, "exponents": [[2, 0], [0, 3]]}
//! ```
//!
//! Coordinates are JSON numbers or strings such as `"1/3"`; numbers are read
//! as exact decimals when the target scalar is exact.

use serde_json::{json, Map, Value};

use crate::body::{CopolarBody, DualGenerators};
use crate::error::{Error, Result};
use crate::newton::ExponentSet;
use crate::scalar::{parse_ratio, Scalar};

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn object(text: &str) -> Result<Map<String, Value>> {
    match serde_json::from_str::<Value>(text) {
        Ok(Value::Object(map)) => Ok(map),
        Ok(_) => Err(parse_err("expected a JSON object")),
        Err(e) => Err(parse_err(e.to_string())),
    }
}

fn dimension(map: &Map<String, Value>) -> Result<usize> {
    match map.get("n").and_then(Value::as_u64) {
        Some(n) if n > 0 => Ok(n as usize),
        _ => Err(parse_err("field \"n\" must be a positive integer")),
    }
}

/// Reads one coordinate.
pub fn scalar_from_json<T: Scalar>(value: &Value) -> Result<T> {
    let parsed = match value {
        Value::Number(num) if !T::is_exact() => num.as_f64().and_then(T::from_f64),
        Value::Number(num) => parse_ratio(&num.to_string()).and_then(|r| T::from_ratio(&r)),
        Value::String(s) => parse_ratio(s).and_then(|r| T::from_ratio(&r)),
        _ => None,
    };
    parsed.ok_or_else(|| parse_err(format!("not a number: {value}")))
}

fn points<T: Scalar>(map: &Map<String, Value>, field: &str) -> Result<Vec<Vec<T>>> {
    let rows = map
        .get(field)
        .and_then(Value::as_array)
        .ok_or_else(|| parse_err(format!("field \"{field}\" must be an array of points")))?;
    rows.iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| parse_err(format!("\"{field}\" entries must be arrays")))?
                .iter()
                .map(scalar_from_json)
                .collect()
        })
        .collect()
}

pub fn parse_body<T: Scalar>(text: &str) -> Result<CopolarBody<T>> {
    let map = object(text)?;
    let n = dimension(&map)?;
    let normals = points::<T>(&map, "normals")?;
    match map.get("full") {
        Some(Value::Bool(true)) => {
            if !normals.is_empty() {
                return Err(parse_err("a full-orthant body must have no normals"));
            }
            Ok(CopolarBody::full_orthant(n))
        }
        None | Some(Value::Bool(false)) => CopolarBody::new(n, normals),
        Some(_) => Err(parse_err("field \"full\" must be a boolean")),
    }
}

pub fn parse_dual<T: Scalar>(text: &str) -> Result<DualGenerators<T>> {
    let map = object(text)?;
    let n = dimension(&map)?;
    DualGenerators::new(n, points(&map, "generators")?)
}

pub fn parse_exponents(text: &str) -> Result<ExponentSet> {
    let map = object(text)?;
    let n = dimension(&map)?;
    let rows = map
        .get("exponents")
        .and_then(Value::as_array)
        .ok_or_else(|| parse_err("field \"exponents\" must be an array of multi-indices"))?;
    let exponents = rows
        .iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| parse_err("multi-indices must be arrays"))?
                .iter()
                .map(|e| e.as_u64().ok_or_else(|| parse_err(format!("not a nonnegative integer: {e}"))))
                .collect()
        })
        .collect::<Result<Vec<Vec<u64>>>>()?;
    ExponentSet::new(n, exponents)
}

fn points_json<T: Scalar>(points: &[Vec<T>]) -> Value {
    Value::Array(
        points
            .iter()
            .map(|p| Value::Array(p.iter().map(Scalar::to_json).collect()))
            .collect(),
    )
}

pub fn body_to_json<T: Scalar>(body: &CopolarBody<T>) -> Value {
    if body.is_full() {
        json!({"n": body.dim(), "normals": [], "full": true})
    } else {
        json!({"n": body.dim(), "normals": points_json(body.normals())})
    }
}

pub fn dual_to_json<T: Scalar>(dual: &DualGenerators<T>) -> Value {
    json!({"n": dual.dim(), "generators": points_json(dual.generators())})
}

pub fn exponents_to_json(set: &ExponentSet) -> Value {
    json!({"n": set.dim(), "exponents": set.exponents()})
}
