//! Minimal JSON emission with fixed key order and 17-significant-digit reals,
//! plus typed field accessors over `serde_json::Value` for import.

use std::fmt::Write;

use serde_json::{Map, Value};

use crate::error::{Error, Result};

/// Formats a finite real with 17 significant digits. Exact f64 round-trip.
pub(crate) fn real(x: f64) -> String {
    debug_assert!(x.is_finite());
    // -0.0 would survive parsing but prints identically either way
    format!("{:.16e}", x)
}

pub(crate) fn real_or_null(x: f64) -> String {
    if x.is_finite() {
        real(x)
    } else {
        "null".to_string()
    }
}

pub(crate) fn reals(xs: &[f64]) -> String {
    let mut out = String::with_capacity(xs.len() * 24 + 2);
    out.push('[');
    for (i, &x) in xs.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(&real(x));
    }
    out.push(']');
    out
}

pub(crate) fn ints<I: IntoIterator<Item = usize>>(xs: I) -> String {
    let mut out = String::from("[");
    for (i, x) in xs.into_iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        write!(out, "{x}").unwrap();
    }
    out.push(']');
    out
}

pub(crate) fn string(s: &str) -> String {
    Value::String(s.to_string()).to_string()
}

/// Builds `{"k":v,...}` from already-encoded values, preserving order.
pub(crate) fn object(fields: &[(&str, String)]) -> String {
    let mut out = String::from("{");
    for (i, (k, v)) in fields.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        write!(out, "\"{k}\":{v}").unwrap();
    }
    out.push('}');
    out
}

pub(crate) fn parse(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::format("$", e.to_string()))
}

pub(crate) fn as_object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| Error::format(path, "expected an object"))
}

pub(crate) fn field<'a>(obj: &'a Map<String, Value>, path: &str, key: &str) -> Result<&'a Value> {
    obj.get(key)
        .ok_or_else(|| Error::format(join(path, key), "missing field"))
}

pub(crate) fn join(path: &str, key: &str) -> String {
    format!("{path}.{key}")
}

pub(crate) fn index(path: &str, i: usize) -> String {
    format!("{path}[{i}]")
}

pub(crate) fn get_usize(obj: &Map<String, Value>, path: &str, key: &str) -> Result<usize> {
    let v = field(obj, path, key)?;
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| Error::format(join(path, key), "expected a non-negative integer"))
}

pub(crate) fn get_u64(obj: &Map<String, Value>, path: &str, key: &str) -> Result<u64> {
    field(obj, path, key)?
        .as_u64()
        .ok_or_else(|| Error::format(join(path, key), "expected a non-negative integer"))
}

pub(crate) fn get_f64(obj: &Map<String, Value>, path: &str, key: &str) -> Result<f64> {
    field(obj, path, key)?
        .as_f64()
        .ok_or_else(|| Error::format(join(path, key), "expected a number"))
}

/// A real where `null` encodes +infinity.
pub(crate) fn get_f64_or_inf(obj: &Map<String, Value>, path: &str, key: &str) -> Result<f64> {
    let v = field(obj, path, key)?;
    if v.is_null() {
        return Ok(f64::INFINITY);
    }
    v.as_f64()
        .ok_or_else(|| Error::format(join(path, key), "expected a number or null"))
}

pub(crate) fn get_str<'a>(obj: &'a Map<String, Value>, path: &str, key: &str) -> Result<&'a str> {
    field(obj, path, key)?
        .as_str()
        .ok_or_else(|| Error::format(join(path, key), "expected a string"))
}

pub(crate) fn get_array<'a>(
    obj: &'a Map<String, Value>,
    path: &str,
    key: &str,
) -> Result<&'a Vec<Value>> {
    field(obj, path, key)?
        .as_array()
        .ok_or_else(|| Error::format(join(path, key), "expected an array"))
}

pub(crate) fn reals_at(v: &Value, path: &str) -> Result<Vec<f64>> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::format(path, "expected an array of numbers"))?;
    arr.iter()
        .enumerate()
        .map(|(i, x)| {
            x.as_f64()
                .ok_or_else(|| Error::format(index(path, i), "expected a number"))
        })
        .collect()
}

pub(crate) fn usizes_at(v: &Value, path: &str) -> Result<Vec<usize>> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::format(path, "expected an array of integers"))?;
    arr.iter()
        .enumerate()
        .map(|(i, x)| {
            x.as_u64()
                .map(|u| u as usize)
                .ok_or_else(|| Error::format(index(path, i), "expected a non-negative integer"))
        })
        .collect()
}
