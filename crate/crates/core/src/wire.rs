// Copyright The fekete Authors
// SPDX-License-Identifier: Apache-2.0

//! JSON helpers shared by the report types.

use serde_json::Value;

/// Finite values as numbers; `±inf` as the strings `"inf"` / `"-inf"`; NaN as null.
pub fn json_f64(x: f64) -> Value {
    if x.is_finite() {
        serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
    } else if x == f64::INFINITY {
        Value::String("inf".into())
    } else if x == f64::NEG_INFINITY {
        Value::String("-inf".into())
    } else {
        Value::Null
    }
}

/// Inverse of [`json_f64`].
pub fn f64_from_json(v: &Value) -> Option<f64> {
    match v {
        Value::Number(n) => n.as_f64(),
        Value::String(s) if s == "inf" => Some(f64::INFINITY),
        Value::String(s) if s == "-inf" => Some(f64::NEG_INFINITY),
        Value::Null => Some(f64::NAN),
        _ => None,
    }
}
