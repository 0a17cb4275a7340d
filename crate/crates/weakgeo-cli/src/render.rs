//! Canonical JSON rendering and parsing helpers.
//!
//! Numbers are rounded to 15 significant digits with negative zero
//! normalized, so identical inputs produce identical output bytes.

use num_complex::Complex64;
use serde_json::{json, Value};
use weakgeo::{HermitianOp, Ket};

/// Round to 15 significant digits; normalize −0 to 0.
pub fn round15(x: f64) -> f64 {
    let r: f64 = format!("{x:.14e}").parse().unwrap();
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

pub fn num(x: f64) -> Value {
    json!(round15(x))
}

/// CSV cell form of a rounded number.
pub fn fmt(x: f64) -> String {
    serde_json::to_string(&round15(x)).unwrap()
}

/// Complex scalar as [re, im].
pub fn complex_json(z: Complex64) -> Value {
    json!([round15(z.re), round15(z.im)])
}

/// Ket as an array of [re, im] amplitudes.
pub fn ket_json(k: &Ket) -> Value {
    Value::Array(k.amps().iter().map(|a| complex_json(*a)).collect())
}

/// Hermitian operator as a row-major matrix of [re, im] entries.
pub fn matrix_json(m: &HermitianOp) -> Value {
    let n = m.dim();
    let rows: Vec<Value> = (0..n)
        .map(|i| Value::Array((0..n).map(|j| complex_json(m.entry(i, j))).collect()))
        .collect();
    Value::Array(rows)
}

fn as_complex(v: &Value) -> Result<Complex64, String> {
    if let Some(x) = v.as_f64() {
        return Ok(Complex64::new(x, 0.0));
    }
    if let Some(pair) = v.as_array() {
        if pair.len() == 2 {
            let re = pair[0].as_f64().ok_or("complex entries must be numbers")?;
            let im = pair[1].as_f64().ok_or("complex entries must be numbers")?;
            return Ok(Complex64::new(re, im));
        }
    }
    Err("expected a number or [re, im] pair".to_string())
}

/// Parse a ket from a JSON array of amplitudes (numbers or [re, im]).
pub fn parse_ket_json(text: &str) -> Result<Ket, String> {
    let v: Value = serde_json::from_str(text).map_err(|e| format!("bad JSON: {e}"))?;
    let arr = v.as_array().ok_or("expected an array of amplitudes")?;
    let amps: Vec<Complex64> = arr.iter().map(as_complex).collect::<Result<_, _>>()?;
    Ket::new(&amps).map_err(|e| e.to_string())
}

pub enum OpParseError {
    Input(String),
    Lib(weakgeo::Error),
}

/// Parse an operator from either a row-major matrix or
/// {"trace": t, "bloch": [x, y, z]}.
pub fn parse_op_json(text: &str) -> Result<HermitianOp, OpParseError> {
    let v: Value =
        serde_json::from_str(text).map_err(|e| OpParseError::Input(format!("bad JSON: {e}")))?;
    if let Some(obj) = v.as_object() {
        let trace = obj
            .get("trace")
            .and_then(Value::as_f64)
            .ok_or_else(|| OpParseError::Input("missing numeric \"trace\"".to_string()))?;
        let bloch_v = obj
            .get("bloch")
            .and_then(Value::as_array)
            .ok_or_else(|| OpParseError::Input("missing \"bloch\" array".to_string()))?;
        if bloch_v.len() != 3 {
            return Err(OpParseError::Input("\"bloch\" must have 3 entries".to_string()));
        }
        let mut bloch = [0.0; 3];
        for (slot, x) in bloch.iter_mut().zip(bloch_v) {
            *slot = x
                .as_f64()
                .ok_or_else(|| OpParseError::Input("\"bloch\" entries must be numbers".to_string()))?;
        }
        return Ok(HermitianOp::from_trace_bloch(trace, bloch));
    }
    let rows_v = v
        .as_array()
        .ok_or_else(|| OpParseError::Input("expected a matrix or {trace, bloch} object".to_string()))?;
    let mut rows = Vec::with_capacity(rows_v.len());
    for r in rows_v {
        let cells = r
            .as_array()
            .ok_or_else(|| OpParseError::Input("matrix rows must be arrays".to_string()))?;
        rows.push(
            cells
                .iter()
                .map(as_complex)
                .collect::<Result<Vec<_>, _>>()
                .map_err(OpParseError::Input)?,
        );
    }
    HermitianOp::from_matrix(&rows).map_err(OpParseError::Lib)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding_is_stable_and_kills_negative_zero() {
        assert_eq!(fmt(-0.0), "0.0");
        assert_eq!(round15(0.1 + 0.2), round15(0.30000000000000004));
        // Round trip through the printed form is lossless at 15 digits.
        let x = std::f64::consts::FRAC_1_SQRT_2;
        let printed = fmt(x);
        let back: f64 = printed.parse().unwrap();
        assert!((back - x).abs() < 1e-15);
    }

    #[test]
    fn op_json_forms_agree() {
        let a = parse_op_json(r#"{"trace": 0.0, "bloch": [0, 2, 0]}"#)
            .ok()
            .unwrap();
        let b = parse_op_json(r#"[[[0,0],[0,-1]],[[0,1],[0,0]]]"#).ok().unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert!((a.entry(i, j) - b.entry(i, j)).norm() < 1e-15);
            }
        }
    }
}
