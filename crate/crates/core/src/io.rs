//! JSON, CSV and text forms of triangles and sequences.
//!
//! Exact values are written as decimal strings (`"42"`, `"-3/4"`). Readers
//! also accept JSON integers.

use serde_json::{json, Value};
use thiserror::Error;

use crate::exact::{parse_int, parse_rat, Int, Rat, Scalar};
use crate::recurrence::{RecurrenceSpec, SpecError};
use crate::transform::NumSeq;
use crate::triangle::{Source, Triangle, TriangleError};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("malformed document: {0}")]
    Format(String),
    #[error(transparent)]
    Triangle(#[from] TriangleError),
    #[error(transparent)]
    Spec(#[from] SpecError),
}

fn format_err(msg: impl Into<String>) -> IoError {
    IoError::Format(msg.into())
}

/// A parsed triangle, integral when every entry is an integer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyTriangle {
    Int(Triangle<Int>),
    Rat(Triangle<Rat>),
}

impl AnyTriangle {
    pub fn depth(&self) -> usize {
        match self {
            AnyTriangle::Int(t) => t.depth(),
            AnyTriangle::Rat(t) => t.depth(),
        }
    }

    pub fn to_rat(&self) -> Triangle<Rat> {
        match self {
            AnyTriangle::Int(t) => t.to_rat(),
            AnyTriangle::Rat(t) => t.clone(),
        }
    }
}

fn spec_json(spec: &RecurrenceSpec) -> Value {
    let strs = |cs: &[Rat; 3]| cs.iter().map(|c| c.to_string()).collect::<Vec<_>>();
    json!({ "a": strs(spec.a()), "b": strs(spec.b()), "seed": spec.seed().to_string() })
}

pub fn triangle_to_json<T: Scalar>(t: &Triangle<T>) -> Value {
    let spec = match t.source() {
        Source::Recurrence(spec) => spec_json(spec),
        Source::External => Value::String("external".into()),
    };
    let rows: Vec<Vec<String>> = t.rows().iter().map(|r| r.iter().map(|v| v.to_string()).collect()).collect();
    json!({ "spec": spec, "rows": rows })
}

/// One row per line, entries separated by commas.
pub fn triangle_to_csv<T: Scalar>(t: &Triangle<T>) -> String {
    render_rows(t, ",")
}

/// One row per line, entries separated by spaces.
pub fn triangle_to_text<T: Scalar>(t: &Triangle<T>) -> String {
    render_rows(t, " ")
}

fn render_rows<T: Scalar>(t: &Triangle<T>, sep: &str) -> String {
    let mut out = String::new();
    for row in t.rows() {
        let line: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        out.push_str(&line.join(sep));
        out.push('\n');
    }
    out
}

fn parse_value(v: &Value) -> Result<Rat, IoError> {
    match v {
        Value::String(s) => Ok(parse_rat(s.trim()).map_err(|e| format_err(e.to_string()))?),
        Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(Rat::from(Int::from(i))),
            None => parse_rat(&n.to_string()).map_err(|_| format_err(format!("{n} is not an exact integer"))),
        },
        other => Err(format_err(format!("expected a number or string, got {other}"))),
    }
}

fn parse_values(v: &Value) -> Result<Vec<Rat>, IoError> {
    v.as_array()
        .ok_or_else(|| format_err("expected an array of values"))?
        .iter()
        .map(parse_value)
        .collect()
}

fn parse_coeffs(v: Option<&Value>, name: &str) -> Result<[Rat; 3], IoError> {
    let vals = parse_values(v.ok_or_else(|| format_err(format!("spec is missing {name:?}")))?)?;
    <[Rat; 3]>::try_from(vals).map_err(|v| format_err(format!("spec.{name} needs 3 coefficients, got {}", v.len())))
}

fn parse_spec(v: &Value) -> Result<Option<RecurrenceSpec>, IoError> {
    match v {
        Value::String(s) if s == "external" => Ok(None),
        Value::Null => Ok(None),
        Value::Object(map) => {
            let a = parse_coeffs(map.get("a"), "a")?;
            let b = parse_coeffs(map.get("b"), "b")?;
            let seed = match map.get("seed") {
                None => Int::from(1),
                Some(Value::String(s)) => parse_int(s.trim()).map_err(|e| format_err(e.to_string()))?,
                Some(Value::Number(n)) => {
                    Int::from(n.as_i64().ok_or_else(|| format_err("seed must be an integer"))?)
                }
                Some(other) => return Err(format_err(format!("invalid seed {other}"))),
            };
            Ok(Some(RecurrenceSpec::new(a, b, seed)?))
        }
        other => Err(format_err(format!("invalid spec {other}"))),
    }
}

/// Reads a triangle written by [`triangle_to_json`], or a bare array of rows.
///
/// A document that carries a spec keeps it, so spec-dependent identities
/// are checked against the supplied rows.
pub fn parse_triangle_json(text: &str) -> Result<AnyTriangle, IoError> {
    let doc: Value = serde_json::from_str(text)?;
    let (source, rows_value) = match &doc {
        Value::Array(_) => (Source::External, &doc),
        Value::Object(map) => {
            let rows = map.get("rows").ok_or_else(|| format_err("missing \"rows\""))?;
            let source = match parse_spec(map.get("spec").unwrap_or(&Value::Null))? {
                Some(spec) => Source::Recurrence(Box::new(spec)),
                None => Source::External,
            };
            (source, rows)
        }
        _ => return Err(format_err("expected an object or an array of rows")),
    };
    let rows: Vec<Vec<Rat>> = rows_value
        .as_array()
        .ok_or_else(|| format_err("\"rows\" must be an array"))?
        .iter()
        .map(parse_values)
        .collect::<Result<_, _>>()?;
    if rows.iter().flatten().all(|v| v.is_integer()) {
        let ints = rows.iter().map(|r| r.iter().map(|v| v.to_integer()).collect()).collect();
        Ok(AnyTriangle::Int(Triangle::from_rows(source, ints)?))
    } else {
        Ok(AnyTriangle::Rat(Triangle::from_rows(source, rows)?))
    }
}

pub fn seq_to_json(z: &NumSeq) -> Value {
    json!({ "values": z.values.iter().map(|v| v.to_string()).collect::<Vec<_>>() })
}

/// Reads `{"values": [...]}` or a bare array.
pub fn parse_seq_json(text: &str) -> Result<NumSeq, IoError> {
    let doc: Value = serde_json::from_str(text)?;
    let values = match &doc {
        Value::Object(map) => map.get("values").ok_or_else(|| format_err("missing \"values\""))?,
        other => other,
    };
    Ok(NumSeq::new(parse_values(values)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::families::Family;
    use crate::triangle::{generate, generate_rational};

    #[test]
    fn triangle_round_trip() {
        let t = generate(&Family::Bell.spec(), 4).unwrap();
        let text = triangle_to_json(&t).to_string();
        assert!(text.starts_with(r#"{"rows":[["1"],["0","1"]"#) || text.contains(r#""rows":[["1"],["0","1"]"#));
        assert_eq!(parse_triangle_json(&text).unwrap(), AnyTriangle::Int(t));
    }

    #[test]
    fn rational_round_trip() {
        let spec = RecurrenceSpec::parse("0,0,1/2,0,0,1", Int::from(4)).unwrap();
        let t = generate_rational(&spec, 3).unwrap().to_rat();
        let parsed = parse_triangle_json(&triangle_to_json(&t).to_string()).unwrap();
        // entries of this triangle happen to be integral
        assert_eq!(parsed.to_rat(), t);
        let frac = parse_triangle_json(r#"[["1/2"], [1, "3/4"]]"#).unwrap();
        assert!(matches!(&frac, AnyTriangle::Rat(t) if t.get(1, 1) == rat(3, 4)));
    }

    #[test]
    fn bare_rows_are_external() {
        let AnyTriangle::Int(t) = parse_triangle_json("[[1],[1,2],[1,1,1]]").unwrap() else {
            panic!("expected integral triangle");
        };
        assert_eq!(t.source(), &Source::External);
        assert!(matches!(
            parse_triangle_json("[[1],[1,2,3]]"),
            Err(IoError::Triangle(TriangleError::Ragged { row: 1, .. }))
        ));
        assert!(matches!(parse_triangle_json("[[1],[true,2]]"), Err(IoError::Format(_))));
        assert!(matches!(parse_triangle_json("{"), Err(IoError::Json(_))));
    }

    #[test]
    fn renderings() {
        let t = generate(&Family::Bell.spec(), 2).unwrap();
        assert_eq!(triangle_to_text(&t), "1\n0 1\n0 1 1\n");
        assert_eq!(triangle_to_csv(&t), "1\n0,1\n0,1,1\n");
    }

    #[test]
    fn sequences() {
        let z = NumSeq::from_ints(&[1, 2, 6]);
        assert_eq!(seq_to_json(&z).to_string(), r#"{"values":["1","2","6"]}"#);
        assert_eq!(parse_seq_json(r#"{"values":["1",2,"6"]}"#).unwrap(), z);
        assert_eq!(parse_seq_json("[1, 2, 6]").unwrap(), z);
    }
}
