//! JSON input and output.
//!
//! Input is a collection object `{"name": …, "polytopes": […]}`, a bare
//! array of polytopes, or a single polytope. A polytope is either
//! `{"vertices": [[…], …]}` or `{"builtin": "cube" | "simplex" | "segment",
//! "dim": d, "scale": s}` (`scale` defaults to 1).
//!
//! Exact numbers are written as strings: rationals as `"p/q"`, big
//! integers in decimal. Polynomials are arrays of coefficients, lowest
//! degree first.

use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use crate::enumerate::CountResult;
use crate::error::{Error, Result};
use crate::lattice::LatticePolytope;
use crate::poly::{MultivariatePolynomial, Rational, UnivariatePolynomial};
use crate::roots::{DilationReport, RootReport};

#[derive(Clone, Debug, PartialEq)]
pub struct CollectionSpec {
    pub name: String,
    pub polytopes: Vec<LatticePolytope>,
}

fn field_error(field: &str, message: impl std::fmt::Display) -> Error {
    Error::InvalidArgument(format!("{field}: {message}"))
}

pub fn parse_collection(text: &str) -> Result<CollectionSpec> {
    let value: Value = serde_json::from_str(text).map_err(|e| field_error("input", e))?;
    collection_from_value(&value)
}

pub fn collection_from_value(value: &Value) -> Result<CollectionSpec> {
    let (name, items, prefix) = match value {
        Value::Array(items) => (String::new(), items.as_slice(), String::new()),
        Value::Object(map) if map.contains_key("polytopes") => {
            let name = match map.get("name") {
                None | Some(Value::Null) => String::new(),
                Some(Value::String(s)) => s.clone(),
                Some(_) => return Err(field_error("name", "expected a string")),
            };
            let items = map["polytopes"]
                .as_array()
                .ok_or_else(|| field_error("polytopes", "expected an array"))?;
            (name, items.as_slice(), "polytopes".to_string())
        }
        Value::Object(_) => {
            let p = polytope_from_value(value, "polytope")?;
            return Ok(CollectionSpec {
                name: String::new(),
                polytopes: vec![p],
            });
        }
        _ => return Err(field_error("input", "expected an object or an array")),
    };
    if items.is_empty() {
        let field = if prefix.is_empty() {
            "input"
        } else {
            "polytopes"
        };
        return Err(field_error(field, "empty collection"));
    }
    let mut polytopes = Vec::with_capacity(items.len());
    for (i, item) in items.iter().enumerate() {
        let field = format!("{prefix}[{i}]");
        let p = polytope_from_value(item, &field)?;
        if let Some(first) = polytopes.first().map(LatticePolytope::ambient_dim) {
            if p.ambient_dim() != first {
                return Err(field_error(
                    &field,
                    format!("ambient dimension {} differs from {first}", p.ambient_dim()),
                ));
            }
        }
        polytopes.push(p);
    }
    Ok(CollectionSpec { name, polytopes })
}

pub fn polytope_from_value(value: &Value, field: &str) -> Result<LatticePolytope> {
    let map = value
        .as_object()
        .ok_or_else(|| field_error(field, "expected a polytope object"))?;
    match (map.get("vertices"), map.get("builtin")) {
        (Some(v), None) => vertices_polytope(v, &format!("{field}.vertices")),
        (None, Some(b)) => builtin_polytope(map, b, field),
        (Some(_), Some(_)) => Err(field_error(
            field,
            "give either \"vertices\" or \"builtin\", not both",
        )),
        (None, None) => Err(field_error(field, "missing \"vertices\" or \"builtin\"")),
    }
}

fn vertices_polytope(v: &Value, field: &str) -> Result<LatticePolytope> {
    let rows = v
        .as_array()
        .ok_or_else(|| field_error(field, "expected an array of points"))?;
    if rows.is_empty() {
        return Err(field_error(field, "no points"));
    }
    let mut points = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        let f = format!("{field}[{i}]");
        let coords = row
            .as_array()
            .ok_or_else(|| field_error(&f, "expected an array of integers"))?;
        let pt = coords
            .iter()
            .enumerate()
            .map(|(j, x)| {
                x.as_i64()
                    .ok_or_else(|| field_error(&format!("{f}[{j}]"), "expected an integer"))
            })
            .collect::<Result<Vec<i64>>>()?;
        if let Some(first) = points.first().map(Vec::len) {
            if pt.len() != first {
                return Err(field_error(
                    &f,
                    format!("has {} coordinates, expected {first}", pt.len()),
                ));
            }
        }
        points.push(pt);
    }
    let ambient = points[0].len();
    LatticePolytope::from_points(ambient, points).map_err(|e| field_error(field, e))
}

fn builtin_polytope(map: &Map<String, Value>, b: &Value, field: &str) -> Result<LatticePolytope> {
    let kind = b
        .as_str()
        .ok_or_else(|| field_error(&format!("{field}.builtin"), "expected a string"))?;
    let dim = map
        .get("dim")
        .ok_or_else(|| field_error(&format!("{field}.dim"), "missing"))?
        .as_u64()
        .ok_or_else(|| field_error(&format!("{field}.dim"), "expected a non-negative integer"))?
        as usize;
    let scale = match map.get("scale") {
        None => 1,
        Some(s) => s.as_i64().filter(|&s| s >= 0).ok_or_else(|| {
            field_error(&format!("{field}.scale"), "expected a non-negative integer")
        })?,
    };
    match kind {
        "cube" => Ok(LatticePolytope::cube(dim, scale)),
        "simplex" => Ok(LatticePolytope::simplex(dim, scale)),
        "segment" if dim >= 1 => Ok(LatticePolytope::segment(dim, 0, scale)),
        "segment" => Err(field_error(
            &format!("{field}.dim"),
            "a segment needs dim ≥ 1",
        )),
        other => Err(field_error(
            &format!("{field}.builtin"),
            format!("unknown builtin \"{other}\""),
        )),
    }
}

pub fn polytope_to_json(p: &LatticePolytope) -> Value {
    json!({ "vertices": p.vertices() })
}

pub fn collection_to_json(c: &CollectionSpec) -> Value {
    json!({
        "name": c.name,
        "polytopes": c.polytopes.iter().map(polytope_to_json).collect::<Vec<_>>(),
    })
}

pub fn rational_to_json(q: &Rational) -> Value {
    Value::String(q.to_string())
}

pub fn bigint_to_json(n: &BigInt) -> Value {
    Value::String(n.to_string())
}

pub fn integers_to_json(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(bigint_to_json).collect())
}

pub fn rationals_to_json(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(rational_to_json).collect())
}

pub fn polynomial_to_json(p: &UnivariatePolynomial) -> Value {
    rationals_to_json(p.coeffs())
}

/// Terms as `{"exponent": [...], "coefficient": "p/q"}`, sorted by exponent.
pub fn multivariate_to_json(p: &MultivariatePolynomial) -> Value {
    Value::Array(
        p.terms()
            .map(|(alpha, c)| json!({ "exponent": alpha, "coefficient": rational_to_json(c) }))
            .collect(),
    )
}

pub fn count_to_json(c: &CountResult) -> Value {
    json!({ "total": c.total, "interior": c.interior })
}

/// Isolating intervals are `(lo, hi]`; `approx` is the midpoint as a float.
pub fn root_report_to_json(r: &RootReport) -> Value {
    json!({
        "real_rooted": r.real_rooted,
        "degree": r.degree,
        "roots": r.intervals.iter().map(|i| json!({
            "lo": rational_to_json(&i.lo),
            "hi": rational_to_json(&i.hi),
            "multiplicity": i.multiplicity,
            "approx": i.approx(),
        })).collect::<Vec<_>>(),
    })
}

pub fn dilation_report_to_json(r: &DilationReport) -> Value {
    json!({
        "r": r.r,
        "hstar": integers_to_json(&r.hstar.entries),
        "real_rooted": r.real_rooted,
        "positive_tail": r.positive_tail,
        "log_concave": r.log_concave,
        "unimodal": r.unimodal,
        "limit_distance": rational_to_json(&r.limit_distance),
    })
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    s.trim()
        .parse::<Rational>()
        .map_err(|_| Error::InvalidArgument(format!("not a rational number: {s:?}")))
}
