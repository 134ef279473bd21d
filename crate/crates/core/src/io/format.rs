//! Deterministic JSON serialization of polynomials, matrices and reports.
//!
//! A polynomial `p` is written as `{"canonical": c, "scalar": s}` with
//! `p = s * c`, where `c` has coprime integer coefficients, a positive leading
//! coefficient, and its terms printed in descending degrevlex order of the
//! ring.

use serde_json::{json, Value};

use crate::algebra::{MatrixQ, Poly, TermOrder, Q};

pub fn canonical(p: &Poly) -> (Q, Poly) {
    p.primitive(&TermOrder::degrevlex(p.ring()))
}

pub fn poly(p: &Poly) -> Value {
    let (scalar, prim) = canonical(p);
    json!({
        "canonical": prim.to_string(),
        "scalar": scalar.to_string(),
    })
}

pub fn polys(ps: &[Poly]) -> Value {
    Value::Array(ps.iter().map(poly).collect())
}

pub fn rational(q: &Q) -> Value {
    Value::String(q.to_string())
}

pub fn rationals(qs: &[Q]) -> Value {
    Value::Array(qs.iter().map(rational).collect())
}

pub fn matrix(m: &MatrixQ) -> Value {
    json!({
        "rows": m.row_labels,
        "cols": m.col_labels,
        "entries": m.rows().iter().map(|r| rationals(r)).collect::<Vec<_>>(),
    })
}

/// `a` and `b` agree up to one nonzero rational scalar.
pub fn same_up_to_scalar(a: &Poly, b: &Poly) -> bool {
    if a.is_zero() || b.is_zero() {
        return a.is_zero() && b.is_zero();
    }
    canonical(a).1 == canonical(b).1
}

/// Pretty-printed JSON with a trailing newline. `serde_json` maps are sorted,
/// so equal values print identically.
pub fn to_pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

/// Flat `path: value` lines, for `--format text`.
pub fn to_text(v: &Value) -> String {
    fn walk(prefix: &str, v: &Value, out: &mut String) {
        match v {
            Value::Object(map) => {
                if let (Some(Value::String(c)), Some(Value::String(s))) = (map.get("canonical"), map.get("scalar")) {
                    if map.len() == 2 {
                        let line = if s == "1" { c.clone() } else { format!("({s}) * ({c})") };
                        out.push_str(&format!("{prefix}: {line}\n"));
                        return;
                    }
                }
                for (k, x) in map {
                    let p = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                    walk(&p, x, out);
                }
            }
            Value::Array(xs) => {
                if xs.is_empty() {
                    out.push_str(&format!("{prefix}: []\n"));
                }
                for (i, x) in xs.iter().enumerate() {
                    walk(&format!("{prefix}[{i}]"), x, out);
                }
            }
            Value::String(s) => out.push_str(&format!("{prefix}: {s}\n")),
            other => out.push_str(&format!("{prefix}: {other}\n")),
        }
    }
    let mut out = String::new();
    walk("", v, &mut out);
    out
}
