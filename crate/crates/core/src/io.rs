//! Reading complexes from JSON or plain text, and rendering result tables as
//! versioned JSON records or aligned text.

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::domination::IntPolynomial;
use crate::error::{Error, Result};
use crate::exactla::AbelianGroupClass;
use crate::homology::GradedGroup;
use crate::mvss::SpectralPage;
use crate::scomplex::SimplicialComplex;
use crate::tables::{BigradedTable, TriGradedTable};
use crate::verify::VerificationReport;

pub const SCHEMA: u32 = 1;

#[derive(Deserialize)]
struct JsonComplex {
    m: usize,
    facets: Vec<Vec<usize>>,
}

/// Parses either `{"m": .., "facets": [[..], ..]}` or one facet per line.
/// `vertices` overrides the inferred vertex count of the text format.
pub fn parse_complex(input: &str, vertices: Option<usize>) -> Result<SimplicialComplex> {
    let trimmed = input.trim_start();
    if trimmed.starts_with('{') {
        let parsed: JsonComplex =
            serde_json::from_str(trimmed).map_err(|e| Error::InvalidInput(format!("bad JSON complex: {e}")))?;
        if let Some(v) = vertices {
            if v != parsed.m {
                return Err(Error::InvalidInput(format!("--vertices {v} contradicts \"m\": {}", parsed.m)));
            }
        }
        return SimplicialComplex::from_facets(parsed.m, parsed.facets);
    }
    parse_text(input, vertices)
}

fn parse_text(input: &str, vertices: Option<usize>) -> Result<SimplicialComplex> {
    let mut facets = Vec::new();
    for (n, line) in input.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let facet = line
            .split_whitespace()
            .map(|t| t.parse::<usize>().map_err(|_| Error::InvalidInput(format!("line {}: {t:?} is not a vertex", n + 1))))
            .collect::<Result<Vec<_>>>()?;
        facets.push(facet);
    }
    let inferred = facets.iter().flatten().max().map_or(0, |&v| v + 1);
    SimplicialComplex::from_facets(vertices.unwrap_or(inferred), facets)
}

pub fn complex_json(k: &SimplicialComplex) -> Value {
    json!({ "schema": SCHEMA, "m": k.m(), "facets": k.facet_lists() })
}

pub fn complex_text(k: &SimplicialComplex) -> String {
    k.facet_lists()
        .iter()
        .map(|f| f.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ") + "\n")
        .collect()
}

fn divisor(d: &BigUint) -> Value {
    match d.to_u64() {
        Some(x) => json!(x),
        None => json!(d.to_string()),
    }
}

fn group_fields(g: &AbelianGroupClass) -> (Value, Value) {
    (json!(g.rank), Value::Array(g.torsion().iter().map(divisor).collect()))
}

fn record(mut fields: serde_json::Map<String, Value>, g: &AbelianGroupClass) -> Value {
    let (rank, torsion) = group_fields(g);
    fields.insert("rank".into(), rank);
    fields.insert("torsion".into(), torsion);
    Value::Object(fields)
}

fn fields(pairs: &[(&str, Value)]) -> serde_json::Map<String, Value> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

pub fn homology_json(h: &GradedGroup, reduced: bool) -> Value {
    let entries: Vec<Value> = h.iter().map(|(d, g)| record(fields(&[("degree", json!(d))]), g)).collect();
    json!({ "schema": SCHEMA, "kind": "homology", "coeffs": h.coeffs.to_string(), "reduced": reduced, "entries": entries })
}

/// Records `{"j", "k", "i", "rank", "torsion"}`.
pub fn uber_json(t: &TriGradedTable) -> Value {
    let entries: Vec<Value> = t
        .iter()
        .map(|((j, k, i), g)| record(fields(&[("j", json!(j)), ("k", json!(k)), ("i", json!(i))]), g))
        .collect();
    json!({ "schema": SCHEMA, "kind": "uberhomology", "coeffs": t.coeffs.to_string(), "entries": entries })
}

/// The zero-degree table keyed `(j, i)`.
pub fn uber_zero_json(t: &BigradedTable) -> Value {
    let entries: Vec<Value> =
        t.iter().map(|((j, i), g)| record(fields(&[("j", json!(j)), ("i", json!(i))]), g)).collect();
    json!({ "schema": SCHEMA, "kind": "uberhomology-zero-degree", "coeffs": t.coeffs.to_string(), "entries": entries })
}

/// Records `{"k", "l", "display": [-k, 2l], "rank", "torsion"}`.
pub fn double_json(t: &BigradedTable) -> Value {
    let entries: Vec<Value> = t
        .iter()
        .map(|((k, l), g)| record(fields(&[("k", json!(k)), ("l", json!(l)), ("display", json!([-k, 2 * l]))]), g))
        .collect();
    json!({ "schema": SCHEMA, "kind": "double-homology", "coeffs": t.coeffs.to_string(), "entries": entries })
}

pub fn page_json(page: &SpectralPage) -> Value {
    let entries: Vec<Value> =
        page.entries.iter().map(|((p, q), g)| record(fields(&[("p", json!(p)), ("q", json!(q))]), g)).collect();
    json!({
        "schema": SCHEMA,
        "kind": "mvss",
        "variant": page.variant.to_string(),
        "page": page.page,
        "coeffs": page.entries.coeffs.to_string(),
        "entries": entries,
    })
}

pub fn polynomial_json(p: &IntPolynomial, eval: Option<i64>) -> Value {
    let mut v = json!({
        "schema": SCHEMA,
        "kind": "connected-domination-polynomial",
        "coefficients": p.coeffs(),
        "polynomial": p.to_string(),
    });
    if let Some(x) = eval {
        v["at"] = json!(x);
        v["value"] = json!(p.eval(x).to_string());
    }
    v
}

pub fn report_json(r: &VerificationReport) -> Value {
    let mut v = serde_json::to_value(r).expect("report serialises");
    v["schema"] = json!(SCHEMA);
    v["kind"] = json!("verification");
    v
}

fn render_rows(header: &str, rows: Vec<(String, String)>) -> String {
    let mut out = format!("{header}\n");
    if rows.is_empty() {
        out.push_str("  (all zero)\n");
        return out;
    }
    let w = rows.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
    for (k, g) in rows {
        let pad = w - k.chars().count();
        out.push_str(&format!("  {k}{}  {g}\n", " ".repeat(pad)));
    }
    out
}

pub fn homology_text(h: &GradedGroup, reduced: bool) -> String {
    let header = format!("{} homology over {}", if reduced { "reduced" } else { "unreduced" }, h.coeffs);
    render_rows(&header, h.iter().map(|(d, g)| (format!("H_{d}"), g.to_string())).collect())
}

pub fn uber_text(t: &TriGradedTable) -> String {
    let rows = t.iter().map(|((j, k, i), g)| (format!("j={j} k={k} i={i}"), g.to_string())).collect();
    render_rows(&format!("uberhomology over {}", t.coeffs), rows)
}

pub fn uber_zero_text(t: &BigradedTable) -> String {
    let rows = t.iter().map(|((j, i), g)| (format!("j={j} i={i}"), g.to_string())).collect();
    render_rows(&format!("zero-degree uberhomology over {}", t.coeffs), rows)
}

pub fn double_text(t: &BigradedTable) -> String {
    let rows = t.iter().map(|((k, l), g)| (format!("({}, {})", -k, 2 * l), g.to_string())).collect();
    render_rows(&format!("double homology over {} at (-k, 2l)", t.coeffs), rows)
}

pub fn page_text(page: &SpectralPage) -> String {
    let rows = page.entries.iter().map(|((p, q), g)| (format!("p={p} q={q}"), g.to_string())).collect();
    render_rows(&format!("E{} page, {} variant, over {}", page.page, page.variant, page.entries.coeffs), rows)
}

pub fn report_text(r: &VerificationReport) -> String {
    let mut out = format!("verification over {} (m = {})\n", r.coeffs, r.m);
    for c in &r.claims {
        out.push_str(&format!("  {:<8} {}\n", format!("{:?}", c.status).to_lowercase(), c.claim));
        for d in c.details.iter().chain(&c.informational) {
            out.push_str(&format!("           {d}\n"));
        }
    }
    out
}
