//! Edge-list text and JSON graph files.
//!
//! Text form: a header line `n m`, then `m` lines `u v w`. Lines starting
//! with `#` and blank lines are ignored. Weights may be integers, decimals or
//! fractions; they are stored exactly over a common denominator.

use postman_core::graph::GraphFeatures;
use postman_core::rational::{self, common_denominator};
use postman_core::{EnsembleSpec, Graph, Rational};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::json;

fn build(n: usize, edges: Vec<(usize, usize, Rational)>) -> Result<Graph> {
    let den = common_denominator(edges.iter().map(|e| e.2));
    let scaled = edges
        .into_iter()
        .map(|(u, v, w)| (u, v, (w * Rational::from_integer(den)).to_integer()));
    Ok(Graph::with_denominator(n, scaled, den)?)
}

fn field<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T> {
    let tok = tok.ok_or_else(|| Error::parse(line, format!("missing {what}")))?;
    tok.parse()
        .map_err(|_| Error::parse(line, format!("invalid {what} {tok:?}")))
}

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hline, header) = lines
        .next()
        .ok_or_else(|| Error::parse(1, "empty graph file"))?;
    let mut tok = header.split_whitespace();
    let n: usize = field(tok.next(), hline, "node count")?;
    let m: usize = field(tok.next(), hline, "edge count")?;
    if tok.next().is_some() {
        return Err(Error::parse(hline, "header must be `n m`"));
    }
    let mut edges = Vec::with_capacity(m);
    let mut last = hline;
    for (line, text) in lines {
        if edges.len() == m {
            return Err(Error::parse(line, format!("more than {m} edge lines")));
        }
        let mut tok = text.split_whitespace();
        let u: usize = field(tok.next(), line, "endpoint u")?;
        let v: usize = field(tok.next(), line, "endpoint v")?;
        let wtext: String = field(tok.next(), line, "weight")?;
        let w = rational::parse(&wtext)
            .ok_or_else(|| Error::parse(line, format!("invalid weight {wtext:?}")))?;
        if tok.next().is_some() {
            return Err(Error::parse(line, "edge line must be `u v w`"));
        }
        edges.push((u, v, w));
        last = line;
    }
    if edges.len() < m {
        return Err(Error::parse(
            last + 1,
            format!("expected {m} edges, found {}", edges.len()),
        ));
    }
    build(n, edges)
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.node_count(), g.edge_count());
    for e in g.edges() {
        out.push_str(&format!(
            "{} {} {}\n",
            e.u,
            e.v,
            rational::format(g.to_rational(e.w))
        ));
    }
    out
}

pub fn graph_to_json(g: &Graph) -> Value {
    let edges: Vec<Value> = g
        .edges()
        .iter()
        .map(|e| json!([e.u, e.v, json::to_value(g.to_rational(e.w))]))
        .collect();
    json!({ "n": g.node_count(), "edges": edges })
}

pub fn graph_from_json(v: &Value) -> Result<Graph> {
    let bad = |msg: &str| Error::parse(0, format!("graph JSON: {msg}"));
    let n = v
        .get("n")
        .and_then(Value::as_u64)
        .ok_or_else(|| bad("missing \"n\""))? as usize;
    let list = v
        .get("edges")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("missing \"edges\""))?;
    let mut edges = Vec::with_capacity(list.len());
    for (i, e) in list.iter().enumerate() {
        let triple = e.as_array().filter(|a| a.len() == 3);
        let parsed = triple.and_then(|a| {
            Some((
                a[0].as_u64()? as usize,
                a[1].as_u64()? as usize,
                json::from_value(&a[2])?,
            ))
        });
        edges.push(parsed.ok_or_else(|| bad(&format!("edge {i} is not [u, v, w]")))?);
    }
    build(n, edges)
}

/// Reads either format; JSON is recognised by a leading `{`.
pub fn parse_graph(text: &str) -> Result<Graph> {
    if text.trim_start().starts_with('{') {
        graph_from_json(&serde_json::from_str(text)?)
    } else {
        parse_edge_list(text)
    }
}

pub fn features_to_json(f: &GraphFeatures) -> Value {
    json!({ "d": f.d, "c_max": f.c_max, "c_min": f.c_min, "c_1": f.c_1 })
}

pub fn ensemble_to_json(spec: &EnsembleSpec, graphs: &[Graph]) -> Value {
    let graphs: Vec<Value> = graphs
        .iter()
        .map(|g| {
            let mut v = graph_to_json(g);
            v["features"] = features_to_json(&g.features());
            v
        })
        .collect();
    json!({
        "spec": {
            "n": spec.n,
            "edge_probability": spec.edge_probability,
            "w_lo": spec.w_lo,
            "w_hi": spec.w_hi,
            "count": spec.count,
            "seed": spec.seed,
        },
        "graphs": graphs,
    })
}

/// Graphs of an ensemble document, a bare array of graphs, or a single graph.
pub fn parse_ensemble(text: &str) -> Result<Vec<Graph>> {
    let v: Value = serde_json::from_str(text)?;
    let list =
        match &v {
            Value::Array(a) => a.as_slice(),
            Value::Object(o) if o.contains_key("graphs") => o["graphs"]
                .as_array()
                .map(Vec::as_slice)
                .ok_or_else(|| Error::parse(0, "\"graphs\" must be an array"))?,
            _ => return Ok(vec![graph_from_json(&v)?]),
        };
    list.iter().map(graph_from_json).collect()
}

/// CSV with one row per edge: `graph,u,v,w`.
pub fn ensemble_to_csv(graphs: &[Graph]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["graph", "u", "v", "w"])?;
    for (i, g) in graphs.iter().enumerate() {
        for e in g.edges() {
            w.write_record([
                i.to_string(),
                e.u.to_string(),
                e.v.to_string(),
                rational::format(g.to_rational(e.w)),
            ])?;
        }
    }
    crate::error::csv_string(w)
}
