//! QUBO text files and JSON model documents.
//!
//! ```text
//! c offset 32
//! c penalty 8
//! c odd_nodes 4
//! p qubo 0 12 12 54
//! 0 0 -14
//! 0 1 32
//! ```
//! Diagonal lines come first, then `k l b` with `k < l`.

use postman_core::qubo::PairEncoding;
use postman_core::rational::{self, int};
use postman_core::{IsingModel, QuboModel, Rational};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::json;

pub fn write_qubo(q: &QuboModel) -> String {
    let diagonal: Vec<(usize, Rational)> = q
        .linear()
        .iter()
        .copied()
        .enumerate()
        .filter(|(_, a)| *a != int(0))
        .collect();
    let mut out = String::new();
    out.push_str(&format!("c offset {}\n", rational::format(q.offset())));
    if let Some(p) = q.penalty() {
        out.push_str(&format!("c penalty {}\n", rational::format(p)));
    }
    if let Some(enc) = q.encoding() {
        out.push_str(&format!("c odd_nodes {}\n", enc.d));
    }
    out.push_str(&format!(
        "p qubo 0 {} {} {}\n",
        q.dim(),
        diagonal.len(),
        q.quadratic().len()
    ));
    for (k, a) in diagonal {
        out.push_str(&format!("{k} {k} {}\n", rational::format(a)));
    }
    for (&(k, l), &b) in q.quadratic() {
        out.push_str(&format!("{k} {l} {}\n", rational::format(b)));
    }
    out
}

struct Header {
    line: usize,
    dim: usize,
    diagonals: usize,
    elements: usize,
}

fn number<T: std::str::FromStr>(tok: &str, line: usize) -> Result<T> {
    tok.parse()
        .map_err(|_| Error::parse(line, format!("invalid number {tok:?}")))
}

fn value(tok: Option<&str>, line: usize) -> Result<Rational> {
    let tok = tok.ok_or_else(|| Error::parse(line, "missing value"))?;
    rational::parse(tok).ok_or_else(|| Error::parse(line, format!("invalid value {tok:?}")))
}

pub fn read_qubo(text: &str) -> Result<QuboModel> {
    let mut offset = int(0);
    let mut penalty = None;
    let mut odd_nodes = None;
    let mut header: Option<Header> = None;
    let mut entries: Vec<(usize, usize, usize, Rational)> = Vec::new();
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last_line = line;
        let l = raw.trim();
        if l.is_empty() {
            continue;
        }
        let mut tok = l.split_whitespace();
        match tok.next() {
            Some("c") => match tok.next() {
                Some("offset") => offset = value(tok.next(), line)?,
                Some("penalty") => penalty = Some(value(tok.next(), line)?),
                Some("odd_nodes") => {
                    let t = tok
                        .next()
                        .ok_or_else(|| Error::parse(line, "missing odd node count"))?;
                    odd_nodes = Some(number::<usize>(t, line)?);
                }
                _ => {}
            },
            Some("p") => {
                if header.is_some() {
                    return Err(Error::parse(line, "second problem line"));
                }
                let fields: Vec<&str> = tok.collect();
                if fields.len() != 5 || fields[0] != "qubo" || fields[1] != "0" {
                    return Err(Error::parse(
                        line,
                        "expected `p qubo 0 <dim> <nDiagonals> <nElements>`",
                    ));
                }
                header = Some(Header {
                    line,
                    dim: number(fields[2], line)?,
                    diagonals: number(fields[3], line)?,
                    elements: number(fields[4], line)?,
                });
            }
            Some(first) => {
                if header.is_none() {
                    return Err(Error::parse(line, "coefficient before the `p qubo` line"));
                }
                let k: usize = number(first, line)?;
                let t = tok
                    .next()
                    .ok_or_else(|| Error::parse(line, "missing column index"))?;
                let l: usize = number(t, line)?;
                let v = value(tok.next(), line)?;
                if tok.next().is_some() {
                    return Err(Error::parse(line, "trailing tokens"));
                }
                entries.push((line, k, l, v));
            }
            None => {}
        }
    }
    let h = header.ok_or_else(|| Error::parse(last_line + 1, "missing `p qubo` line"))?;
    let mut q = QuboModel::new(h.dim);
    q.add_offset(offset);
    let (mut diag, mut elems) = (0, 0);
    for &(line, k, l, v) in &entries {
        if k >= h.dim || l >= h.dim {
            return Err(Error::parse(line, format!("index outside 0..{}", h.dim)));
        }
        if k == l {
            if elems > 0 {
                return Err(Error::parse(
                    line,
                    "diagonal entry after off-diagonal entries",
                ));
            }
            diag += 1;
            q.add_linear(k, v);
        } else if k < l {
            elems += 1;
            q.add_quadratic(k, l, v);
        } else {
            return Err(Error::parse(line, "off-diagonal entries need k < l"));
        }
    }
    if diag != h.diagonals || elems != h.elements {
        return Err(Error::parse(
            last_line + 1,
            format!(
                "header (line {}) announces {} diagonal and {} off-diagonal entries, found {diag} and {elems}",
                h.line, h.diagonals, h.elements
            ),
        ));
    }
    if let Some(d) = odd_nodes {
        let enc = PairEncoding::new(d);
        if enc.dim() != h.dim {
            return Err(Error::parse(
                h.line,
                format!("{d} odd nodes need dimension {}", enc.dim()),
            ));
        }
        q.set_encoding(Some(enc), penalty);
    } else {
        q.set_encoding(None, penalty);
    }
    Ok(q)
}

pub fn qubo_to_json(q: &QuboModel) -> Value {
    let variables: Vec<Value> = match q.encoding() {
        Some(enc) => enc
            .pairs()
            .enumerate()
            .map(|(k, (i, j))| json!({ "index": k, "pair": [i, j] }))
            .collect(),
        None => Vec::new(),
    };
    let quadratic: Vec<Value> = q
        .quadratic()
        .iter()
        .map(|(&(k, l), &b)| json!([k, l, json::to_value(b)]))
        .collect();
    json!({
        "kind": "qubo",
        "dim": q.dim(),
        "offset": json::to_value(q.offset()),
        "penalty": q.penalty().map(json::to_value),
        "odd_nodes": q.encoding().map(|e| e.d),
        "variables": variables,
        "linear": q.linear().iter().map(|&a| json::to_value(a)).collect::<Vec<_>>(),
        "quadratic": quadratic,
    })
}

fn exact(v: &Value, what: &str) -> Result<Rational> {
    json::from_value(v).ok_or_else(|| Error::parse(0, format!("model JSON: {what} is not exact")))
}

fn triples(v: &Value) -> Result<Vec<(usize, usize, Rational)>> {
    let list = v
        .as_array()
        .ok_or_else(|| Error::parse(0, "model JSON: expected an array of [k, l, value]"))?;
    list.iter()
        .map(|t| {
            let a = t.as_array().filter(|a| a.len() == 3);
            let idx = |i: usize| a.and_then(|a| a[i].as_u64()).map(|x| x as usize);
            match (idx(0), idx(1), a) {
                (Some(k), Some(l), Some(a)) => Ok((k, l, exact(&a[2], "coefficient")?)),
                _ => Err(Error::parse(0, "model JSON: malformed [k, l, value] entry")),
            }
        })
        .collect()
}

pub fn qubo_from_json(v: &Value) -> Result<QuboModel> {
    let dim = v
        .get("dim")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::parse(0, "model JSON: missing \"dim\""))? as usize;
    let mut q = QuboModel::new(dim);
    q.add_offset(exact(&v["offset"], "offset")?);
    let linear = v["linear"]
        .as_array()
        .filter(|a| a.len() == dim)
        .ok_or_else(|| Error::parse(0, "model JSON: \"linear\" must have dim entries"))?;
    for (k, a) in linear.iter().enumerate() {
        q.add_linear(k, exact(a, "linear coefficient")?);
    }
    for (k, l, b) in triples(&v["quadratic"])? {
        if k >= dim || l >= dim || k == l {
            return Err(Error::parse(0, format!("model JSON: bad pair ({k}, {l})")));
        }
        q.add_quadratic(k, l, b);
    }
    let penalty = match &v["penalty"] {
        Value::Null => None,
        p => Some(exact(p, "penalty")?),
    };
    let encoding = v["odd_nodes"]
        .as_u64()
        .map(|d| PairEncoding::new(d as usize));
    if let Some(enc) = encoding {
        if enc.dim() != dim {
            return Err(Error::parse(0, "model JSON: odd_nodes does not match dim"));
        }
    }
    q.set_encoding(encoding, penalty);
    Ok(q)
}

pub fn ising_to_json(m: &IsingModel) -> Value {
    let j: Vec<Value> = m
        .couplings()
        .iter()
        .map(|(&(a, b), &v)| json!([a, b, json::to_value(v)]))
        .collect();
    json!({
        "kind": "ising",
        "num_spins": m.num_spins(),
        "offset": json::to_value(m.offset()),
        "h": m.fields().iter().map(|&h| json::to_value(h)).collect::<Vec<_>>(),
        "j": j,
    })
}

pub fn ising_from_json(v: &Value) -> Result<IsingModel> {
    let n = v
        .get("num_spins")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::parse(0, "model JSON: missing \"num_spins\""))? as usize;
    let mut m = IsingModel::new(n);
    m.add_offset(exact(&v["offset"], "offset")?);
    let h = v["h"]
        .as_array()
        .filter(|a| a.len() == n)
        .ok_or_else(|| Error::parse(0, "model JSON: \"h\" must have num_spins entries"))?;
    for (i, x) in h.iter().enumerate() {
        m.add_field(i, exact(x, "field")?);
    }
    for (a, b, x) in triples(&v["j"])? {
        if a >= n || b >= n || a == b {
            return Err(Error::parse(
                0,
                format!("model JSON: bad coupling ({a}, {b})"),
            ));
        }
        m.add_coupling(a, b, x);
    }
    Ok(m)
}

/// A QUBO from either the text format or a JSON model document.
pub fn parse_qubo(text: &str) -> Result<QuboModel> {
    if text.trim_start().starts_with('{') {
        qubo_from_json(&serde_json::from_str(text)?)
    } else {
        read_qubo(text)
    }
}
