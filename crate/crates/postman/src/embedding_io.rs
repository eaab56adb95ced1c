//! Embedding JSON (`{"chains": {"<logical>": [qubits]}}`) and fault lists.

use postman_core::chimera::ChainStats;
use postman_core::chimera::Moments;
use postman_core::Embedding;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::json;

pub fn embedding_to_json(emb: &Embedding) -> Value {
    let mut chains = Map::new();
    for (v, chain) in emb.chains.iter().enumerate() {
        chains.insert(v.to_string(), json!(chain));
    }
    json!({ "chains": chains })
}

pub fn embedding_from_json(v: &Value) -> Result<Embedding> {
    let chains = v
        .get("chains")
        .and_then(Value::as_object)
        .ok_or_else(|| Error::parse(0, "embedding JSON: missing \"chains\" object"))?;
    let mut out: Vec<Option<Vec<usize>>> = vec![None; chains.len()];
    for (key, list) in chains {
        let v: usize = key
            .parse()
            .ok()
            .filter(|&v| v < chains.len())
            .ok_or_else(|| {
                Error::parse(
                    0,
                    format!(
                        "embedding JSON: chain key {key:?} is not in 0..{}",
                        chains.len()
                    ),
                )
            })?;
        let qubits = list
            .as_array()
            .and_then(|a| {
                a.iter()
                    .map(|q| q.as_u64().map(|q| q as usize))
                    .collect::<Option<Vec<_>>>()
            })
            .ok_or_else(|| {
                Error::parse(
                    0,
                    format!("embedding JSON: chain {key} is not a list of qubit ids"),
                )
            })?;
        out[v] = Some(qubits);
    }
    let chains = out
        .into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::parse(0, "embedding JSON: duplicate chain keys"))?;
    Ok(Embedding::new(chains))
}

pub fn parse_embedding(text: &str) -> Result<Embedding> {
    embedding_from_json(&serde_json::from_str(text)?)
}

/// Qubit ids separated by whitespace or commas; `#` starts a comment.
pub fn parse_faults(text: &str) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let body = line.split('#').next().unwrap_or("");
        for tok in body
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
        {
            out.push(
                tok.parse()
                    .map_err(|_| Error::parse(i + 1, format!("invalid qubit id {tok:?}")))?,
            );
        }
    }
    Ok(out)
}

pub fn stats_to_json(stats: &ChainStats, ecc: Option<&Moments>) -> Value {
    let mut v = json!({
        "physical_qubits": stats.physical_qubits,
        "max_chain_length": stats.max_chain_length,
        "chains_at_max": stats.chains_at_max,
    });
    if let Some(m) = ecc {
        v["eccentricity"] = json!({
            "mean": json::float(m.mean),
            "variance": json::float(m.variance),
            "skewness": json::float(m.skewness),
            "kurtosis": json::float(m.kurtosis),
        });
    }
    v
}
