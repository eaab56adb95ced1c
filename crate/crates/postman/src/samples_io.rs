//! Sample set JSON and energy histograms.

use postman_core::samplers::SampleInfo;
use postman_core::{Sample, SampleSet, Vartype};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::json;

fn state_to_json(state: &[bool], vartype: Vartype) -> Value {
    let values: Vec<i64> = state
        .iter()
        .map(|&b| match (vartype, b) {
            (_, true) => 1,
            (Vartype::Binary, false) => 0,
            (Vartype::Spin, false) => -1,
        })
        .collect();
    json!(values)
}

pub fn info_to_json(info: &SampleInfo) -> Value {
    json!({
        "sampler": info.sampler,
        "seed": info.seed,
        "reads": info.reads,
        "sweeps": info.sweeps,
        "beta_range": info.beta_range.map(|(a, b)| json!([a, b])),
        "gauges": info.gauges,
        "spin_updates": info.spin_updates,
    })
}

pub fn sample_set_to_json(set: &SampleSet) -> Value {
    let samples: Vec<Value> = set
        .samples
        .iter()
        .map(|s| {
            json!({
                "state": state_to_json(&s.state, set.vartype),
                "energy": json::to_value(s.energy),
                "occurrences": s.occurrences,
            })
        })
        .collect();
    json!({
        "vartype": match set.vartype { Vartype::Binary => "binary", Vartype::Spin => "spin" },
        "info": info_to_json(&set.info),
        "total_reads": set.total_reads(),
        "discarded": set.discarded,
        "samples": samples,
    })
}

fn bad(msg: impl Into<String>) -> Error {
    Error::parse(0, format!("sample set JSON: {}", msg.into()))
}

pub fn sample_set_from_json(v: &Value) -> Result<SampleSet> {
    let vartype = match v["vartype"].as_str() {
        Some("binary") => Vartype::Binary,
        Some("spin") => Vartype::Spin,
        _ => return Err(bad("\"vartype\" must be \"binary\" or \"spin\"")),
    };
    let info_v = &v["info"];
    let info = SampleInfo {
        sampler: info_v["sampler"].as_str().unwrap_or_default().to_string(),
        seed: info_v["seed"].as_u64(),
        reads: info_v["reads"].as_u64().unwrap_or(0),
        sweeps: info_v["sweeps"].as_u64().map(|s| s as usize),
        beta_range: info_v["beta_range"]
            .as_array()
            .and_then(|a| Some((a.first()?.as_f64()?, a.get(1)?.as_f64()?))),
        gauges: info_v["gauges"].as_u64().unwrap_or(0) as usize,
        spin_updates: info_v["spin_updates"].as_u64().unwrap_or(0),
    };
    let list = v["samples"]
        .as_array()
        .ok_or_else(|| bad("missing \"samples\""))?;
    let mut samples = Vec::with_capacity(list.len());
    for (i, s) in list.iter().enumerate() {
        let state = s["state"]
            .as_array()
            .and_then(|a| {
                a.iter()
                    .map(|x| match (x.as_i64()?, vartype) {
                        (1, _) => Some(true),
                        (0, Vartype::Binary) | (-1, Vartype::Spin) => Some(false),
                        _ => None,
                    })
                    .collect::<Option<Vec<bool>>>()
            })
            .ok_or_else(|| bad(format!("sample {i} has an invalid state")))?;
        let energy =
            json::from_value(&s["energy"]).ok_or_else(|| bad(format!("sample {i} energy")))?;
        let occurrences = s["occurrences"]
            .as_u64()
            .filter(|&o| o >= 1)
            .ok_or_else(|| bad(format!("sample {i} occurrences")))?;
        samples.push(Sample {
            state,
            energy,
            occurrences,
        });
    }
    let mut set = SampleSet::empty(vartype, info);
    set.samples = samples;
    set.samples
        .sort_by(|a, b| a.energy.cmp(&b.energy).then_with(|| a.state.cmp(&b.state)));
    set.discarded = v["discarded"].as_u64().unwrap_or(0);
    Ok(set)
}

/// Accepts a bare sample set or a report that nests one under `"samples"`.
pub fn parse_sample_set(text: &str) -> Result<SampleSet> {
    let v: Value = serde_json::from_str(text)?;
    match &v["samples"] {
        nested @ Value::Object(_) if v.get("vartype").is_none() => sample_set_from_json(nested),
        _ => sample_set_from_json(&v),
    }
}

/// `energy,multiplicity` rows in ascending energy.
pub fn histogram_csv(set: &SampleSet) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["energy", "multiplicity"])?;
    for (e, count) in set.histogram() {
        w.write_record([postman_core::rational::format(e), count.to_string()])?;
    }
    crate::error::csv_string(w)
}
