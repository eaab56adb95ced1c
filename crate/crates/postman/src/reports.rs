//! JSON and CSV renderings of solver and experiment results.

use postman_core::defect::{DefectScan, DegreePoint};
use postman_core::metrics::{MetricsReport, SweepPoint};
use postman_core::rational::{self, Rational};
use postman_core::{CppSolution, DecodePolicy};
use serde_json::{json, Value};

use crate::error::Result;
use crate::experiments::PenaltyPoint;
use crate::json;

fn exact(weight: i64, den: i64) -> Value {
    json::to_value(Rational::new(weight, den))
}

pub fn cpp_solution_to_json(sol: &CppSolution) -> Value {
    let mut v = json!({
        "m_min": exact(sol.m_min, sol.denominator),
        "l_t": exact(sol.l_t, sol.denominator),
        "matching": sol.matching.pairs.iter().map(|&(a, b)| json!([a, b])).collect::<Vec<_>>(),
    });
    if let Some(c) = &sol.circuit {
        v["circuit"] = json!(c);
    }
    v
}

pub fn cpp_solution_to_csv(sol: &CppSolution) -> Result<String> {
    let pairs: Vec<String> = sol
        .matching
        .pairs
        .iter()
        .map(|(a, b)| format!("{a}-{b}"))
        .collect();
    let circuit: Vec<String> = sol
        .circuit
        .iter()
        .flatten()
        .map(ToString::to_string)
        .collect();
    to_csv(
        &["m_min", "l_t", "matching", "circuit"],
        [vec![
            rational::format(Rational::new(sol.m_min, sol.denominator)),
            rational::format(Rational::new(sol.l_t, sol.denominator)),
            pairs.join(" "),
            circuit.join(" "),
        ]],
    )
}

pub fn policy_name(p: DecodePolicy) -> &'static str {
    match p {
        DecodePolicy::DiscardBroken => "discard",
        DecodePolicy::MajorityVote => "majority",
    }
}

/// Writes a header and rows through the csv crate.
pub fn to_csv<I, R>(header: &[&str], rows: I) -> Result<String>
where
    I: IntoIterator<Item = R>,
    R: IntoIterator,
    R::Item: AsRef<[u8]>,
{
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(row)?;
    }
    crate::error::csv_string(w)
}

fn float_text(x: f64) -> String {
    if x.is_infinite() {
        "inf".into()
    } else {
        format!("{x}")
    }
}

pub fn sweep_to_csv(points: &[SweepPoint]) -> Result<String> {
    to_csv(
        &[
            "j_f",
            "policy",
            "gauges",
            "hits",
            "total",
            "p_gs",
            "t_99",
            "broken_fraction",
        ],
        points.iter().map(|p| {
            vec![
                rational::format(p.j_f),
                policy_name(p.policy).to_string(),
                p.gauges.to_string(),
                p.hits.to_string(),
                p.total.to_string(),
                float_text(p.p_gs),
                float_text(p.t_99),
                float_text(p.broken_fraction),
            ]
        }),
    )
}

pub fn sweep_to_json(points: &[SweepPoint], seed: u64) -> Value {
    let rows: Vec<Value> = points
        .iter()
        .map(|p| {
            json!({
                "j_f": json::to_value(p.j_f),
                "policy": policy_name(p.policy),
                "gauges": p.gauges,
                "hits": p.hits,
                "total": p.total,
                "p_gs": p.p_gs,
                "t_99": json::float(p.t_99),
                "broken_fraction": p.broken_fraction,
            })
        })
        .collect();
    json!({ "seed": seed, "points": rows })
}

pub fn metrics_to_json(r: &MetricsReport) -> Value {
    json!({
        "p_gs": r.p_gs,
        "hits": r.hits,
        "total": r.total,
        "t_99": json::float(r.t_99),
        "anneal_time": r.anneal_time,
        "tts": r.tts.map(json::float),
        "bootstrap": { "mean": r.bootstrap_mean, "two_sigma": r.two_sigma, "resamples": r.resamples, "seed": r.seed },
        "j_f": r.j_f.map(json::to_value),
        "gauges": r.gauges,
        "policy": r.policy.map(policy_name),
        "embedding_id": r.embedding_id,
    })
}

pub fn metrics_to_csv(r: &MetricsReport) -> Result<String> {
    to_csv(
        &[
            "p_gs",
            "hits",
            "total",
            "t_99",
            "tts",
            "bootstrap_mean",
            "two_sigma",
        ],
        [vec![
            float_text(r.p_gs),
            r.hits.to_string(),
            r.total.to_string(),
            float_text(r.t_99),
            r.tts.map(float_text).unwrap_or_default(),
            float_text(r.bootstrap_mean),
            float_text(r.two_sigma),
        ]],
    )
}

fn weight_text(scan: &DefectScan, w: i64) -> String {
    rational::format(scan.base.to_rational(w))
}

/// Node-indexed heatmap for single defects at `scan.deltas[delta_idx]`.
/// Absent edges are empty cells.
pub fn heatmap_csv(scan: &DefectScan, delta_idx: usize) -> Option<Result<String>> {
    let matrix = scan.matrix(delta_idx)?;
    let n = matrix.len();
    let mut header: Vec<String> = vec![String::new()];
    header.extend((0..n).map(|i| i.to_string()));
    let header: Vec<&str> = header.iter().map(String::as_str).collect();
    let rows = matrix.iter().enumerate().map(|(i, row)| {
        let mut rec = vec![i.to_string()];
        rec.extend(
            row.iter()
                .map(|c| c.map(|m| weight_text(scan, m)).unwrap_or_default()),
        );
        rec
    });
    Some(to_csv(&header, rows))
}

/// Long form: one row per (edge combination, Δ).
pub fn defects_csv(scan: &DefectScan) -> Result<String> {
    let mut rows = Vec::new();
    for entry in &scan.entries {
        let edges: Vec<String> = entry
            .edges
            .iter()
            .map(|&e| {
                let edge = scan.base.edges()[e];
                format!("{}-{}", edge.u, edge.v)
            })
            .collect();
        for (i, &delta) in scan.deltas.iter().enumerate() {
            rows.push(vec![
                edges.join(" "),
                weight_text(scan, delta),
                weight_text(scan, entry.m_min[i]),
            ]);
        }
    }
    to_csv(&["edges", "delta", "m_min"], rows)
}

pub fn defects_to_json(scan: &DefectScan) -> Value {
    let entries: Vec<Value> = scan
        .entries
        .iter()
        .map(|e| {
            let edges: Vec<Value> = e
                .edges
                .iter()
                .map(|&i| {
                    let edge = scan.base.edges()[i];
                    json!([edge.u, edge.v])
                })
                .collect();
            json!({
                "edges": edges,
                "m_min": e.m_min.iter().map(|&m| exact(m, scan.base.denominator())).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({
        "k": scan.k,
        "base_m_min": exact(scan.base_m_min, scan.base.denominator()),
        "deltas": scan.deltas.iter().map(|&d| exact(d, scan.base.denominator())).collect::<Vec<_>>(),
        "entries": entries,
    })
}

pub fn degree_study_csv(groups: &[(usize, Vec<DegreePoint>)]) -> Result<String> {
    let rows = groups
        .iter()
        .flat_map(|(_, pts)| pts.iter())
        .map(|p| vec![p.d.to_string(), p.c_max.to_string(), p.m_min.to_string()]);
    to_csv(&["d", "c_max", "m_min"], rows)
}

pub fn degree_study_to_json(groups: &[(usize, Vec<DegreePoint>)]) -> Value {
    let groups: Vec<Value> = groups
        .iter()
        .map(|(d, pts)| {
            json!({
                "d": d,
                "points": pts.iter().map(|p| json!({ "c_max": p.c_max, "m_min": p.m_min })).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({ "groups": groups })
}

fn matchings_text(p: &PenaltyPoint) -> String {
    let m: Vec<String> = p
        .ground_matchings
        .iter()
        .map(|pairs| {
            let s: Vec<String> = pairs.iter().map(|(a, b)| format!("{a}-{b}")).collect();
            s.join(" ")
        })
        .collect();
    m.join("|")
}

pub fn penalty_sweep_csv(points: &[PenaltyPoint]) -> Result<String> {
    to_csv(
        &[
            "p",
            "p_over_n",
            "e0",
            "e1",
            "gap",
            "p_gs_sa",
            "sa_two_sigma",
            "p_gs_tabu",
            "ground_matchings",
        ],
        points.iter().map(|p| {
            vec![
                rational::format(p.penalty),
                float_text(p.p_over_n),
                rational::format(p.e0),
                p.e1.map(rational::format).unwrap_or_default(),
                p.gap.map(rational::format).unwrap_or_default(),
                float_text(p.sa.p_gs),
                float_text(p.sa.two_sigma),
                float_text(p.tabu_p_gs),
                matchings_text(p),
            ]
        }),
    )
}

pub fn penalty_sweep_to_json(points: &[PenaltyPoint], seed: u64) -> Value {
    let rows: Vec<Value> = points
        .iter()
        .map(|p| {
            json!({
                "p": json::to_value(p.penalty),
                "p_over_n": p.p_over_n,
                "e0": json::to_value(p.e0),
                "e1": p.e1.map(json::to_value),
                "gap": p.gap.map(json::to_value),
                "p_gs": { "sa": p.sa.p_gs, "tabu": p.tabu_p_gs },
                "sa_bootstrap": { "mean": p.sa.bootstrap_mean, "two_sigma": p.sa.two_sigma },
                "ground_matchings": p.ground_matchings,
            })
        })
        .collect();
    json!({ "seed": seed, "points": rows })
}
