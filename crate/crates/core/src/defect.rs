//! Edge-defect scans of `M_min`.
//!
//! A defect adds `Δ` to the weight of existing edges; recomputing `M_min` for
//! every edge combination maps which edges the optimal postman route depends
//! on. Edges into degree-one nodes shift `M_min` by exactly `Δ`.

use alloc::vec;
use alloc::vec::Vec;

use crate::cpp::m_min;
use crate::graph::{Graph, Weight};
use crate::{Error, Result};

/// Default defect magnitudes.
pub const DEFAULT_DELTAS: [Weight; 8] = [1, 2, 3, 10, 15, 27, 34, 50];

/// Largest edge count accepted for three simultaneous defects.
pub const MAX_EDGES_FOR_TRIPLES: usize = 60;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DefectEntry {
    /// Sorted edge indices carrying the defect.
    pub edges: Vec<usize>,
    /// `M_min` for each `Δ` of the scan, aligned with [`DefectScan::deltas`].
    pub m_min: Vec<Weight>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DefectScan {
    pub base: Graph,
    pub base_m_min: Weight,
    pub deltas: Vec<Weight>,
    pub k: usize,
    pub entries: Vec<DefectEntry>,
}

impl DefectScan {
    /// Symmetric node-indexed matrix of `M_min` for single defects at delta
    /// position `delta_idx`; `None` where there is no edge.
    pub fn matrix(&self, delta_idx: usize) -> Option<Vec<Vec<Option<Weight>>>> {
        if self.k != 1 || delta_idx >= self.deltas.len() {
            return None;
        }
        let n = self.base.node_count();
        let mut out = vec![vec![None; n]; n];
        for entry in &self.entries {
            let e = self.base.edges()[entry.edges[0]];
            out[e.u][e.v] = Some(entry.m_min[delta_idx]);
            out[e.v][e.u] = Some(entry.m_min[delta_idx]);
        }
        Some(out)
    }
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1usize, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut current, &mut out);
    out
}

/// The edge combinations a scan visits, in order.
pub fn defect_combinations(g: &Graph, k: usize) -> Result<Vec<Vec<usize>>> {
    if !(1..=3).contains(&k) {
        return Err(Error::InvalidParameter(
            "defects per configuration must be 1, 2 or 3".into(),
        ));
    }
    let edges = g.edge_count();
    if k == 3 && edges > MAX_EDGES_FOR_TRIPLES {
        return Err(Error::CombinationExplosion {
            k,
            edges,
            combinations: binomial(edges, k),
        });
    }
    Ok(combinations(edges, k))
}

/// `M_min` of one defect configuration for each delta.
pub fn defect_cell(g: &Graph, edges: &[usize], deltas: &[Weight]) -> Result<Vec<Weight>> {
    deltas
        .iter()
        .map(|&delta| {
            if delta == 0 {
                return Ok(m_min(g)?.m_min);
            }
            Ok(m_min(&g.with_added_weight(edges, delta)?)?.m_min)
        })
        .collect()
}

/// Scans every combination of `k` edges at every `Δ`.
pub fn defect_map(g: &Graph, deltas: &[Weight], k: usize) -> Result<DefectScan> {
    if deltas.iter().any(|&d| d < 0) {
        return Err(Error::InvalidParameter(
            "defect magnitudes must be non-negative".into(),
        ));
    }
    let base_m_min = m_min(g)?.m_min;
    let entries = defect_combinations(g, k)?
        .into_iter()
        .map(|edges| {
            let m_min = defect_cell(g, &edges, deltas)?;
            Ok(DefectEntry { edges, m_min })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(DefectScan {
        base: g.clone(),
        base_m_min,
        deltas: deltas.to_vec(),
        k,
        entries,
    })
}

/// One point of the `M_min` versus maximum degree study.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DegreePoint {
    pub d: usize,
    pub c_max: usize,
    pub m_min: Weight,
}

/// `(d, c_MAX, M_min)` per graph, grouped by `d` (ascending, stable within a group).
pub fn mmin_vs_cmax(ensemble: &[Graph]) -> Result<Vec<(usize, Vec<DegreePoint>)>> {
    let mut points = Vec::with_capacity(ensemble.len());
    for g in ensemble {
        let f = g.features();
        points.push(DegreePoint {
            d: f.d,
            c_max: f.c_max,
            m_min: m_min(g)?.m_min,
        });
    }
    let mut groups: Vec<(usize, Vec<DegreePoint>)> = Vec::new();
    let mut ds: Vec<usize> = points.iter().map(|p| p.d).collect();
    ds.sort_unstable();
    ds.dedup();
    for d in ds {
        groups.push((d, points.iter().copied().filter(|p| p.d == d).collect()));
    }
    Ok(groups)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pendant_graph() -> Graph {
        // triangle 0-1-2 with pendant 3 on node 0 and pendant 4 on node 1
        Graph::new(5, [(0, 1, 2), (1, 2, 1), (2, 0, 3), (0, 3, 1), (1, 4, 2)]).unwrap()
    }

    #[test]
    fn zero_delta_is_base() {
        let g = pendant_graph();
        let scan = defect_map(&g, &[0], 1).unwrap();
        assert!(scan
            .entries
            .iter()
            .all(|e| e.m_min == vec![scan.base_m_min]));
        assert_eq!(scan.entries.len(), g.edge_count());
    }

    #[test]
    fn pendant_edges_shift_by_delta() {
        let g = pendant_graph();
        let scan = defect_map(&g, &DEFAULT_DELTAS, 1).unwrap();
        for entry in &scan.entries {
            let e = g.edges()[entry.edges[0]];
            if g.degree(e.u) == 1 || g.degree(e.v) == 1 {
                for (i, &delta) in DEFAULT_DELTAS.iter().enumerate() {
                    assert_eq!(entry.m_min[i], scan.base_m_min + delta);
                }
            }
            assert!(entry.m_min.windows(2).all(|w| w[0] <= w[1]));
        }
    }

    #[test]
    fn matrix_form_is_symmetric() {
        let g = pendant_graph();
        let scan = defect_map(&g, &[5], 1).unwrap();
        let m = scan.matrix(0).unwrap();
        assert_eq!(m[0][3], m[3][0]);
        assert!(m[0][3].is_some());
        assert_eq!(m[3][4], None);
        let pairs = defect_map(&g, &[5], 2).unwrap();
        assert_eq!(pairs.entries.len(), 10);
        assert!(pairs.matrix(0).is_none());
    }

    #[test]
    fn guards() {
        let g = pendant_graph();
        assert!(defect_map(&g, &[1], 4).is_err());
        assert!(defect_map(&g, &[-1], 1).is_err());
        let n = 12;
        let dense: Vec<(usize, usize, i64)> = (0..n)
            .flat_map(|a| ((a + 1)..n).map(move |b| (a, b, 1)))
            .collect();
        let big = Graph::new(n, dense).unwrap();
        assert!(matches!(
            defect_map(&big, &[1], 3),
            Err(Error::CombinationExplosion {
                k: 3,
                edges: 66,
                ..
            })
        ));
    }

    #[test]
    fn grouping_by_odd_count() {
        let g = pendant_graph();
        let groups = mmin_vs_cmax(core::slice::from_ref(&g)).unwrap();
        assert_eq!(groups.len(), 1);
        assert_eq!(groups[0].1.len(), 1);
        assert_eq!(groups[0].0, g.features().d);
    }
}
