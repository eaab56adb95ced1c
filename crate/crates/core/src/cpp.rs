//! Exact Chinese postman solution.
//!
//! The minimum extra length `M_min` is found by scoring every perfect matching
//! of the odd-degree nodes under shortest-path distances; the optimal matching
//! is then used to duplicate edges and extract an Eulerian circuit.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{Graph, MultiGraph, Weight};
use crate::{Error, Result};

/// Largest odd-node count accepted by the enumerating solver: 13!! = 135,135 pairings.
pub const MAX_ENUMERATED_ODD_NODES: usize = 14;

/// Shortest-path distances between odd-degree nodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OddPairDistances {
    /// Odd-degree graph nodes, ascending; position `i` is odd node `v_i`.
    pub odd: Vec<usize>,
    /// `w[i][j]`: distance between `odd[i]` and `odd[j]`.
    pub w: Vec<Vec<Weight>>,
    /// `paths[i][j]`: node sequence of one shortest path from `odd[i]` to `odd[j]`.
    pub paths: Vec<Vec<Vec<usize>>>,
    pub denominator: i64,
}

impl OddPairDistances {
    pub fn d(&self) -> usize {
        self.odd.len()
    }

    /// Builds the table directly from a distance matrix (no paths).
    pub fn from_matrix(w: Vec<Vec<Weight>>) -> Result<Self> {
        let d = w.len();
        if w.iter().any(|row| row.len() != d) {
            return Err(Error::InvalidParameter(
                "distance matrix is not square".into(),
            ));
        }
        for (i, row) in w.iter().enumerate() {
            if row[i] != 0 {
                return Err(Error::InvalidParameter(format!("W[{i}][{i}] must be 0")));
            }
            for (j, &v) in row.iter().enumerate() {
                if v != w[j][i] {
                    return Err(Error::InvalidParameter(
                        "distance matrix is not symmetric".into(),
                    ));
                }
            }
        }
        Ok(OddPairDistances {
            odd: (0..d).collect(),
            paths: vec![vec![Vec::new(); d]; d],
            w,
            denominator: 1,
        })
    }

    /// Total distance of a pairing given as odd-node positions.
    pub fn pairing_weight(&self, pairing: &[(usize, usize)]) -> Weight {
        pairing.iter().map(|&(i, j)| self.w[i][j]).sum()
    }
}

/// Computes the odd-node distance table of `g`.
pub fn odd_pair_distances(g: &Graph) -> Result<OddPairDistances> {
    let odd = g.odd_nodes();
    let sp = g.shortest_paths(&odd)?;
    let d = odd.len();
    let mut w = vec![vec![0; d]; d];
    let mut paths = vec![vec![Vec::new(); d]; d];
    for i in 0..d {
        for j in 0..d {
            w[i][j] = sp.dist[i][odd[j]];
            paths[i][j] = sp.path(i, odd[j]);
        }
    }
    Ok(OddPairDistances {
        odd,
        w,
        paths,
        denominator: g.denominator(),
    })
}

/// Number of perfect matchings on `d` points, `(d-1)!!`.
pub fn matching_count(d: usize) -> u64 {
    if d % 2 == 1 {
        return 0;
    }
    (1..d as u64).step_by(2).product()
}

/// Visits every perfect matching of `0..d` in canonical order.
///
/// The lowest unmatched point is paired with each remaining point in ascending
/// order, recursively. Each pairing is a list of `(i, j)` with `i < j`.
pub fn for_each_pairing<F: FnMut(&[(usize, usize)])>(d: usize, mut visit: F) -> Result<()> {
    if d % 2 == 1 {
        return Err(Error::OddCountNotEven(d));
    }
    if d > MAX_ENUMERATED_ODD_NODES {
        return Err(Error::TooLarge {
            what: "odd-node count",
            size: d,
            limit: MAX_ENUMERATED_ODD_NODES,
        });
    }
    let mut used = vec![false; d];
    let mut current = Vec::with_capacity(d / 2);
    recurse(&mut used, &mut current, &mut visit);
    Ok(())
}

fn recurse<F: FnMut(&[(usize, usize)])>(
    used: &mut [bool],
    current: &mut Vec<(usize, usize)>,
    visit: &mut F,
) {
    let Some(first) = used.iter().position(|&u| !u) else {
        visit(current);
        return;
    };
    used[first] = true;
    for partner in (first + 1)..used.len() {
        if used[partner] {
            continue;
        }
        used[partner] = true;
        current.push((first, partner));
        recurse(used, current, visit);
        current.pop();
        used[partner] = false;
    }
    used[first] = false;
}

/// All `(d-1)!!` pairings of `0..d`, in canonical order.
pub fn enumerate_matchings(d: usize) -> Result<Vec<Vec<(usize, usize)>>> {
    let mut out = Vec::new();
    for_each_pairing(d, |p| out.push(p.to_vec()))?;
    Ok(out)
}

/// A perfect matching of odd-degree nodes, in graph node ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    /// Pairs `(a, b)` with `a < b`, sorted.
    pub pairs: Vec<(usize, usize)>,
    /// Total shortest-path weight `m(π)`.
    pub weight: Weight,
    /// Shortest node path realising each pair, aligned with `pairs`.
    pub paths: Vec<Vec<usize>>,
}

impl Matching {
    /// Materialises a pairing of odd-node positions against a distance table.
    pub fn from_pairing(dist: &OddPairDistances, pairing: &[(usize, usize)]) -> Self {
        let mut items: Vec<((usize, usize), Vec<usize>)> = pairing
            .iter()
            .map(|&(i, j)| {
                let (a, b) = (dist.odd[i], dist.odd[j]);
                if a < b {
                    ((a, b), dist.paths[i][j].clone())
                } else {
                    ((b, a), dist.paths[j][i].clone())
                }
            })
            .collect();
        items.sort();
        Matching {
            weight: dist.pairing_weight(pairing),
            pairs: items.iter().map(|(p, _)| *p).collect(),
            paths: items.into_iter().map(|(_, path)| path).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CppSolution {
    pub m_min: Weight,
    pub matching: Matching,
    /// `l_T = Σ w(e) + M_min`.
    pub l_t: Weight,
    /// Closed node walk, present when requested.
    pub circuit: Option<Vec<usize>>,
    pub denominator: i64,
}

/// Minimum-weight pairing over a distance table, ties resolved by canonical order.
pub fn min_pairing(dist: &OddPairDistances) -> Result<(Weight, Vec<(usize, usize)>)> {
    let mut best: Option<(Weight, Vec<(usize, usize)>)> = None;
    for_each_pairing(dist.d(), |p| {
        let w = dist.pairing_weight(p);
        if best.as_ref().is_none_or(|(bw, _)| w < *bw) {
            best = Some((w, p.to_vec()));
        }
    })?;
    Ok(best.unwrap_or((0, Vec::new())))
}

/// `M_min` and the optimal matching, without a circuit.
pub fn m_min(g: &Graph) -> Result<CppSolution> {
    let dist = odd_pair_distances(g)?;
    let (m, pairing) = min_pairing(&dist)?;
    Ok(CppSolution {
        m_min: m,
        matching: Matching::from_pairing(&dist, &pairing),
        l_t: g.total_weight() + m,
        circuit: None,
        denominator: g.denominator(),
    })
}

/// `l_T(G)` as a weight numerator.
pub fn cpp_length(g: &Graph) -> Result<Weight> {
    Ok(m_min(g)?.l_t)
}

/// Full solution including one optimal closed walk.
pub fn solve(g: &Graph) -> Result<CppSolution> {
    let mut sol = m_min(g)?;
    let mg = augment(g, &sol.matching)?;
    sol.circuit = Some(euler_circuit(&mg)?);
    Ok(sol)
}

/// Duplicates every edge on each matched pair's shortest path.
pub fn augment(g: &Graph, matching: &Matching) -> Result<MultiGraph> {
    let mut mg = MultiGraph::from_graph(g);
    for path in &matching.paths {
        for step in path.windows(2) {
            let idx = g.edge_index(step[0], step[1]).ok_or_else(|| {
                Error::InvalidParameter(format!(
                    "matching path uses missing edge ({},{})",
                    step[0], step[1]
                ))
            })?;
            mg.edges.push(g.edges()[idx]);
        }
    }
    Ok(mg)
}

/// Hierholzer-style circuit over all multigraph edges.
///
/// Starts at the lowest-index node with an edge and always leaves through the
/// lowest-index neighbour (then lowest edge id), so output is reproducible.
pub fn euler_circuit(mg: &MultiGraph) -> Result<Vec<usize>> {
    let mut incident: Vec<Vec<(usize, usize)>> = vec![Vec::new(); mg.n];
    for (idx, e) in mg.edges.iter().enumerate() {
        if e.u == e.v {
            return Err(Error::NotEulerian(format!("self-loop at node {}", e.u)));
        }
        incident[e.u].push((e.v, idx));
        incident[e.v].push((e.u, idx));
    }
    for (v, list) in incident.iter_mut().enumerate() {
        if list.len() % 2 == 1 {
            return Err(Error::NotEulerian(format!("node {v} has odd degree")));
        }
        list.sort_unstable();
    }
    let Some(start) = incident.iter().position(|l| !l.is_empty()) else {
        return Ok(Vec::new());
    };
    let mut used = vec![false; mg.edges.len()];
    let mut cursor = vec![0usize; mg.n];
    let mut stack = vec![start];
    let mut circuit = Vec::with_capacity(mg.edges.len() + 1);
    while let Some(&v) = stack.last() {
        let list = &incident[v];
        while cursor[v] < list.len() && used[list[cursor[v]].1] {
            cursor[v] += 1;
        }
        if cursor[v] < list.len() {
            let (x, idx) = list[cursor[v]];
            used[idx] = true;
            stack.push(x);
        } else {
            circuit.push(v);
            stack.pop();
        }
    }
    if circuit.len() != mg.edges.len() + 1 {
        return Err(Error::NotEulerian("edges are not connected".into()));
    }
    circuit.reverse();
    Ok(circuit)
}

/// Length of a closed walk, using the cheapest parallel edge for each step.
pub fn walk_length(g: &Graph, walk: &[usize]) -> Option<Weight> {
    walk.windows(2)
        .map(|s| g.edge_index(s[0], s[1]).map(|i| g.edges()[i].w))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fig1() -> Graph {
        Graph::new(
            6,
            [
                (4, 0, 3),
                (4, 1, 1),
                (0, 2, 5),
                (1, 3, 5),
                (0, 1, 2),
                (2, 3, 6),
                (2, 5, 2),
                (3, 5, 1),
            ],
        )
        .unwrap()
    }

    #[test]
    fn fig1_distance_table() {
        let dist = odd_pair_distances(&fig1()).unwrap();
        let w = &dist.w;
        assert_eq!(
            [w[0][1], w[0][2], w[0][3], w[1][2], w[1][3], w[2][3]],
            [2, 5, 7, 7, 5, 3]
        );
        for (i, row) in w.iter().enumerate() {
            assert_eq!(row[i], 0);
            for (j, &v) in row.iter().enumerate() {
                assert_eq!(v, w[j][i]);
            }
        }
    }

    #[test]
    fn fig1_pairing_weights() {
        let dist = odd_pair_distances(&fig1()).unwrap();
        let weights: Vec<_> = enumerate_matchings(4)
            .unwrap()
            .iter()
            .map(|p| dist.pairing_weight(p))
            .collect();
        assert_eq!(weights, vec![5, 10, 14]);
    }

    #[test]
    fn fig1_solution() {
        let sol = solve(&fig1()).unwrap();
        assert_eq!(sol.m_min, 5);
        assert_eq!(sol.l_t, 30);
        assert_eq!(sol.matching.pairs, vec![(0, 1), (2, 3)]);
        let circuit = sol.circuit.unwrap();
        assert_eq!(circuit.first(), circuit.last());
        assert_eq!(circuit.len(), 8 + 3 + 1);
        assert_eq!(walk_length(&fig1(), &circuit), Some(30));
        let mg = augment(&fig1(), &sol.matching).unwrap();
        assert_eq!(mg.multiplicity(0, 1), 2);
        assert_eq!(mg.multiplicity(2, 5), 2);
        assert_eq!(mg.multiplicity(5, 3), 2);
        assert_eq!(mg.multiplicity(0, 2), 1);
    }

    #[test]
    fn eulerian_graph_has_zero_extra() {
        let c4 = Graph::new(4, [(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 0, 1)]).unwrap();
        assert!(odd_pair_distances(&c4).unwrap().w.is_empty());
        let sol = solve(&c4).unwrap();
        assert_eq!(sol.m_min, 0);
        assert_eq!(sol.l_t, 4);
        assert_eq!(sol.circuit.unwrap(), vec![0, 1, 2, 3, 0]);
    }

    #[test]
    fn triangle_circuit_is_the_cycle() {
        let tri = Graph::new(3, [(0, 1, 1), (1, 2, 1), (2, 0, 1)]).unwrap();
        assert_eq!(solve(&tri).unwrap().circuit.unwrap(), vec![0, 1, 2, 0]);
    }

    #[test]
    fn doubled_edge_is_crossed_twice() {
        let e = crate::graph::Edge { u: 0, v: 1, w: 3 };
        let mg = MultiGraph {
            n: 2,
            edges: vec![e, e],
        };
        assert_eq!(euler_circuit(&mg).unwrap(), vec![0, 1, 0]);
        let single = MultiGraph {
            n: 2,
            edges: vec![e],
        };
        assert!(matches!(euler_circuit(&single), Err(Error::NotEulerian(_))));
    }

    #[test]
    fn matching_counts() {
        for (d, expected) in [(0, 1), (2, 1), (4, 3), (6, 15), (8, 105), (10, 945)] {
            assert_eq!(enumerate_matchings(d).unwrap().len() as u64, expected);
            assert_eq!(matching_count(d), expected);
        }
        assert!(matches!(
            enumerate_matchings(16),
            Err(Error::TooLarge { .. })
        ));
        assert!(matches!(
            enumerate_matchings(3),
            Err(Error::OddCountNotEven(3))
        ));
    }

    #[test]
    fn pairings_are_distinct_and_perfect() {
        let all = enumerate_matchings(8).unwrap();
        let mut sorted = all.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), all.len());
        for p in &all {
            let mut seen = [false; 8];
            for &(i, j) in p {
                assert!(i < j);
                assert!(!seen[i] && !seen[j]);
                seen[i] = true;
                seen[j] = true;
            }
        }
    }

    #[test]
    fn disconnected_graph_errors() {
        let g = Graph::new(4, [(0, 1, 1), (2, 3, 1)]).unwrap();
        assert_eq!(m_min(&g), Err(Error::DisconnectedGraph));
    }
}
