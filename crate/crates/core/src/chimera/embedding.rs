use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::topology::{ChimeraTopology, SHORE_SIZE};
use crate::{Error, Result};

/// Chains of physical qubits, one per logical variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding {
    pub chains: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EmbeddingViolation {
    EmptyChain {
        variable: usize,
    },
    /// Qubit is faulty or outside the hardware graph.
    UnavailableQubit {
        variable: usize,
        qubit: usize,
    },
    Overlap {
        qubit: usize,
        first: usize,
        second: usize,
    },
    Connectivity {
        variable: usize,
    },
    MissingCoupler {
        a: usize,
        b: usize,
    },
}

impl Embedding {
    pub fn new(chains: Vec<Vec<usize>>) -> Self {
        Embedding { chains }
    }

    pub fn num_variables(&self) -> usize {
        self.chains.len()
    }

    /// All used qubits, ascending.
    pub fn qubits(&self) -> Vec<usize> {
        let set: BTreeSet<usize> = self.chains.iter().flatten().copied().collect();
        set.into_iter().collect()
    }

    pub fn physical_qubit_count(&self) -> usize {
        self.chains.iter().map(Vec::len).sum()
    }
}

/// Deterministic triangular embedding of `K_n` into a Chimera graph.
///
/// With `k = ⌈n/4⌉` blocks, variable `4b + t` owns the shore-1 qubits of row `b`
/// in columns `0..=b` and the shore-0 qubits of column `b` in rows `b..k`, all at
/// position `t`: a chain of `k + 1` qubits. Chains of blocks `b < b'` meet in
/// cell `(b', b)`; chains of the same block meet in cell `(b, b)`. The `k × k`
/// block is placed at the first fault-free offset in row-major order.
pub fn clique_embedding(n: usize, topo: &ChimeraTopology) -> Result<Embedding> {
    if n == 0 {
        return Ok(Embedding::new(Vec::new()));
    }
    let m = topo.m();
    let k = n.div_ceil(SHORE_SIZE);
    if k > m {
        return Err(Error::DoesNotFit(format!(
            "K{n} needs a {k}x{k} cell block but the grid is {m}x{m} (limit K{})",
            SHORE_SIZE * m
        )));
    }
    for r0 in 0..=(m - k) {
        for c0 in 0..=(m - k) {
            let chains: Vec<Vec<usize>> = (0..n)
                .map(|v| {
                    let (b, t) = (v / SHORE_SIZE, v % SHORE_SIZE);
                    let mut chain: Vec<usize> = (0..=b)
                        .map(|c| topo.qubit(r0 + b, c0 + c, 1, t))
                        .chain((b..k).map(|r| topo.qubit(r0 + r, c0 + b, 0, t)))
                        .collect();
                    chain.sort_unstable();
                    chain
                })
                .collect();
            if chains.iter().flatten().all(|&q| topo.is_enabled(q)) {
                return Ok(Embedding::new(chains));
            }
        }
    }
    Err(Error::DoesNotFit(format!(
        "no fault-free {k}x{k} cell block for K{n}"
    )))
}

/// Checks disjointness, chain connectivity and coverage of `logical_edges`.
pub fn validate_embedding(
    emb: &Embedding,
    topo: &ChimeraTopology,
    logical_edges: &[(usize, usize)],
) -> Vec<EmbeddingViolation> {
    let mut out = Vec::new();
    let mut owner: BTreeMap<usize, usize> = BTreeMap::new();
    for (v, chain) in emb.chains.iter().enumerate() {
        if chain.is_empty() {
            out.push(EmbeddingViolation::EmptyChain { variable: v });
            continue;
        }
        for &q in chain {
            if !topo.is_enabled(q) {
                out.push(EmbeddingViolation::UnavailableQubit {
                    variable: v,
                    qubit: q,
                });
            }
            if let Some(&first) = owner.get(&q) {
                if first != v {
                    out.push(EmbeddingViolation::Overlap {
                        qubit: q,
                        first,
                        second: v,
                    });
                }
            } else {
                owner.insert(q, v);
            }
        }
        let usable: Vec<usize> = chain
            .iter()
            .copied()
            .filter(|&q| topo.is_enabled(q))
            .collect();
        if !is_connected_subset(&usable, topo) || usable.len() != chain.len() {
            out.push(EmbeddingViolation::Connectivity { variable: v });
        }
    }
    for &(a, b) in logical_edges {
        let (Some(ca), Some(cb)) = (emb.chains.get(a), emb.chains.get(b)) else {
            out.push(EmbeddingViolation::MissingCoupler { a, b });
            continue;
        };
        if inter_chain_couplers(ca, cb, topo).is_empty() {
            out.push(EmbeddingViolation::MissingCoupler { a, b });
        }
    }
    out
}

fn is_connected_subset(nodes: &[usize], topo: &ChimeraTopology) -> bool {
    if nodes.is_empty() {
        return false;
    }
    let set: BTreeSet<usize> = nodes.iter().copied().collect();
    let mut seen = BTreeSet::from([nodes[0]]);
    let mut queue = VecDeque::from([nodes[0]]);
    while let Some(q) = queue.pop_front() {
        for &x in topo.neighbors(q) {
            if set.contains(&x) && seen.insert(x) {
                queue.push_back(x);
            }
        }
    }
    seen.len() == set.len()
}

/// Hardware couplers `(qa, qb)` with `qa` in chain `a` and `qb` in chain `b`.
pub fn inter_chain_couplers(
    a: &[usize],
    b: &[usize],
    topo: &ChimeraTopology,
) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for &qa in a {
        for &qb in b {
            if topo.has_coupler(qa, qb) {
                out.push((qa, qb));
            }
        }
    }
    out
}

/// Hardware couplers with both ends inside `chain`.
pub fn intra_chain_couplers(chain: &[usize], topo: &ChimeraTopology) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (i, &a) in chain.iter().enumerate() {
        for &b in &chain[i + 1..] {
            if topo.has_coupler(a, b) {
                out.push((a.min(b), a.max(b)));
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChainStats {
    pub physical_qubits: usize,
    pub max_chain_length: usize,
    pub chains_at_max: usize,
}

pub fn chain_stats(emb: &Embedding) -> ChainStats {
    let max = emb.chains.iter().map(Vec::len).max().unwrap_or(0);
    ChainStats {
        physical_qubits: emb.physical_qubit_count(),
        max_chain_length: max,
        chains_at_max: emb.chains.iter().filter(|c| c.len() == max).count(),
    }
}

/// Population moments: mean, variance, Fisher skewness, excess kurtosis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Moments {
    pub mean: f64,
    pub variance: f64,
    pub skewness: f64,
    pub kurtosis: f64,
}

pub fn moments(values: &[f64]) -> Moments {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let central = |p: i32| {
        values
            .iter()
            .map(|v| libm::pow(v - mean, p as f64))
            .sum::<f64>()
            / n
    };
    let m2 = central(2);
    let (skewness, kurtosis) = if m2 > 0.0 {
        (
            central(3) / libm::pow(m2, 1.5),
            central(4) / (m2 * m2) - 3.0,
        )
    } else {
        (0.0, 0.0)
    };
    Moments {
        mean,
        variance: m2,
        skewness,
        kurtosis,
    }
}

/// Eccentricity of every node of a connected graph given as adjacency lists.
pub fn eccentricities(adjacency: &[Vec<usize>]) -> Result<Vec<usize>> {
    let n = adjacency.len();
    let mut out = Vec::with_capacity(n);
    for s in 0..n {
        let mut dist = vec![usize::MAX; n];
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        let mut far = 0;
        let mut reached = 1;
        while let Some(v) = queue.pop_front() {
            far = far.max(dist[v]);
            for &x in &adjacency[v] {
                if dist[x] == usize::MAX {
                    dist[x] = dist[v] + 1;
                    reached += 1;
                    queue.push_back(x);
                }
            }
        }
        if reached != n {
            return Err(Error::DisconnectedEmbedding);
        }
        out.push(far);
    }
    Ok(out)
}

/// Eccentricity moments of the subgraph induced on the embedding's qubits.
pub fn eccentricity_stats(emb: &Embedding, topo: &ChimeraTopology) -> Result<Moments> {
    let qubits = emb.qubits();
    if qubits.is_empty() {
        return Err(Error::DisconnectedEmbedding);
    }
    let index: BTreeMap<usize, usize> = qubits.iter().enumerate().map(|(i, &q)| (q, i)).collect();
    let adjacency: Vec<Vec<usize>> = qubits
        .iter()
        .map(|&q| {
            topo.neighbors(q)
                .iter()
                .filter_map(|x| index.get(x).copied())
                .collect()
        })
        .collect();
    let ecc = eccentricities(&adjacency)?;
    let values: Vec<f64> = ecc.iter().map(|&e| e as f64).collect();
    Ok(moments(&values))
}
