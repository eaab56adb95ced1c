//! Weighted undirected graphs, shortest paths and the random instance generator.

use alloc::collections::{BinaryHeap, VecDeque};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;

use rand::Rng;

use crate::rng::{self, Domain};
use crate::{Error, Rational, Result};

/// Edge weights are integer numerators over the owning graph's denominator.
pub type Weight = i64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub w: Weight,
}

impl Edge {
    pub fn other(&self, x: usize) -> usize {
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }
}

/// Simple undirected graph with strictly positive weights.
///
/// Nodes are `0..n`. Edges are stored with `u < v` in insertion order; the
/// adjacency lists are sorted by neighbour index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    denominator: i64,
    adjacency: Vec<Vec<(usize, usize)>>,
}

impl Graph {
    /// Builds a graph with integer weights.
    pub fn new<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, Weight)>,
    {
        Self::with_denominator(n, edges, 1)
    }

    /// Builds a graph whose weights are `w / denominator`.
    pub fn with_denominator<I>(n: usize, edges: I, denominator: i64) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, Weight)>,
    {
        if denominator <= 0 {
            return Err(Error::InvalidGraph(format!(
                "weight denominator must be positive, got {denominator}"
            )));
        }
        let mut adjacency = vec![Vec::new(); n];
        let mut stored = Vec::new();
        for (u, v, w) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u},{v}) references a node outside 0..{n}"
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at node {u}")));
            }
            if w <= 0 {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u},{v}) has non-positive weight"
                )));
            }
            let (a, b) = if u < v { (u, v) } else { (v, u) };
            if adjacency[a].iter().any(|&(x, _)| x == b) {
                return Err(Error::InvalidGraph(format!("duplicate edge ({a},{b})")));
            }
            let idx = stored.len();
            stored.push(Edge { u: a, v: b, w });
            adjacency[a].push((b, idx));
            adjacency[b].push((a, idx));
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(Graph {
            n,
            edges: stored,
            denominator,
            adjacency,
        })
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn denominator(&self) -> i64 {
        self.denominator
    }

    /// Converts a weight numerator of this graph into an exact rational.
    pub fn to_rational(&self, w: Weight) -> Rational {
        Rational::new(w, self.denominator)
    }

    /// Neighbours of `v` as `(neighbour, edge index)`, ascending by neighbour.
    pub fn neighbors(&self, v: usize) -> &[(usize, usize)] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        self.adjacency
            .get(u)?
            .iter()
            .find(|&&(x, _)| x == v)
            .map(|&(_, idx)| idx)
    }

    /// Nodes of odd degree in ascending order.
    pub fn odd_nodes(&self) -> Vec<usize> {
        (0..self.n).filter(|&v| self.degree(v) % 2 == 1).collect()
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for &(x, _) in &self.adjacency[v] {
                if !seen[x] {
                    seen[x] = true;
                    count += 1;
                    queue.push_back(x);
                }
            }
        }
        count == self.n
    }

    pub fn is_eulerian(&self) -> bool {
        self.is_connected() && (0..self.n).all(|v| self.degree(v).is_multiple_of(2))
    }

    /// Sum of edge weight numerators.
    pub fn total_weight(&self) -> Weight {
        self.edges.iter().map(|e| e.w).sum()
    }

    /// Returns a copy with `delta` added to the weight of each listed edge.
    pub fn with_added_weight(&self, edge_indices: &[usize], delta: Weight) -> Result<Graph> {
        let mut g = self.clone();
        for &idx in edge_indices {
            let e = g
                .edges
                .get_mut(idx)
                .ok_or_else(|| Error::InvalidParameter(format!("edge index {idx} out of range")))?;
            e.w += delta;
            if e.w <= 0 {
                return Err(Error::InvalidGraph(format!(
                    "edge ({},{}) would get a non-positive weight",
                    e.u, e.v
                )));
            }
        }
        Ok(g)
    }

    /// Degree statistics used to characterise generated instances.
    pub fn features(&self) -> GraphFeatures {
        let degrees: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        GraphFeatures {
            d: degrees.iter().filter(|&&k| k % 2 == 1).count(),
            c_max: degrees.iter().copied().max().unwrap_or(0),
            c_min: degrees.iter().copied().min().unwrap_or(0),
            c_1: degrees.iter().filter(|&&k| k == 1).count(),
        }
    }

    /// Exact single-source shortest paths from each of `sources`.
    ///
    /// Predecessor ties are resolved toward the smaller node index.
    pub fn shortest_paths(&self, sources: &[usize]) -> Result<ShortestPaths> {
        if !self.is_connected() {
            return Err(Error::DisconnectedGraph);
        }
        let mut dist = Vec::with_capacity(sources.len());
        let mut pred = Vec::with_capacity(sources.len());
        for &s in sources {
            if s >= self.n {
                return Err(Error::InvalidParameter(format!("source {s} out of range")));
            }
            let (d, p) = self.dijkstra(s);
            dist.push(d);
            pred.push(p);
        }
        Ok(ShortestPaths {
            sources: sources.to_vec(),
            dist,
            pred,
        })
    }

    fn dijkstra(&self, source: usize) -> (Vec<Weight>, Vec<Option<usize>>) {
        let mut dist = vec![Weight::MAX; self.n];
        let mut pred: Vec<Option<usize>> = vec![None; self.n];
        let mut done = vec![false; self.n];
        let mut heap = BinaryHeap::new();
        dist[source] = 0;
        heap.push(Reverse((0, source)));
        while let Some(Reverse((d, v))) = heap.pop() {
            if done[v] {
                continue;
            }
            done[v] = true;
            for &(x, idx) in &self.adjacency[v] {
                let nd = d + self.edges[idx].w;
                if nd < dist[x] {
                    dist[x] = nd;
                    pred[x] = Some(v);
                    heap.push(Reverse((nd, x)));
                } else if nd == dist[x] && x != source && pred[x].is_some_and(|p| v < p) {
                    pred[x] = Some(v);
                }
            }
        }
        (dist, pred)
    }
}

/// Distances and predecessor trees from a list of sources.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShortestPaths {
    pub sources: Vec<usize>,
    /// `dist[k][v]`: distance from `sources[k]` to `v`.
    pub dist: Vec<Vec<Weight>>,
    pub pred: Vec<Vec<Option<usize>>>,
}

impl ShortestPaths {
    /// Node sequence of the recorded shortest path from `sources[k]` to `target`.
    pub fn path(&self, k: usize, target: usize) -> Vec<usize> {
        let mut nodes = vec![target];
        let mut cur = target;
        while let Some(p) = self.pred[k][cur] {
            nodes.push(p);
            cur = p;
        }
        nodes.reverse();
        nodes
    }
}

/// Undirected multigraph; only produced by augmentation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiGraph {
    pub n: usize,
    pub edges: Vec<Edge>,
}

impl MultiGraph {
    pub fn from_graph(g: &Graph) -> Self {
        MultiGraph {
            n: g.node_count(),
            edges: g.edges().to_vec(),
        }
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.u == v || e.v == v).count()
    }

    pub fn total_weight(&self) -> Weight {
        self.edges.iter().map(|e| e.w).sum()
    }

    /// Number of copies of the undirected edge `{u, v}`.
    pub fn multiplicity(&self, u: usize, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|e| (e.u == u && e.v == v) || (e.u == v && e.v == u))
            .count()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GraphFeatures {
    /// Number of odd-degree nodes.
    pub d: usize,
    pub c_max: usize,
    pub c_min: usize,
    /// Number of degree-one nodes.
    pub c_1: usize,
}

/// Parameters of a random non-Eulerian ensemble (`G(n, p)` with rejection).
#[derive(Debug, Clone, PartialEq)]
pub struct EnsembleSpec {
    pub n: usize,
    pub edge_probability: f64,
    pub w_lo: Weight,
    pub w_hi: Weight,
    pub count: usize,
    pub seed: u64,
    pub max_attempts: usize,
}

impl EnsembleSpec {
    pub const DEFAULT_MAX_ATTEMPTS: usize = 10_000;

    pub fn new(n: usize, edge_probability: f64, count: usize, seed: u64) -> Self {
        EnsembleSpec {
            n,
            edge_probability,
            w_lo: 1,
            w_hi: 1,
            count,
            seed,
            max_attempts: Self::DEFAULT_MAX_ATTEMPTS,
        }
    }

    pub fn weights(mut self, lo: Weight, hi: Weight) -> Self {
        self.w_lo = lo;
        self.w_hi = hi;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.n < 3 {
            return Err(Error::InfeasibleSpec(format!("n = {} < 3", self.n)));
        }
        if !(self.edge_probability > 0.0 && self.edge_probability < 1.0) {
            return Err(Error::InfeasibleSpec(format!(
                "edge probability {} outside (0, 1)",
                self.edge_probability
            )));
        }
        if self.w_lo < 1 || self.w_hi < self.w_lo {
            return Err(Error::InfeasibleSpec(format!(
                "weight range [{}, {}] invalid",
                self.w_lo, self.w_hi
            )));
        }
        Ok(())
    }

    /// Generates the `index`-th graph of the ensemble from its own stream.
    pub fn generate_one(&self, index: usize) -> Result<Graph> {
        self.validate()?;
        let mut rng = rng::stream(self.seed, Domain::Ensemble, index as u64);
        for _ in 0..self.max_attempts {
            let mut edges = Vec::new();
            for u in 0..self.n {
                for v in (u + 1)..self.n {
                    if rng.gen::<f64>() < self.edge_probability {
                        let w = rng.gen_range(self.w_lo..=self.w_hi);
                        edges.push((u, v, w));
                    }
                }
            }
            let g = Graph::new(self.n, edges)?;
            if g.is_connected() && !g.is_eulerian() {
                return Ok(g);
            }
        }
        Err(Error::InfeasibleSpec(format!(
            "no connected non-Eulerian graph after {} attempts",
            self.max_attempts
        )))
    }
}

/// Generates `spec.count` connected, non-Eulerian graphs deterministically.
pub fn random_non_eulerian(spec: &EnsembleSpec) -> Result<Vec<Graph>> {
    (0..spec.count).map(|i| spec.generate_one(i)).collect()
}
