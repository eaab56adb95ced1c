use alloc::string::String;
use alloc::vec::Vec;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("graph is disconnected")]
    DisconnectedGraph,
    #[error("ensemble spec infeasible: {0}")]
    InfeasibleSpec(String),
    #[error("{what} too large: {size} exceeds limit {limit}")]
    TooLarge {
        what: &'static str,
        size: usize,
        limit: usize,
    },
    #[error("odd-degree node count {0} is not even")]
    OddCountNotEven(usize),
    #[error("graph is Eulerian (d = 0); no QUBO to build")]
    DegenerateD0,
    #[error("penalty {penalty} is below the odd-node count {d}")]
    PenaltyTooSmall { penalty: String, d: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("illegal assignment: {}", describe_violations(.0))]
    IllegalAssignment(Vec<Violation>),
    #[error("multigraph is not Eulerian: {0}")]
    NotEulerian(String),
    #[error("spectrum has a single energy level")]
    NoGap,
    #[error("faulty qubit {qubit} out of range for {count} qubits")]
    FaultOutOfRange { qubit: usize, count: usize },
    #[error("embedding does not fit: {0}")]
    DoesNotFit(String),
    #[error("invalid embedding: {0}")]
    InvalidEmbedding(String),
    #[error("embedded subgraph is disconnected")]
    DisconnectedEmbedding,
    #[error("empty sample set")]
    EmptySampleSet,
    #[error("{combinations} defect combinations exceed the guard (k = {k}, |E| = {edges})")]
    CombinationExplosion {
        k: usize,
        edges: usize,
        combinations: usize,
    },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

/// A violated matching constraint found while decoding a QUBO assignment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// Node covered by `count` selected pairs instead of exactly one.
    NodeCoverage { node: usize, count: usize },
    /// Both orientations `x_ij` and `x_ji` are selected.
    BothOrientations { i: usize, j: usize },
}

fn describe_violations(v: &[Violation]) -> String {
    use core::fmt::Write;
    let mut out = String::new();
    for (k, item) in v.iter().enumerate() {
        if k > 0 {
            out.push_str("; ");
        }
        let _ = match item {
            Violation::NodeCoverage { node, count } => {
                write!(out, "node {node} is covered {count} times")
            }
            Violation::BothOrientations { i, j } => {
                write!(out, "pair ({i},{j}) selected in both orientations")
            }
        };
    }
    out
}
