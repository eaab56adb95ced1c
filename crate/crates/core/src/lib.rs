//! Chinese postman problem solver core.
//!
//! The crate covers the full pipeline from a weighted graph to annealer-style
//! benchmarking, without touching the filesystem:
//!
//! * [`graph`] – simple weighted graphs, shortest paths and a random
//!   non-Eulerian ensemble generator.
//! * [`cpp`] – exact postman solution by perfect-matching enumeration,
//!   augmentation and Eulerian circuit extraction.
//! * [`qubo`] / [`ising`] – the pair-selection QUBO over odd-degree nodes, its
//!   penalty terms, decoding, and the spin-form twin.
//! * [`samplers`] – exhaustive spectra, simulated annealing and tabu search.
//! * [`chimera`] – Chimera hardware graphs, clique embeddings, chain coupling,
//!   spin-reversal gauges and chain decoding.
//! * [`metrics`] – success probability, time-to-solution and bootstrap bands.
//! * [`defect`] – edge-defect scans of `M_min`.
//!
//! All model coefficients are exact rationals ([`Rational`]); floating point is
//! used only for Metropolis acceptance and the timing formulas.
#![no_std]

extern crate alloc;
#[cfg(any(test, feature = "std"))]
extern crate std;

pub mod chimera;
pub mod cpp;
pub mod defect;
mod error;
pub mod graph;
pub mod ising;
pub mod metrics;
pub mod qubo;
pub mod rational;
pub mod rng;
pub mod samplers;

pub use error::{Error, Result, Violation};
pub use rational::Rational;

pub use chimera::{ChimeraTopology, DecodePolicy, EmbeddedModel, Embedding};
pub use cpp::{CppSolution, Matching, OddPairDistances};
pub use graph::{EnsembleSpec, Graph, GraphFeatures, MultiGraph};
pub use ising::IsingModel;
pub use qubo::QuboModel;
pub use samplers::{Sample, SampleSet, Schedule, Vartype};
