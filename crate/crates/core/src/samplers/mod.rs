//! Classical solvers over QUBO and Ising models and the sample container they share.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use crate::ising::IsingModel;
use crate::qubo::QuboModel;
use crate::rational::{self, int};
use crate::{Error, Rational, Result};

mod anneal;
mod exhaustive;
mod tabu;

pub use anneal::{simulated_annealing, Annealer, Schedule};
pub use exhaustive::{
    brute_force, brute_force_ising, exact_ground_states, spectral_gap, Spectrum,
    MAX_BRUTE_FORCE_DIM,
};
pub use tabu::{tabu_search, TabuParams};

/// Whether `true` in a stored state means bit `1` or spin `+1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Vartype {
    Binary,
    Spin,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sample {
    pub state: Vec<bool>,
    pub energy: Rational,
    pub occurrences: u64,
}

/// Provenance of a sample set.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SampleInfo {
    pub sampler: String,
    pub seed: Option<u64>,
    pub reads: u64,
    pub sweeps: Option<usize>,
    pub beta_range: Option<(f64, f64)>,
    pub gauges: usize,
    /// Total single-spin update attempts performed (annealing only).
    pub spin_updates: u64,
}

/// Multiset of configurations with exact energies.
///
/// Samples are kept aggregated and sorted by energy, then configuration.
/// `discarded` counts reads that were rejected downstream (for example
/// broken chains under discard decoding); they belong to the read total but
/// carry no configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleSet {
    pub vartype: Vartype,
    pub samples: Vec<Sample>,
    pub discarded: u64,
    pub info: SampleInfo,
}

impl SampleSet {
    pub fn empty(vartype: Vartype, info: SampleInfo) -> Self {
        SampleSet {
            vartype,
            samples: Vec::new(),
            discarded: 0,
            info,
        }
    }

    /// Aggregates raw reads, computing each distinct state's energy once.
    pub fn from_reads<I, F>(vartype: Vartype, reads: I, energy: F, info: SampleInfo) -> Self
    where
        I: IntoIterator<Item = Vec<bool>>,
        F: Fn(&[bool]) -> Rational,
    {
        let mut counts: BTreeMap<Vec<bool>, u64> = BTreeMap::new();
        for state in reads {
            *counts.entry(state).or_insert(0) += 1;
        }
        let samples = counts
            .into_iter()
            .map(|(state, occurrences)| Sample {
                energy: energy(&state),
                state,
                occurrences,
            })
            .collect();
        let mut set = SampleSet {
            vartype,
            samples,
            discarded: 0,
            info,
        };
        set.sort();
        set
    }

    fn sort(&mut self) {
        self.samples
            .sort_by(|a, b| a.energy.cmp(&b.energy).then_with(|| a.state.cmp(&b.state)));
    }

    /// Reads carrying a configuration.
    pub fn kept_reads(&self) -> u64 {
        self.samples.iter().map(|s| s.occurrences).sum()
    }

    /// All reads including discarded ones.
    pub fn total_reads(&self) -> u64 {
        self.kept_reads() + self.discarded
    }

    pub fn lowest(&self) -> Option<&Sample> {
        self.samples.first()
    }

    /// Reads whose energy is at or below `reference`.
    pub fn count_at_or_below(&self, reference: Rational) -> u64 {
        self.samples
            .iter()
            .take_while(|s| s.energy <= reference)
            .map(|s| s.occurrences)
            .sum()
    }

    /// Merges two sets over the same model; the result is independent of argument order.
    pub fn merge(&self, other: &SampleSet) -> Result<SampleSet> {
        if self.vartype != other.vartype {
            return Err(Error::InvalidParameter(
                "cannot merge binary and spin samples".into(),
            ));
        }
        let mut map: BTreeMap<Vec<bool>, (Rational, u64)> = BTreeMap::new();
        for s in self.samples.iter().chain(&other.samples) {
            let entry = map.entry(s.state.clone()).or_insert((s.energy, 0));
            if entry.0 != s.energy {
                return Err(Error::InvalidParameter(
                    "sample sets disagree on a configuration's energy".into(),
                ));
            }
            entry.1 += s.occurrences;
        }
        let mut info = self.info.clone();
        info.reads = self.info.reads + other.info.reads;
        info.spin_updates = self.info.spin_updates + other.info.spin_updates;
        info.gauges = self.info.gauges.max(other.info.gauges);
        let mut set = SampleSet {
            vartype: self.vartype,
            samples: map
                .into_iter()
                .map(|(state, (energy, occurrences))| Sample {
                    state,
                    energy,
                    occurrences,
                })
                .collect(),
            discarded: self.discarded + other.discarded,
            info,
        };
        set.sort();
        Ok(set)
    }

    /// Re-evaluates every stored energy against `energy`.
    pub fn energies_match<F: Fn(&[bool]) -> Rational>(&self, energy: F) -> bool {
        self.samples.iter().all(|s| energy(&s.state) == s.energy)
    }

    /// `(energy, multiplicity)` histogram with equal energies combined.
    pub fn histogram(&self) -> Vec<(Rational, u64)> {
        let mut out: Vec<(Rational, u64)> = Vec::new();
        for s in &self.samples {
            match out.last_mut() {
                Some((e, c)) if *e == s.energy => *c += s.occurrences,
                _ => out.push((s.energy, s.occurrences)),
            }
        }
        out
    }
}

/// QUBO rescaled to integers by the common denominator of its coefficients.
#[derive(Debug, Clone)]
pub(crate) struct IntegerQubo {
    pub scale: i64,
    pub offset: i64,
    pub linear: Vec<i64>,
    pub adjacency: Vec<Vec<(usize, i64)>>,
}

impl IntegerQubo {
    pub fn new(q: &QuboModel) -> Self {
        let scale = rational::common_denominator(
            q.linear()
                .iter()
                .copied()
                .chain(q.quadratic().values().copied())
                .chain(core::iter::once(q.offset())),
        );
        let to_int = |v: Rational| (v * int(scale)).to_integer();
        let mut adjacency = alloc::vec![Vec::new(); q.dim()];
        for (&(k, l), &b) in q.quadratic() {
            let b = to_int(b);
            adjacency[k].push((l, b));
            adjacency[l].push((k, b));
        }
        IntegerQubo {
            scale,
            offset: to_int(q.offset()),
            linear: q.linear().iter().map(|&a| to_int(a)).collect(),
            adjacency,
        }
    }

    pub fn dim(&self) -> usize {
        self.linear.len()
    }

    pub fn to_rational(&self, e: i64) -> Rational {
        Rational::new(e, self.scale)
    }

    pub fn energy(&self, x: &[bool]) -> i64 {
        let mut e = self.offset;
        for k in 0..self.dim() {
            if x[k] {
                e += self.linear[k];
                for &(l, b) in &self.adjacency[k] {
                    if l > k && x[l] {
                        e += b;
                    }
                }
            }
        }
        e
    }

    /// Local fields `a_k + Σ_{l on} b_kl`.
    pub fn fields(&self, x: &[bool]) -> Vec<i64> {
        (0..self.dim())
            .map(|k| {
                self.linear[k]
                    + self.adjacency[k]
                        .iter()
                        .filter(|&&(l, _)| x[l])
                        .map(|&(_, b)| b)
                        .sum::<i64>()
            })
            .collect()
    }
}

/// Energy closure for binary states of a QUBO.
pub fn qubo_energy(model: &QuboModel) -> impl Fn(&[bool]) -> Rational + '_ {
    move |x| model.energy_unchecked(x)
}

/// Energy closure for spin states of an Ising model.
pub fn ising_energy(model: &IsingModel) -> impl Fn(&[bool]) -> Rational + '_ {
    move |s| model.energy_unchecked(s)
}
