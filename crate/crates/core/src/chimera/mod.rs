//! Chimera hardware model and the embedded-annealing pipeline.
//!
//! A logical Ising model is mapped onto chains of physical qubits
//! ([`embed_ising`]), optionally rescaled into hardware ranges
//! ([`autoscale`]), randomised with spin-reversal gauges ([`spin_reversal`]),
//! and sampled physical states are mapped back through [`decode_chains`].

mod embedding;
mod topology;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};
use rand::Rng;

pub use embedding::{
    chain_stats, clique_embedding, eccentricities, eccentricity_stats, inter_chain_couplers,
    intra_chain_couplers, moments, validate_embedding, ChainStats, Embedding, EmbeddingViolation,
    Moments,
};
pub use topology::{chimera_graph, ChimeraTopology, QubitCoord, SHORE_SIZE};

use crate::ising::IsingModel;
use crate::rational::{abs, int};
use crate::rng::{self, Domain};
use crate::samplers::{SampleSet, Vartype};
use crate::{Error, Rational, Result};

/// How a logical coupling is distributed over the couplers joining two chains.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CouplerSplit {
    /// Equal share on every available physical coupler.
    #[default]
    Equal,
    /// Whole value on the lowest-index available coupler.
    Single,
}

/// Physical Ising model produced by [`embed_ising`].
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddedModel {
    pub model: IsingModel,
    /// Physical qubit id of each local spin, ascending.
    pub qubits: Vec<usize>,
    /// Local spin indices of each chain, ascending by qubit id.
    pub chains: Vec<Vec<usize>>,
    /// Physical minus logical energy of any unbroken configuration.
    pub chain_offset: Rational,
    /// Largest `|h|` or `|J|` of the distributed logical terms.
    pub coefficient_scale: Rational,
    pub chain_strength: Rational,
}

impl EmbeddedModel {
    /// Physical state with every chain set to its logical spin.
    pub fn lift(&self, logical: &[bool]) -> Vec<bool> {
        let mut s = vec![false; self.qubits.len()];
        for (v, chain) in self.chains.iter().enumerate() {
            for &i in chain {
                s[i] = logical[v];
            }
        }
        s
    }
}

/// Maps `logical` onto `emb`, with intra-chain couplers `−j_f · C`.
///
/// `C` is the largest magnitude among the distributed logical fields and
/// couplings. Every hardware coupler inside a chain is used.
pub fn embed_ising(
    logical: &IsingModel,
    emb: &Embedding,
    topo: &ChimeraTopology,
    j_f: Rational,
    split: CouplerSplit,
) -> Result<EmbeddedModel> {
    if emb.num_variables() != logical.num_spins() {
        return Err(Error::InvalidEmbedding(format!(
            "{} chains for {} logical spins",
            emb.num_variables(),
            logical.num_spins()
        )));
    }
    if j_f < Rational::zero() {
        return Err(Error::InvalidParameter(
            "chain strength must be non-negative".into(),
        ));
    }
    let logical_edges: Vec<(usize, usize)> = logical.couplings().keys().copied().collect();
    let violations = validate_embedding(emb, topo, &logical_edges);
    if let Some(first) = violations.first() {
        return Err(Error::InvalidEmbedding(format!("{first:?}")));
    }
    let qubits = emb.qubits();
    let local: BTreeMap<usize, usize> = qubits.iter().enumerate().map(|(i, &q)| (q, i)).collect();
    let chains: Vec<Vec<usize>> = emb
        .chains
        .iter()
        .map(|c| {
            let mut idx: Vec<usize> = c.iter().map(|q| local[q]).collect();
            idx.sort_unstable();
            idx
        })
        .collect();

    let mut model = IsingModel::new(qubits.len());
    model.add_offset(logical.offset());
    let mut scale = Rational::zero();
    for (v, &h) in logical.fields().iter().enumerate() {
        if h.is_zero() {
            continue;
        }
        let share = h / int(chains[v].len() as i64);
        scale = scale.max(abs(share));
        for &i in &chains[v] {
            model.add_field(i, share);
        }
    }
    for (&(a, b), &jv) in logical.couplings() {
        let mut couplers = inter_chain_couplers(&emb.chains[a], &emb.chains[b], topo);
        couplers.sort_unstable();
        if split == CouplerSplit::Single {
            couplers.truncate(1);
        }
        let share = jv / int(couplers.len() as i64);
        scale = scale.max(abs(share));
        for (qa, qb) in couplers {
            model.add_coupling(local[&qa], local[&qb], share);
        }
    }
    let strength = j_f * scale;
    let mut intra = 0i64;
    for chain in &emb.chains {
        for (qa, qb) in intra_chain_couplers(chain, topo) {
            model.add_coupling(local[&qa], local[&qb], -strength);
            intra += 1;
        }
    }
    Ok(EmbeddedModel {
        model,
        qubits,
        chains,
        chain_offset: -strength * int(intra),
        coefficient_scale: scale,
        chain_strength: strength,
    })
}

/// Hardware ranges of the target device: `|h| ≤ 2`, `|J| ≤ 1`.
pub const H_RANGE: i64 = 2;
pub const J_RANGE: i64 = 1;

/// Divides the model by the smallest factor `≥ 1` that brings it into range.
pub fn autoscale(model: &IsingModel) -> (IsingModel, Rational) {
    let factor = (model.max_abs_coupling() / int(J_RANGE))
        .max(model.max_abs_field() / int(H_RANGE))
        .max(Rational::one());
    if factor == Rational::one() {
        return (model.clone(), factor);
    }
    (model.scaled_down(factor), factor)
}

/// A gauge `g ∈ {±1}^n` (`true` = +1) and the transformed model.
#[derive(Debug, Clone, PartialEq)]
pub struct Gauged {
    pub model: IsingModel,
    pub gauge: Vec<bool>,
}

/// `h_i → g_i h_i`, `J_ij → g_i g_j J_ij`.
pub fn apply_gauge(model: &IsingModel, gauge: &[bool]) -> IsingModel {
    let sign = |i: usize| if gauge[i] { int(1) } else { int(-1) };
    let mut out = IsingModel::new(model.num_spins());
    out.add_offset(model.offset());
    for (i, &h) in model.fields().iter().enumerate() {
        out.add_field(i, h * sign(i));
    }
    for (&(a, b), &jv) in model.couplings() {
        out.add_coupling(a, b, jv * sign(a) * sign(b));
    }
    out
}

/// `s → g ∘ s`.
pub fn ungauge(state: &[bool], gauge: &[bool]) -> Vec<bool> {
    state.iter().zip(gauge).map(|(&s, &g)| s == g).collect()
}

/// `gauges` random spin-reversal transforms; `0` yields only the identity.
pub fn spin_reversal(model: &IsingModel, gauges: usize, seed: u64) -> Vec<Gauged> {
    let n = model.num_spins();
    if gauges == 0 {
        return vec![Gauged {
            model: model.clone(),
            gauge: vec![true; n],
        }];
    }
    (0..gauges)
        .map(|g| {
            let mut rng = rng::stream(seed, Domain::Gauge, g as u64);
            let gauge: Vec<bool> = (0..n).map(|_| rng.gen::<bool>()).collect();
            Gauged {
                model: apply_gauge(model, &gauge),
                gauge,
            }
        })
        .collect()
}

/// Splits `total` reads over `gauges` runs (at least one run), remainder first.
pub fn split_reads(total: usize, gauges: usize) -> Vec<usize> {
    let runs = gauges.max(1);
    (0..runs)
        .map(|g| total / runs + usize::from(g < total % runs))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecodePolicy {
    DiscardBroken,
    MajorityVote,
}

/// Decodes one physical state; `None` when the policy rejects it.
///
/// Returns the logical state (if any) and the number of broken chains.
pub fn decode_chains(
    physical: &[bool],
    chains: &[Vec<usize>],
    policy: DecodePolicy,
) -> (Option<Vec<bool>>, usize) {
    let mut broken = 0;
    let mut logical = Vec::with_capacity(chains.len());
    for chain in chains {
        let up = chain.iter().filter(|&&i| physical[i]).count();
        let down = chain.len() - up;
        if up == 0 || down == 0 {
            logical.push(up > 0);
            continue;
        }
        broken += 1;
        logical.push(match up.cmp(&down) {
            core::cmp::Ordering::Greater => true,
            core::cmp::Ordering::Less => false,
            core::cmp::Ordering::Equal => physical[chain[0]],
        });
    }
    match policy {
        DecodePolicy::DiscardBroken if broken > 0 => (None, broken),
        _ => (Some(logical), broken),
    }
}

/// Result of decoding a whole physical sample set.
#[derive(Debug, Clone, PartialEq)]
pub struct DecodedSamples {
    pub samples: SampleSet,
    /// Reads with at least one broken chain.
    pub broken_reads: u64,
    /// Broken chains summed over all reads.
    pub broken_chains: u64,
}

/// Decodes every physical read and re-evaluates energies on `logical`.
///
/// Rejected reads are kept in the total as `discarded`.
pub fn decode_sample_set(
    physical: &SampleSet,
    embedded: &EmbeddedModel,
    logical: &IsingModel,
    policy: DecodePolicy,
) -> DecodedSamples {
    let mut reads = Vec::new();
    let mut discarded = physical.discarded;
    let mut broken_reads = 0;
    let mut broken_chains = 0;
    for s in &physical.samples {
        let (state, broken) = decode_chains(&s.state, &embedded.chains, policy);
        if broken > 0 {
            broken_reads += s.occurrences;
            broken_chains += s.occurrences * broken as u64;
        }
        match state {
            Some(x) => reads.extend(core::iter::repeat_n(x, s.occurrences as usize)),
            None => discarded += s.occurrences,
        }
    }
    let mut samples = SampleSet::from_reads(
        Vartype::Spin,
        reads,
        |x| logical.energy_unchecked(x),
        physical.info.clone(),
    );
    samples.discarded = discarded;
    DecodedSamples {
        samples,
        broken_reads,
        broken_chains,
    }
}
