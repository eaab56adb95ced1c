//! Success probability, time-to-solution and the chain-strength sweep.

use alloc::vec::Vec;

use rand::Rng;

use crate::chimera::{
    autoscale, decode_sample_set, embed_ising, spin_reversal, split_reads, ungauge,
    ChimeraTopology, CouplerSplit, DecodePolicy, Embedding,
};
use crate::ising::IsingModel;
use crate::rng::{self, Domain};
use crate::samplers::{simulated_annealing, SampleSet, Schedule, Vartype};
use crate::{Error, Rational, Result};

/// Target confidence of the time-to-solution formulas.
pub const TARGET_CONFIDENCE: f64 = 0.99;

/// Default annealing time per read, 20 µs.
pub const DEFAULT_ANNEAL_TIME: f64 = 20e-6;

/// Default simulated-annealing time per spin update, `1 / f_SA` with `f_SA = 2 ns⁻¹`.
pub const DEFAULT_TAU_S: f64 = 0.5e-9;

/// Fraction of all reads (discarded ones included) at or below `reference`.
pub fn p_gs(samples: &SampleSet, reference: Rational) -> Result<f64> {
    let total = samples.total_reads();
    if total == 0 {
        return Err(Error::EmptySampleSet);
    }
    Ok(samples.count_at_or_below(reference) as f64 / total as f64)
}

/// Repetitions needed for 99 % confidence, `ln(1 − 0.99) / ln(1 − p)`.
///
/// `p = 0` gives `+∞` and `p = 1` gives 1.
fn repetitions(p: f64) -> f64 {
    if p.is_nan() || !(0.0..=1.0).contains(&p) {
        return f64::NAN;
    }
    if p == 0.0 {
        return f64::INFINITY;
    }
    if p == 1.0 {
        return 1.0;
    }
    libm::log1p(-TARGET_CONFIDENCE) / libm::log1p(-p)
}

/// `T_99 = ln(1 − 0.99) / ln(1 − p) · T`.
pub fn t_99(p: f64, anneal_time: f64) -> f64 {
    repetitions(p) * anneal_time
}

/// `TTS = N² · ln(1 − 0.99) / ln(1 − p) · τ_s · n_s`.
pub fn tts_sa(p: f64, n: usize, sweeps: usize, tau_s: f64) -> f64 {
    let n = n as f64;
    n * n * repetitions(p) * tau_s * sweeps as f64
}

/// Bootstrap mean of a success indicator and twice the standard deviation of
/// the resampled means.
pub fn bootstrap(successes: &[bool], resamples: usize, seed: u64) -> Result<(f64, f64)> {
    if successes.is_empty() {
        return Err(Error::EmptySampleSet);
    }
    if resamples == 0 {
        return Err(Error::InvalidParameter("need at least one resample".into()));
    }
    let n = successes.len();
    let means: Vec<f64> = (0..resamples)
        .map(|r| {
            let mut rng = rng::stream(seed, Domain::Bootstrap, r as u64);
            let hits = (0..n).filter(|_| successes[rng.gen_range(0..n)]).count();
            hits as f64 / n as f64
        })
        .collect();
    let mean = means.iter().sum::<f64>() / resamples as f64;
    let var = means.iter().map(|m| (m - mean) * (m - mean)).sum::<f64>() / resamples as f64;
    Ok((mean, 2.0 * libm::sqrt(var)))
}

/// Success indicator per read (discarded reads count as failures).
pub fn success_indicators(samples: &SampleSet, reference: Rational) -> Vec<bool> {
    let mut out = Vec::with_capacity(samples.total_reads() as usize);
    for s in &samples.samples {
        out.extend(core::iter::repeat_n(
            s.energy <= reference,
            s.occurrences as usize,
        ));
    }
    out.extend(core::iter::repeat_n(false, samples.discarded as usize));
    out
}

/// Summary statistics of one experiment point.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricsReport {
    pub p_gs: f64,
    pub hits: u64,
    pub total: u64,
    pub t_99: f64,
    pub anneal_time: f64,
    pub tts: Option<f64>,
    pub bootstrap_mean: f64,
    pub two_sigma: f64,
    pub resamples: usize,
    pub seed: u64,
    pub j_f: Option<Rational>,
    pub gauges: Option<usize>,
    pub policy: Option<DecodePolicy>,
    pub embedding_id: Option<alloc::string::String>,
}

impl MetricsReport {
    pub fn from_samples(
        samples: &SampleSet,
        reference: Rational,
        anneal_time: f64,
        resamples: usize,
        seed: u64,
    ) -> Result<Self> {
        let p = p_gs(samples, reference)?;
        let (bootstrap_mean, two_sigma) =
            bootstrap(&success_indicators(samples, reference), resamples, seed)?;
        Ok(MetricsReport {
            p_gs: p,
            hits: samples.count_at_or_below(reference),
            total: samples.total_reads(),
            t_99: t_99(p, anneal_time),
            anneal_time,
            tts: None,
            bootstrap_mean,
            two_sigma,
            resamples,
            seed,
            j_f: None,
            gauges: None,
            policy: None,
            embedding_id: None,
        })
    }

    /// Adds the simulated-annealing time-to-solution for `n` variables.
    pub fn with_tts(mut self, n: usize, sweeps: usize, tau_s: f64) -> Self {
        self.tts = Some(tts_sa(self.p_gs, n, sweeps, tau_s));
        self
    }
}

/// Source of Ising samples; lets callers swap in a parallel implementation.
pub trait IsingSampler {
    fn sample(
        &self,
        model: &IsingModel,
        schedule: Schedule,
        reads: usize,
        seed: u64,
    ) -> Result<SampleSet>;
}

/// Runs reads one after another.
#[derive(Debug, Clone, Copy, Default)]
pub struct Sequential;

impl IsingSampler for Sequential {
    fn sample(
        &self,
        model: &IsingModel,
        schedule: Schedule,
        reads: usize,
        seed: u64,
    ) -> Result<SampleSet> {
        simulated_annealing(model, schedule, reads, seed)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub schedule: Schedule,
    /// Total reads per grid point, split across gauges.
    pub reads: usize,
    pub gauges: usize,
    pub seed: u64,
    pub anneal_time: f64,
    pub autoscale: bool,
    pub split: CouplerSplit,
    pub policies: Vec<DecodePolicy>,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            schedule: Schedule::default(),
            reads: 1000,
            gauges: 0,
            seed: 0,
            anneal_time: DEFAULT_ANNEAL_TIME,
            autoscale: true,
            split: CouplerSplit::Equal,
            policies: alloc::vec![DecodePolicy::DiscardBroken, DecodePolicy::MajorityVote],
        }
    }
}

/// One `(J_F, policy)` point of a chain-strength sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepPoint {
    pub j_f: Rational,
    pub policy: DecodePolicy,
    pub gauges: usize,
    pub hits: u64,
    pub total: u64,
    pub p_gs: f64,
    pub t_99: f64,
    /// Fraction of reads with at least one broken chain.
    pub broken_fraction: f64,
}

/// Raw physical samples for one chain strength, merged over gauges and
/// mapped back to the ungauged frame.
pub fn sample_embedded<S: IsingSampler>(
    physical: &IsingModel,
    config: &SweepConfig,
    seed: u64,
    sampler: &S,
) -> Result<SampleSet> {
    let gauged = spin_reversal(physical, config.gauges, seed);
    let budgets = split_reads(config.reads, config.gauges);
    let mut states = Vec::with_capacity(config.reads);
    let mut info = None;
    for (g, (run, reads)) in gauged.iter().zip(budgets).enumerate() {
        if reads == 0 {
            continue;
        }
        let set = sampler.sample(
            &run.model,
            config.schedule,
            reads,
            rng::derive_seed(seed, g as u64),
        )?;
        for s in &set.samples {
            let plain = ungauge(&s.state, &run.gauge);
            states.extend(core::iter::repeat_n(plain, s.occurrences as usize));
        }
        info.get_or_insert(set.info);
    }
    let mut info = info.unwrap_or_default();
    info.reads = config.reads as u64;
    info.gauges = config.gauges;
    info.seed = Some(seed);
    info.spin_updates = (config.reads * config.schedule.sweeps() * physical.num_spins()) as u64;
    Ok(SampleSet::from_reads(
        Vartype::Spin,
        states,
        |s| physical.energy(s).expect("state length matches model"),
        info,
    ))
}

/// Embeds, gauges, anneals and decodes `logical` at chain strength `j_f`,
/// one record per policy. `index` selects the derived seed.
#[allow(clippy::too_many_arguments)]
pub fn jf_point<S: IsingSampler>(
    logical: &IsingModel,
    emb: &Embedding,
    topo: &ChimeraTopology,
    j_f: Rational,
    index: usize,
    reference: Rational,
    config: &SweepConfig,
    sampler: &S,
) -> Result<Vec<SweepPoint>> {
    let embedded = embed_ising(logical, emb, topo, j_f, config.split)?;
    let physical = if config.autoscale {
        autoscale(&embedded.model).0
    } else {
        embedded.model.clone()
    };
    let seed = rng::derive_seed(config.seed, index as u64);
    let raw = sample_embedded(&physical, config, seed, sampler)?;
    config
        .policies
        .iter()
        .map(|&policy| {
            let decoded = decode_sample_set(&raw, &embedded, logical, policy);
            let total = decoded.samples.total_reads();
            let p = p_gs(&decoded.samples, reference)?;
            Ok(SweepPoint {
                j_f,
                policy,
                gauges: config.gauges,
                hits: decoded.samples.count_at_or_below(reference),
                total,
                p_gs: p,
                t_99: t_99(p, config.anneal_time),
                broken_fraction: decoded.broken_reads as f64 / total as f64,
            })
        })
        .collect()
}

/// [`jf_point`] over a grid; every policy decodes the same raw samples and
/// point `i` uses seed `derive_seed(config.seed, i)`.
pub fn jf_sweep<S: IsingSampler>(
    logical: &IsingModel,
    emb: &Embedding,
    topo: &ChimeraTopology,
    grid: &[Rational],
    reference: Rational,
    config: &SweepConfig,
    sampler: &S,
) -> Result<Vec<SweepPoint>> {
    let mut out = Vec::with_capacity(grid.len() * config.policies.len());
    for (i, &j_f) in grid.iter().enumerate() {
        out.extend(jf_point(
            logical, emb, topo, j_f, i, reference, config, sampler,
        )?);
    }
    Ok(out)
}
