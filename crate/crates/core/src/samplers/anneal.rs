use alloc::format;
use alloc::vec::Vec;

use rand::Rng;

use super::{SampleInfo, SampleSet, Vartype};
use crate::ising::IsingModel;
use crate::rng::{self, Domain};
use crate::{Error, Result};

/// Inverse-temperature schedule, linear in β.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Schedule {
    beta_start: f64,
    beta_end: f64,
    sweeps: usize,
}

impl Default for Schedule {
    fn default() -> Self {
        Schedule {
            beta_start: 0.1,
            beta_end: 5.0,
            sweeps: 1000,
        }
    }
}

impl Schedule {
    /// `beta_start == beta_end` is accepted (constant temperature, including the
    /// `β = ∞` greedy limit).
    pub fn new(beta_start: f64, beta_end: f64, sweeps: usize) -> Result<Self> {
        if sweeps == 0 {
            return Err(Error::InvalidParameter(
                "schedule needs at least one sweep".into(),
            ));
        }
        if beta_start.is_nan() || beta_end.is_nan() || beta_start < 0.0 || beta_start > beta_end {
            return Err(Error::InvalidParameter(format!(
                "need 0 <= beta_start <= beta_end, got {beta_start} -> {beta_end}"
            )));
        }
        Ok(Schedule {
            beta_start,
            beta_end,
            sweeps,
        })
    }

    pub fn beta_start(&self) -> f64 {
        self.beta_start
    }

    pub fn beta_end(&self) -> f64 {
        self.beta_end
    }

    pub fn sweeps(&self) -> usize {
        self.sweeps
    }

    /// β used during sweep `k` (0-based).
    pub fn beta(&self, k: usize) -> f64 {
        if self.sweeps == 1 || self.beta_start == self.beta_end {
            return self.beta_end;
        }
        let t = k as f64 / (self.sweeps - 1) as f64;
        self.beta_start + (self.beta_end - self.beta_start) * t
    }
}

/// Metropolis annealer prepared for one Ising model.
///
/// Each read draws from its own stream keyed by `(seed, read index)`, so reads
/// can run in any order or in parallel and still reproduce.
#[derive(Debug, Clone)]
pub struct Annealer<'a> {
    model: &'a IsingModel,
    h: Vec<f64>,
    adjacency: Vec<Vec<(usize, f64)>>,
    schedule: Schedule,
    betas: Vec<f64>,
    seed: u64,
}

impl<'a> Annealer<'a> {
    pub fn new(model: &'a IsingModel, schedule: Schedule, seed: u64) -> Self {
        let (h, adjacency) = model.float_adjacency();
        let betas = (0..schedule.sweeps()).map(|k| schedule.beta(k)).collect();
        Annealer {
            model,
            h,
            adjacency,
            schedule,
            betas,
            seed,
        }
    }

    /// Runs read `index` from a uniformly random start.
    pub fn read(&self, index: u64) -> Vec<bool> {
        let mut rng = rng::stream(self.seed, Domain::Anneal, index);
        let n = self.h.len();
        let mut s: Vec<bool> = (0..n).map(|_| rng.gen::<bool>()).collect();
        self.anneal_from(&mut s, &mut rng);
        s
    }

    /// Anneals `s` in place with sweeps in ascending spin order.
    pub fn anneal_from<R: Rng>(&self, s: &mut [bool], rng: &mut R) {
        for &beta in &self.betas {
            for i in 0..s.len() {
                let mut local = self.h[i];
                for &(j, jv) in &self.adjacency[i] {
                    local += if s[j] { jv } else { -jv };
                }
                let si = if s[i] { 1.0 } else { -1.0 };
                let delta = -2.0 * si * local;
                if delta <= 0.0 || rng.gen::<f64>() < libm::exp(-beta * delta) {
                    s[i] = !s[i];
                }
            }
        }
    }

    pub fn info(&self, reads: u64) -> SampleInfo {
        SampleInfo {
            sampler: "simulated-annealing".into(),
            seed: Some(self.seed),
            reads,
            sweeps: Some(self.schedule.sweeps()),
            beta_range: Some((self.schedule.beta_start(), self.schedule.beta_end())),
            gauges: 0,
            spin_updates: reads * (self.schedule.sweeps() * self.h.len()) as u64,
        }
    }

    /// Collects already computed reads into a sample set with exact energies.
    pub fn collect<I: IntoIterator<Item = Vec<bool>>>(&self, reads: I, count: u64) -> SampleSet {
        SampleSet::from_reads(
            Vartype::Spin,
            reads,
            |s| self.model.energy_unchecked(s),
            self.info(count),
        )
    }
}

/// Sequential simulated annealing; see [`Annealer`] for the per-read contract.
pub fn simulated_annealing(
    model: &IsingModel,
    schedule: Schedule,
    reads: usize,
    seed: u64,
) -> Result<SampleSet> {
    if reads == 0 {
        return Err(Error::InvalidParameter("reads must be at least 1".into()));
    }
    let annealer = Annealer::new(model, schedule, seed);
    let states = (0..reads as u64).map(|i| annealer.read(i));
    Ok(annealer.collect(states, reads as u64))
}
