use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use super::{IntegerQubo, SampleInfo, SampleSet, Vartype};
use crate::qubo::QuboModel;
use crate::rng::{self, Domain};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TabuParams {
    pub tenure: usize,
    pub max_restarts: usize,
    /// Non-improving iterations before a restart; `None` means `50 · dim`.
    pub stagnation_limit: Option<usize>,
    pub seed: u64,
}

impl Default for TabuParams {
    fn default() -> Self {
        TabuParams {
            tenure: 10,
            max_restarts: 20,
            stagnation_limit: None,
            seed: 0,
        }
    }
}

/// Single-flip tabu search with aspiration and random restarts.
///
/// Every run (the initial one plus `max_restarts` restarts) contributes its
/// best configuration to the returned sample set.
pub fn tabu_search(model: &QuboModel, params: TabuParams) -> Result<SampleSet> {
    if params.tenure == 0 {
        return Err(Error::InvalidParameter(
            "tabu tenure must be at least 1".into(),
        ));
    }
    let q = IntegerQubo::new(model);
    let n = q.dim();
    let limit = params.stagnation_limit.unwrap_or(50 * n).max(1);
    let runs = params.max_restarts + 1;
    let mut global_best = i64::MAX;
    let mut bests = Vec::with_capacity(runs);
    for run in 0..runs {
        let mut rng = rng::stream(params.seed, Domain::Tabu, run as u64);
        let mut x: Vec<bool> = (0..n).map(|_| rng.gen::<bool>()).collect();
        let mut energy = q.energy(&x);
        let mut field = q.fields(&x);
        let mut tabu_until = vec![0usize; n];
        let mut run_best = energy;
        let mut run_best_x = x.clone();
        global_best = global_best.min(energy);
        let mut stagnation = 0usize;
        let mut iter = 0usize;
        while n > 0 && stagnation < limit {
            iter += 1;
            let mut chosen: Option<(i64, usize)> = None;
            let mut fallback: Option<(i64, usize)> = None;
            for k in 0..n {
                let delta = if x[k] { -field[k] } else { field[k] };
                let allowed = tabu_until[k] < iter || energy + delta < global_best;
                let slot = if allowed { &mut chosen } else { &mut fallback };
                if slot.is_none_or(|(d, _)| delta < d) {
                    *slot = Some((delta, k));
                }
            }
            let Some((delta, k)) = chosen.or(fallback) else {
                break;
            };
            let sign = if x[k] { -1 } else { 1 };
            x[k] = !x[k];
            energy += delta;
            for &(l, b) in &q.adjacency[k] {
                field[l] += sign * b;
            }
            tabu_until[k] = iter + params.tenure;
            global_best = global_best.min(energy);
            if energy < run_best {
                run_best = energy;
                run_best_x.clone_from(&x);
                stagnation = 0;
            } else {
                stagnation += 1;
            }
        }
        bests.push(run_best_x);
    }
    Ok(SampleSet::from_reads(
        Vartype::Binary,
        bests,
        |x| model.energy_unchecked(x),
        SampleInfo {
            sampler: "tabu".into(),
            seed: Some(params.seed),
            reads: runs as u64,
            ..SampleInfo::default()
        },
    ))
}
