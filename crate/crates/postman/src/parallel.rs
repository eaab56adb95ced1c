//! Rayon drivers. Every item draws from its own derived stream and results
//! are assembled in index order, so output does not depend on thread count.

use postman_core::chimera::ChimeraTopology;
use postman_core::defect::{self, DefectEntry, DefectScan};
use postman_core::graph::Weight;
use postman_core::metrics::{jf_point, IsingSampler, SweepConfig, SweepPoint};
use postman_core::samplers::Annealer;
use postman_core::{Embedding, EnsembleSpec, Graph, IsingModel, Rational, SampleSet, Schedule};
use rayon::prelude::*;

use crate::error::{Error, Result};

/// Runs `f` on a pool of `threads` workers, or the global pool for `None`.
pub fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match threads {
        None => Ok(f()),
        Some(0) => Err(Error::Usage("--threads must be at least 1".into())),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::Usage(format!("thread pool: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

/// Simulated annealing with reads spread over the pool.
pub fn simulated_annealing(
    model: &IsingModel,
    schedule: Schedule,
    reads: usize,
    seed: u64,
) -> postman_core::Result<SampleSet> {
    if reads == 0 {
        return Err(postman_core::Error::InvalidParameter(
            "reads must be at least 1".into(),
        ));
    }
    let annealer = Annealer::new(model, schedule, seed);
    let states: Vec<Vec<bool>> = (0..reads as u64)
        .into_par_iter()
        .map(|i| annealer.read(i))
        .collect();
    Ok(annealer.collect(states, reads as u64))
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Parallel;

impl IsingSampler for Parallel {
    fn sample(
        &self,
        model: &IsingModel,
        schedule: Schedule,
        reads: usize,
        seed: u64,
    ) -> postman_core::Result<SampleSet> {
        simulated_annealing(model, schedule, reads, seed)
    }
}

pub fn jf_sweep(
    logical: &IsingModel,
    emb: &Embedding,
    topo: &ChimeraTopology,
    grid: &[Rational],
    reference: Rational,
    config: &SweepConfig,
) -> postman_core::Result<Vec<SweepPoint>> {
    let per_point = grid
        .par_iter()
        .enumerate()
        .map(|(i, &j_f)| jf_point(logical, emb, topo, j_f, i, reference, config, &Parallel))
        .collect::<postman_core::Result<Vec<_>>>()?;
    Ok(per_point.into_iter().flatten().collect())
}

pub fn defect_map(g: &Graph, deltas: &[Weight], k: usize) -> postman_core::Result<DefectScan> {
    if deltas.iter().any(|&d| d < 0) {
        return Err(postman_core::Error::InvalidParameter(
            "defect magnitudes must be non-negative".into(),
        ));
    }
    let base_m_min = postman_core::cpp::m_min(g)?.m_min;
    let entries = defect::defect_combinations(g, k)?
        .into_par_iter()
        .map(|edges| {
            let m_min = defect::defect_cell(g, &edges, deltas)?;
            Ok(DefectEntry { edges, m_min })
        })
        .collect::<postman_core::Result<Vec<_>>>()?;
    Ok(DefectScan {
        base: g.clone(),
        base_m_min,
        deltas: deltas.to_vec(),
        k,
        entries,
    })
}

pub fn random_non_eulerian(spec: &EnsembleSpec) -> postman_core::Result<Vec<Graph>> {
    (0..spec.count)
        .into_par_iter()
        .map(|i| spec.generate_one(i))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use postman_core::rational::int;

    #[test]
    fn matches_sequential() {
        let mut m = IsingModel::new(5);
        for i in 0..5 {
            m.add_field(i, int(i as i64 - 2));
            m.add_coupling(i, (i + 1) % 5, int(1));
        }
        let schedule = Schedule::new(0.1, 2.0, 20).unwrap();
        let seq = postman_core::samplers::simulated_annealing(&m, schedule, 64, 9).unwrap();
        for threads in [1, 3] {
            let par = with_threads(Some(threads), || simulated_annealing(&m, schedule, 64, 9))
                .unwrap()
                .unwrap();
            assert_eq!(par, seq);
        }
        assert!(with_threads(Some(0), || ()).is_err());
    }

    #[test]
    fn defects_and_ensembles_match_sequential() {
        let spec = EnsembleSpec::new(7, 0.4, 6, 2).weights(1, 5);
        let graphs = random_non_eulerian(&spec).unwrap();
        assert_eq!(
            graphs,
            postman_core::graph::random_non_eulerian(&spec).unwrap()
        );
        let deltas = [0, 3, 10];
        assert_eq!(
            defect_map(&graphs[0], &deltas, 2).unwrap(),
            defect::defect_map(&graphs[0], &deltas, 2).unwrap()
        );
    }
}
