//! Reference energies and the penalty sweep.

use std::collections::BTreeSet;

use postman_core::cpp::OddPairDistances;
use postman_core::metrics::{MetricsReport, DEFAULT_ANNEAL_TIME, DEFAULT_TAU_S};
use postman_core::qubo::{build_qubo, decode};
use postman_core::rational::to_f64;
use postman_core::samplers::{
    brute_force, exact_ground_states, tabu_search, TabuParams, MAX_BRUTE_FORCE_DIM,
};
use postman_core::{QuboModel, Rational, Result, Schedule};

use crate::parallel;

/// Exact low end of a QUBO spectrum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroundTruth {
    pub e0: Rational,
    /// First excited level; only computed up to the brute-force limit.
    pub e1: Option<Rational>,
    pub ground_states: Vec<Vec<bool>>,
}

/// Brute force up to [`MAX_BRUTE_FORCE_DIM`] variables, branch and bound above.
pub fn ground_truth(q: &QuboModel) -> Result<GroundTruth> {
    if q.dim() <= MAX_BRUTE_FORCE_DIM {
        let spec = brute_force(q, 2)?;
        return Ok(GroundTruth {
            e0: spec.ground_energy(),
            e1: spec.levels.get(1).map(|l| l.0),
            ground_states: spec.ground_states,
        });
    }
    let (e0, ground_states) = exact_ground_states(q);
    Ok(GroundTruth {
        e0,
        e1: None,
        ground_states,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct PenaltySweepConfig {
    pub schedule: Schedule,
    pub reads: usize,
    pub seed: u64,
    pub resamples: usize,
    pub tabu: TabuParams,
    /// `N` in the reported `p / N` (graph node count).
    pub norm: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PenaltyPoint {
    pub penalty: Rational,
    pub p_over_n: f64,
    pub e0: Rational,
    pub e1: Option<Rational>,
    pub gap: Option<Rational>,
    pub sa: MetricsReport,
    /// Fraction of tabu runs ending at the ground energy.
    pub tabu_p_gs: f64,
    /// Distinct matchings (graph node pairs) among the ground states.
    pub ground_matchings: Vec<Vec<(usize, usize)>>,
}

/// Builds the QUBO at each penalty and records the exact spectrum head and
/// sampler success rates. Every penalty reuses the same seeds so the points
/// differ only in the model.
pub fn penalty_sweep(
    dist: &OddPairDistances,
    penalties: &[Rational],
    config: &PenaltySweepConfig,
) -> Result<Vec<PenaltyPoint>> {
    penalties
        .iter()
        .map(|&p| {
            let q = build_qubo(dist, p)?;
            let truth = ground_truth(&q)?;
            let mut matchings = BTreeSet::new();
            for x in &truth.ground_states {
                if let Ok(pairs) = decode(x, dist.d()) {
                    let mut nodes: Vec<(usize, usize)> = pairs
                        .iter()
                        .map(|&(i, j)| {
                            let (a, b) = (dist.odd[i], dist.odd[j]);
                            (a.min(b), a.max(b))
                        })
                        .collect();
                    nodes.sort_unstable();
                    matchings.insert(nodes);
                }
            }
            let samples = parallel::simulated_annealing(
                &q.to_ising(),
                config.schedule,
                config.reads,
                config.seed,
            )?;
            let sa = MetricsReport::from_samples(
                &samples,
                truth.e0,
                DEFAULT_ANNEAL_TIME,
                config.resamples,
                config.seed,
            )?
            .with_tts(q.dim(), config.schedule.sweeps(), DEFAULT_TAU_S);
            let tabu = tabu_search(
                &q,
                TabuParams {
                    seed: config.seed,
                    ..config.tabu
                },
            )?;
            let tabu_p_gs = postman_core::metrics::p_gs(&tabu, truth.e0)?;
            Ok(PenaltyPoint {
                penalty: p,
                p_over_n: to_f64(p) / config.norm.max(1) as f64,
                e0: truth.e0,
                e1: truth.e1,
                gap: truth.e1.map(|e1| e1 - truth.e0),
                sa,
                tabu_p_gs,
                ground_matchings: matchings.into_iter().collect(),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use postman_core::rational::int;

    fn fig1() -> OddPairDistances {
        OddPairDistances::from_matrix(vec![
            vec![0, 2, 5, 7],
            vec![2, 0, 7, 5],
            vec![5, 7, 0, 3],
            vec![7, 5, 3, 0],
        ])
        .unwrap()
    }

    #[test]
    fn ground_truth_fig1() {
        let q = build_qubo(&fig1(), int(8)).unwrap();
        let t = ground_truth(&q).unwrap();
        assert_eq!(t.e0, int(5));
        assert_eq!(t.ground_states.len(), 4);
        assert!(t.e1.unwrap() > int(5));
    }

    #[test]
    fn sweep_shape() {
        let config = PenaltySweepConfig {
            schedule: Schedule::new(0.1, 5.0, 100).unwrap(),
            reads: 50,
            seed: 1,
            resamples: 100,
            tabu: TabuParams::default(),
            norm: 6,
        };
        let pts = penalty_sweep(&fig1(), &[int(4), int(8)], &config).unwrap();
        assert_eq!(pts.len(), 2);
        for p in &pts {
            assert_eq!(p.e0, int(5));
            assert_eq!(p.ground_matchings, vec![vec![(0, 1), (2, 3)]]);
            assert_eq!(p.tabu_p_gs, 1.0);
        }
        assert!((pts[1].p_over_n - 8.0 / 6.0).abs() < 1e-12);
    }
}
