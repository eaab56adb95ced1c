//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any failure.

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use postman::experiments::{penalty_sweep, PenaltySweepConfig};
use postman::parallel;
use postman_core::chimera::{
    apply_gauge, chain_stats, chimera_graph, clique_embedding, decode_chains, decode_sample_set,
    embed_ising, ungauge, validate_embedding, CouplerSplit,
};
use postman_core::cpp::{
    self, enumerate_matchings, min_pairing, odd_pair_distances, OddPairDistances,
};
use postman_core::defect::DEFAULT_DELTAS;
use postman_core::metrics::{p_gs, t_99, DEFAULT_ANNEAL_TIME};
use postman_core::qubo::{
    build_qubo, decode, is_legal, penalties, shared_pair_count, PairEncoding,
};
use postman_core::rational::int;
use postman_core::rng::{self, Domain};
use postman_core::samplers::{
    brute_force, brute_force_ising, exact_ground_states, simulated_annealing, tabu_search,
    TabuParams,
};
use postman_core::{DecodePolicy, EnsembleSpec, Graph, IsingModel, Rational, Schedule};
use rand::Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        let ok: bool = $cond;
        if !ok {
            return Err(format!($($fmt)+));
        }
    };
}

fn fig1() -> Graph {
    Graph::new(
        6,
        [
            (4, 0, 3),
            (4, 1, 1),
            (0, 2, 5),
            (1, 3, 5),
            (0, 1, 2),
            (2, 3, 6),
            (2, 5, 2),
            (3, 5, 1),
        ],
    )
    .unwrap()
}

fn within(elapsed: Duration, limit: Duration) -> Outcome {
    if elapsed <= limit {
        Ok(format!("{:.2?}", elapsed))
    } else {
        Err(format!("took {:.2?}, limit {:.0?}", elapsed, limit))
    }
}

fn c01_worked_example() -> Outcome {
    let start = Instant::now();
    let g = fig1();
    let dist = odd_pair_distances(&g).map_err(|e| e.to_string())?;
    ensure!(dist.odd == [0, 1, 2, 3], "odd nodes {:?}", dist.odd);
    ensure!(
        dist.w[0][1] == 2 && dist.w[2][3] == 3,
        "W01={} W23={}",
        dist.w[0][1],
        dist.w[2][3]
    );
    let m: Vec<i64> = enumerate_matchings(4)
        .unwrap()
        .iter()
        .map(|p| dist.pairing_weight(p))
        .collect();
    ensure!(m == [5, 10, 14], "matching weights {m:?}");
    let sol = cpp::solve(&g).map_err(|e| e.to_string())?;
    ensure!(
        sol.m_min == 5 && sol.l_t == 30,
        "M_min={} l_T={}",
        sol.m_min,
        sol.l_t
    );
    within(start.elapsed(), Duration::from_secs(1))
        .map(|t| format!("m = {m:?}, M_min = 5, l_T = 30 in {t}"))
}

fn c02_matching_counts() -> Outcome {
    let counts: Vec<usize> = [2, 4, 6, 8]
        .iter()
        .map(|&d| enumerate_matchings(d).unwrap().len())
        .collect();
    ensure!(counts == [1, 3, 15, 105], "counts {counts:?}");
    Ok(format!("{counts:?}"))
}

/// Unit-weight instances: every odd-pair distance stays below `2d`, which `p = d` needs.
fn instances_with_d(ds: &[usize], count: usize, seed: u64) -> Vec<Graph> {
    let mut out = Vec::new();
    let mut batch = 0;
    while out.len() < count {
        let spec = EnsembleSpec::new(8, 0.35, 50, seed + batch);
        for g in parallel::random_non_eulerian(&spec).unwrap() {
            if out.len() < count && ds.contains(&g.odd_nodes().len()) {
                out.push(g);
            }
        }
        batch += 1;
    }
    out
}

fn c03_qubo_semantics() -> Outcome {
    let start = Instant::now();
    let dist = odd_pair_distances(&fig1()).unwrap();
    let spec = brute_force(&build_qubo(&dist, int(8)).unwrap(), 2).map_err(|e| e.to_string())?;
    ensure!(
        spec.ground_energy() == int(5),
        "E0 = {}",
        spec.ground_energy()
    );
    ensure!(
        spec.ground_states.len() == 4,
        "{} ground states",
        spec.ground_states.len()
    );
    for x in &spec.ground_states {
        let pairs = decode(x, 4).map_err(|e| e.to_string())?;
        ensure!(
            pairs == [(0, 1), (2, 3)],
            "ground state decodes to {pairs:?}"
        );
    }
    let graphs = instances_with_d(&[4, 6], 20, 300);
    let mut sixes = 0;
    for g in &graphs {
        let dist = odd_pair_distances(g).unwrap();
        let d = dist.d();
        sixes += usize::from(d == 6);
        let q = build_qubo(&dist, int(d as i64)).unwrap();
        let (e0, states) = exact_ground_states(&q);
        let (best, _) = min_pairing(&dist).unwrap();
        ensure!(e0 == int(best), "E0 = {e0} vs M_min = {best}");
        for x in &states {
            let pairs = decode(x, d).map_err(|e| format!("illegal ground state: {e}"))?;
            ensure!(
                dist.pairing_weight(&pairs) == best,
                "decoded weight {} vs M_min {best}",
                dist.pairing_weight(&pairs)
            );
        }
    }
    let t = within(start.elapsed(), Duration::from_secs(120))?;
    Ok(format!(
        "worked example E0 = 5 x4; 20 unit-weight instances ({sixes} with d = 6) in {t}"
    ))
}

fn c04_legality() -> Outcome {
    let d = 4;
    let dim = PairEncoding::new(d).dim();
    let mut legal = 0;
    for bits in 0u32..(1 << dim) {
        let x: Vec<bool> = (0..dim).map(|k| bits >> k & 1 == 1).collect();
        let a = is_legal(&x, d).unwrap();
        let b = penalties(&x, d).unwrap() == (0, 0);
        let c = decode(&x, d).is_ok();
        ensure!(
            a == b && b == c,
            "disagreement at {bits:#014b}: legal={a} P=0:{b} decodable={c}"
        );
        legal += usize::from(a);
    }
    ensure!(legal == 3 * 4, "{legal} legal assignments");
    Ok(format!("{} assignments, {legal} legal", 1 << dim))
}

fn c05_sizes() -> Outcome {
    let dims: Vec<usize> = [2, 4, 6, 8]
        .iter()
        .map(|&d| PairEncoding::new(d).dim())
        .collect();
    ensure!(dims == [2, 12, 30, 56], "variable counts {dims:?}");
    let mut built = Vec::new();
    for d in [2usize, 4, 6, 8] {
        let w: Vec<Vec<i64>> = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| if i == j { 0 } else { 1 + ((i + j) % 5) as i64 })
                    .collect()
            })
            .collect();
        let q = build_qubo(
            &OddPairDistances::from_matrix(w).unwrap(),
            int(d as i64 * 2),
        )
        .unwrap();
        ensure!(q.dim() == dims[d / 2 - 1], "dim at d = {d}");
        ensure!(
            q.interaction_count() == shared_pair_count(d),
            "pair count mismatch at d = {d}"
        );
        built.push(q.interaction_count());
    }
    ensure!(
        built[1] == 54 && built[3] == 700,
        "pairwise counts {built:?}"
    );
    // N(4d - 7)/2 at d = 6 is 255, not 256
    ensure!(built[2] == 255, "d = 6 pairwise count {}", built[2]);
    Ok(format!("vars {dims:?}, pairwise {built:?} (d = 6: 255)"))
}

fn c06_t99() -> Outcome {
    let cases = [(0.8783, 4.37e-5), (0.5107, 1.29e-4)];
    let mut got = Vec::new();
    for (p, want) in cases {
        let t = t_99(p, DEFAULT_ANNEAL_TIME);
        ensure!(
            ((t - want) / want).abs() < 0.01,
            "t_99({p}) = {t:e}, want {want:e}"
        );
        got.push(format!("{t:.3e}"));
    }
    Ok(got.join(", "))
}

fn c07_embedding() -> Outcome {
    let topo = chimera_graph(12, &[]).map_err(|e| e.to_string())?;
    ensure!(
        topo.enabled_qubit_count() == 1152,
        "C12 has {} qubits",
        topo.enabled_qubit_count()
    );
    let emb = clique_embedding(12, &topo).map_err(|e| e.to_string())?;
    let edges: Vec<(usize, usize)> = (0..12)
        .flat_map(|a| ((a + 1)..12).map(move |b| (a, b)))
        .collect();
    let violations = validate_embedding(&emb, &topo, &edges);
    ensure!(violations.is_empty(), "violations {violations:?}");
    let stats = chain_stats(&emb);
    ensure!(
        stats.physical_qubits == 48,
        "{} physical qubits",
        stats.physical_qubits
    );
    ensure!(
        stats.max_chain_length == 4,
        "max chain {}",
        stats.max_chain_length
    );
    Ok("K12 on C12: valid, 48 qubits, max chain 4, 1152 qubits total".into())
}

fn k4_logical() -> IsingModel {
    let mut m = IsingModel::new(4);
    for (i, h) in [1, -2, 3, 0].into_iter().enumerate() {
        m.add_field(i, int(h));
    }
    for (a, b, j) in [
        (0, 1, 2),
        (0, 2, -1),
        (0, 3, -2),
        (1, 2, 1),
        (1, 3, 3),
        (2, 3, 1),
    ] {
        m.add_coupling(a, b, int(j));
    }
    m
}

fn c08_embedded_energy() -> Outcome {
    let start = Instant::now();
    let topo = chimera_graph(1, &[]).unwrap();
    let emb = clique_embedding(4, &topo).unwrap();
    let logical = k4_logical();
    let e = embed_ising(&logical, &emb, &topo, int(2), CouplerSplit::Equal)
        .map_err(|e| e.to_string())?;
    let n = e.qubits.len();
    ensure!(n == 8, "{n} physical qubits");
    let mut offsets = std::collections::BTreeSet::new();
    let mut unbroken = 0;
    for bits in 0u32..(1 << n) {
        let s: Vec<bool> = (0..n).map(|k| bits >> k & 1 == 1).collect();
        if let (Some(x), 0) = decode_chains(&s, &e.chains, DecodePolicy::DiscardBroken) {
            offsets.insert(e.model.energy(&s).unwrap() - logical.energy(&x).unwrap());
            unbroken += 1;
        }
    }
    ensure!(offsets.len() == 1, "offsets {offsets:?}");
    let phys = brute_force_ising(&e.model, 1).unwrap();
    let log = brute_force_ising(&logical, 1).unwrap();
    for s in &phys.ground_states {
        let (x, broken) = decode_chains(s, &e.chains, DecodePolicy::DiscardBroken);
        ensure!(
            broken == 0,
            "physical ground state has {broken} broken chains"
        );
        ensure!(
            log.ground_states.contains(&x.unwrap()),
            "decoded state is not a logical ground state"
        );
    }
    let t = within(start.elapsed(), Duration::from_secs(1))?;
    Ok(format!(
        "{unbroken} unbroken configs share one offset; {} ground states decode, {t}",
        phys.ground_states.len()
    ))
}

fn c09_decode_ordering() -> Outcome {
    let dist = odd_pair_distances(&fig1()).unwrap();
    let logical = build_qubo(&dist, int(8)).unwrap().to_ising();
    let e0 = brute_force_ising(&logical, 1).unwrap().ground_energy();
    let topo = chimera_graph(3, &[]).unwrap();
    let emb = clique_embedding(12, &topo).unwrap();
    let schedule = Schedule::new(0.1, 3.0, 100).unwrap();
    let mut strict = 0;
    for run in 0..50u64 {
        let j_f = Rational::new(1 + (run % 10) as i64, 5);
        let e = embed_ising(&logical, &emb, &topo, j_f, CouplerSplit::Equal).unwrap();
        let raw = simulated_annealing(&e.model, schedule, 100, 9000 + run).unwrap();
        let discard = decode_sample_set(&raw, &e, &logical, DecodePolicy::DiscardBroken);
        let majority = decode_sample_set(&raw, &e, &logical, DecodePolicy::MajorityVote);
        let pd = p_gs(&discard.samples, e0).unwrap();
        let pm = p_gs(&majority.samples, e0).unwrap();
        ensure!(
            pm >= pd,
            "run {run} (J_F = {j_f}): majority {pm} < discard {pd}"
        );
        strict += usize::from(pm > pd);
    }
    Ok(format!("50 runs, majority > discard in {strict}"))
}

fn c10_gauge_invariance() -> Outcome {
    let mut rng = rng::stream(10, Domain::Sweep, 0);
    for t in 0..1000 {
        let n = rng.gen_range(1..=12);
        let mut m = IsingModel::new(n);
        for i in 0..n {
            m.add_field(
                i,
                Rational::new(rng.gen_range(-20..=20), rng.gen_range(1..=4)),
            );
            for j in (i + 1)..n {
                if rng.gen_bool(0.5) {
                    m.add_coupling(
                        i,
                        j,
                        Rational::new(rng.gen_range(-20..=20), rng.gen_range(1..=4)),
                    );
                }
            }
        }
        m.add_offset(Rational::new(rng.gen_range(-9..=9), 1));
        let gauge: Vec<bool> = (0..n).map(|_| rng.gen()).collect();
        let s: Vec<bool> = (0..n).map(|_| rng.gen()).collect();
        let before = m.energy(&ungauge(&s, &gauge)).unwrap();
        let after = apply_gauge(&m, &gauge).energy(&s).unwrap();
        ensure!(before == after, "triple {t}: {before} != {after}");
    }
    Ok("1000 triples".into())
}

fn c11_sampler_competence() -> Outcome {
    let start = Instant::now();
    let dist = odd_pair_distances(&fig1()).unwrap();
    let q = build_qubo(&dist, int(8)).unwrap();
    let samples = parallel::simulated_annealing(&q.to_ising(), Schedule::default(), 1000, 11)
        .map_err(|e| e.to_string())?;
    let lowest = samples.lowest().map(|s| s.energy);
    ensure!(lowest == Some(int(5)), "SA lowest energy {lowest:?}");
    let p = p_gs(&samples, int(5)).unwrap();
    ensure!(p >= 0.5, "SA P_gs = {p}");
    let mut instances = vec![fig1()];
    instances.extend(instances_with_d(&[2, 4, 6], 20, 1100));
    for (i, g) in instances.iter().enumerate() {
        let dist = odd_pair_distances(g).unwrap();
        let q = build_qubo(&dist, int(dist.d() as i64)).unwrap();
        let (e0, _) = exact_ground_states(&q);
        let found = tabu_search(
            &q,
            TabuParams {
                seed: i as u64,
                ..TabuParams::default()
            },
        )
        .map_err(|e| e.to_string())?;
        let best = found.lowest().map(|s| s.energy);
        ensure!(
            best == Some(e0),
            "tabu on instance {i} (d = {}): {best:?} vs E0 {e0}",
            dist.d()
        );
    }
    let t = within(start.elapsed(), Duration::from_secs(30))?;
    Ok(format!(
        "SA P_gs = {p:.3}; tabu hit E0 on {} instances, {t}",
        instances.len()
    ))
}

fn c12_defects() -> Outcome {
    let mut graphs = Vec::new();
    let mut batch = 0;
    while graphs.len() < 100 {
        let spec = EnsembleSpec::new(9, 0.3, 100, 1200 + batch).weights(1, 10);
        for g in parallel::random_non_eulerian(&spec).unwrap() {
            if graphs.len() < 100 && (0..g.node_count()).any(|v| g.degree(v) == 1) {
                graphs.push(g);
            }
        }
        batch += 1;
    }
    let mut pendant_cells = 0;
    for (gi, g) in graphs.iter().enumerate() {
        let scan = parallel::defect_map(g, &DEFAULT_DELTAS, 1).map_err(|e| e.to_string())?;
        for entry in &scan.entries {
            let e = g.edges()[entry.edges[0]];
            ensure!(
                entry.m_min.windows(2).all(|w| w[0] <= w[1]) && entry.m_min[0] >= scan.base_m_min,
                "graph {gi} edge ({}, {}) not monotone: {:?}",
                e.u,
                e.v,
                entry.m_min
            );
            if g.degree(e.u) == 1 || g.degree(e.v) == 1 {
                for (k, &delta) in DEFAULT_DELTAS.iter().enumerate() {
                    ensure!(
                        entry.m_min[k] == scan.base_m_min + delta,
                        "graph {gi} pendant edge ({}, {}) at delta {delta}: {} vs {} + {delta}",
                        e.u,
                        e.v,
                        entry.m_min[k],
                        scan.base_m_min
                    );
                    pendant_cells += 1;
                }
            }
        }
    }
    Ok(format!("100 graphs, {pendant_cells} pendant cells exact"))
}

fn c13_unit_weight_bound() -> Outcome {
    let spec = EnsembleSpec::new(10, 0.3, 1000, 13);
    let graphs = parallel::random_non_eulerian(&spec).map_err(|e| e.to_string())?;
    ensure!(graphs.len() == 1000, "{} graphs", graphs.len());
    let mut tight = 0;
    for g in &graphs {
        let d = g.odd_nodes().len() as i64;
        let m = cpp::m_min(g).map_err(|e| e.to_string())?.m_min;
        ensure!(2 * m >= d, "M_min = {m} < d/2 = {}", d / 2);
        tight += usize::from(2 * m == d);
    }
    ensure!(tight > 0, "bound never attained");
    Ok(format!("1000 graphs, M_min = d/2 on {tight}"))
}

fn c14_penalty_sweep() -> Outcome {
    let dist = odd_pair_distances(&fig1()).unwrap();
    let config = PenaltySweepConfig {
        schedule: Schedule::default(),
        reads: 1000,
        seed: 14,
        resamples: 1000,
        tabu: TabuParams::default(),
        norm: 6,
    };
    let ps = [int(4), int(8), int(16), int(32)];
    let points = penalty_sweep(&dist, &ps, &config).map_err(|e| e.to_string())?;
    let gaps: Vec<Rational> = points.iter().map(|p| p.gap.unwrap()).collect();
    ensure!(gaps.windows(2).all(|w| w[0] <= w[1]), "gaps {gaps:?}");
    let first = &points[0].ground_matchings;
    ensure!(
        first == &vec![vec![(0, 1), (2, 3)]],
        "ground matching {first:?}"
    );
    ensure!(
        points.iter().all(|p| &p.ground_matchings == first),
        "ground matching changes with p"
    );
    for w in points.windows(2) {
        let (a, b) = (&w[0].sa, &w[1].sa);
        let band = a.two_sigma.hypot(b.two_sigma);
        ensure!(
            b.p_gs <= a.p_gs + band,
            "P_gs rises from {:.3} to {:.3} (band {band:.3}) between p = {} and {}",
            a.p_gs,
            b.p_gs,
            w[0].penalty,
            w[1].penalty
        );
    }
    let (lo, hi) = (&points[0].sa, &points[3].sa);
    ensure!(
        hi.p_gs < lo.p_gs,
        "P_gs at p = 32 ({}) not below p = 4 ({})",
        hi.p_gs,
        lo.p_gs
    );
    let summary: Vec<String> = points
        .iter()
        .map(|p| {
            format!(
                "p={} gap={} P_gs={:.3}±{:.3}",
                p.penalty,
                p.gap.unwrap(),
                p.sa.p_gs,
                p.sa.two_sigma
            )
        })
        .collect();
    Ok(summary.join("; "))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 14] = [
        ("worked example", c01_worked_example),
        ("matching counts", c02_matching_counts),
        ("QUBO semantics", c03_qubo_semantics),
        ("legality equivalence", c04_legality),
        ("size bookkeeping", c05_sizes),
        ("t_99 formula", c06_t99),
        ("clique embedding", c07_embedding),
        ("embedded energy", c08_embedded_energy),
        ("decode ordering", c09_decode_ordering),
        ("gauge invariance", c10_gauge_invariance),
        ("sampler competence", c11_sampler_competence),
        ("defect identities", c12_defects),
        ("unit-weight bound", c13_unit_weight_bound),
        ("penalty sweep", c14_penalty_sweep),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
    }
    println!("{} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
