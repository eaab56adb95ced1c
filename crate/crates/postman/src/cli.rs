//! The `postman` command line.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use postman_core::chimera::{
    chain_stats, clique_embedding, decode_sample_set, eccentricity_stats, validate_embedding,
    CouplerSplit,
};
use postman_core::cpp::{self, odd_pair_distances};
use postman_core::defect::{mmin_vs_cmax, DEFAULT_DELTAS};
use postman_core::metrics::{self, MetricsReport, SweepConfig, DEFAULT_ANNEAL_TIME, DEFAULT_TAU_S};
use postman_core::qubo::{build_qubo, default_penalty};
use postman_core::rational::{self, int};
use postman_core::samplers::{tabu_search, TabuParams};
use postman_core::{
    ChimeraTopology, DecodePolicy, Embedding, EnsembleSpec, QuboModel, Rational, Schedule,
};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::experiments::{ground_truth, penalty_sweep, PenaltySweepConfig};
use crate::{embedding_io, graph_io, json, parallel, qubo_io, reports, samples_io};

#[derive(Debug, Parser)]
#[command(
    name = "postman",
    version,
    about = "Chinese postman solver, QUBO compiler and annealing simulator"
)]
pub struct Cli {
    /// Worker threads (default: all cores)
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Output format; each subcommand has its own default
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write results here instead of stdout
    #[arg(long, short, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SamplerKind {
    Sa,
    Tabu,
    Exact,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Policy {
    Discard,
    Majority,
}

impl From<Policy> for DecodePolicy {
    fn from(p: Policy) -> Self {
        match p {
            Policy::Discard => DecodePolicy::DiscardBroken,
            Policy::Majority => DecodePolicy::MajorityVote,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Split {
    Equal,
    Single,
}

fn parse_rational(s: &str) -> std::result::Result<Rational, String> {
    rational::parse(s).ok_or_else(|| format!("{s:?} is not an exact number (try 3, 0.25 or 7/2)"))
}

#[derive(Debug, Clone, Args)]
pub struct SeedArgs {
    /// Master seed
    #[arg(long, env = "POSTMAN_SEED", default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Args)]
pub struct AnnealArgs {
    #[arg(long, default_value_t = 1000)]
    pub reads: usize,
    #[arg(long, default_value_t = 1000)]
    pub sweeps: usize,
    #[arg(long, default_value_t = 0.1)]
    pub beta_start: f64,
    #[arg(long, default_value_t = 5.0)]
    pub beta_end: f64,
}

impl AnnealArgs {
    fn schedule(&self) -> Result<Schedule> {
        Ok(Schedule::new(self.beta_start, self.beta_end, self.sweeps)?)
    }
}

#[derive(Debug, Clone, Args)]
pub struct TopologyArgs {
    /// Chimera grid size
    #[arg(long, default_value_t = 12)]
    pub m: usize,
    /// File of faulty qubit ids
    #[arg(long)]
    pub faults: Option<PathBuf>,
    /// Embedding JSON to use instead of the clique embedding
    #[arg(long)]
    pub embedding: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct EmbedModelArgs {
    /// QUBO file (text or JSON)
    pub model: PathBuf,
    #[command(flatten)]
    pub topology: TopologyArgs,
    /// Spin-reversal gauges (0 = none)
    #[arg(long, default_value_t = 0)]
    pub gauges: usize,
    /// Reference ground energy (default: computed exactly)
    #[arg(long, value_parser = parse_rational)]
    pub reference: Option<Rational>,
    /// Anneal time per read in seconds, for T_99
    #[arg(long, default_value_t = DEFAULT_ANNEAL_TIME)]
    pub anneal_time: f64,
    #[arg(long, value_enum, default_value_t = Split::Equal)]
    pub split: Split,
    /// Skip rescaling into the hardware coefficient ranges
    #[arg(long)]
    pub no_autoscale: bool,
    #[command(flatten)]
    pub anneal: AnnealArgs,
    #[command(flatten)]
    pub seed: SeedArgs,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate random connected non-Eulerian graphs
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.3)]
        edge_prob: f64,
        #[arg(long, default_value_t = 1)]
        w_lo: i64,
        #[arg(long, default_value_t = 1)]
        w_hi: i64,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, default_value_t = EnsembleSpec::DEFAULT_MAX_ATTEMPTS)]
        max_attempts: usize,
        #[command(flatten)]
        seed: SeedArgs,
    },
    /// Solve the postman problem exactly
    Exact {
        graph: PathBuf,
        /// Omit the Euler circuit
        #[arg(long)]
        no_circuit: bool,
    },
    /// Compile a graph into its QUBO
    Qubo {
        graph: PathBuf,
        /// Penalty constant (default: number of odd nodes)
        #[arg(long, value_parser = parse_rational)]
        p: Option<Rational>,
        /// Emit the Ising form as JSON
        #[arg(long)]
        ising: bool,
    },
    /// Sample a QUBO with annealing, tabu search or exhaustive search
    Sample {
        model: PathBuf,
        #[arg(long, value_enum, default_value_t = SamplerKind::Sa)]
        sampler: SamplerKind,
        #[command(flatten)]
        anneal: AnnealArgs,
        #[arg(long, default_value_t = 10)]
        tenure: usize,
        #[arg(long, default_value_t = 20)]
        restarts: usize,
        #[arg(long)]
        stagnation: Option<usize>,
        #[command(flatten)]
        seed: SeedArgs,
    },
    /// Embed a complete logical graph into a Chimera topology
    Embed {
        /// Number of logical variables
        #[arg(long, conflicts_with = "model", required_unless_present = "model")]
        logical: Option<usize>,
        /// Take the variable count from a QUBO file
        #[arg(long)]
        model: Option<PathBuf>,
        #[arg(long, default_value_t = 12)]
        m: usize,
        #[arg(long)]
        faults: Option<PathBuf>,
        /// Report chain and eccentricity statistics instead of the chains
        #[arg(long)]
        stats: bool,
    },
    /// Anneal an embedded QUBO at one chain strength and decode
    Simulate {
        #[command(flatten)]
        model: EmbedModelArgs,
        /// Chain strength in units of the largest embedded coefficient
        #[arg(long, value_parser = parse_rational, default_value = "1")]
        jf: Rational,
        #[arg(long, value_enum, default_value_t = Policy::Majority)]
        policy: Policy,
    },
    /// P_gs and T_99 over a chain-strength grid, both decoding policies
    JfSweep {
        #[command(flatten)]
        model: EmbedModelArgs,
        /// Comma-separated J_F values
        #[arg(long, value_parser = parse_rational, value_delimiter = ',', default_value = "0.2,0.4,0.6,0.8,1,1.2,1.4,1.6,1.8,2")]
        grid: Vec<Rational>,
    },
    /// Spectral gap and sampler P_gs as the penalty grows
    PenaltySweep {
        graph: PathBuf,
        /// Comma-separated penalties (default: d, 2d, 4d, 8d)
        #[arg(long, value_parser = parse_rational, value_delimiter = ',')]
        p: Option<Vec<Rational>>,
        #[arg(long, default_value_t = 1000)]
        resamples: usize,
        #[command(flatten)]
        anneal: AnnealArgs,
        #[command(flatten)]
        seed: SeedArgs,
    },
    /// Defect maps of M_min, or the M_min versus degree study of an ensemble
    Defects {
        #[arg(required_unless_present = "ensemble", conflicts_with = "ensemble")]
        graph: Option<PathBuf>,
        /// Ensemble JSON from `gen`; prints (d, c_max, M_min) rows
        #[arg(long)]
        ensemble: Option<PathBuf>,
        /// Comma-separated defect magnitudes
        #[arg(long, value_parser = parse_rational, value_delimiter = ',')]
        deltas: Option<Vec<Rational>>,
        /// Simultaneous defects per configuration
        #[arg(long, default_value_t = 1)]
        k: usize,
        /// Write one heatmap CSV per delta into this directory (k = 1)
        #[arg(long)]
        heatmap_dir: Option<PathBuf>,
    },
    /// Success probability, T_99 and TTS
    Metrics {
        /// Sample set JSON from `sample` or `simulate`
        #[arg(long, required_unless_present = "p_gs")]
        samples: Option<PathBuf>,
        /// Ground energy the samples are scored against
        #[arg(long, value_parser = parse_rational, required_unless_present_any = ["p_gs", "model"])]
        reference: Option<Rational>,
        /// Compute the reference from this QUBO
        #[arg(long)]
        model: Option<PathBuf>,
        /// Evaluate the formulas for a given success probability
        #[arg(long, conflicts_with = "samples")]
        p_gs: Option<f64>,
        #[arg(long, default_value_t = DEFAULT_ANNEAL_TIME)]
        anneal_time: f64,
        /// Problem size N for TTS
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 1000)]
        sweeps: usize,
        #[arg(long, default_value_t = DEFAULT_TAU_S)]
        tau_s: f64,
        #[arg(long, default_value_t = 5000)]
        resamples: usize,
        #[command(flatten)]
        seed: SeedArgs,
    },
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let _ = write!(stderr, "{}", e.render());
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{}", e.render());
                    0
                }
                _ => 1,
            };
        }
    };
    match execute(cli, stdout) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

fn emit(out: &Option<PathBuf>, stdout: &mut dyn Write, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Error::io(path, e)),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| Error::io("<stdout>", e)),
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialise");
    s.push('\n');
    s
}

fn topology(m: usize, faults: &Option<PathBuf>) -> Result<ChimeraTopology> {
    let faulty = match faults {
        Some(p) => embedding_io::parse_faults(&read(p)?)?,
        None => Vec::new(),
    };
    Ok(ChimeraTopology::new(m, &faulty)?)
}

fn weight_list(values: &[Rational], den: i64) -> Result<Vec<i64>> {
    values
        .iter()
        .map(|&v| {
            let scaled = v * int(den);
            if scaled.is_integer() {
                Ok(scaled.to_integer())
            } else {
                Err(Error::Usage(format!(
                    "delta {} is finer than the graph's weight resolution 1/{den}",
                    rational::format(v)
                )))
            }
        })
        .collect()
}

struct EmbeddedRun {
    logical: postman_core::IsingModel,
    topo: ChimeraTopology,
    emb: Embedding,
    reference: Rational,
    config: SweepConfig,
}

fn prepare_embedded(args: &EmbedModelArgs, policies: Vec<DecodePolicy>) -> Result<EmbeddedRun> {
    let q = qubo_io::parse_qubo(&read(&args.model)?)?;
    let topo = topology(args.topology.m, &args.topology.faults)?;
    let emb = match &args.topology.embedding {
        Some(p) => embedding_io::parse_embedding(&read(p)?)?,
        None => clique_embedding(q.dim(), &topo)?,
    };
    let reference = match args.reference {
        Some(r) => r,
        None => ground_truth(&q)?.e0,
    };
    let config = SweepConfig {
        schedule: args.anneal.schedule()?,
        reads: args.anneal.reads,
        gauges: args.gauges,
        seed: args.seed.seed,
        anneal_time: args.anneal_time,
        autoscale: !args.no_autoscale,
        split: match args.split {
            Split::Equal => CouplerSplit::Equal,
            Split::Single => CouplerSplit::Single,
        },
        policies,
    };
    Ok(EmbeddedRun {
        logical: q.to_ising(),
        topo,
        emb,
        reference,
        config,
    })
}

fn load_qubo(path: &Path) -> Result<QuboModel> {
    qubo_io::parse_qubo(&read(path)?)
}

pub fn execute(cli: Cli, stdout: &mut dyn Write) -> Result<()> {
    let Cli {
        threads,
        format,
        out,
        command,
    } = cli;
    let text = parallel::with_threads(threads, move || dispatch(command, format))??;
    emit(&out, stdout, &text)
}

fn dispatch(command: Command, format: Option<Format>) -> Result<String> {
    let json_or = |default: Format| format.unwrap_or(default);
    match command {
        Command::Gen {
            n,
            edge_prob,
            w_lo,
            w_hi,
            count,
            max_attempts,
            seed,
        } => {
            let mut spec = EnsembleSpec::new(n, edge_prob, count, seed.seed).weights(w_lo, w_hi);
            spec.max_attempts = max_attempts;
            let graphs = parallel::random_non_eulerian(&spec)?;
            match json_or(Format::Json) {
                Format::Json => Ok(pretty(&graph_io::ensemble_to_json(&spec, &graphs))),
                Format::Csv => graph_io::ensemble_to_csv(&graphs),
            }
        }
        Command::Exact { graph, no_circuit } => {
            let g = graph_io::parse_graph(&read(&graph)?)?;
            let sol = if no_circuit {
                cpp::m_min(&g)?
            } else {
                cpp::solve(&g)?
            };
            match json_or(Format::Json) {
                Format::Json => Ok(pretty(&reports::cpp_solution_to_json(&sol))),
                Format::Csv => reports::cpp_solution_to_csv(&sol),
            }
        }
        Command::Qubo { graph, p, ising } => {
            let g = graph_io::parse_graph(&read(&graph)?)?;
            let dist = odd_pair_distances(&g)?;
            let p = p.unwrap_or_else(|| default_penalty(&dist));
            let q = build_qubo(&dist, p)?;
            if ising {
                return Ok(pretty(&qubo_io::ising_to_json(&q.to_ising())));
            }
            match format {
                Some(Format::Json) => Ok(pretty(&qubo_io::qubo_to_json(&q))),
                Some(Format::Csv) => Err(Error::Usage(
                    "qubo supports the text format or --format json".into(),
                )),
                None => Ok(qubo_io::write_qubo(&q)),
            }
        }
        Command::Sample {
            model,
            sampler,
            anneal,
            tenure,
            restarts,
            stagnation,
            seed,
        } => {
            let q = load_qubo(&model)?;
            let set = match sampler {
                SamplerKind::Sa => parallel::simulated_annealing(
                    &q.to_ising(),
                    anneal.schedule()?,
                    anneal.reads,
                    seed.seed,
                )?,
                SamplerKind::Tabu => tabu_search(
                    &q,
                    TabuParams {
                        tenure,
                        max_restarts: restarts,
                        stagnation_limit: stagnation,
                        seed: seed.seed,
                    },
                )?,
                SamplerKind::Exact => {
                    let truth = ground_truth(&q)?;
                    if json_or(Format::Json) == Format::Json {
                        let states: Vec<Vec<u8>> = truth
                            .ground_states
                            .iter()
                            .map(|x| x.iter().map(|&b| u8::from(b)).collect())
                            .collect();
                        return Ok(pretty(&json!({
                            "e0": json::to_value(truth.e0),
                            "e1": truth.e1.map(json::to_value),
                            "gap": truth.e1.map(|e1| json::to_value(e1 - truth.e0)),
                            "ground_states": states,
                        })));
                    }
                    let e0 = truth.e0;
                    postman_core::SampleSet::from_reads(
                        postman_core::Vartype::Binary,
                        truth.ground_states,
                        |_| e0,
                        Default::default(),
                    )
                }
            };
            match json_or(Format::Json) {
                Format::Json => Ok(pretty(&samples_io::sample_set_to_json(&set))),
                Format::Csv => samples_io::histogram_csv(&set),
            }
        }
        Command::Embed {
            logical,
            model,
            m,
            faults,
            stats,
        } => {
            let n = match (logical, model) {
                (Some(n), _) => n,
                (None, Some(p)) => load_qubo(&p)?.dim(),
                (None, None) => return Err(Error::Usage("give --logical or --model".into())),
            };
            let topo = topology(m, &faults)?;
            let emb = clique_embedding(n, &topo)?;
            let edges: Vec<(usize, usize)> = (0..n)
                .flat_map(|a| ((a + 1)..n).map(move |b| (a, b)))
                .collect();
            let violations = validate_embedding(&emb, &topo, &edges);
            if !violations.is_empty() {
                return Err(
                    postman_core::Error::InvalidEmbedding(format!("{violations:?}")).into(),
                );
            }
            if stats {
                let ecc = eccentricity_stats(&emb, &topo).ok();
                let mut v = embedding_io::stats_to_json(&chain_stats(&emb), ecc.as_ref());
                v["topology"] = json!({ "m": m, "enabled_qubits": topo.enabled_qubit_count() });
                return Ok(pretty(&v));
            }
            Ok(pretty(&embedding_io::embedding_to_json(&emb)))
        }
        Command::Simulate { model, jf, policy } => {
            let policy = DecodePolicy::from(policy);
            let run = prepare_embedded(&model, vec![policy])?;
            let embedded = postman_core::chimera::embed_ising(
                &run.logical,
                &run.emb,
                &run.topo,
                jf,
                run.config.split,
            )?;
            let physical = if run.config.autoscale {
                postman_core::chimera::autoscale(&embedded.model).0
            } else {
                embedded.model.clone()
            };
            let raw = metrics::sample_embedded(
                &physical,
                &run.config,
                run.config.seed,
                &parallel::Parallel,
            )?;
            let decoded = decode_sample_set(&raw, &embedded, &run.logical, policy);
            let mut report = MetricsReport::from_samples(
                &decoded.samples,
                run.reference,
                run.config.anneal_time,
                1000,
                run.config.seed,
            )?;
            report.j_f = Some(jf);
            report.gauges = Some(run.config.gauges);
            report.policy = Some(policy);
            match json_or(Format::Json) {
                Format::Json => Ok(pretty(&json!({
                    "seed": run.config.seed,
                    "reference": json::to_value(run.reference),
                    "physical_qubits": embedded.qubits.len(),
                    "broken_reads": decoded.broken_reads,
                    "broken_chains": decoded.broken_chains,
                    "metrics": reports::metrics_to_json(&report),
                    "samples": samples_io::sample_set_to_json(&decoded.samples),
                }))),
                Format::Csv => samples_io::histogram_csv(&decoded.samples),
            }
        }
        Command::JfSweep { model, grid } => {
            let run = prepare_embedded(
                &model,
                vec![DecodePolicy::DiscardBroken, DecodePolicy::MajorityVote],
            )?;
            let points = parallel::jf_sweep(
                &run.logical,
                &run.emb,
                &run.topo,
                &grid,
                run.reference,
                &run.config,
            )?;
            match json_or(Format::Csv) {
                Format::Json => Ok(pretty(&reports::sweep_to_json(&points, run.config.seed))),
                Format::Csv => reports::sweep_to_csv(&points),
            }
        }
        Command::PenaltySweep {
            graph,
            p,
            resamples,
            anneal,
            seed,
        } => {
            let g = graph_io::parse_graph(&read(&graph)?)?;
            let dist = odd_pair_distances(&g)?;
            let d = dist.d() as i64;
            let penalties = p.unwrap_or_else(|| [1, 2, 4, 8].iter().map(|&k| int(k * d)).collect());
            let config = PenaltySweepConfig {
                schedule: anneal.schedule()?,
                reads: anneal.reads,
                seed: seed.seed,
                resamples,
                tabu: TabuParams::default(),
                norm: g.node_count(),
            };
            let points = penalty_sweep(&dist, &penalties, &config)?;
            match json_or(Format::Csv) {
                Format::Json => Ok(pretty(&reports::penalty_sweep_to_json(&points, seed.seed))),
                Format::Csv => reports::penalty_sweep_csv(&points),
            }
        }
        Command::Defects {
            graph,
            ensemble,
            deltas,
            k,
            heatmap_dir,
        } => {
            if let Some(path) = ensemble {
                let graphs = graph_io::parse_ensemble(&read(&path)?)?;
                let groups = mmin_vs_cmax(&graphs)?;
                return match json_or(Format::Csv) {
                    Format::Json => Ok(pretty(&reports::degree_study_to_json(&groups))),
                    Format::Csv => reports::degree_study_csv(&groups),
                };
            }
            let path = graph
                .ok_or_else(|| Error::Usage("a graph file or --ensemble is required".into()))?;
            let g = graph_io::parse_graph(&read(&path)?)?;
            let deltas = match deltas {
                Some(list) => weight_list(&list, g.denominator())?,
                None => DEFAULT_DELTAS
                    .iter()
                    .map(|&d| d * g.denominator())
                    .collect(),
            };
            let scan = parallel::defect_map(&g, &deltas, k)?;
            if let Some(dir) = heatmap_dir {
                if k != 1 {
                    return Err(Error::Usage("heatmaps need --k 1".into()));
                }
                fs::create_dir_all(&dir).map_err(|e| Error::io(&dir, e))?;
                for (i, &delta) in scan.deltas.iter().enumerate() {
                    let name = rational::format(g.to_rational(delta)).replace('/', "_");
                    let file = dir.join(format!("heatmap_delta_{name}.csv"));
                    let csv = reports::heatmap_csv(&scan, i).expect("k = 1 scan")?;
                    fs::write(&file, csv).map_err(|e| Error::io(&file, e))?;
                }
            }
            match json_or(Format::Csv) {
                Format::Json => Ok(pretty(&reports::defects_to_json(&scan))),
                Format::Csv => reports::defects_csv(&scan),
            }
        }
        Command::Metrics {
            samples,
            reference,
            model,
            p_gs,
            anneal_time,
            n,
            sweeps,
            tau_s,
            resamples,
            seed,
        } => {
            if let Some(p) = p_gs {
                if !(0.0..=1.0).contains(&p) {
                    return Err(Error::Usage(format!("--p-gs {p} outside [0, 1]")));
                }
                let v = json!({
                    "p_gs": p,
                    "t_99": json::float(metrics::t_99(p, anneal_time)),
                    "anneal_time": anneal_time,
                    "tts": n.map(|n| json::float(metrics::tts_sa(p, n, sweeps, tau_s))),
                });
                return match json_or(Format::Json) {
                    Format::Json => Ok(pretty(&v)),
                    Format::Csv => reports::to_csv(
                        &["p_gs", "t_99", "tts"],
                        [vec![
                            p.to_string(),
                            metrics::t_99(p, anneal_time).to_string(),
                            n.map(|n| metrics::tts_sa(p, n, sweeps, tau_s).to_string())
                                .unwrap_or_default(),
                        ]],
                    ),
                };
            }
            let path = samples.ok_or_else(|| Error::Usage("--samples is required".into()))?;
            let set = samples_io::parse_sample_set(&read(&path)?)?;
            let reference = match (reference, model) {
                (Some(r), _) => r,
                (None, Some(m)) => ground_truth(&load_qubo(&m)?)?.e0,
                (None, None) => return Err(Error::Usage("give --reference or --model".into())),
            };
            let mut report =
                MetricsReport::from_samples(&set, reference, anneal_time, resamples, seed.seed)?;
            if let Some(n) = n {
                report = report.with_tts(n, sweeps, tau_s);
            }
            match json_or(Format::Json) {
                Format::Json => Ok(pretty(&reports::metrics_to_json(&report))),
                Format::Csv => reports::metrics_to_csv(&report),
            }
        }
    }
}
