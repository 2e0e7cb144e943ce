//! Dynamically weighted MWIS benchmark: one graph, `m` weight assignments,
//! solved three ways.
//!
//! * hybrid: embed once, reuse the embedding for every assignment;
//! * standard: the same per-assignment work, but the embedding cost is
//!   charged once per assignment;
//! * classical: exact branch and bound with the constraint set built once.
//!
//! The hybrid and standard totals are computed from one shared run, so
//! `T_std - T_H = (m - 1) t_embed` holds exactly. All aggregate times are
//! [`Duration`]s (integer nanoseconds), which keeps that identity exact.

mod report;
mod weights;

pub use report::{records_to_csv, summary_json, CSV_HEADER, WALL_CLOCK_COLUMNS};
pub use weights::gen_weights;

use std::time::{Duration, Instant};

use serde::Serialize;

use crate::anneal::{k_p, optimal_count, proc_time, sample, SamplerConfig, TimingModel, DEFAULT_CONFIDENCE};
use crate::bip::{build_constraints, solve_bip};
use crate::embedding::{embed_qubo, heuristic_embed, unembed, ChainPolicy, EmbedOptions, Embedding};
use crate::error::BenchError;
use crate::graph::{validate_weights, Graph, WeightedGraph};
use crate::qubo::{mwis_to_qubo, scale_to_unit, Penalty};
use crate::seed::derive_seed;

/// A graph with `m >= 1` positive weight vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct DwmwisInstance {
    pub name: String,
    graph: Graph,
    assignments: Vec<Vec<f64>>,
}

impl DwmwisInstance {
    pub fn new(name: impl Into<String>, graph: Graph, assignments: Vec<Vec<f64>>) -> Result<Self, BenchError> {
        if assignments.is_empty() {
            return Err(BenchError::Instance("at least one weight assignment is required".into()));
        }
        for w in &assignments {
            validate_weights(graph.n(), w)?;
        }
        Ok(DwmwisInstance {
            name: name.into(),
            graph,
            assignments,
        })
    }

    /// Uses `assignments` when given, else the graph's own weights as the
    /// single assignment.
    pub fn from_weighted(name: impl Into<String>, g: &WeightedGraph, assignments: Option<Vec<Vec<f64>>>) -> Result<Self, BenchError> {
        let assignments = assignments.unwrap_or_else(|| vec![g.weights().to_vec()]);
        DwmwisInstance::new(name, g.graph().clone(), assignments)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn assignments(&self) -> &[Vec<f64>] {
        &self.assignments
    }

    pub fn m(&self) -> usize {
        self.assignments.len()
    }

    pub fn weighted(&self, i: usize) -> WeightedGraph {
        WeightedGraph::new(self.graph.clone(), self.assignments[i].clone())
            .expect("assignments validated on construction")
    }
}

/// Sample-budget escalation: stages of `(runs, samples_per_run)` are tried
/// in order until at least `min_hits` optimal samples have been seen.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Escalation {
    pub stages: Vec<(usize, usize)>,
    pub min_hits: usize,
}

impl Escalation {
    /// Two runs of `base`, then five more, then two of `2 * base`.
    pub fn standard(base: usize) -> Self {
        Escalation {
            stages: vec![(2, base), (5, base), (2, 2 * base)],
            min_hits: 5,
        }
    }

    pub fn max_samples(&self) -> usize {
        self.stages.iter().map(|(r, s)| r * s).sum()
    }
}

/// Where the embedding comes from.
#[derive(Debug, Clone)]
pub enum EmbeddingSource {
    /// Run the heuristic embedder with these options.
    Heuristic(EmbedOptions),
    /// Reuse a stored embedding; its search cost was paid elsewhere, so
    /// `t_embed` is zero.
    Given(Embedding),
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    /// `num_samples` is ignored; the escalation stages set per-run sizes.
    pub sampler: SamplerConfig,
    pub escalation: Escalation,
    pub chain: ChainPolicy,
    pub penalty: Penalty,
    pub timing: TimingModel,
    /// Target confidence `p` for `k_p`.
    pub confidence: f64,
    /// Absolute tolerance on logical energy when counting optimal samples.
    pub tol: f64,
    pub embedding: EmbeddingSource,
    /// Run the embedder once per assignment to measure the standard
    /// pipeline's embedding cost directly.
    pub reembed_each: bool,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            sampler: SamplerConfig::default(),
            escalation: Escalation::standard(1000),
            chain: ChainPolicy::default(),
            penalty: Penalty::Auto,
            timing: TimingModel::dwave2x(),
            confidence: DEFAULT_CONFIDENCE,
            tol: 1e-6,
            embedding: EmbeddingSource::Heuristic(EmbedOptions::default()),
            reembed_each: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Status {
    Solved,
    Unsolved,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AssignmentResult {
    pub index: usize,
    pub status: Status,
    pub s: f64,
    /// `None` when no optimal sample was seen.
    pub k99: Option<f64>,
    pub n_opt: usize,
    pub n_total: usize,
    /// Exact optimum from the classical solver.
    pub optimal_value: f64,
    /// Best logical value among the annealer's (repaired) samples.
    pub best_value: f64,
    pub chain_strength: f64,
    /// Modelled device time; for unsolved assignments it charges every
    /// sample drawn and is only a lower bound.
    #[serde(with = "crate::anneal::secs")]
    pub t_proc: Duration,
    /// Measured reweighting time: QUBO rebuild, chain weight split, scaling.
    #[serde(with = "crate::anneal::secs")]
    pub t_reweight: Duration,
}

impl AssignmentResult {
    /// Everything charged for this assignment apart from embedding.
    pub fn charged(&self, tm: &TimingModel) -> Duration {
        tm.t_conv + tm.t_pre + self.t_reweight + self.t_proc
    }
}

#[derive(Debug, Clone)]
pub struct ClassicalRun {
    pub values: Vec<f64>,
    pub sets: Vec<Vec<usize>>,
    /// Constraint build plus every solve.
    pub wall: Duration,
}

/// One constraint build, then one exact solve per assignment.
pub fn run_classical(inst: &DwmwisInstance) -> Result<ClassicalRun, BenchError> {
    let start = Instant::now();
    let cs = build_constraints(inst.graph());
    let mut values = Vec::with_capacity(inst.m());
    let mut sets = Vec::with_capacity(inst.m());
    for w in inst.assignments() {
        let sol = solve_bip(&cs, w)?;
        values.push(sol.value);
        sets.push(sol.vertices);
    }
    Ok(ClassicalRun {
        values,
        sets,
        wall: start.elapsed(),
    })
}

/// `t_embed + sum_i charged_i`.
pub fn hybrid_total(t_embed: Duration, per_assignment: &[Duration]) -> Duration {
    t_embed + per_assignment.iter().sum::<Duration>()
}

/// `sum_i (t_embed + charged_i)`.
pub fn standard_total(t_embed: Duration, per_assignment: &[Duration]) -> Duration {
    per_assignment.iter().map(|&c| t_embed + c).sum()
}

#[derive(Debug, Clone, Serialize)]
pub struct EmbeddingStats {
    pub source: &'static str,
    pub qubits: usize,
    pub max_chain: usize,
    pub winning_try: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct BenchmarkRecord {
    pub instance: String,
    pub n: usize,
    pub num_edges: usize,
    pub physical_n: usize,
    pub embedding: EmbeddingStats,
    pub assignments: Vec<AssignmentResult>,
    pub timing: TimingModel,
    /// Measured search time (zero for a given embedding).
    pub t_embed_measured: Duration,
    /// Embedding time charged under the timing model.
    pub t_embed: Duration,
    pub t_h: Duration,
    pub t_std: Duration,
    pub t_c: Duration,
    /// Per-assignment embedder times when re-embedding was requested; then
    /// `t_std` uses these instead of `m * t_embed`.
    pub reembed_times: Option<Vec<Duration>>,
}

impl BenchmarkRecord {
    pub fn m(&self) -> usize {
        self.assignments.len()
    }

    pub fn unsolved(&self) -> Vec<usize> {
        self.assignments
            .iter()
            .filter(|a| a.status == Status::Unsolved)
            .map(|a| a.index)
            .collect()
    }

    pub fn all_solved(&self) -> bool {
        self.assignments.iter().all(|a| a.status == Status::Solved)
    }

    /// `T_std - T_H == (m - 1) t_embed`, compared in whole nanoseconds.
    /// Only meaningful without re-embedding.
    pub fn identity_holds(&self) -> bool {
        self.reembed_times.is_none() && self.t_std.checked_sub(self.t_h) == Some(self.t_embed * (self.m() as u32 - 1))
    }
}

/// `(R_H, R_C) = (T_std / T_H, T_H / T_C)`. Unavailable when any assignment
/// is unsolved. A zero `T_H` (nothing charged at all) gives `R_H = 1`.
pub fn ratios(rec: &BenchmarkRecord) -> Result<(f64, f64), BenchError> {
    let unsolved = rec.unsolved().len();
    if unsolved > 0 {
        return Err(BenchError::Unsolved(unsolved));
    }
    let th = rec.t_h.as_secs_f64();
    let r_h = if rec.t_h.is_zero() { 1.0 } else { rec.t_std.as_secs_f64() / th };
    let r_c = th / rec.t_c.as_secs_f64();
    Ok((r_h, r_c))
}

fn solve_assignment(
    inst: &DwmwisInstance,
    i: usize,
    e: &Embedding,
    gp: &Graph,
    cfg: &BenchConfig,
    optimal_value: f64,
) -> Result<AssignmentResult, BenchError> {
    let wg = inst.weighted(i);
    let start = Instant::now();
    let q = mwis_to_qubo(&wg, cfg.penalty)?;
    let (qp, chain_strength) = embed_qubo(&q, e, gp, &cfg.chain)?;
    let (qs, _) = scale_to_unit(&qp)?;
    let t_reweight = start.elapsed();

    let optimal_energy = -optimal_value;
    let mut n_opt = 0;
    let mut n_total = 0;
    let mut best_value = 0.0_f64;
    let mut run = 0u64;
    'stages: for &(runs, samples) in &cfg.escalation.stages {
        for _ in 0..runs {
            let sampler = SamplerConfig {
                num_samples: samples,
                seed: derive_seed(cfg.sampler.seed, &[i as u64, run]),
                ..cfg.sampler
            };
            run += 1;
            let physical = sample(&qs, gp, &sampler)?;
            let logical = physical.map_bits(|bits| {
                let x = unembed(bits, e, &wg, &cfg.chain);
                let energy = q.energy(&x).expect("unembedded vector matches the logical QUBO");
                (x, energy)
            });
            n_opt += optimal_count(&logical, optimal_energy, cfg.tol);
            n_total += logical.total;
            if let Some(best) = logical.best() {
                best_value = best_value.max(-best.energy);
            }
        }
        if n_opt >= cfg.escalation.min_hits {
            break 'stages;
        }
    }
    let s = n_opt as f64 / n_total as f64;
    let (status, k99, k_charged) = match k_p(s, cfg.confidence) {
        Ok(k) => (Status::Solved, Some(k), k),
        Err(_) => (Status::Unsolved, None, n_total as f64),
    };
    Ok(AssignmentResult {
        index: i,
        status,
        s,
        k99,
        n_opt,
        n_total,
        optimal_value,
        best_value,
        chain_strength,
        t_proc: proc_time(k_charged, &cfg.timing),
        t_reweight,
    })
}

/// Runs the classical baseline, then the shared quantum pipeline, and
/// assembles hybrid and standard totals from the same per-assignment work.
/// Returns the record and the embedding that was used.
pub fn run_benchmark(
    inst: &DwmwisInstance,
    gp: &Graph,
    cfg: &BenchConfig,
) -> Result<(BenchmarkRecord, Embedding), BenchError> {
    let classical = run_classical(inst)?;

    let (embedding, t_embed_measured, winning_try, source) = match &cfg.embedding {
        EmbeddingSource::Heuristic(opts) => {
            let found = heuristic_embed(inst.graph(), gp, opts)?;
            (found.embedding, found.elapsed, Some(found.winning_try), "heuristic")
        }
        EmbeddingSource::Given(e) => (e.clone(), Duration::ZERO, None, "given"),
    };
    let t_embed = cfg.timing.embed_time(t_embed_measured);

    let reembed_times = match (&cfg.embedding, cfg.reembed_each) {
        (EmbeddingSource::Heuristic(opts), true) => {
            let mut times = Vec::with_capacity(inst.m());
            for i in 0..inst.m() {
                let opts = EmbedOptions {
                    seed: derive_seed(opts.seed, &[i as u64]),
                    ..*opts
                };
                let found = heuristic_embed(inst.graph(), gp, &opts)?;
                times.push(cfg.timing.embed_time(found.elapsed));
            }
            Some(times)
        }
        _ => None,
    };

    let assignments = (0..inst.m())
        .map(|i| solve_assignment(inst, i, &embedding, gp, cfg, classical.values[i]))
        .collect::<Result<Vec<_>, _>>()?;

    let charged: Vec<Duration> = assignments.iter().map(|a| a.charged(&cfg.timing)).collect();
    let t_h = hybrid_total(t_embed, &charged);
    let t_std = match &reembed_times {
        Some(times) => times.iter().sum::<Duration>() + charged.iter().sum::<Duration>(),
        None => standard_total(t_embed, &charged),
    };

    let record = BenchmarkRecord {
        instance: inst.name.clone(),
        n: inst.graph().n(),
        num_edges: inst.graph().num_edges(),
        physical_n: gp.n(),
        embedding: EmbeddingStats {
            source,
            qubits: embedding.num_qubits(),
            max_chain: embedding.max_chain_len(),
            winning_try,
        },
        assignments,
        timing: cfg.timing,
        t_embed_measured,
        t_embed,
        t_h,
        t_std,
        t_c: classical.wall,
        reembed_times,
    };
    Ok((record, embedding))
}
