use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use embedreuse::anneal::{SamplerConfig, TimingModel, DEFAULT_CONFIDENCE};
use embedreuse::bench::{
    gen_weights, records_to_csv, run_benchmark, summary_json, BenchConfig, DwmwisInstance, EmbeddingSource,
    Escalation,
};
use embedreuse::embedding::{heuristic_embed, verify_embedding, ChainPolicy, ChainStrength, EmbedOptions, Embedding};
use embedreuse::graph::{chimera, generate_family, parse_instance, to_instance_json, FamilySpec};
use embedreuse::qubo::{mwis_to_qubo, Penalty};
use embedreuse::{BenchError, EmbeddingError, WeightedGraph};

const EXIT_UNSOLVED: u8 = 2;
const EXIT_EMBEDDING: u8 = 3;
const EXIT_INPUT: u8 = 4;

/// Embedding-reuse benchmark for dynamically weighted MWIS on Chimera
/// hardware graphs.
#[derive(Parser)]
#[command(name = "embedreuse", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a graph-family instance with `m` random weight assignments.
    Gen(GenArgs),
    /// Run the hybrid, standard and classical pipelines and write reports.
    Bench(BenchArgs),
    /// Check an embedding file against the three minor-embedding conditions.
    Verify(VerifyArgs),
    /// Find an embedding with the heuristic embedder and write it as JSON.
    Embed(EmbedArgs),
    /// Print the MWIS QUBO of an instance as `i j value` lines.
    Qubo(QuboArgs),
}

#[derive(Args)]
struct GenArgs {
    /// Family name: Cycle, Star, Complete, CompleteBipartite, Grid,
    /// Hypercube or Petersen.
    family: String,
    /// Family parameters, e.g. `4 4` for CompleteBipartite.
    params: Vec<usize>,
    #[arg(long, default_value_t = 1)]
    m: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct Source {
    /// JSON instance file.
    #[arg(long, conflicts_with = "family", required_unless_present = "family")]
    graph: Option<PathBuf>,
    /// Built-in family name; parameters follow via --params.
    #[arg(long)]
    family: Option<String>,
    /// Family parameters, comma separated.
    #[arg(long, value_delimiter = ',', requires = "family")]
    params: Vec<usize>,
}

#[derive(Args)]
struct BenchArgs {
    #[command(flatten)]
    source: Source,
    /// Weight assignments to generate when the instance carries none.
    #[arg(long)]
    m: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Samples per annealer run; escalation doubles it in the last stage.
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    #[arg(long)]
    sweeps: Option<usize>,
    /// Chimera size; defaults to ceil(n / 4), which always fits a clique.
    #[arg(long)]
    chimera_k: Option<usize>,
    /// `auto` or a positive number.
    #[arg(long, default_value = "auto")]
    chain_strength: String,
    /// `dwave2x`, `zero`, or a JSON file with the timing constants.
    #[arg(long, default_value = "dwave2x")]
    timing_profile: String,
    /// Target confidence for the time-to-solution estimate.
    #[arg(long, default_value_t = DEFAULT_CONFIDENCE)]
    p: f64,
    /// Output directory for the CSV, summary and embedding files.
    #[arg(long, default_value = ".")]
    out: PathBuf,
    #[arg(long)]
    threads: Option<usize>,
    /// Also run the embedder once per assignment and charge those times.
    #[arg(long)]
    reembed_each: bool,
    #[arg(long, default_value_t = 8)]
    max_tries: usize,
    /// Reuse a stored embedding instead of searching for one.
    #[arg(long)]
    embedding: Option<PathBuf>,
    /// Instance label used in reports and file names.
    #[arg(long)]
    name: Option<String>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    source: Source,
    #[arg(long)]
    embedding: PathBuf,
    /// Overrides the Chimera size stored in the embedding file.
    #[arg(long)]
    chimera_k: Option<usize>,
}

#[derive(Args)]
struct EmbedArgs {
    #[command(flatten)]
    source: Source,
    #[arg(long)]
    chimera_k: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 8)]
    max_tries: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct QuboArgs {
    #[command(flatten)]
    source: Source,
    /// `auto` or a number larger than the maximum weight.
    #[arg(long, default_value = "auto")]
    penalty: String,
}

#[derive(Debug)]
enum Failure {
    Input(String),
    Embedding(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => EXIT_INPUT,
            Failure::Embedding(_) => EXIT_EMBEDDING,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            Failure::Input(_) => "input",
            Failure::Embedding(_) => "embedding",
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Embedding(m) => m,
        }
    }
}

fn input<E: std::fmt::Display>(context: &str) -> impl FnOnce(E) -> Failure + '_ {
    move |e| Failure::Input(format!("{context}: {e}"))
}

impl From<BenchError> for Failure {
    fn from(e: BenchError) -> Self {
        match e {
            BenchError::Embedding(EmbeddingError::NotFound { .. }) => Failure::Embedding(e.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

/// Everything that determines a run's reproducible output.
#[derive(Serialize)]
struct RunManifest {
    subcommand: &'static str,
    source: SourceManifest,
    m: usize,
    seed: u64,
    sampler: SamplerConfig,
    escalation: Escalation,
    chimera_k: usize,
    timing_profile: String,
    chain_policy: ChainPolicy,
    confidence: f64,
    max_tries: usize,
    reembed_each: bool,
    embedding_file: Option<PathBuf>,
    outputs: Vec<PathBuf>,
}

#[derive(Serialize)]
#[serde(untagged)]
enum SourceManifest {
    File { graph: PathBuf },
    Family { family: FamilySpec },
}

struct Loaded {
    name: String,
    graph: WeightedGraph,
    assignments: Option<Vec<Vec<f64>>>,
    manifest: SourceManifest,
}

fn load(source: &Source) -> Result<Loaded, Failure> {
    if let Some(path) = &source.graph {
        let text = fs::read_to_string(path).map_err(input(&path.display().to_string()))?;
        let (graph, assignments) = parse_instance(&text).map_err(input(&path.display().to_string()))?;
        let name = path.file_stem().map_or("instance".into(), |s| s.to_string_lossy().into_owned());
        return Ok(Loaded {
            name,
            graph,
            assignments,
            manifest: SourceManifest::File { graph: path.clone() },
        });
    }
    let family = source.family.as_deref().expect("clap requires --graph or --family");
    let spec = FamilySpec::from_parts(family, &source.params).map_err(input("--family"))?;
    let g = generate_family(spec).map_err(input("--family"))?;
    let n = g.n();
    Ok(Loaded {
        name: spec.to_string(),
        graph: WeightedGraph::new(g, vec![1.0; n]).expect("unit weights are valid"),
        assignments: None,
        manifest: SourceManifest::Family { family: spec },
    })
}

fn write_out(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(input(&p.display().to_string())),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn default_chimera_k(n: usize) -> usize {
    n.div_ceil(4).max(1)
}

fn parse_positive(flag: &str, text: &str) -> Result<Option<f64>, Failure> {
    if text == "auto" {
        return Ok(None);
    }
    match text.parse::<f64>() {
        Ok(v) if v.is_finite() && v > 0.0 => Ok(Some(v)),
        _ => Err(Failure::Input(format!("{flag}: expected `auto` or a positive number, got `{text}`"))),
    }
}

fn cmd_gen(args: GenArgs) -> Result<u8, Failure> {
    if args.m == 0 {
        return Err(Failure::Input("--m must be at least 1".into()));
    }
    let spec = FamilySpec::from_parts(&args.family, &args.params).map_err(input("family"))?;
    let g = generate_family(spec).map_err(input("family"))?;
    let assignments = gen_weights(g.n(), args.m, args.seed);
    let wg = WeightedGraph::new(g, assignments[0].clone()).expect("generated weights are positive");
    write_out(args.out.as_deref(), &to_instance_json(&wg, Some(&assignments)))?;
    Ok(0)
}

fn cmd_bench(args: BenchArgs) -> Result<u8, Failure> {
    if let Some(t) = args.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(input("--threads"))?;
    }
    if !(args.p > 0.0 && args.p < 1.0) {
        return Err(Failure::Input(format!("--p must lie in (0, 1), got {}", args.p)));
    }
    if args.samples == 0 || args.sweeps == Some(0) || args.max_tries == 0 {
        return Err(Failure::Input("--samples, --sweeps and --max-tries must be positive".into()));
    }
    let loaded = load(&args.source)?;
    let n = loaded.graph.n();
    let assignments = match (loaded.assignments, args.m) {
        (Some(a), None) => a,
        (Some(a), Some(m)) if m <= a.len() => a[..m].to_vec(),
        (Some(a), Some(m)) => {
            return Err(Failure::Input(format!("--m {m} exceeds the {} assignments in the instance", a.len())))
        }
        (None, m) => {
            let m = m.unwrap_or(100);
            if m == 0 {
                return Err(Failure::Input("--m must be at least 1".into()));
            }
            gen_weights(n, m, args.seed)
        }
    };
    let name = args.name.clone().unwrap_or(loaded.name);
    let inst = DwmwisInstance::new(name.clone(), loaded.graph.graph().clone(), assignments).map_err(Failure::from)?;

    let (timing, profile) = match TimingModel::by_name(&args.timing_profile) {
        Some(tm) => (tm, args.timing_profile.clone()),
        None => {
            let text = fs::read_to_string(&args.timing_profile).map_err(input("--timing-profile"))?;
            (TimingModel::from_json(&text).map_err(input("--timing-profile"))?, args.timing_profile.clone())
        }
    };
    let chain_strength = match parse_positive("--chain-strength", &args.chain_strength)? {
        Some(v) => ChainStrength::Fixed(v),
        None => ChainStrength::Auto,
    };

    let (embedding, stored_k) = match &args.embedding {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(input(&path.display().to_string()))?;
            let (e, k) = Embedding::from_json(&text).map_err(input(&path.display().to_string()))?;
            (Some(e), k)
        }
        None => (None, None),
    };
    let k = args.chimera_k.or(stored_k).unwrap_or_else(|| default_chimera_k(n));
    if k == 0 {
        return Err(Failure::Input("--chimera-k must be at least 1".into()));
    }
    let gp = chimera(k);
    let source = match embedding {
        Some(e) => {
            let report = verify_embedding(inst.graph(), &gp, &e);
            if !report.is_valid() {
                return Err(Failure::Embedding(format!("stored embedding is invalid:\n{report}")));
            }
            EmbeddingSource::Given(e)
        }
        None => EmbeddingSource::Heuristic(EmbedOptions {
            seed: args.seed,
            max_tries: args.max_tries,
            ..EmbedOptions::default()
        }),
    };

    let sampler = SamplerConfig {
        num_samples: args.samples,
        sweeps: args.sweeps,
        seed: args.seed,
        ..SamplerConfig::default()
    };
    let cfg = BenchConfig {
        sampler,
        escalation: Escalation::standard(args.samples),
        chain: ChainPolicy::with_strength(chain_strength),
        timing,
        confidence: args.p,
        embedding: source,
        reembed_each: args.reembed_each,
        ..BenchConfig::default()
    };

    fs::create_dir_all(&args.out).map_err(input(&args.out.display().to_string()))?;
    let csv_path = args.out.join(format!("{name}.csv"));
    let summary_path = args.out.join(format!("{name}.summary.json"));
    let embedding_path = args.out.join(format!("{name}.embedding.json"));
    let manifest = RunManifest {
        subcommand: "bench",
        source: loaded.manifest,
        m: inst.m(),
        seed: args.seed,
        sampler: cfg.sampler,
        escalation: cfg.escalation.clone(),
        chimera_k: k,
        timing_profile: profile,
        chain_policy: cfg.chain,
        confidence: cfg.confidence,
        max_tries: args.max_tries,
        reembed_each: args.reembed_each,
        embedding_file: args.embedding.clone(),
        outputs: vec![csv_path.clone(), summary_path.clone(), embedding_path.clone()],
    };

    let (record, used) = run_benchmark(&inst, &gp, &cfg)?;
    let manifest_json = serde_json::to_value(&manifest).expect("manifest serializes");
    let summary = summary_json(&record, Some(&manifest_json));
    write_out(Some(&csv_path), &records_to_csv(std::slice::from_ref(&record)))?;
    write_out(
        Some(&summary_path),
        &(serde_json::to_string_pretty(&summary).expect("summary serializes") + "\n"),
    )?;
    write_out(Some(&embedding_path), &(used.to_json(Some(k)) + "\n"))?;

    let unsolved = record.unsolved();
    println!(
        "{name}: m={} qubits={} solved={}/{} T_H={:.6}s T_std={:.6}s T_C={:.6}s",
        record.m(),
        record.embedding.qubits,
        record.m() - unsolved.len(),
        record.m(),
        record.t_h.as_secs_f64(),
        record.t_std.as_secs_f64(),
        record.t_c.as_secs_f64(),
    );
    Ok(if unsolved.is_empty() { 0 } else { EXIT_UNSOLVED })
}

fn chimera_for(k: Option<usize>, stored: Option<usize>, n: usize) -> Result<usize, Failure> {
    match k.or(stored).unwrap_or_else(|| default_chimera_k(n)) {
        0 => Err(Failure::Input("--chimera-k must be at least 1".into())),
        k => Ok(k),
    }
}

fn cmd_verify(args: VerifyArgs) -> Result<u8, Failure> {
    let loaded = load(&args.source)?;
    let path = &args.embedding;
    let text = fs::read_to_string(path).map_err(input(&path.display().to_string()))?;
    let (e, stored_k) = Embedding::from_json(&text).map_err(input(&path.display().to_string()))?;
    let k = chimera_for(args.chimera_k, stored_k, loaded.graph.n())?;
    let report = verify_embedding(loaded.graph.graph(), &chimera(k), &e);
    print!("{report}");
    Ok(if report.is_valid() { 0 } else { EXIT_EMBEDDING })
}

fn cmd_embed(args: EmbedArgs) -> Result<u8, Failure> {
    let loaded = load(&args.source)?;
    let k = chimera_for(args.chimera_k, None, loaded.graph.n())?;
    let opts = EmbedOptions {
        seed: args.seed,
        max_tries: args.max_tries,
        ..EmbedOptions::default()
    };
    let found = heuristic_embed(loaded.graph.graph(), &chimera(k), &opts).map_err(|e| match e {
        EmbeddingError::NotFound { .. } => Failure::Embedding(e.to_string()),
        other => Failure::Input(other.to_string()),
    })?;
    write_out(args.out.as_deref(), &found.embedding.to_json(Some(k)))?;
    Ok(0)
}

fn cmd_qubo(args: QuboArgs) -> Result<u8, Failure> {
    let loaded = load(&args.source)?;
    let penalty = match parse_positive("--penalty", &args.penalty)? {
        Some(v) => Penalty::Explicit(v),
        None => Penalty::Auto,
    };
    let q = mwis_to_qubo(&loaded.graph, penalty).map_err(input("--penalty"))?;
    print!("{}", q.to_coo());
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Gen(a) => cmd_gen(a),
        Command::Bench(a) => cmd_bench(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Embed(a) => cmd_embed(a),
        Command::Qubo(a) => cmd_qubo(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            let line = serde_json::json!({"error": f.kind(), "code": f.code(), "message": f.message()});
            eprintln!("{line}");
            ExitCode::from(f.code())
        }
    }
}
