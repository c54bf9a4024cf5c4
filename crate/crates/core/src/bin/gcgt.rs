use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::Rng;
use serde::Serialize;

use gcgt::graph::{certify_expansion, generate, min_cut, EdgeSet, Family, Graph};
use gcgt::group_testing::{check_disjunct, decode, run_tests, OutcomeVector};
use gcgt::harness::{
    emit_plot, read_csv_file, run_experiment, unix_now, write_csv, ExperimentConfig, ExperimentKind, Method,
    RunManifest,
};
use gcgt::testgen::{make_tests, random_tests, random_walk_tests, ComponentMode, MakeTestsParams, TestCollection, WalkParams};
use gcgt::theory::{
    connectivity_rate, connectivity_threshold, exploration_bound_check, gamblers_ruin, giant_component_rate,
    ruin_oracle, RuinParams,
};
use gcgt::{seed, Error, Result};

#[derive(Parser)]
#[command(name = "gcgt", version, about = "Graph-constrained group testing for link-failure localization")]
struct Cli {
    /// Worker threads for parallel sections (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a graph from a family spec, e.g. `fat_tree:8` or `complete:23`.
    GenerateGraph {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build a test collection over a graph's edges.
    MakeTests(MakeTestsArgs),
    /// Exact d-disjunctness check; exits 1 with a witness line when it fails.
    CheckDisjunct {
        #[arg(long)]
        tests: PathBuf,
        #[arg(long)]
        d: usize,
    },
    /// Outcomes of a collection for a given set of failed edges.
    RunTests {
        #[arg(long)]
        tests: PathBuf,
        /// Failed edge ids, comma or space separated.
        #[arg(long, allow_hyphen_values = true)]
        defective: String,
    },
    /// Naive decoder: edges whose every test was positive.
    Decode {
        #[arg(long)]
        tests: PathBuf,
        /// One 0/1 character per test.
        #[arg(long)]
        outcomes: OutcomeVector,
    },
    /// Empirical checks of the sparsification results.
    #[command(subcommand)]
    Lab(Lab),
    /// Success-probability curves for the test constructions.
    #[command(subcommand)]
    Experiment(Experiment),
    /// Render experiment CSV as SVG plots, one per (graph, d).
    Plot {
        #[arg(long)]
        csv: PathBuf,
        #[arg(long)]
        out_dir: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Subgraph,
    Random,
    Walk,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    AllLarge,
    LargestOnly,
}

#[derive(Args)]
struct MakeTestsArgs {
    /// Graph file, or a family spec.
    #[arg(long)]
    graph: String,
    #[arg(long, value_enum)]
    method: MethodArg,
    #[arg(long)]
    d: usize,
    #[arg(long, default_value_t = 2.0)]
    delta: f64,
    #[arg(long, default_value_t = 0.25)]
    beta: f64,
    /// Rounds (subgraph) or tests (random, walk).
    #[arg(long)]
    tau: usize,
    #[arg(long, value_enum, default_value = "all-large")]
    mode: ModeArg,
    /// Walk-length multiplier.
    #[arg(long, default_value_t = 4.0)]
    l: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SparsifyArgs {
    /// Graph file, or a family spec.
    #[arg(long)]
    graph: String,
    #[arg(long, default_value_t = 0)]
    edge: usize,
    #[arg(long)]
    p: f64,
    #[arg(long, default_value_t = 0.25)]
    beta: f64,
    /// Expansion alpha; computed exactly when omitted (n <= 24 only).
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long, default_value_t = 10_000)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Lab {
    /// P(e survives and lies in a component of >= beta n vertices) against p eps / 8.
    GiantComponent(SparsifyArgs),
    /// Capped exploration success rate against eps / 8.
    Explore(SparsifyArgs),
    /// Simulated gambler's ruin against the closed form.
    Ruin {
        #[arg(long)]
        gamma: f64,
        #[arg(long)]
        a: u32,
        #[arg(long)]
        b: u32,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Connectivity of G(p) against 1 - 1/n.
    Connectivity {
        #[arg(long)]
        graph: String,
        /// Defaults to 5 ln n / K with K the minimum cut.
        #[arg(long)]
        p: Option<f64>,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args)]
struct ExperimentArgs {
    /// Family spec, e.g. `fat_tree:8`.
    #[arg(long)]
    graph: String,
    #[arg(long, value_delimiter = ',', default_value = "subgraph,walk,random")]
    methods: Vec<Method>,
    #[arg(long)]
    d: usize,
    /// Test counts: a comma list, or `start:end:step` (end inclusive).
    #[arg(long)]
    taus: String,
    #[arg(long, default_value_t = 100)]
    trials: u64,
    #[arg(long)]
    seed: u64,
    /// Walk-length multiplier (default 1 on complete graphs, 4 otherwise).
    #[arg(long)]
    l: Option<f64>,
    /// CSV output (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Where to write the run manifest.
    #[arg(long)]
    manifest: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Experiment {
    DisjunctProb(ExperimentArgs),
    RandomFailures(ExperimentArgs),
    /// Rerun the experiment recorded in a manifest.
    Replay {
        #[arg(long)]
        manifest: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn load_graph(arg: &str) -> Result<Graph> {
    if Path::new(arg).exists() {
        Graph::read(arg)
    } else {
        generate(&arg.parse()?)
    }
}

fn parse_taus(s: &str) -> Result<Vec<usize>> {
    let bad = || Error::InvalidParameter(format!("bad tau list {s:?}"));
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
    let parts: Vec<&str> = s.split(':').collect();
    match parts.as_slice() {
        [list] => list.split(',').map(num).collect(),
        [start, end, step] => {
            let (start, end, step) = (num(start)?, num(end)?, num(step)?);
            if step == 0 || start > end {
                return Err(bad());
            }
            Ok((start..=end).step_by(step).collect())
        }
        _ => Err(bad()),
    }
}

fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, text)?,
        None => io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn csv_row<T: Serialize>(row: &T) -> Result<()> {
    let mut w = csv::Writer::from_writer(io::stdout());
    w.serialize(row)?;
    w.flush()?;
    Ok(())
}

fn alpha_for(g: &Graph, beta: f64, given: Option<f64>) -> Result<f64> {
    match given {
        Some(a) => Ok(a),
        None => Ok(certify_expansion(g, beta)?.alpha_f64()),
    }
}

#[derive(Serialize)]
struct SparsifyRow<'a> {
    lab: &'a str,
    graph: &'a str,
    edge: usize,
    p: f64,
    beta: f64,
    alpha: f64,
    trials: u64,
    seed: u64,
    empirical: f64,
    bound: Option<f64>,
    stderr: f64,
}

#[derive(Serialize)]
struct RuinRow {
    lab: &'static str,
    gamma: f64,
    a: u32,
    b: u32,
    trials: u64,
    seed: u64,
    empirical: f64,
    bound: f64,
    oracle: f64,
    stderr: f64,
}

#[derive(Serialize)]
struct ConnectivityRow<'a> {
    lab: &'static str,
    graph: &'a str,
    p: f64,
    trials: u64,
    seed: u64,
    empirical: f64,
    bound: Option<f64>,
    stderr: f64,
}

fn lab(cmd: Lab) -> Result<()> {
    match cmd {
        Lab::GiantComponent(a) => {
            let g = load_graph(&a.graph)?;
            let alpha = alpha_for(&g, a.beta, a.alpha)?;
            let r = giant_component_rate(&g, a.edge, a.p, a.beta, alpha, a.trials, a.seed)?;
            csv_row(&SparsifyRow {
                lab: "giant-component",
                graph: &a.graph,
                edge: a.edge,
                p: a.p,
                beta: a.beta,
                alpha,
                trials: a.trials,
                seed: a.seed,
                empirical: r.estimate.rate(),
                bound: r.bound,
                stderr: r.estimate.stderr(),
            })
        }
        Lab::Explore(a) => {
            let g = load_graph(&a.graph)?;
            let alpha = alpha_for(&g, a.beta, a.alpha)?;
            let r = exploration_bound_check(&g, a.edge, a.p, a.beta, alpha, a.trials, a.seed)?;
            eprintln!(
                "escape walk: {} (stderr {}) to M = {}",
                r.escape.rate(),
                r.escape.stderr(),
                r.target
            );
            csv_row(&SparsifyRow {
                lab: "explore",
                graph: &a.graph,
                edge: a.edge,
                p: a.p,
                beta: a.beta,
                alpha,
                trials: a.trials,
                seed: a.seed,
                empirical: r.exploration.rate(),
                bound: r.escape_bound,
                stderr: r.exploration.stderr(),
            })
        }
        Lab::Ruin { gamma, a, b, trials, seed } => {
            let params = RuinParams::new(gamma, a, b)?;
            if trials == 0 {
                return Err(Error::InvalidParameter("trials must be at least 1".into()));
            }
            let hits = (0..trials)
                .filter(|&i| {
                    let mut rng = seed::rng(seed::derive(seed, &[i]));
                    ruin_walk(a, b, gamma, &mut rng)
                })
                .count() as u64;
            let est = gcgt::theory::Estimate::new(hits, trials);
            csv_row(&RuinRow {
                lab: "ruin",
                gamma,
                a,
                b,
                trials,
                seed,
                empirical: est.rate(),
                bound: gamblers_ruin(&params),
                oracle: ruin_oracle(&params),
                stderr: est.stderr(),
            })
        }
        Lab::Connectivity { graph, p, trials, seed } => {
            let g = load_graph(&graph)?;
            let threshold = connectivity_threshold(g.n(), min_cut(&g)?);
            let p = p.unwrap_or_else(|| threshold.min(1.0));
            let est = connectivity_rate(&g, p, trials, seed)?;
            csv_row(&ConnectivityRow {
                lab: "connectivity",
                graph: &graph,
                p,
                trials,
                seed,
                empirical: est.rate(),
                bound: (p >= threshold).then(|| 1.0 - 1.0 / g.n() as f64),
                stderr: est.stderr(),
            })
        }
    }
}

fn ruin_walk(a: u32, b: u32, gamma: f64, rng: &mut seed::GcgtRng) -> bool {
    let mut pos = 0i64;
    loop {
        pos += if rng.gen::<f64>() < gamma { 1 } else { -1 };
        if pos >= a as i64 {
            return true;
        }
        if pos <= -(b as i64) {
            return false;
        }
    }
}

fn run_and_write(config: &ExperimentConfig, out: Option<&Path>, manifest: Option<&Path>) -> Result<()> {
    let started = unix_now();
    let records = run_experiment(config)?;
    let mut buf = Vec::new();
    write_csv(&records, &mut buf)?;
    emit(std::str::from_utf8(&buf).expect("csv is utf-8"), out)?;
    if let Some(m) = manifest {
        RunManifest::new(config, started).write(m)?;
    }
    Ok(())
}

fn experiment(cmd: Experiment) -> Result<()> {
    let (kind, a) = match cmd {
        Experiment::DisjunctProb(a) => (ExperimentKind::DisjunctProb, a),
        Experiment::RandomFailures(a) => (ExperimentKind::RandomFailures, a),
        Experiment::Replay { manifest, out } => {
            let m = RunManifest::read(&manifest)?;
            m.check_replayable()?;
            return run_and_write(&m.config, out.as_deref(), None);
        }
    };
    let config = ExperimentConfig {
        kind,
        graph: a.graph,
        methods: a.methods,
        d: a.d,
        taus: parse_taus(&a.taus)?,
        trials: a.trials,
        seed: a.seed,
        l: a.l,
    };
    run_and_write(&config, a.out.as_deref(), a.manifest.as_deref())
}

fn make(a: MakeTestsArgs) -> Result<TestCollection> {
    let g = load_graph(&a.graph)?;
    match a.method {
        MethodArg::Subgraph => make_tests(
            &g,
            &MakeTestsParams {
                d: a.d,
                delta: a.delta,
                beta: a.beta,
                tau: a.tau,
                mode: match a.mode {
                    ModeArg::AllLarge => ComponentMode::AllLarge,
                    ModeArg::LargestOnly => ComponentMode::LargestOnly,
                },
                seed: a.seed,
            },
        ),
        MethodArg::Random => random_tests(g.m(), a.d, a.tau, a.seed),
        MethodArg::Walk => random_walk_tests(&g, &WalkParams::for_graph(&g, a.d, a.l, a.tau, a.seed)?),
    }
}

fn parse_ids(s: &str, m: usize) -> Result<EdgeSet> {
    let mut set = EdgeSet::new(m);
    for tok in s.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()) {
        let id: usize = tok
            .parse()
            .map_err(|_| Error::InvalidParameter(format!("bad edge id {tok:?}")))?;
        if id >= m {
            return Err(Error::InvalidParameter(format!("edge {id} out of range (m = {m})")));
        }
        set.insert(id);
    }
    Ok(set)
}

fn join(set: &EdgeSet) -> String {
    set.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(" ")
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::GenerateGraph { family, out } => {
            let g = generate(&family)?;
            eprintln!("{family}: n = {}, m = {}", g.n(), g.m());
            emit(&g.to_text(), out.as_deref())?;
        }
        Command::MakeTests(a) => {
            let out = a.out.clone();
            let tests = make(a)?;
            emit(&tests.to_text(), out.as_deref())?;
        }
        Command::CheckDisjunct { tests, d } => {
            let report = check_disjunct(&TestCollection::read(tests)?, d)?;
            match report.witness {
                None => println!("DISJUNCT"),
                Some(w) => {
                    println!("{} | {}", w.edge, join(&w.defectives));
                    return Ok(ExitCode::from(1));
                }
            }
        }
        Command::RunTests { tests, defective } => {
            let tests = TestCollection::read(tests)?;
            let b = parse_ids(&defective, tests.m())?;
            println!("{}", run_tests(&tests, &b)?);
        }
        Command::Decode { tests, outcomes } => {
            let declared = decode(&TestCollection::read(tests)?, &outcomes)?;
            println!("{}", join(&declared));
        }
        Command::Lab(cmd) => lab(cmd)?,
        Command::Experiment(cmd) => experiment(cmd)?,
        Command::Plot { csv, out_dir } => {
            for path in emit_plot(&read_csv_file(csv)?, out_dir)? {
                println!("{}", path.display());
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
