use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use super::files::{load_graph, load_matrix, InputFile};
use super::journal::{ExperimentRecord, Journal};
use super::table1::table1_experiment;
use super::{digest_bytes, sig6};
use crate::apps::{
    boost_epsilon, boost_row_scan, boost_row_scan_sampled, dense_subgraph_complete, gi_exhaustive_check,
    permanental_polynomial, poly_distinguish, recover_permanent_from_epsilon, Backend, MatrixFamily, SampledConfig,
    GI_EXHAUSTIVE_MAX_N,
};
use crate::encoder::{decompose_mesh, encode_with_scale, EncodedCircuit};
use crate::error::{Error, Result};
use crate::focksim::{
    estimate_abs_permanent_with, full_distribution, sample_with, BatchConfig, OutcomePattern, StoppingRule,
    DEFAULT_MAX_SHOTS,
};
use crate::graphlib::{classical_isomorphic, Graph};
use crate::numkernel::{permanent_exact, permanent_integer, ComplexMatrix};

/// Environment variable overriding the results directory.
pub const RESULTS_DIR_ENV: &str = "PHOTONPERM_RESULTS_DIR";

#[derive(Debug, Parser)]
#[command(
    name = "photonperm",
    version,
    about = "Permanents, graph problems and boosting through simulated linear-optical circuits"
)]
pub struct Cli {
    /// Directory for result files and journal.jsonl.
    #[arg(long, global = true, env = RESULTS_DIR_ENV, default_value = "results")]
    pub results_dir: PathBuf,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Clone, Serialize)]
#[group(required = true, multiple = false)]
pub struct MatrixInput {
    /// Graph file (JSON edge list, 1-indexed, or 0/1 adjacency CSV).
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Matrix file (JSON {"re", "im"} or real CSV).
    #[arg(long)]
    matrix: Option<PathBuf>,
}

#[derive(Debug, Args, Clone, Serialize)]
pub struct SamplingArgs {
    /// Use exact values (the default when no sample budget is given).
    #[arg(long, conflicts_with_all = ["samples", "postselected"])]
    exact: bool,
    /// Fixed number of shots.
    #[arg(long)]
    samples: Option<u64>,
    /// Draw until this many post-selected events.
    #[arg(long, conflicts_with = "samples")]
    postselected: Option<u64>,
    /// Shot cap for --postselected.
    #[arg(long, default_value_t = DEFAULT_MAX_SHOTS)]
    max_shots: u64,
    /// Master seed; generated and recorded when absent.
    #[arg(long)]
    seed: Option<u64>,
    /// Shots per RNG stream.
    #[arg(long, default_value_t = 1 << 16)]
    batch_size: u64,
    /// Batches run concurrently between stopping-rule checks.
    #[arg(long, default_value_t = 64)]
    wave: usize,
}

impl SamplingArgs {
    fn rule(&self) -> Option<StoppingRule> {
        match (self.samples, self.postselected) {
            (Some(n), _) => Some(StoppingRule::fixed(n)),
            (None, Some(m)) => Some(StoppingRule::PostSelected {
                target: m,
                max_shots: self.max_shots,
            }),
            _ => None,
        }
    }

    fn batch(&self) -> BatchConfig {
        BatchConfig {
            batch_size: self.batch_size,
            wave: self.wave,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
pub enum Family {
    Adjacency,
    Laplacian,
}

impl From<Family> for MatrixFamily {
    fn from(f: Family) -> Self {
        match f {
            Family::Adjacency => MatrixFamily::Adjacency,
            Family::Laplacian => MatrixFamily::Laplacian,
        }
    }
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Command {
    /// Rescale and dilate a matrix into a unitary; optionally decompose it
    /// into a beamsplitter mesh.
    Encode {
        #[command(flatten)]
        input: MatrixInput,
        /// Scale s >= sigma_max (default sigma_max).
        #[arg(long)]
        scale: Option<f64>,
        /// Also write the beamsplitter mesh.
        #[arg(long)]
        mesh: bool,
    },
    /// Permanent of a matrix or adjacency matrix, exact or estimated.
    Permanent {
        #[command(flatten)]
        input: MatrixInput,
        #[command(flatten)]
        sampling: SamplingArgs,
    },
    /// Permanental polynomial Per(xI - M) of a graph.
    PermPoly {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_enum, default_value = "adjacency")]
        mode: Family,
        /// n + 1 evaluation points (comma separated); random when absent.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        points: Option<Vec<f64>>,
        #[command(flatten)]
        sampling: SamplingArgs,
    },
    /// Compare two graphs: polynomial distinguishers and exact search.
    Gi {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        other: PathBuf,
        /// Random evaluation points per distinguisher.
        #[arg(long, default_value_t = 3)]
        trials: usize,
        #[command(flatten)]
        sampling: SamplingArgs,
    },
    /// Rank completions of an anchor set to a k-vertex subgraph.
    DenseSubgraph {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        k: usize,
        /// Anchor vertices (1-indexed, comma separated).
        #[arg(long, value_delimiter = ',')]
        anchors: Vec<usize>,
        #[command(flatten)]
        sampling: SamplingArgs,
    },
    /// Scan row scaling A_w.
    BoostW {
        #[command(flatten)]
        input: MatrixInput,
        /// Row to scale (1-indexed).
        #[arg(long)]
        row: usize,
        /// "start:stop:step" or a comma-separated list.
        #[arg(long, default_value = "1:8:0.25")]
        w_grid: String,
        #[command(flatten)]
        sampling: SamplingArgs,
    },
    /// Scan the diagonal shift A + eps I.
    BoostEps {
        #[command(flatten)]
        input: MatrixInput,
        /// "start:stop:step" or a comma-separated list.
        #[arg(long, default_value = "0:5:0.25")]
        eps_grid: String,
        /// Also recover Per(A) from n + 1 shifted permanents.
        #[arg(long)]
        recover: bool,
        /// Shifts for --recover (random when absent).
        #[arg(long, value_delimiter = ',')]
        recover_points: Option<Vec<f64>>,
        #[command(flatten)]
        sampling: SamplingArgs,
    },
    /// Sample a circuit or write its exact output distribution.
    Sample {
        #[arg(long, conflicts_with_all = ["graph", "matrix"])]
        unitary: Option<PathBuf>,
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long, conflicts_with = "graph")]
        matrix: Option<PathBuf>,
        /// Input occupations such as 1-1-0-0 (default: one photon in each of
        /// the first n modes).
        #[arg(long)]
        input_pattern: Option<String>,
        /// Write the exact distribution instead of sampling.
        #[arg(long)]
        distribution: bool,
        #[command(flatten)]
        sampling: SamplingArgs,
    },
    /// Mean exact and estimated permanents of random graphs per edge
    /// probability.
    Table1 {
        #[arg(long, value_delimiter = ',', default_value = "0.70,0.78,0.86,0.94,1.00")]
        p_grid: Vec<f64>,
        #[arg(long, default_value_t = 4)]
        graphs_per_p: usize,
        #[arg(long, default_value_t = 6)]
        n: usize,
        #[command(flatten)]
        sampling: SamplingArgs,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Self::Encode { .. } => "encode",
            Self::Permanent { .. } => "permanent",
            Self::PermPoly { .. } => "perm-poly",
            Self::Gi { .. } => "gi",
            Self::DenseSubgraph { .. } => "dense-subgraph",
            Self::BoostW { .. } => "boost-w",
            Self::BoostEps { .. } => "boost-eps",
            Self::Sample { .. } => "sample",
            Self::Table1 { .. } => "table1",
        }
    }
}

/// Exit status, printed text, and the journal record of one invocation.
#[derive(Debug)]
pub struct RunOutcome {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
    pub record: Option<ExperimentRecord>,
}

/// Parses a grid: `start:stop:step` (inclusive of `stop`) or `a,b,c`.
pub fn parse_grid(text: &str) -> Result<Vec<f64>> {
    let num = |s: &str| {
        s.trim()
            .parse::<f64>()
            .map_err(|e| Error::Parse(format!("grid value {s:?}: {e}")))
    };
    if let Some((start, rest)) = text.split_once(':') {
        let (stop, step) = rest
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("grid {text:?} is not start:stop:step")))?;
        let (start, stop, step) = (num(start)?, num(stop)?, num(step)?);
        if step.is_nan() || step <= 0.0 || stop < start {
            return Err(Error::Parse(format!("grid {text:?} needs step > 0 and stop >= start")));
        }
        let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
        Ok((0..count).map(|i| start + step * i as f64).collect())
    } else {
        text.split(',').map(num).collect()
    }
}

/// What a command produced before it is journaled.
struct Execution {
    stdout: String,
    seed: Option<u64>,
    backend: String,
    input_digest: Option<String>,
    samples: Option<u64>,
    postselected: Option<u64>,
    stopping_rule: Option<StoppingRule>,
    estimates: serde_json::Value,
    /// `(suffix, contents)`; written as `<command>-<id><suffix>`.
    artifacts: Vec<(String, String)>,
}

impl Execution {
    fn new(backend: &str) -> Self {
        Self {
            stdout: String::new(),
            seed: None,
            backend: backend.into(),
            input_digest: None,
            samples: None,
            postselected: None,
            stopping_rule: None,
            estimates: serde_json::Value::Null,
            artifacts: Vec::new(),
        }
    }

    fn line(&mut self, text: impl AsRef<str>) {
        self.stdout.push_str(text.as_ref());
        self.stdout.push('\n');
    }

    fn json_artifact<T: Serialize>(&mut self, value: &T) -> Result<()> {
        self.artifacts.push((".json".into(), serde_json::to_string_pretty(value)?));
        Ok(())
    }
}

/// Runs one command line (without the program name).
pub fn run_command<S: AsRef<str>>(argv: &[S]) -> RunOutcome {
    let argv: Vec<String> = argv.iter().map(|s| s.as_ref().to_string()).collect();
    let cli = match Cli::try_parse_from(std::iter::once("photonperm".to_string()).chain(argv.iter().cloned())) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let code = e.exit_code();
            let (stdout, stderr) = if code == 0 { (text, String::new()) } else { (String::new(), text) };
            return RunOutcome {
                exit_code: code,
                stdout,
                stderr,
                record: None,
            };
        }
    };
    let started = Instant::now();
    let timestamp = chrono::Utc::now();
    let needs_seed = needs_seed(&cli.command);
    let seed = seed_arg(&cli.command).or_else(|| needs_seed.then(rand::random::<u64>));
    let mut replay = argv.clone();
    if needs_seed && seed_arg(&cli.command).is_none() {
        replay.extend(["--seed".to_string(), seed.expect("generated").to_string()]);
    }
    let failed = |e: Error| RunOutcome {
        exit_code: 1,
        stdout: String::new(),
        stderr: format!("error: {e}\n"),
        record: None,
    };
    let mut exec = match execute(&cli.command, seed) {
        Ok(x) => x,
        Err(e) => return failed(e),
    };
    exec.seed = seed;
    if !exec.artifacts.iter().any(|(suffix, _)| suffix == ".json") {
        match serde_json::to_string_pretty(&exec.estimates) {
            Ok(doc) => exec.artifacts.push((".json".into(), doc)),
            Err(e) => return failed(e.into()),
        }
    }

    let name = cli.command.name();
    let id = format!(
        "{}-{}",
        timestamp.format("%Y%m%dT%H%M%S%.6fZ"),
        &digest_bytes(format!("{replay:?}{}", timestamp.timestamp_nanos_opt().unwrap_or(0)).as_bytes())[..8]
    );
    let mut artifacts = Vec::new();
    if let Err(e) = fs::create_dir_all(&cli.results_dir) {
        return failed(e.into());
    }
    for (suffix, contents) in &exec.artifacts {
        let file = format!("{name}-{id}{suffix}");
        if let Err(e) = fs::write(cli.results_dir.join(&file), contents) {
            return failed(e.into());
        }
        artifacts.push(file);
    }
    let record = ExperimentRecord {
        id,
        timestamp: timestamp.to_rfc3339(),
        command: name.to_string(),
        argv,
        replay,
        params: serde_json::to_value(&cli.command).unwrap_or(serde_json::Value::Null),
        seed: exec.seed,
        backend: exec.backend,
        input_digest: exec.input_digest,
        samples: exec.samples,
        postselected: exec.postselected,
        stopping_rule: exec.stopping_rule,
        estimates: exec.estimates,
        artifacts,
        duration_secs: started.elapsed().as_secs_f64(),
    };
    if let Err(e) = Journal::in_dir(&cli.results_dir).append(&record) {
        return failed(e);
    }
    RunOutcome {
        exit_code: 0,
        stdout: exec.stdout,
        stderr: String::new(),
        record: Some(record),
    }
}

fn sampling_of(cmd: &Command) -> Option<&SamplingArgs> {
    match cmd {
        Command::Encode { .. } => None,
        Command::Permanent { sampling, .. }
        | Command::PermPoly { sampling, .. }
        | Command::Gi { sampling, .. }
        | Command::DenseSubgraph { sampling, .. }
        | Command::BoostW { sampling, .. }
        | Command::BoostEps { sampling, .. }
        | Command::Sample { sampling, .. }
        | Command::Table1 { sampling, .. } => Some(sampling),
    }
}

fn seed_arg(cmd: &Command) -> Option<u64> {
    sampling_of(cmd).and_then(|s| s.seed)
}

/// Commands whose output depends on random draws.
fn needs_seed(cmd: &Command) -> bool {
    match cmd {
        Command::Encode { .. } => false,
        Command::PermPoly { points, sampling, .. } => points.is_none() || sampling.rule().is_some(),
        Command::Gi { .. } | Command::Table1 { .. } => true,
        Command::BoostEps {
            recover,
            recover_points,
            sampling,
            ..
        } => sampling.rule().is_some() || (*recover && recover_points.is_none()),
        Command::Sample { distribution, .. } => !distribution,
        other => sampling_of(other).is_some_and(|s| s.rule().is_some()),
    }
}

fn backend_for(sampling: &SamplingArgs, seed: Option<u64>) -> Backend {
    match sampling.rule() {
        None => Backend::Exact,
        Some(rule) => Backend::Sampled(SampledConfig {
            rule,
            seed: seed.unwrap_or(0),
            batch: sampling.batch(),
        }),
    }
}

fn backend_name(b: &Backend) -> String {
    match b {
        Backend::Exact => "exact".into(),
        Backend::Sampled(_) => "sampled".into(),
    }
}

fn note_rule(exec: &mut Execution, sampling: &SamplingArgs) {
    exec.stopping_rule = sampling.rule();
}

fn load_input(input: &MatrixInput) -> Result<(ComplexMatrix, String, Option<Graph>)> {
    match (&input.graph, &input.matrix) {
        (Some(g), _) => {
            let (graph, digest) = load_graph(g)?;
            Ok((graph.adjacency(), digest, Some(graph)))
        }
        (None, Some(m)) => {
            let (matrix, digest) = load_matrix(m)?;
            Ok((matrix, digest, None))
        }
        (None, None) => Err(Error::Domain("pass --graph or --matrix".into())),
    }
}

fn integer_rows(a: &ComplexMatrix) -> Option<Vec<Vec<i64>>> {
    let n = a.rows();
    let mut rows = vec![vec![0i64; a.cols()]; n];
    for (i, row) in rows.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            let z = a[(i, j)];
            if z.im != 0.0 || z.re.fract() != 0.0 || z.re.abs() > 1e6 {
                return None;
            }
            *x = z.re as i64;
        }
    }
    Some(rows)
}

fn execute(cmd: &Command, seed: Option<u64>) -> Result<Execution> {
    match cmd {
        Command::Encode { input, scale, mesh } => run_encode(input, *scale, *mesh),
        Command::Permanent { input, sampling } => run_permanent(input, sampling, seed),
        Command::PermPoly {
            graph,
            mode,
            points,
            sampling,
        } => run_perm_poly(graph, (*mode).into(), points.clone(), sampling, seed),
        Command::Gi {
            graph,
            other,
            trials,
            sampling,
        } => run_gi(graph, other, *trials, sampling, seed),
        Command::DenseSubgraph {
            graph,
            k,
            anchors,
            sampling,
        } => run_dense(graph, *k, anchors, sampling, seed),
        Command::BoostW {
            input,
            row,
            w_grid,
            sampling,
        } => run_boost_w(input, *row, w_grid, sampling, seed),
        Command::BoostEps {
            input,
            eps_grid,
            recover,
            recover_points,
            sampling,
        } => run_boost_eps(input, eps_grid, *recover, recover_points.clone(), sampling, seed),
        Command::Sample {
            unitary,
            graph,
            matrix,
            input_pattern,
            distribution,
            sampling,
        } => run_sample(
            unitary.as_deref(),
            graph.clone(),
            matrix.clone(),
            input_pattern.as_deref(),
            *distribution,
            sampling,
            seed,
        ),
        Command::Table1 {
            p_grid,
            graphs_per_p,
            n,
            sampling,
        } => run_table1(p_grid, *graphs_per_p, *n, sampling, seed),
    }
}

fn run_encode(input: &MatrixInput, scale: Option<f64>, mesh: bool) -> Result<Execution> {
    let (a, digest, _) = load_input(input)?;
    let circuit = encode_with_scale(&a, scale)?;
    let mut exec = Execution::new("exact");
    exec.input_digest = Some(digest);
    exec.line(format!("modes {}", circuit.mode_count));
    exec.line(format!("scale {}", sig6(circuit.scale)));
    exec.line(format!("unitarity error {:.3e}", circuit.unitary.unitarity_error()));
    exec.artifacts.push(("-unitary.json".into(), circuit.to_json()?));
    let mut estimates = json!({
        "scale": circuit.scale,
        "modes": circuit.mode_count,
        "unitarity_error": circuit.unitary.unitarity_error(),
    });
    if mesh {
        let d = decompose_mesh(&circuit.unitary)?;
        let err = d.recompose().max_abs_diff(&circuit.unitary);
        exec.line(format!("mesh elements {} (reconstruction error {:.3e})", d.elements.len(), err));
        exec.artifacts.push(("-mesh.json".into(), serde_json::to_string_pretty(&d)?));
        estimates["mesh_elements"] = json!(d.elements.len());
        estimates["mesh_error"] = json!(err);
    }
    exec.estimates = estimates;
    Ok(exec)
}

fn run_permanent(input: &MatrixInput, sampling: &SamplingArgs, seed: Option<u64>) -> Result<Execution> {
    let (a, digest, _) = load_input(input)?;
    a.order()?;
    let backend = backend_for(sampling, seed);
    let mut exec = Execution::new(&backend_name(&backend));
    exec.input_digest = Some(digest);
    note_rule(&mut exec, sampling);
    match backend {
        Backend::Exact => {
            if let Some(rows) = integer_rows(&a) {
                let p = permanent_integer(&rows)?;
                exec.line(p.to_string());
                exec.estimates = json!({ "permanent": p as f64, "permanent_exact_integer": p.to_string() });
            } else {
                let p = permanent_exact(&a)?;
                if p.im == 0.0 {
                    exec.line(sig6(p.re));
                } else {
                    exec.line(format!("{} + {}i", sig6(p.re), sig6(p.im)));
                }
                exec.estimates = json!({ "permanent_re": p.re, "permanent_im": p.im });
            }
        }
        Backend::Sampled(cfg) => {
            let est = estimate_abs_permanent_with(&a, cfg.rule, cfg.seed, cfg.batch)?;
            exec.line(format!(
                "|Per| estimate {}  95% CI [{}, {}]",
                sig6(est.abs_permanent_estimate),
                sig6(est.confidence_interval.0),
                sig6(est.confidence_interval.1)
            ));
            exec.line(format!("shots {}  post-selected {}", est.total_samples, est.postselected_count));
            exec.samples = Some(est.total_samples);
            exec.postselected = Some(est.postselected_count);
            exec.estimates = serde_json::to_value(&est)?;
            exec.json_artifact(&est)?;
        }
    }
    Ok(exec)
}

fn run_perm_poly(
    graph: &Path,
    family: MatrixFamily,
    points: Option<Vec<f64>>,
    sampling: &SamplingArgs,
    seed: Option<u64>,
) -> Result<Execution> {
    let (g, digest) = load_graph(graph)?;
    let backend = backend_for(sampling, seed);
    let mut exec = Execution::new(&backend_name(&backend));
    exec.input_digest = Some(digest);
    note_rule(&mut exec, sampling);
    let r = permanental_polynomial(&g, family, backend, points, seed.unwrap_or(0))?;
    let coeffs: Vec<String> = r.coefficients.iter().map(|&c| sig6(c)).collect();
    exec.line(format!("{family} permanental polynomial, coefficients c_0..c_n:"));
    exec.line(coeffs.join(" "));
    exec.line(format!("condition {:.3e}  residual {:.3e}", r.condition, r.residual));
    exec.samples = Some(r.estimations.iter().map(|e| e.total_samples).sum()).filter(|&s| s > 0);
    exec.estimates = json!({ "coefficients": r.coefficients, "points": r.points, "values": r.values });
    exec.json_artifact(&r)?;
    let mut csv = String::from("x,value\n");
    for (x, v) in r.points.iter().zip(&r.values) {
        let _ = writeln!(csv, "{x:.17e},{v:.17e}");
    }
    exec.artifacts.push((".csv".into(), csv));
    Ok(exec)
}

fn run_gi(graph: &Path, other: &Path, trials: usize, sampling: &SamplingArgs, seed: Option<u64>) -> Result<Execution> {
    let (g1, d1) = load_graph(graph)?;
    let (g2, d2) = load_graph(other)?;
    let seed = seed.unwrap_or(0);
    let backend = backend_for(sampling, Some(seed));
    let mut exec = Execution::new(&backend_name(&backend));
    exec.input_digest = Some(format!("{d1},{d2}"));
    note_rule(&mut exec, sampling);
    let lap = poly_distinguish(&g1, &g2, MatrixFamily::Laplacian, backend, trials, seed)?;
    let adj = poly_distinguish(&g1, &g2, MatrixFamily::Adjacency, backend, trials, seed)?;
    let classical = if g1.n() <= crate::graphlib::ISOMORPHISM_MAX_N {
        Some(classical_isomorphic(&g1, &g2)?)
    } else {
        None
    };
    exec.line(format!("isospectral {}", lap.isospectral));
    exec.line(format!("laplacian polynomial  {}", lap.verdict));
    exec.line(format!("adjacency polynomial  {}", adj.verdict));
    let mut exhaustive = None;
    match &classical {
        Some(Some(pi)) => {
            let one_based: Vec<String> = pi.iter().map(|v| (v + 1).to_string()).collect();
            exec.line(format!("classical search      ISOMORPHIC (vertex i of second -> {})", one_based.join(" ")));
            if g1.n() <= GI_EXHAUSTIVE_MAX_N {
                let ok = gi_exhaustive_check(&g1.adjacency(), &g2.adjacency(), pi)?;
                exec.line(format!("exhaustive submatrix check {ok}"));
                exhaustive = Some(ok);
            }
        }
        Some(None) => exec.line("classical search      NON-ISOMORPHIC"),
        None => exec.line("classical search      skipped (size limit)"),
    }
    exec.estimates = json!({
        "isospectral": lap.isospectral,
        "laplacian": lap.verdict,
        "adjacency": adj.verdict,
        "isomorphic": classical.as_ref().map(|c| c.is_some()),
        "mapping": classical.clone().flatten(),
        "exhaustive_check": exhaustive,
    });
    exec.json_artifact(&json!({ "laplacian": lap, "adjacency": adj, "mapping": classical.flatten() }))?;
    Ok(exec)
}

fn run_dense(graph: &Path, k: usize, anchors: &[usize], sampling: &SamplingArgs, seed: Option<u64>) -> Result<Execution> {
    let (g, digest) = load_graph(graph)?;
    if anchors.contains(&0) {
        return Err(Error::Domain("anchors are 1-indexed".into()));
    }
    let zero_based: Vec<usize> = anchors.iter().map(|a| a - 1).collect();
    let backend = backend_for(sampling, seed);
    let mut exec = Execution::new(&backend_name(&backend));
    exec.input_digest = Some(digest);
    note_rule(&mut exec, sampling);
    let r = dense_subgraph_complete(&g, k, &zero_based, backend)?;
    exec.line(format!(
        "{} candidates, {} modes, rho = {}",
        r.candidates.len(),
        r.modes,
        sig6(r.rho)
    ));
    exec.line("rank  vertices  edges  |Per|  probability  count");
    for (rank, &i) in r.order.iter().enumerate() {
        let verts: Vec<String> = r.candidates[i].iter().map(|v| (v + 1).to_string()).collect();
        let count = r.counts.as_ref().map_or("-".to_string(), |c| c[i].to_string());
        exec.line(format!(
            "{:>4}  {:>8}  {:>5}  {}  {}  {}",
            rank + 1,
            verts.join(","),
            r.edge_counts[i],
            sig6(r.permanents[i]),
            sig6(r.probabilities[i]),
            count
        ));
    }
    exec.samples = r.total_samples;
    exec.postselected = r.counts.as_ref().map(|c| c.iter().sum());
    let top: Vec<usize> = r.top().iter().map(|v| v + 1).collect();
    exec.estimates = json!({ "top": top, "order": r.order, "counts": r.counts });
    exec.json_artifact(&r)?;
    Ok(exec)
}

fn run_boost_w(input: &MatrixInput, row: usize, grid: &str, sampling: &SamplingArgs, seed: Option<u64>) -> Result<Execution> {
    let (a, digest, _) = load_input(input)?;
    if row == 0 {
        return Err(Error::Domain("rows are 1-indexed".into()));
    }
    let grid = parse_grid(grid)?;
    let backend = backend_for(sampling, seed);
    let mut exec = Execution::new(&backend_name(&backend));
    exec.input_digest = Some(digest);
    note_rule(&mut exec, sampling);
    let scan = boost_row_scan(&a, row - 1, &grid)?;
    exec.line(format!(
        "|Per(A)| {}  baseline probability {}",
        sig6(scan.permanent),
        sig6(scan.baseline_probability)
    ));
    exec.line("w  sigma_max  probability  R  necessary  condi1  condi2");
    for p in &scan.points {
        exec.line(format!(
            "{}  {}  {}  {}  {}  {}  {}",
            sig6(p.w),
            sig6(p.sigma_max),
            sig6(p.probability),
            p.ratio.map_or("-".into(), sig6),
            p.necessary_condition,
            p.condi1,
            p.condi2
        ));
    }
    if let Some((w, r)) = scan.max_ratio() {
        exec.line(format!("max R {} at w = {}", sig6(r), sig6(w)));
    }
    if let Some(w0) = scan.crossing_w {
        exec.line(format!("R falls below 1 at w ~ {}", sig6(w0)));
    }
    let mut estimates = json!({
        "max_ratio": scan.max_ratio().map(|x| x.1),
        "crossing_w": scan.crossing_w,
        "last_boosted_w": scan.last_boosted_w,
    });
    let mut csv = Vec::new();
    scan.write_csv(&mut csv)?;
    exec.artifacts.push((".csv".into(), String::from_utf8(csv).expect("ascii csv")));
    if let Backend::Sampled(cfg) = backend {
        let samples = boost_row_scan_sampled(&a, row - 1, &grid, cfg)?;
        exec.line("sampled: w  shots  post-selected  Per(A) estimate  95% CI");
        for s in &samples {
            exec.line(format!(
                "{}  {}  {}  {}  [{}, {}]",
                sig6(s.w),
                s.estimation.total_samples,
                s.estimation.postselected_count,
                sig6(s.recovered_permanent),
                sig6(s.recovered_interval.0),
                sig6(s.recovered_interval.1)
            ));
        }
        exec.samples = Some(samples.iter().map(|s| s.estimation.total_samples).sum());
        exec.postselected = Some(samples.iter().map(|s| s.estimation.postselected_count).sum());
        estimates["sampled"] = serde_json::to_value(&samples)?;
        exec.json_artifact(&json!({ "scan": scan, "sampled": samples }))?;
    } else {
        exec.json_artifact(&scan)?;
    }
    exec.estimates = estimates;
    Ok(exec)
}

fn run_boost_eps(
    input: &MatrixInput,
    grid: &str,
    recover: bool,
    points: Option<Vec<f64>>,
    sampling: &SamplingArgs,
    seed: Option<u64>,
) -> Result<Execution> {
    let (a, digest, _) = load_input(input)?;
    let grid = parse_grid(grid)?;
    let backend = backend_for(sampling, seed);
    let mut exec = Execution::new(&backend_name(&backend));
    exec.input_digest = Some(digest);
    note_rule(&mut exec, sampling);
    let scan = boost_epsilon(&a, &grid)?;
    exec.line(format!(
        "Per(A) {}  baseline probability {}",
        sig6(scan.permanent),
        sig6(scan.baseline_probability)
    ));
    exec.line("eps  sigma_max  Per  probability  R  cost ratio");
    for p in &scan.points {
        exec.line(format!(
            "{}  {}  {}  {}  {}  {}",
            sig6(p.eps),
            sig6(p.sigma_max),
            sig6(p.permanent),
            sig6(p.probability),
            p.ratio.map_or("-".into(), sig6),
            sig6(p.cost_ratio)
        ));
    }
    if let Some(e0) = scan.crossing_eps {
        exec.line(format!("sample cost exceeds the unshifted cost from eps ~ {}", sig6(e0)));
    }
    let mut estimates = json!({
        "permanent_non_decreasing": scan.permanent_non_decreasing,
        "crossing_eps": scan.crossing_eps,
    });
    let mut csv = Vec::new();
    scan.write_csv(&mut csv)?;
    exec.artifacts.push((".csv".into(), String::from_utf8(csv).expect("ascii csv")));
    if recover {
        let r = recover_permanent_from_epsilon(&a, points, backend, seed.unwrap_or(0))?;
        exec.line(format!("recovered Per(A) {}  (condition {:.3e})", sig6(r.permanent), r.condition));
        estimates["recovered_permanent"] = json!(r.permanent);
        let total: u64 = r.estimations.iter().map(|e| e.total_samples).sum();
        if total > 0 {
            exec.samples = Some(total);
        }
        exec.json_artifact(&json!({ "scan": scan, "recovery": r }))?;
    } else {
        exec.json_artifact(&scan)?;
    }
    exec.estimates = estimates;
    Ok(exec)
}

fn run_sample(
    unitary: Option<&Path>,
    graph: Option<PathBuf>,
    matrix: Option<PathBuf>,
    input_pattern: Option<&str>,
    distribution: bool,
    sampling: &SamplingArgs,
    seed: Option<u64>,
) -> Result<Execution> {
    let (circuit, digest) = match unitary {
        Some(path) => {
            let file = InputFile::read(path)?;
            (EncodedCircuit::from_json(&file.contents)?, file.digest)
        }
        None => {
            let (a, digest, _) = load_input(&MatrixInput { graph, matrix })?;
            (crate::encoder::encode(&a)?, digest)
        }
    };
    let input = match input_pattern {
        Some(s) => s.parse::<OutcomePattern>()?,
        None => circuit.standard_pattern(),
    };
    let mut exec = Execution::new(if distribution { "exact" } else { "sampled" });
    exec.input_digest = Some(digest);
    if distribution {
        let dist = full_distribution(&circuit, &input)?;
        let mut csv = Vec::new();
        dist.write_csv(&mut csv)?;
        exec.artifacts.push((".csv".into(), String::from_utf8(csv).expect("ascii csv")));
        exec.line(format!("{} outcomes, total probability {}", dist.len(), sig6(dist.total())));
        exec.estimates = json!({ "outcomes": dist.len(), "total": dist.total() });
        return Ok(exec);
    }
    let shots = sampling
        .samples
        .ok_or_else(|| Error::Domain("sample needs --samples N (or --distribution)".into()))?;
    let seed = seed.unwrap_or(0);
    let set = sample_with(&circuit, &input, shots, seed, sampling.batch())?;
    exec.samples = Some(shots);
    exec.stopping_rule = Some(StoppingRule::fixed(shots));
    let mut csv = String::from("pattern,count\n");
    for (pattern, count) in &set.counts {
        let _ = writeln!(csv, "{pattern},{count}");
    }
    exec.artifacts.push((".csv".into(), csv));
    let standard = circuit.standard_pattern();
    let hits = set.count_of(&standard);
    exec.postselected = Some(hits);
    exec.line(format!(
        "{shots} shots, {} distinct outcomes, {hits} on {standard}",
        set.counts.len()
    ));
    let counts: std::collections::BTreeMap<String, u64> =
        set.counts.iter().map(|(p, &c)| (p.to_string(), c)).collect();
    exec.estimates = json!({ "counts": counts });
    Ok(exec)
}

fn run_table1(p_grid: &[f64], graphs_per_p: usize, n: usize, sampling: &SamplingArgs, seed: Option<u64>) -> Result<Execution> {
    let rule = sampling.rule().unwrap_or(StoppingRule::PostSelected {
        target: 500,
        max_shots: sampling.max_shots,
    });
    let seed = seed.unwrap_or(0);
    let report = table1_experiment(p_grid, graphs_per_p, n, rule, seed, sampling.batch())?;
    let mut exec = Execution::new("sampled");
    exec.stopping_rule = Some(rule);
    exec.stdout = report.render();
    exec.samples = Some(report.rows.iter().flat_map(|r| &r.graphs).map(|g| g.total_samples).sum());
    exec.postselected = Some(report.rows.iter().flat_map(|r| &r.graphs).map(|g| g.postselected).sum());
    exec.estimates = json!(report
        .rows
        .iter()
        .map(|r| json!({ "p": r.p, "mu_exact": r.mu_exact, "mu_estimate": r.mu_estimate, "band": r.pooled_band }))
        .collect::<Vec<_>>());
    exec.json_artifact(&report)?;
    Ok(exec)
}
