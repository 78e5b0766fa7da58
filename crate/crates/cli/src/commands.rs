//! Command-line surface and the command implementations.

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use hodgecor_core::correlator::{
    cyclic_invariance_check, evaluate, gauge_perturbation_check, CorrelatorSpec, Evaluation, Method, TreeContribution,
};
use hodgecor_core::dgcat::{cyclic_homology, hh0_cocycles, hochschild_cohomology, DgCategory, HomologyTable};
use hodgecor_core::trees::{catalan, enumerate_trees, DecoratedPolygon};
use serde_json::{json, Value};

use crate::dgcat_format::{parse_dgcat, Q};
use crate::error::CliError;
use crate::green::green_check;
use crate::report::{convention_fingerprint, now_unix_ms, sha256_hex, Complex, InputHash, Precision, Real, Report, RunManifest, SCHEMA_VERSION, TOOL_VERSION};
use crate::selftest::selftest;
use crate::spec_format::{parse_spec, GaugeSpec, MethodSpec, SpecFile};

/// Hochschild and cyclic homology of small dg categories and Hodge correlators
/// on the Riemann sphere.
///
/// Every flag can also be set through an environment variable `HODGECOR_<FLAG>`
/// (upper case, dashes as underscores); the command line wins.
#[derive(Debug, Parser)]
#[command(name = "hodgecor", version)]
pub struct Cli {
    /// Write the report here instead of stdout.
    #[arg(long, global = true, env = "HODGECOR_OUT")]
    pub out: Option<PathBuf>,
    /// Worker threads (default: available cores).
    #[arg(long, global = true, env = "HODGECOR_WORKERS", value_parser = clap::value_parser!(u64).range(1..=1024))]
    pub workers: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Plane trivalent trees of a polygon.
    #[command(subcommand)]
    Trees(TreesCommand),
    /// Homology of a dg category given as a .dgcat file.
    #[command(subcommand)]
    Dgcat(DgcatCommand),
    /// Green kernel certification.
    #[command(subcommand)]
    Green(GreenCommand),
    /// Hodge correlators of a spec file.
    #[command(subcommand)]
    Correlator(CorrelatorCommand),
    /// Runs the invariant suite and reports pass/fail per property.
    Selftest(SelftestArgs),
}

#[derive(Debug, Subcommand)]
pub enum TreesCommand {
    Enumerate {
        #[arg(long, env = "HODGECOR_NGON", value_parser = clap::value_parser!(u64).range(3..=14))]
        ngon: u64,
    },
}

#[derive(Debug, Args)]
pub struct DgcatArgs {
    #[arg(long, env = "HODGECOR_INPUT")]
    pub input: PathBuf,
    #[arg(long, env = "HODGECOR_MAX_COLUMN", default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..=12))]
    pub max_column: u64,
}

#[derive(Debug, Subcommand)]
pub enum DgcatCommand {
    /// Hochschild cohomology dimensions in degrees 0..=2.
    Hh(DgcatArgs),
    /// Cyclic homology dimensions in degrees 0..=2.
    Hc(DgcatArgs),
    /// Explicit basis of HH⁰.
    Hh0(DgcatArgs),
}

#[derive(Debug, Subcommand)]
pub enum GreenCommand {
    /// Weak-form residual, negative control and symmetry of the Green kernel.
    Check {
        #[arg(long, env = "HODGECOR_RESOLUTION", default_value_t = 256, value_parser = clap::value_parser!(u64).range(8..=4096))]
        resolution: u64,
        /// Number of random test forms.
        #[arg(long, env = "HODGECOR_SAMPLES", default_value_t = 20, value_parser = clap::value_parser!(u64).range(1..=10000))]
        samples: u64,
        #[arg(long, env = "HODGECOR_SEED", default_value_t = 1)]
        seed: u64,
    },
}

/// Spec file plus overrides of its integration settings.
#[derive(Debug, Args)]
pub struct SpecArgs {
    #[arg(long, env = "HODGECOR_SPEC")]
    pub spec: PathBuf,
    #[arg(long, env = "HODGECOR_METHOD")]
    pub method: Option<MethodSpec>,
    #[arg(long, env = "HODGECOR_SAMPLES")]
    pub samples: Option<usize>,
    #[arg(long, env = "HODGECOR_RESOLUTION")]
    pub resolution: Option<usize>,
    #[arg(long, env = "HODGECOR_SEED")]
    pub seed: Option<u64>,
    #[arg(long, env = "HODGECOR_TOLERANCE")]
    pub tolerance: Option<f64>,
}

#[derive(Debug, Subcommand)]
pub enum CorrelatorCommand {
    Eval(SpecArgs),
    /// Evaluates every rotation of the word against the predicted sign.
    Invariance(SpecArgs),
    /// Re-evaluates with a perturbed Green kernel (the `gauge` entry of the spec file, or a small bump).
    Gauge(SpecArgs),
}

#[derive(Debug, Args)]
pub struct SelftestArgs {
    /// Full acceptance-size workloads instead of the quick ones.
    #[arg(long)]
    pub full: bool,
}

/// Result of running a command: the report, and whether it represents a
/// failure to be signalled by the exit code (selftest only).
pub struct Outcome {
    pub report: Report,
    pub failed: bool,
}

struct Context {
    command: String,
    inputs: Vec<InputHash>,
    seed: Option<u64>,
    workers: usize,
    started: u128,
    clock: Instant,
}

impl Context {
    fn read(&mut self, path: &Path) -> Result<String, CliError> {
        let bytes = std::fs::read(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
        self.inputs.push(InputHash { path: path.display().to_string(), sha256: sha256_hex(&bytes) });
        String::from_utf8(bytes).map_err(|e| CliError::Parse {
            location: crate::error::Location { file: path.display().to_string(), line: 1, column: 1 },
            message: format!("not UTF-8: {e}"),
        })
    }

    fn finish(self, payload: Value) -> Report {
        Report {
            schema: SCHEMA_VERSION.into(),
            command: self.command.clone(),
            payload,
            manifest: RunManifest {
                command: self.command,
                inputs: self.inputs,
                seed: self.seed,
                tool_version: TOOL_VERSION.into(),
                convention_fingerprint: convention_fingerprint(),
                started_unix_ms: self.started,
                wall_clock_seconds: self.clock.elapsed().as_secs_f64(),
                workers: self.workers,
            },
        }
    }
}

pub fn default_workers() -> usize {
    std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}

/// Runs a parsed command line on a pool of `--workers` threads.
pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let workers = cli.workers.map_or_else(default_workers, |w| w as usize);
    let pool = rayon::ThreadPoolBuilder::new().num_threads(workers).build().map_err(|e| CliError::Internal(e.to_string()))?;
    let ctx = Context { command: String::new(), inputs: Vec::new(), seed: None, workers, started: now_unix_ms(), clock: Instant::now() };
    pool.install(|| dispatch(&cli.command, ctx))
}

fn ok(ctx: Context, payload: Value) -> Result<Outcome, CliError> {
    Ok(Outcome { report: ctx.finish(payload), failed: false })
}

fn dispatch(command: &Command, mut ctx: Context) -> Result<Outcome, CliError> {
    match command {
        Command::Trees(TreesCommand::Enumerate { ngon }) => {
            ctx.command = "trees enumerate".into();
            ok(ctx, trees_payload(*ngon as usize)?)
        }
        Command::Dgcat(c) => {
            let (name, args) = match c {
                DgcatCommand::Hh(a) => ("dgcat hh", a),
                DgcatCommand::Hc(a) => ("dgcat hc", a),
                DgcatCommand::Hh0(a) => ("dgcat hh0", a),
            };
            ctx.command = name.into();
            let text = ctx.read(&args.input)?;
            let cat = parse_dgcat(&text, &args.input.display().to_string())?;
            let n = args.max_column as usize;
            let payload = match c {
                DgcatCommand::Hh(_) => homology_payload("HH", &hochschild_cohomology(&cat, n, (0, 2))?),
                DgcatCommand::Hc(_) => homology_payload("HC", &cyclic_homology(&cat, n, (0, 2))?),
                DgcatCommand::Hh0(_) => hh0_payload(&cat, n)?,
            };
            ok(ctx, payload)
        }
        Command::Green(GreenCommand::Check { resolution, samples, seed }) => {
            ctx.command = "green check".into();
            ctx.seed = Some(*seed);
            ok(ctx, green_check(*resolution as usize, *samples as usize, *seed)?)
        }
        Command::Correlator(c) => {
            let (name, args) = match c {
                CorrelatorCommand::Eval(a) => ("correlator eval", a),
                CorrelatorCommand::Invariance(a) => ("correlator invariance", a),
                CorrelatorCommand::Gauge(a) => ("correlator gauge", a),
            };
            ctx.command = name.into();
            let text = ctx.read(&args.spec)?;
            let file = parse_spec(&text, &args.spec.display().to_string())?;
            let spec = apply_overrides(&file, args)?;
            ctx.seed = Some(spec.seed);
            let payload = match c {
                CorrelatorCommand::Eval(_) => eval_payload(&spec, &evaluate(&spec)?),
                CorrelatorCommand::Invariance(_) => invariance_payload(&spec)?,
                CorrelatorCommand::Gauge(_) => gauge_payload(&spec, &file.gauge.clone().unwrap_or_default())?,
            };
            ok(ctx, payload)
        }
        Command::Selftest(args) => {
            ctx.command = "selftest".into();
            let checks = selftest(args.full);
            let failed = checks.iter().filter(|c| !c.pass).count();
            let payload = json!({ "full": args.full, "checks": checks, "passed": checks.len() - failed, "failed": failed });
            Ok(Outcome { report: ctx.finish(payload), failed: failed > 0 })
        }
    }
}

fn apply_overrides(file: &SpecFile, args: &SpecArgs) -> Result<CorrelatorSpec, CliError> {
    let mut f = file.clone();
    if let Some(m) = args.method {
        f.method = m;
    }
    if args.samples.is_some() {
        f.samples = args.samples;
    }
    if let Some(r) = args.resolution {
        f.resolution = Some(r);
        if f.max_resolution.is_some_and(|m| m < 2 * r) {
            f.max_resolution = Some(4 * r);
        }
    }
    if let Some(s) = args.seed {
        f.seed = s;
    }
    if args.tolerance.is_some() {
        f.tolerance = args.tolerance;
    }
    f.to_spec()
}

pub fn trees_payload(ngon: usize) -> Result<Value, CliError> {
    let trees = enumerate_trees(&DecoratedPolygon::uniform(ngon, "O")).map_err(|e| CliError::Usage(e.to_string()))?;
    let list: Vec<Value> = trees
        .iter()
        .enumerate()
        .map(|(i, t)| {
            let internal: Vec<Value> = t
                .internal_edges()
                .map(|e| {
                    let (lo, hi) = t.edge_endpoint_order(e).expect("internal edge");
                    json!({ "edge": e, "diagonal": t.edges[e].domains, "ends": [lo, hi] })
                })
                .collect();
            json!({
                "index": i,
                "diagonals": t.diagonals,
                "triangles": t.triangles,
                "incidence": t.incidence,
                "internal_edges": internal,
                "orientation_sign": t.orientation_sign(),
            })
        })
        .collect();
    Ok(json!({ "ngon": ngon, "count": trees.len(), "catalan": catalan(ngon - 2), "trees": list }))
}

fn homology_payload(kind: &str, t: &HomologyTable) -> Value {
    let rows: Vec<Value> = t.dims.iter().map(|(d, n)| json!({ "degree": d, "dim": n })).collect();
    json!({
        "homology": kind,
        "max_column": t.max_column,
        "window": [t.window.0, t.window.1],
        "rows": rows,
        "stable": t.stable,
        "reliable_max": t.reliable_max,
        "window_reliable": t.window_reliable,
        "arithmetic": "exact rational",
    })
}

fn hh0_payload(cat: &DgCategory<Q>, max_column: usize) -> Result<Value, CliError> {
    let basis = cat.basis();
    let objects = cat.objects();
    let cocycles = hh0_cocycles(cat, max_column)?;
    let list: Vec<Value> = cocycles
        .iter()
        .map(|c| {
            let terms: Vec<Value> = c
                .iter()
                .map(|(k, q)| {
                    json!({
                        "start": objects[k.start],
                        "word": k.word.iter().map(|&w| basis[w].label.clone()).collect::<Vec<_>>(),
                        "output": basis[k.output].label,
                        "coeff": q.to_string(),
                    })
                })
                .collect();
            json!({ "terms": terms })
        })
        .collect();
    Ok(json!({ "max_column": max_column, "dim": list.len(), "basis": list, "arithmetic": "exact rational" }))
}

fn precision(method: Method, symbolic: bool) -> Precision {
    match (symbolic, method) {
        (true, _) => Precision::Exact,
        (false, Method::Quadrature) => Precision::Quadrature,
        (false, Method::MonteCarlo) => Precision::MonteCarlo,
    }
}

fn tree_symbolic(t: &TreeContribution) -> bool {
    t.free_vertices == 0
}

fn evaluation_precision(spec: &CorrelatorSpec, e: &Evaluation) -> Precision {
    precision(spec.method, e.trees.iter().all(tree_symbolic))
}

fn method_name(m: Method) -> &'static str {
    match m {
        Method::Quadrature => MethodSpec::Quad.name(),
        Method::MonteCarlo => MethodSpec::Mc.name(),
    }
}

pub fn eval_payload(spec: &CorrelatorSpec, e: &Evaluation) -> Value {
    let trees: Vec<Value> = e
        .trees
        .iter()
        .map(|t| {
            let p = precision(spec.method, tree_symbolic(t));
            let trace: Vec<Value> = t
                .trace
                .iter()
                .map(|s| json!({ "resolution": s.resolution, "value": Complex::new(s.value, t.error, Precision::Quadrature) }))
                .collect();
            json!({
                "index": t.index,
                "diagonals": t.tree.diagonals,
                "free_vertices": t.free_vertices,
                "value": Complex::new(t.value, t.error, p),
                "work": t.work,
                "trace": trace,
            })
        })
        .collect();
    json!({
        "value": Complex::new(e.value, e.error, evaluation_precision(spec, e)),
        "method": method_name(spec.method),
        "selection_rule": e.selection_rule,
        "work": e.work(),
        "trees": trees,
    })
}

fn invariance_payload(spec: &CorrelatorSpec) -> Result<Value, CliError> {
    let r = cyclic_invariance_check(spec)?;
    let reference = &r.reference;
    let p = evaluation_precision(spec, reference);
    let scale = if reference.value.norm() < 1e-6 { 1.0 } else { reference.value.norm() };
    let rotations: Vec<Value> = r
        .rotations
        .iter()
        .map(|x| {
            json!({
                "rotation": x.rotation,
                "predicted_sign": x.predicted_sign as i8,
                "value": Complex::new(x.value, x.error, p),
                "deviation": Real::new(x.deviation, (x.error + reference.error) / scale, Precision::Derived),
            })
        })
        .collect();
    let bound = r.rotations.iter().map(|x| (x.error + reference.error) / scale).fold(0.0, f64::max);
    let trend: Vec<Value> = r.trend.iter().map(|d| json!(Real::new(*d, bound, Precision::Derived))).collect();
    Ok(json!({
        "reference": Complex::new(reference.value, reference.error, p),
        "method": method_name(spec.method),
        "rotations": rotations,
        "max_deviation": Real::new(r.max_deviation, bound, Precision::Derived),
        "refinement_trend": trend,
        "tolerance": 1e-3,
        "within_tolerance": r.max_deviation < 1e-3,
    }))
}

fn gauge_payload(spec: &CorrelatorSpec, gauge: &GaugeSpec) -> Result<Value, CliError> {
    let perturbation = gauge.perturbation().map_err(|m| CliError::invalid("gauge", m))?;
    let reference = evaluate(spec)?;
    let r = gauge_perturbation_check(spec, &perturbation)?;
    let p = evaluation_precision(spec, &reference);
    let err = 2.0 * reference.error;
    Ok(json!({
        "reference": Complex::new(r.reference, reference.error, p),
        "perturbed": Complex::new(r.perturbed, reference.error, p),
        "deviation": Real::new(r.deviation, err, Precision::Derived),
        "perturbation": gauge,
        "internal_edges": r.internal_edges,
        "cocycle": r.cocycle,
        "tolerance": 1e-2,
        // judged only for declared cocycles
        "within_tolerance": r.cocycle.then_some(r.deviation < 1e-2),
    }))
}

/// Serialized report, pretty-printed with a trailing newline.
pub fn render(report: &Report) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
    s.push('\n');
    s
}
