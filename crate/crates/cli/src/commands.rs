use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use cosilt_core::algebra::GammaAlgebra;
use cosilt_core::annulus::{canonicalize, crossing_number, Arc, Crossing, MarkedAnnulus};
use cosilt_core::cosilting::{
    exchange_graph, mutate, validate_tuple, CosiltingTuple, RigidPoint, PARAMETER_MODEL_NOTE,
};
use cosilt_core::linalg::parse_rational;
use cosilt_core::oracle::{run_suite, OracleConfig, SUITES};
use cosilt_core::triangulation::{flip, ArcCollection, SearchBound, Triangulation};
use cosilt_core::Error;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

#[derive(Debug, Parser)]
#[command(
    name = "cosilt",
    version,
    about = "Cosilting pairs and maximal rigid sets on the marked annulus"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Clone, Copy)]
pub struct Global {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Largest |winding| of bridging arcs considered.
    #[arg(
        short = 'W',
        long = "winding-bound",
        global = true,
        default_value_t = 3
    )]
    pub winding_bound: i64,
    /// Extra winding used to certify maximality.
    #[arg(long, global = true, default_value_t = 2)]
    pub slack: i64,
}

impl Global {
    pub fn bound(&self) -> SearchBound {
        SearchBound::with_slack(self.winding_bound, self.slack)
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Format {
    Json,
    Dot,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check rules (C1)-(C3) for a tuple.
    Validate { tuple: PathBuf },
    /// Crossing numbers between all arcs of a file.
    Crossings { arcs: PathBuf },
    /// Flip one arc of a triangulation.
    Flip { triangulation: PathBuf, arc: String },
    /// Mutate a tuple at a point of its maximal rigid set.
    Mutate { tuple: PathBuf, point: String },
    /// Exchange graph around a tuple.
    Graph {
        tuple: PathBuf,
        #[arg(long, default_value_t = 1)]
        depth: usize,
        #[arg(long, value_enum, default_value_t = Format::Dot)]
        format: Format,
    },
    /// Quiver with relations of a triangulation by finite arcs.
    Quiver {
        triangulation: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Dot)]
        format: Format,
    },
    /// String module `M(arc)` or band module `band λ n`.
    Module {
        /// Triangulation or tuple file fixing Γ.
        #[arg(long)]
        gamma: PathBuf,
        #[arg(required = true, num_args = 1..=3)]
        target: Vec<String>,
    },
    /// Run an acceptance suite, or `all`.
    Oracle {
        suite: String,
        #[arg(long, requires = "q")]
        p: Option<i64>,
        #[arg(long, requires = "p")]
        q: Option<i64>,
        #[arg(long, default_value_t = 200)]
        pairs: usize,
        #[arg(long, default_value_t = 1000)]
        cases: usize,
        #[arg(long, default_value_t = 4)]
        depth: usize,
        #[arg(long)]
        json: bool,
    },
    /// HTTP backend for the explorer.
    Serve {
        #[arg(long, default_value = "127.0.0.1:8080")]
        addr: String,
        /// Starting tuple; the finite example when omitted.
        #[arg(long)]
        tuple: Option<PathBuf>,
        #[arg(long, default_value_t = 4)]
        workers: usize,
    },
}

#[derive(Debug)]
pub enum CliError {
    /// Unreadable or malformed input.
    Schema(String),
    Core(Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(Error::BoundTooTight { .. }) => 3,
            _ => 2,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Schema(s) => f.write_str(s),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

/// What a command printed and the status it exits with.
#[derive(Debug)]
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self { stdout, code: 0 }
    }
}

#[derive(Serialize, Deserialize)]
struct AnnulusJson {
    outer: i64,
    inner: i64,
}

#[derive(Deserialize)]
struct ArcsJson {
    annulus: AnnulusJson,
    arcs: Vec<Arc>,
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Schema(format!("{}: {e}", path.display())))
}

fn parse<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, CliError> {
    serde_json::from_str(&read(path)?)
        .map_err(|e| CliError::Schema(format!("{}: {e}", path.display())))
}

fn read_tuple(path: &Path) -> Result<CosiltingTuple, CliError> {
    CosiltingTuple::from_json_str(&read(path)?)
        .map_err(|e| CliError::Schema(format!("{}: {e}", path.display())))
}

/// Arcs of a `{"annulus", "arcs"}` file, canonicalized, in file order.
fn read_arcs(path: &Path) -> Result<(MarkedAnnulus, Vec<Arc>), CliError> {
    let raw: ArcsJson = parse(path)?;
    let ann = MarkedAnnulus::new(raw.annulus.outer, raw.annulus.inner)
        .map_err(|e| CliError::Schema(e.to_string()))?;
    let arcs = raw
        .arcs
        .into_iter()
        .map(|a| canonicalize(a, ann))
        .collect::<Result<Vec<_>, _>>();
    Ok((ann, arcs.map_err(|e| CliError::Schema(e.to_string()))?))
}

/// Γ in order, from either a triangulation file or a tuple file.
fn read_gamma(path: &Path) -> Result<(MarkedAnnulus, Vec<Arc>), CliError> {
    let text = read(path)?;
    if let Ok(t) = CosiltingTuple::from_json_str(&text) {
        return Ok((t.annulus, t.gamma));
    }
    read_arcs(path)
}

/// An arc given as `B(0,0,1)`-style text or as an arc JSON object.
pub fn parse_arc(s: &str, ann: MarkedAnnulus) -> Result<Arc, CliError> {
    let arc: Arc = if s.trim_start().starts_with('{') {
        serde_json::from_str(s).map_err(|e| CliError::Schema(format!("arc {s:?}: {e}")))?
    } else {
        s.parse()
            .map_err(|e: Error| CliError::Schema(e.to_string()))?
    };
    canonicalize(arc, ann).map_err(|e| CliError::Schema(e.to_string()))
}

pub fn crossing_json(c: Crossing) -> Value {
    match c {
        Crossing::Finite(n) => json!(n),
        Crossing::Infinite => json!("inf"),
    }
}

fn pretty(v: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

pub fn run(cli: Cli) -> Result<Outcome, CliError> {
    let g = cli.global;
    let bound = g.bound();
    match cli.command {
        Command::Validate { tuple } => {
            let t = read_tuple(&tuple)?;
            let report = validate_tuple(&t, bound)?;
            let out = json!({ "valid": report.is_valid(), "violations": report.violations });
            Ok(Outcome {
                stdout: pretty(&out),
                code: if report.is_valid() { 0 } else { 1 },
            })
        }
        Command::Crossings { arcs } => {
            let (ann, arcs) = read_arcs(&arcs)?;
            let matrix: Vec<Vec<Value>> = arcs
                .iter()
                .map(|&a| {
                    arcs.iter()
                        .map(|&b| crossing_json(crossing_number(a, b, ann)))
                        .collect()
                })
                .collect();
            let names: Vec<String> = arcs.iter().map(|a| a.to_string()).collect();
            Ok(Outcome::ok(pretty(
                &json!({ "arcs": names, "crossings": matrix }),
            )))
        }
        Command::Flip { triangulation, arc } => {
            let (ann, arcs) = read_arcs(&triangulation)?;
            let tri = Triangulation::new(ArcCollection::new(ann, arcs)?, bound)?;
            let a = parse_arc(&arc, ann)?;
            let (b, other) = flip(&tri, a, bound)?;
            let out = json!({
                "removed": a,
                "added": b,
                "triangulation": { "annulus": AnnulusJson { outer: ann.outer(), inner: ann.inner() }, "arcs": other.arcs() },
            });
            Ok(Outcome::ok(pretty(&out)))
        }
        Command::Mutate { tuple, point } => {
            let t = read_tuple(&tuple)?;
            let x = RigidPoint::parse_on(&point, t.annulus)
                .map_err(|e| CliError::Schema(e.to_string()))?;
            let (u, _) = mutate(&t, &x, bound)?;
            Ok(Outcome::ok(pretty(&u)))
        }
        Command::Graph {
            tuple,
            depth,
            format,
        } => {
            let t = read_tuple(&tuple)?;
            let graph = exchange_graph(&t, depth, bound)?;
            Ok(Outcome::ok(match format {
                Format::Dot => graph.to_dot(),
                Format::Json => pretty(&graph_json(&graph)),
            }))
        }
        Command::Quiver {
            triangulation,
            format,
        } => {
            let (ann, gamma) = read_arcs(&triangulation)?;
            let alg = GammaAlgebra::new(ann, gamma)?;
            Ok(Outcome::ok(match format {
                Format::Dot => alg.quiver().to_dot(),
                Format::Json => pretty(alg.quiver()),
            }))
        }
        Command::Module { gamma, target } => {
            let (ann, gamma) = read_gamma(&gamma)?;
            let alg = GammaAlgebra::new(ann, gamma)?;
            let m = match target.as_slice() {
                [band, lambda, n] if band == "band" => {
                    let l = parse_rational(lambda)
                        .ok_or_else(|| CliError::Schema(format!("band parameter {lambda:?}")))?;
                    let n: usize = n
                        .parse()
                        .map_err(|_| CliError::Schema(format!("band size {n:?}")))?;
                    alg.band_module(&l, n)?
                }
                [arc] => alg.string_module(parse_arc(arc, ann)?)?,
                _ => {
                    return Err(CliError::Schema(
                        "expected <arc> or `band <lambda> <n>`".into(),
                    ))
                }
            };
            Ok(Outcome::ok(pretty(&m.to_json())))
        }
        Command::Oracle {
            suite,
            p,
            q,
            pairs,
            cases,
            depth,
            json,
        } => {
            let mut cfg = OracleConfig {
                bound,
                seed: g.seed,
                pairs,
                cases,
                depth,
                ..OracleConfig::default()
            };
            if let (Some(p), Some(q)) = (p, q) {
                cfg.sizes = vec![(p, q)];
            }
            let names: Vec<&str> = if suite == "all" {
                SUITES.to_vec()
            } else {
                vec![suite.as_str()]
            };
            if let Some(bad) = names.iter().find(|s| !SUITES.contains(s)) {
                return Err(CliError::Schema(format!(
                    "unknown suite {bad:?}; expected all or one of {}",
                    SUITES.join(", ")
                )));
            }
            let mut reports = Vec::new();
            for name in names {
                reports.push(run_suite(name, &cfg)?);
            }
            let passed = reports.iter().all(|r| r.passed());
            let stdout = if json {
                // Timings would make the output depend on the machine.
                let stable: Vec<Value> = reports
                    .iter()
                    .map(|r| json!({"suite": r.suite, "passed": r.passed(), "checked": r.checked, "failed": r.failed, "failures": r.failures, "notes": r.notes}))
                    .collect();
                pretty(&stable)
            } else {
                let mut s = String::new();
                for r in &reports {
                    let verdict = if r.passed() { "PASS" } else { "FAIL" };
                    s.push_str(&format!(
                        "{verdict} {}: {} checked, {} failed\n",
                        r.suite, r.checked, r.failed
                    ));
                    for n in &r.notes {
                        s.push_str(&format!("  {n}\n"));
                    }
                    for f in &r.failures {
                        s.push_str(&format!("  failure: {f}\n"));
                    }
                }
                s
            };
            Ok(Outcome {
                stdout,
                code: if passed { 0 } else { 1 },
            })
        }
        Command::Serve {
            addr,
            tuple,
            workers,
        } => {
            let start = match tuple {
                Some(path) => read_tuple(&path)?,
                None => cosilt_core::fixtures::finite_example(),
            };
            let app = crate::serve::App::new(start, bound)?;
            let server =
                crate::serve::bind(&addr).map_err(|e| CliError::Schema(format!("{addr}: {e}")))?;
            eprintln!("listening on http://{}", server.server_addr());
            crate::serve::run(std::sync::Arc::new(app), server, workers);
            Ok(Outcome::ok(String::new()))
        }
    }
}

/// JSON adjacency form of an exchange graph.
pub fn graph_json(g: &cosilt_core::cosilting::ExchangeGraph) -> Value {
    let nodes: Vec<Value> = g
        .nodes
        .iter()
        .map(|n| {
            json!({
                "id": n.id,
                "hash": n.hash,
                "depth": n.depth,
                "expanded": n.expanded,
                "case": if n.tuple.is_finite_case() { "finite" } else { "asymptotic" },
                "degree": g.degree(n.id),
                "tuple": n.tuple,
            })
        })
        .collect();
    let mut adjacency = vec![Vec::new(); g.nodes.len()];
    for e in &g.edges {
        adjacency[e.from].push(e.to);
        adjacency[e.to].push(e.from);
    }
    for list in &mut adjacency {
        list.sort_unstable();
    }
    json!({ "nodes": nodes, "edges": g.edges, "adjacency": adjacency, "parameter_model": PARAMETER_MODEL_NOTE })
}
