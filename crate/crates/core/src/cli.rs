//! The `coarsegraph` command line. Every subcommand reads and writes JSON
//! (CSV for control samples). Exit codes: 0 success, 1 a check failed (the
//! report is still written), 2 bad input.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::dimension::{
    bfs_layering, check_cover, control_sample, greedy_cover, grid_shift_cover, interval_slice_cover,
    layered_combine, tree_band_cover, Cover,
};
use crate::error::{Error, Result};
use crate::fatminor::{claw_construction, search_fat_minor, verify_certificate, FatMinorCertificate};
use crate::graph::families::{self, grid2};
use crate::graph::Graph;
use crate::lcr::{
    drawn_qi_chain, crossing_upper_bound, one_planar_grid, planarize_drawing, planted_one_planar_qi,
    realize_in_power, Drawing,
};
use crate::planarize::{build_gprime, verify_claims};
use crate::qi::{embed_power_blowup, measure_distortion, prune_to_bounded_degree, QiMap};
use crate::sources::{named_window, tree_sum_planar, TreeSumParams, DEFAULT_CAP, SOURCE_NAMES};
use crate::treedec::TreeDecomposition;

/// Environment variable that overrides `--threads`.
pub const THREADS_ENV: &str = "COARSEGRAPH_THREADS";

#[derive(Debug, Parser)]
#[command(name = "coarsegraph", version, about = "Coarse graph geometry at desk scale")]
pub struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads (overridden by COARSEGRAPH_THREADS).
    #[arg(long, global = true, default_value_t = 1)]
    pub threads: usize,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Bags with at most this many vertices are small-type when a
    /// decomposition does not say.
    #[arg(long, global = true, default_value_t = 4)]
    pub small_threshold: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Emit a window of a built-in source, a tree-sum instance or a drawn 1-planar grid.
    Generate(GenerateArgs),
    /// Build the planar graph G' for a tree-decomposed graph and check its claims.
    Planarize(PlanarizeArgs),
    /// Measure the distortion of a vertex map.
    QiMeasure(QiArgs),
    #[command(subcommand)]
    Fatminor(FatminorCommand),
    #[command(subcommand)]
    Cover(CoverCommand),
    #[command(subcommand)]
    Lcr(LcrCommand),
    #[command(subcommand)]
    Pipeline(PipelineCommand),
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    /// A source name, `tree_sum_planar` or `one_planar_grid`.
    #[arg(long)]
    pub source: String,
    #[arg(long, default_value_t = 3)]
    pub radius: usize,
    /// Source parameter (tree degree, edge length, apex reach).
    #[arg(long)]
    pub param: Option<usize>,
    #[arg(long, default_value_t = 8)]
    pub pieces: usize,
    #[arg(long, default_value_t = 12)]
    pub piece_size: usize,
    #[arg(long, default_value_t = 0.3)]
    pub small_fraction: f64,
    #[arg(long, default_value_t = 3)]
    pub max_adhesion: usize,
    /// Width and height of `one_planar_grid`.
    #[arg(long, default_value_t = 5)]
    pub width: usize,
    #[arg(long, default_value_t = 5)]
    pub height: usize,
    /// Probability of crossing diagonals per square in `one_planar_grid`.
    #[arg(long, default_value_t = 0.4)]
    pub diagonals: f64,
}

#[derive(Debug, Args)]
pub struct PlanarizeArgs {
    /// JSON with `graph` and `decomposition` (as written by `generate`).
    #[arg(long, conflicts_with_all = ["graph", "decomposition"])]
    pub input: Option<PathBuf>,
    #[arg(long, requires = "decomposition")]
    pub graph: Option<PathBuf>,
    #[arg(long, requires = "graph")]
    pub decomposition: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct QiArgs {
    #[arg(long)]
    pub domain: PathBuf,
    #[arg(long)]
    pub codomain: PathBuf,
    /// `{"map": [[x, y], ...]}`.
    #[arg(long)]
    pub map: PathBuf,
    /// Also prune and embed with this constant.
    #[arg(long)]
    pub a: Option<usize>,
    /// Fail unless the map is a (lambda, eps)-quasi-isometry with this surjectivity radius.
    #[arg(long, requires_all = ["eps", "radius"])]
    pub lambda: Option<u64>,
    #[arg(long)]
    pub eps: Option<u64>,
    #[arg(long)]
    pub radius: Option<u32>,
}

#[derive(Debug, Subcommand)]
pub enum FatminorCommand {
    /// Check a certificate against a graph.
    Verify {
        /// JSON with `graph` and `certificate` (as written by `claw`).
        #[arg(long, conflicts_with_all = ["graph", "cert"])]
        input: Option<PathBuf>,
        #[arg(long, requires = "cert")]
        graph: Option<PathBuf>,
        #[arg(long, requires = "graph")]
        cert: Option<PathBuf>,
    },
    /// Seeded search for a fat minor.
    Search {
        #[arg(long)]
        graph: PathBuf,
        /// `K2`, `K3,3`, `C5`, `P4`, or a graph JSON file.
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 10_000_000)]
        budget: u64,
    },
    /// Fat K_{m,m} in the binary tree times the path.
    Claw {
        #[arg(long, default_value_t = 3)]
        m: usize,
        #[arg(long)]
        k: u32,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum CoverMethod {
    /// Depth bands of a tree (needs --graph).
    Tree,
    /// Shifted blocks on the square grid of side --n.
    Grid,
    /// Layers of the grid of side --n cut into blocks and covered by x-intervals.
    Layered,
    /// Seeded region growing (needs --graph).
    Greedy,
}

#[derive(Debug, Args)]
pub struct CoverSpec {
    #[arg(long, value_enum)]
    pub method: CoverMethod,
    #[arg(long)]
    pub graph: Option<PathBuf>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub root: usize,
    #[arg(long, default_value_t = 8)]
    pub max_families: usize,
}

#[derive(Debug, Subcommand)]
pub enum CoverCommand {
    Build {
        #[command(flatten)]
        spec: CoverSpec,
        #[arg(long)]
        r: u64,
    },
    Check {
        /// Graph JSON; alternatively --n for the square grid.
        #[arg(long, conflicts_with = "n")]
        graph: Option<PathBuf>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        cover: PathBuf,
    },
    /// Certified (r, D, families) rows as CSV.
    Sample {
        #[command(flatten)]
        spec: CoverSpec,
        #[arg(long, value_delimiter = ',', default_value = "1,2,4,8")]
        rs: Vec<u64>,
    },
}

#[derive(Debug, Args)]
pub struct RealizeArgs {
    /// Planar host graph JSON.
    #[arg(long)]
    pub host: PathBuf,
    #[arg(long)]
    pub guest: PathBuf,
    #[arg(long)]
    pub k: usize,
    /// Guest-to-host map `{"map": [[x, y], ...]}`; the identity if omitted.
    #[arg(long)]
    pub map: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum LcrCommand {
    /// Route every guest edge along a short host path.
    Realize(RealizeArgs),
    /// Tube-drawing crossing bound of the realization.
    Bound(RealizeArgs),
    /// Replace the crossings of a drawing by vertices.
    PlanarizeDrawing {
        /// JSON with `graph` and `drawing` (as written by `generate`).
        #[arg(long, conflicts_with_all = ["graph", "drawing"])]
        input: Option<PathBuf>,
        #[arg(long, requires = "drawing")]
        graph: Option<PathBuf>,
        #[arg(long, requires = "graph")]
        drawing: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum PipelineCommand {
    /// Quasi-isometry to a drawn 1-planar graph, down to a subgraph of a
    /// power of a planar graph. Uses a planted instance unless all inputs are given.
    DrawnQi {
        #[arg(long, requires_all = ["codomain", "map", "drawing", "a"])]
        domain: Option<PathBuf>,
        #[arg(long)]
        codomain: Option<PathBuf>,
        #[arg(long)]
        map: Option<PathBuf>,
        #[arg(long)]
        drawing: Option<PathBuf>,
        #[arg(long)]
        a: Option<usize>,
    },
}

/// What a subcommand produced.
enum Outcome {
    /// The report, and whether every check passed.
    Json(Value, bool),
    Text(String),
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn read_input(path: &PathBuf) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        Ok(std::fs::read_to_string(path)?)
    }
}

fn read_graph(path: &PathBuf) -> Result<Graph> {
    Graph::from_json(&read_input(path)?)
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| Error::Usage(format!("input has no `{key}` field")))
}

fn graph_from_value(v: &Value) -> Result<Graph> {
    Graph::from_json(&v.to_string())
}

/// Parses `args` (including the program name), runs the subcommand and
/// returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let threads = std::env::var(THREADS_ENV)
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(cli.threads)
        .max(1);
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: cannot start {threads} threads: {e}");
            return 2;
        }
    };
    let result = pool.install(|| dispatch(&cli));
    let (text, code) = match result {
        Ok(Outcome::Json(v, ok)) => {
            let mut s = serde_json::to_string_pretty(&v).expect("serializable");
            s.push('\n');
            (s, if ok { 0 } else { 1 })
        }
        Ok(Outcome::Text(s)) => (s, 0),
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            let code = if matches!(e, Error::Verification(_)) { 1 } else { 2 };
            return code;
        }
    };
    let written = match &cli.out {
        Some(path) => std::fs::write(path, text.as_bytes()),
        None => out.write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        let _ = writeln!(err, "error: {e}");
        return 2;
    }
    code
}

fn dispatch(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Generate(a) => generate(cli, a),
        Command::Planarize(a) => planarize(cli, a),
        Command::QiMeasure(a) => qi_measure(a),
        Command::Fatminor(c) => fatminor(cli, c),
        Command::Cover(c) => cover(cli, c),
        Command::Lcr(c) => lcr(c),
        Command::Pipeline(c) => pipeline(cli, c),
    }
}

fn generate(cli: &Cli, a: &GenerateArgs) -> Result<Outcome> {
    match a.source.as_str() {
        "tree_sum_planar" => {
            let (g, td) = tree_sum_planar(TreeSumParams {
                seed: cli.seed,
                pieces: a.pieces,
                piece_size: a.piece_size,
                small_fraction: a.small_fraction,
                max_adhesion: a.max_adhesion,
            })?;
            Ok(Outcome::Json(json!({ "graph": g, "decomposition": td }), true))
        }
        "one_planar_grid" => {
            let (g, d) = one_planar_grid(a.width, a.height, a.diagonals, cli.seed)?;
            Ok(Outcome::Json(json!({ "graph": g, "drawing": d }), true))
        }
        name if SOURCE_NAMES.contains(&name) => {
            let w = named_window(name, a.param, a.radius, DEFAULT_CAP)?;
            Ok(Outcome::Json(to_value(&w), true))
        }
        other => Err(Error::Usage(format!(
            "unknown source `{other}` (expected tree_sum_planar, one_planar_grid or one of {})",
            SOURCE_NAMES.join(", ")
        ))),
    }
}

fn planarize(cli: &Cli, a: &PlanarizeArgs) -> Result<Outcome> {
    let (g, td) = match (&a.input, &a.graph, &a.decomposition) {
        (Some(path), _, _) => {
            let v: Value = serde_json::from_str(&read_input(path)?)?;
            let g = graph_from_value(field(&v, "graph")?)?;
            let td = TreeDecomposition::from_json(&field(&v, "decomposition")?.to_string(), cli.small_threshold)?;
            (g, td)
        }
        (None, Some(gp), Some(dp)) => (read_graph(gp)?, TreeDecomposition::from_json(&read_input(dp)?, cli.small_threshold)?),
        _ => return Err(Error::Usage("give --input, or --graph and --decomposition".into())),
    };
    let res = build_gprime(&g, &td)?;
    let report = verify_claims(&g, &td, &res)?;
    let f: Vec<[usize; 2]> = res.f.iter().enumerate().map(|(u, &v)| [u, v]).collect();
    let ok = report.passed() && report.gprime_planar;
    Ok(Outcome::Json(
        json!({
            "gprime": res.gprime,
            "tprime": res.tprime,
            "f": f,
            "constants": res.constants,
            "report": report,
        }),
        ok,
    ))
}

fn qi_measure(a: &QiArgs) -> Result<Outcome> {
    let f = QiMap::from_json(read_graph(&a.domain)?, read_graph(&a.codomain)?, &read_input(&a.map)?)?;
    let report = measure_distortion(&f)?;
    let mut out = json!({ "distortion": report });
    let mut ok = true;
    if let (Some(l), Some(e), Some(r)) = (a.lambda, a.eps, a.radius) {
        use num_rational::Ratio;
        let holds = report.is_qi(Ratio::from_integer(l), Ratio::from_integer(e), r);
        out["is_qi"] = json!(holds);
        ok &= holds;
    }
    if let Some(constant) = a.a {
        let pruned = prune_to_bounded_degree(&f, constant)?;
        let emb = embed_power_blowup(&f, constant)?;
        out["pruned"] = to_value(&pruned);
        out["embedding"] = json!({
            "a": emb.a,
            "b": emb.b,
            "k": emb.k,
            "fiber_bound": emb.fiber_bound.to_string(),
            "within_fiber_bound": emb.within_fiber_bound,
            "g": emb.g,
        });
        ok &= pruned.degree_bound_holds;
    }
    Ok(Outcome::Json(out, ok))
}

fn fatminor(cli: &Cli, c: &FatminorCommand) -> Result<Outcome> {
    match c {
        FatminorCommand::Verify { input, graph, cert } => {
            let (g, cert) = match (input, graph, cert) {
                (Some(path), _, _) => {
                    let v: Value = serde_json::from_str(&read_input(path)?)?;
                    (
                        graph_from_value(field(&v, "graph")?)?,
                        FatMinorCertificate::from_json(&field(&v, "certificate")?.to_string())?,
                    )
                }
                (None, Some(gp), Some(cp)) => (read_graph(gp)?, FatMinorCertificate::from_json(&read_input(cp)?)?),
                _ => return Err(Error::Usage("give --input, or --graph and --cert".into())),
            };
            let report = verify_certificate(&g, &cert);
            let ok = report.is_valid();
            Ok(Outcome::Json(to_value(&report), ok))
        }
        FatminorCommand::Search { graph, pattern, k, budget } => {
            let g = read_graph(graph)?;
            let h = match families::by_name(pattern) {
                Some(h) => h,
                None => read_graph(&PathBuf::from(pattern))?,
            };
            match search_fat_minor(&g, &h, *k, *budget, cli.seed) {
                Ok(cert) => Ok(Outcome::Json(cert_value(&cert), true)),
                Err(e) => Ok(Outcome::Json(json!({ "found": false, "search": e }), false)),
            }
        }
        FatminorCommand::Claw { m, k } => {
            let c = claw_construction(*m, *k)?;
            Ok(Outcome::Json(
                json!({
                    "graph": c.window.graph,
                    "certificate": cert_value(&c.certificate),
                    "m": c.m,
                    "k": c.k,
                    "radius": c.window.radius,
                    "spacing": c.spacing,
                    "depth": c.depth,
                }),
                true,
            ))
        }
    }
}

fn cert_value(cert: &FatMinorCertificate) -> Value {
    serde_json::from_str(&cert.to_json()).expect("valid json")
}

fn build_cover(cli: &Cli, spec: &CoverSpec, r: u64) -> Result<(Graph, Cover)> {
    let need_graph = || {
        spec.graph
            .as_ref()
            .ok_or_else(|| Error::Usage("this method needs --graph".into()))
            .and_then(read_graph)
    };
    let need_n = || spec.n.ok_or_else(|| Error::Usage("this method needs --n".into()));
    match spec.method {
        CoverMethod::Tree => {
            let g = need_graph()?;
            let c = tree_band_cover(&g, spec.root, r)?;
            Ok((g, c))
        }
        CoverMethod::Grid => {
            let n = need_n()?;
            Ok((grid2(n), grid_shift_cover(n, r)?))
        }
        CoverMethod::Layered => {
            let n = need_n()?;
            let g = grid2(n);
            let layering = bfs_layering(&g, Some(&[0]))?;
            let c = layered_combine(&g, &layering, r, |slice, back| {
                let coord: Vec<i64> = back.iter().map(|&v| (v % n) as i64).collect();
                interval_slice_cover(slice, &coord, r)
            })?;
            Ok((g, c))
        }
        CoverMethod::Greedy => {
            let g = need_graph()?;
            let c = greedy_cover(&g, r, spec.max_families, cli.seed)?;
            Ok((g, c))
        }
    }
}

fn cover(cli: &Cli, c: &CoverCommand) -> Result<Outcome> {
    match c {
        CoverCommand::Build { spec, r } => {
            let (_, cover) = build_cover(cli, spec, *r)?;
            Ok(Outcome::Json(to_value(&cover), true))
        }
        CoverCommand::Check { graph, n, cover } => {
            let g = match (graph, n) {
                (Some(p), _) => read_graph(p)?,
                (None, Some(n)) => grid2(*n),
                (None, None) => return Err(Error::Usage("give --graph or --n".into())),
            };
            let cover = Cover::from_json(&read_input(cover)?)?;
            let report = check_cover(&g, &cover);
            let mut v = to_value(&report);
            v["passed"] = json!(report.passed());
            Ok(Outcome::Json(v, report.passed()))
        }
        CoverCommand::Sample { spec, rs } => {
            let (g, _) = build_cover(cli, spec, rs.first().copied().unwrap_or(1))?;
            let name = format!("{:?}", spec.method).to_lowercase();
            let sample = control_sample(&g, &name, rs, |r| build_cover(cli, spec, r).map(|x| x.1))?;
            Ok(Outcome::Text(sample.to_csv()))
        }
    }
}

fn realization(a: &RealizeArgs) -> Result<crate::lcr::PowerRealization> {
    let host = read_graph(&a.host)?;
    let guest = read_graph(&a.guest)?;
    let injection = match &a.map {
        Some(p) => QiMap::from_json(guest.clone(), host.clone(), &read_input(p)?)?.map,
        None => (0..guest.n()).collect(),
    };
    realize_in_power(&host, &guest, a.k, &injection)
}

fn lcr(c: &LcrCommand) -> Result<Outcome> {
    match c {
        LcrCommand::Realize(a) => {
            let real = realization(a)?;
            Ok(Outcome::Json(
                json!({ "k": real.k, "delta": real.delta, "edges": real.guest.edge_list(), "paths": real.paths }),
                true,
            ))
        }
        LcrCommand::Bound(a) => {
            let real = realization(a)?;
            let b = crossing_upper_bound(&real);
            let ok = b.within_formula;
            let mut v = to_value(&b);
            v["formula"] = json!(b.formula.to_string());
            Ok(Outcome::Json(v, ok))
        }
        LcrCommand::PlanarizeDrawing { input, graph, drawing } => {
            let (g, d) = match (input, graph, drawing) {
                (Some(path), _, _) => {
                    let v: Value = serde_json::from_str(&read_input(path)?)?;
                    (graph_from_value(field(&v, "graph")?)?, Drawing::from_json(&field(&v, "drawing")?.to_string())?)
                }
                (None, Some(gp), Some(dp)) => (read_graph(gp)?, Drawing::from_json(&read_input(dp)?)?),
                _ => return Err(Error::Usage("give --input, or --graph and --drawing".into())),
            };
            let p = planarize_drawing(&g, &d)?;
            let ok = p.planar && p.power_claim_holds();
            let mut v = to_value(&p);
            v["power_claim_holds"] = json!(p.power_claim_holds());
            if let Some(w) = &p.obstruction {
                v["obstruction"] = json!({ "kind": format!("{:?}", w.kind), "branch_vertices": w.branch_vertices });
            }
            Ok(Outcome::Json(v, ok))
        }
    }
}

fn pipeline(cli: &Cli, c: &PipelineCommand) -> Result<Outcome> {
    let PipelineCommand::DrawnQi { domain, codomain, map, drawing, a } = c;
    let (f, constant, d, kind) = match (domain, codomain, map, drawing, a) {
        (Some(dp), Some(cp), Some(mp), Some(drp), Some(a)) => {
            let f = QiMap::from_json(read_graph(dp)?, read_graph(cp)?, &read_input(mp)?)?;
            (f, *a, Drawing::from_json(&read_input(drp)?)?, "input")
        }
        _ => {
            let p = planted_one_planar_qi(cli.seed)?;
            (p.map, p.a, p.drawing, p.kind)
        }
    };
    let (report, _) = drawn_qi_chain(&f, constant, &d)?;
    let ok = report.passed();
    let mut v = to_value(&report);
    v["crossing_formula"] = json!(report.crossing_formula.to_string());
    v["instance"] = json!(kind);
    Ok(Outcome::Json(v, ok))
}
