use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use dpcolor::cover::{random_assignment, MatchingAssignment};
use dpcolor::graph::{degree_stats, diameter, is_maximal_planar, is_mp2, is_planar, Diameter, Graph};
use dpcolor::mp2::cases::{run_case, Params};
use dpcolor::mp2::catalog::{self, NAMES};
use dpcolor::pipeline::color_diam2;
use dpcolor::solver::{dp_chromatic_number_exact, solve_exact, verify_coloring};
use dpcolor::transform::{straight_edges, straighten_tree};
use dpcolor::{Error, Result};

#[derive(Parser)]
#[command(name = "dpcolor", version, about = "DP-coloring engine for planar graphs of diameter two")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Diameter and degree bounds of a graph.
    Diam { graph: PathBuf },
    /// Whether a graph is maximal planar of diameter at most two, and why not.
    CheckMp2 { graph: PathBuf },
    /// The catalog of MP2-graphs with minimum degree 4.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Color a planar graph of diameter at most two from 4-lists.
    Color { graph: PathBuf, assignment: PathBuf },
    /// Exact search for a coloring.
    Solve { graph: PathBuf, assignment: PathBuf },
    /// DP-chromatic number by trying every matching assignment.
    ChiDp {
        graph: PathBuf,
        #[arg(long)]
        kmax: usize,
    },
    /// Run a case procedure on random assignments.
    Fuzz {
        entry: String,
        /// Family parameters as `n=2,m=1`; defaults to the smallest valid ones.
        #[arg(long)]
        params: Option<String>,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Directory receiving the graph and assignment of every failure.
        #[arg(long)]
        artifacts: Option<PathBuf>,
    },
    /// Rename color lists so the given forest edges become straight.
    Straighten {
        graph: PathBuf,
        assignment: PathBuf,
        /// Edges as `a-b,b-c`.
        #[arg(long)]
        tree: String,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    List,
    /// The structured manifest shipped next to the fixed graphs.
    Manifest,
    /// Print an entry as an edge list with its named triangles as comments.
    Emit {
        name: String,
        #[arg(long)]
        params: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            let mut record = json!({ "error": e.kind(), "message": e.to_string() });
            if let Error::CaseFailed { trace, .. } = &e {
                record["trace"] = serde_json::to_value(trace.as_ref()).expect("trace serializes");
            }
            eprintln!("{}", serde_json::to_string_pretty(&record).expect("json value"));
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn pretty(v: &Value) -> String {
    format!("{}\n", serde_json::to_string_pretty(v).expect("json value"))
}

fn read_graph(path: &Path) -> Result<Graph> {
    Graph::parse_edge_list(&std::fs::read_to_string(path)?)
}

fn read_assignment(g: &Graph, path: &Path) -> Result<MatchingAssignment> {
    MatchingAssignment::from_json(g, &std::fs::read_to_string(path)?)
}

fn diam_value(d: Diameter) -> Value {
    match d {
        Diameter::Finite(x) => json!(x),
        Diameter::Infinite => json!("infinite"),
    }
}

fn parse_params(name: &str, text: Option<&str>) -> Result<Params> {
    let Some(text) = text else {
        return Ok(catalog::min_params(name));
    };
    let mut p = Params::new();
    for kv in text.split(',').filter(|s| !s.trim().is_empty()) {
        let (k, v) = kv.split_once('=').ok_or_else(|| Error::Parse(format!("parameter `{kv}` is not key=value")))?;
        let v = v.trim().parse().map_err(|_| Error::Parse(format!("parameter `{kv}` is not a number")))?;
        p.insert(k.trim().to_string(), v);
    }
    Ok(p)
}

fn run(cmd: Command) -> Result<String> {
    match cmd {
        Command::Diam { graph } => {
            let g = read_graph(&graph)?;
            let m = degree_stats(&g);
            Ok(pretty(&json!({
                "vertices": g.vertex_count(),
                "edges": g.edge_count(),
                "diameter": diam_value(m.diameter),
                "min_degree": m.min_degree,
                "max_degree": m.max_degree,
            })))
        }
        Command::CheckMp2 { graph } => {
            let g = read_graph(&graph)?;
            let mut reasons = Vec::new();
            let n = g.vertex_count();
            if n < 3 {
                reasons.push(format!("only {n} vertices"));
            } else {
                if !is_planar(&g) {
                    reasons.push("not planar".to_string());
                } else if !is_maximal_planar(&g)? {
                    reasons.push(format!("{} edges, a triangulation has {}", g.edge_count(), 3 * n - 6));
                }
                let d = diameter(&g);
                if !d.at_most(2) {
                    reasons.push(format!("diameter {d}"));
                }
            }
            let mp2 = is_mp2(&g)?;
            Ok(pretty(&json!({ "mp2": mp2, "reasons": reasons })))
        }
        Command::Catalog { action: CatalogAction::List } => {
            let entries: Vec<Value> = NAMES
                .iter()
                .map(|name| {
                    let min = catalog::min_params(name);
                    let e = catalog::catalog(name, &min).expect("smallest parameters are valid");
                    json!({
                        "name": name,
                        "params": catalog::param_names(name),
                        "min_params": min,
                        "smallest": e.title(),
                        "vertices": e.graph.vertex_count(),
                    })
                })
                .collect();
            Ok(pretty(&Value::Array(entries)))
        }
        Command::Catalog { action: CatalogAction::Manifest } => Ok(pretty(&catalog::manifest()?)),
        Command::Catalog { action: CatalogAction::Emit { name, params } } => {
            let p = parse_params(&name, params.as_deref())?;
            let e = catalog::catalog(&name, &p)?;
            let mut out = format!("# {}\n", e.title());
            for (tag, [a, b, c]) in &e.named_triangles {
                out.push_str(&format!("# {tag} {a} {b} {c}\n"));
            }
            for l in e.graph.labels() {
                out.push_str(l);
                out.push('\n');
            }
            out.push_str(&e.graph.to_edge_list());
            Ok(out)
        }
        Command::Color { graph, assignment } => {
            let g = read_graph(&graph)?;
            let m = read_assignment(&g, &assignment)?;
            let out = color_diam2(&m)?;
            Ok(pretty(&serde_json::to_value(out.certificate(&m))?))
        }
        Command::Solve { graph, assignment } => {
            let g = read_graph(&graph)?;
            let m = read_assignment(&g, &assignment)?;
            Ok(format!("{}\n", solve_exact(&m)?.to_json(&g)))
        }
        Command::ChiDp { graph, kmax } => {
            let g = read_graph(&graph)?;
            let chi = dp_chromatic_number_exact(&g, kmax)?;
            Ok(pretty(&json!(chi)))
        }
        Command::Fuzz { entry, params, trials, seed, artifacts } => {
            fuzz(&entry, params.as_deref(), trials, seed, artifacts)
        }
        Command::Straighten { graph, assignment, tree } => {
            let g = read_graph(&graph)?;
            let m = read_assignment(&g, &assignment)?;
            let mut edges = Vec::new();
            for pair in tree.split(',').filter(|s| !s.trim().is_empty()) {
                let (a, b) = pair
                    .trim()
                    .split_once('-')
                    .ok_or_else(|| Error::Parse(format!("tree edge `{pair}` is not a-b")))?;
                let u = g.vertex(a).ok_or_else(|| Error::UnknownVertex(a.to_string()))?;
                let v = g.vertex(b).ok_or_else(|| Error::UnknownVertex(b.to_string()))?;
                if !g.has_edge(u, v) {
                    return Err(Error::Precondition(format!("{a} {b} is not an edge")));
                }
                edges.push((u, v));
            }
            let (out, renaming) = straighten_tree(&m, &edges)?;
            let straight: Vec<[&str; 2]> =
                straight_edges(&out).into_iter().map(|(u, v)| [g.label(u), g.label(v)]).collect();
            Ok(pretty(&json!({
                "assignment": serde_json::to_value(out.to_file())?,
                "renaming": serde_json::from_str::<Value>(&renaming.to_json(&m))?,
                "straight": straight,
            })))
        }
    }
}

fn fuzz(entry: &str, params: Option<&str>, trials: u64, seed: u64, artifacts: Option<PathBuf>) -> Result<String> {
    let p = parse_params(entry, params)?;
    let e = if entry == "K5-e" { None } else { Some(catalog::catalog(entry, &p)?) };
    let g = match &e {
        Some(e) => e.graph.clone(),
        None => Graph::parse_edge_list("u w1\nu w2\nu w3\nv w1\nv w2\nv w3\nw1 w2\nw1 w3\nw2 w3\n")?,
    };
    let title = e.as_ref().map_or(entry.to_string(), |e| e.title());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for trial in 0..trials {
        let s = rng.next_u64();
        let m = random_assignment(&g, 4, s);
        let outcome = run_case(entry, &p, &m).and_then(|(c, _)| {
            if verify_coloring(&m, &c) {
                Ok(())
            } else {
                Err(Error::Consistency("coloring fails verification".into()))
            }
        });
        if let Err(err) = outcome {
            let mut record = json!({ "trial": trial, "seed": s, "error": err.kind(), "message": err.to_string() });
            if let Some(dir) = &artifacts {
                std::fs::create_dir_all(dir)?;
                let gp = dir.join(format!("{title}.txt"));
                std::fs::write(&gp, g.to_edge_list())?;
                let ap = dir.join(format!("{title}-trial{trial}.json"));
                std::fs::write(&ap, m.to_json())?;
                record["graph"] = json!(gp);
                record["assignment"] = json!(ap);
            }
            failures.push(record);
        }
    }
    let report = json!({
        "entry": title,
        "trials": trials,
        "seed": seed,
        "failures": failures.len(),
        "failed": failures,
    });
    if failures.is_empty() {
        Ok(pretty(&report))
    } else {
        eprint!("{}", pretty(&report));
        Err(Error::Consistency(format!("{} of {trials} trials failed", failures.len())))
    }
}
