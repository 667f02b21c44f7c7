//! The MP2-graphs of minimum degree 4, labeled with the names their case
//! procedures use.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{is_mp2, Graph};

use super::cases::Params;

pub const NAMES: [&str; 15] =
    ["H1", "H2", "G1", "G2", "G3", "G4", "G5", "G6", "G7", "G8", "G9", "G10", "G11", "G12", "G13"];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub name: String,
    pub params: Params,
    #[serde(skip)]
    pub graph: Graph,
    pub named_triangles: BTreeMap<String, [String; 3]>,
}

impl CatalogEntry {
    /// Display name such as `G6(2,1)`.
    pub fn title(&self) -> String {
        if self.params.is_empty() {
            return self.name.clone();
        }
        let order = param_names(&self.name);
        let vals: Vec<String> = order.iter().map(|k| self.params[*k].to_string()).collect();
        format!("{}({})", self.name, vals.join(","))
    }
}

/// Parameter names of a family, in display order.
pub fn param_names(name: &str) -> &'static [&'static str] {
    match name {
        "G1" | "G5" | "G9" => &["n"],
        "G6" | "G8" => &["n", "m"],
        "G7" => &["n", "m", "l"],
        _ => &[],
    }
}

/// Least admissible value of each parameter.
pub fn min_params(name: &str) -> Params {
    let mins: &[(&str, usize)] = match name {
        "G1" => &[("n", 4)],
        "G5" => &[("n", 2)],
        "G6" => &[("n", 1), ("m", 1)],
        "G7" => &[("n", 0), ("m", 1), ("l", 2)],
        "G8" => &[("n", 2), ("m", 1)],
        "G9" => &[("n", 1)],
        _ => &[],
    };
    mins.iter().map(|&(k, v)| (k.to_string(), v)).collect()
}

/// The `count` smallest parameter tuples of a family, by total size and
/// then lexicographically. A fixed graph has exactly one, the empty tuple.
pub fn smallest_params(name: &str, count: usize) -> Vec<Params> {
    let keys = param_names(name);
    if keys.is_empty() {
        return vec![Params::new()];
    }
    let base = min_params(name);
    let mut out = Vec::new();
    let mut extra = 0;
    while out.len() < count {
        let mut layer = Vec::new();
        bump(keys, 0, extra, &mut Vec::new(), &mut layer);
        for offs in layer {
            if out.len() == count {
                break;
            }
            out.push(keys.iter().zip(offs).map(|(k, o)| (k.to_string(), base[*k] + o)).collect());
        }
        extra += 1;
    }
    out
}

fn bump(keys: &[&str], i: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if i + 1 == keys.len() {
        cur.push(left);
        out.push(cur.clone());
        cur.pop();
        return;
    }
    for take in (0..=left).rev() {
        cur.push(take);
        bump(keys, i + 1, left - take, cur, out);
        cur.pop();
    }
}

fn range(prefix: &str, from: usize, to: usize) -> Vec<String> {
    (from..=to).map(|i| format!("{prefix}{i}")).collect()
}

struct Builder {
    g: Graph,
}

impl Builder {
    fn new(order: &[String]) -> Self {
        let mut g = Graph::new();
        for l in order {
            g.add_vertex(l);
        }
        Builder { g }
    }

    fn edge(&mut self, a: &str, b: &str) {
        self.g.add_edge_by_label(a, b).expect("catalog names are distinct");
    }

    /// `hub` joined to every vertex of `rim`.
    fn fan(&mut self, hub: &str, rim: &[String]) {
        for r in rim {
            self.edge(hub, r);
        }
    }

    fn path(&mut self, vs: &[String]) {
        for w in vs.windows(2) {
            self.edge(&w[0], &w[1]);
        }
    }
}

fn names(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

pub(crate) fn h1_graph() -> Graph {
    let mut b = Builder::new(&names(&["x1", "x2", "x3", "y1", "y2", "y3", "z1", "z2", "z3"]));
    for (a, c) in [
        ("y1", "y2"),
        ("y2", "y3"),
        ("y1", "y3"),
        ("x3", "y2"),
        ("x3", "y3"),
        ("z2", "y2"),
        ("z2", "y3"),
        ("x2", "y1"),
        ("x2", "y2"),
        ("z1", "y1"),
        ("z1", "y2"),
        ("x1", "y1"),
        ("x1", "y3"),
        ("z3", "y1"),
        ("z3", "y3"),
        ("x1", "x2"),
        ("x2", "x3"),
        ("x1", "x3"),
        ("z1", "z2"),
        ("z2", "z3"),
        ("z1", "z3"),
    ] {
        b.edge(a, c);
    }
    b.g
}

fn h2_graph() -> Graph {
    let h1 = h1_graph();
    let keep: Vec<_> = ["x1", "x2", "x3", "y1", "y2", "y3"].iter().map(|l| h1.vertex(l).expect("H1 names")).collect();
    h1.induced(&keep)
}

fn g1_graph(n: usize) -> Graph {
    let xs: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    let mut order = names(&["y", "z"]);
    order.extend(xs.iter().cloned());
    let mut b = Builder::new(&order);
    b.fan("y", &xs);
    b.fan("z", &xs);
    b.path(&xs);
    b.edge(&xs[n - 1], &xs[0]);
    b.g
}

/// `w, x_n, ..., x_1, v`: the strip shared by several families.
fn strip(n: usize) -> Vec<String> {
    let mut s = vec!["w".to_string()];
    s.extend(range("x", 1, n).into_iter().rev());
    s.push("v".into());
    s
}

fn g5_graph(n: usize) -> Graph {
    let mut order = names(&["y1", "y2", "v", "v1", "v2", "w"]);
    order.extend(range("x", 1, n));
    let mut b = Builder::new(&order);
    let s = strip(n);
    b.fan("y1", &s);
    b.fan("y2", &s);
    b.path(&s);
    b.fan("v1", &names(&["y1", "w", "v", "v2"]));
    b.fan("v2", &names(&["y2", "w", "v"]));
    b.g
}

fn g6_graph(n: usize, m: usize) -> Graph {
    let mut order = names(&["y1", "y2", "v", "v1", "v2", "w"]);
    order.extend(range("x", 1, n));
    order.extend(range("z", 1, m));
    let mut b = Builder::new(&order);
    let s = strip(n);
    b.fan("y1", &s);
    b.fan("y2", &s);
    b.path(&s);
    let mut zs = vec!["v1".to_string()];
    zs.extend(range("z", 1, m));
    zs.push("w".into());
    b.path(&zs);
    b.fan("y1", &zs[..zs.len() - 1]);
    b.fan("v2", &zs);
    b.fan("v2", &names(&["y2", "v"]));
    b.edge("v", "v1");
    b.g
}

fn g7_graph(n: usize, m: usize, l: usize) -> Graph {
    let mut order = names(&["y1", "y2", "v", "v1", "v2", "w", "z1"]);
    order.extend(range("x", 1, n));
    order.extend(range("q", 1, m));
    order.extend(range("p", 1, l));
    let mut b = Builder::new(&order);
    let mut ring = vec!["v".to_string()];
    ring.extend(range("x", 1, n));
    ring.push("w".into());
    ring.extend(range("q", 1, m));
    ring.extend(range("p", 1, l).into_iter().rev());
    ring.push("v2".into());
    b.fan("y2", &ring);
    b.path(&ring);
    b.edge("v2", "v");
    let mut xs = vec!["v".to_string()];
    xs.extend(range("x", 1, n));
    xs.push("w".into());
    b.fan("y1", &xs);
    let mut qs = vec!["w".to_string()];
    qs.extend(range("q", 1, m));
    qs.push(format!("p{l}"));
    b.fan("z1", &qs);
    let mut ps = range("p", 1, l);
    ps.extend(names(&["v2", "v"]));
    b.fan("v1", &ps);
    b.edge("z1", "v1");
    b.edge("z1", "y1");
    b.edge("v1", "y1");
    b.g
}

fn g8_graph(n: usize, m: usize) -> Graph {
    let mut order = names(&["y1", "y2", "p", "v", "v1", "v2", "w", "p1", "p2"]);
    order.extend(range("x", 1, n));
    order.extend(range("z", 1, m));
    let mut b = Builder::new(&order);
    let s = strip(n);
    b.fan("y1", &s);
    b.fan("y2", &s);
    b.path(&s);
    let mut t = vec!["p1".to_string()];
    t.extend(range("z", 1, m).into_iter().rev());
    t.push("v1".into());
    b.fan("y1", &t);
    b.fan("p", &t);
    b.path(&t);
    b.edge("v", "v1");
    b.edge("w", "p1");
    b.edge("y2", "p");
    b.fan("v2", &names(&["y2", "p", "v", "v1"]));
    b.fan("p2", &names(&["y2", "p", "w", "p1"]));
    b.g
}

fn g9_graph(n: usize) -> Graph {
    let mut order = names(&["v", "y1", "y2", "z1", "v1", "v2", "w", "p1", "p2"]);
    order.extend(range("x", 1, n));
    let mut b = Builder::new(&order);
    let mut s = vec!["v".to_string()];
    s.extend(range("x", 1, n));
    s.push("w".into());
    b.fan("y1", &s);
    b.fan("y2", &s);
    b.path(&s);
    b.fan("z1", &names(&["y1", "y2", "v1", "v2", "p1", "p2"]));
    b.fan("v", &names(&["v1", "v2"]));
    b.fan("w", &names(&["p1", "p2"]));
    b.edge("v1", "y1");
    b.edge("v2", "y2");
    b.edge("p1", "y1");
    b.edge("p2", "y2");
    b.edge("v1", "v2");
    b.edge("p1", "p2");
    b.g
}

fn fixed_source(name: &str) -> Option<&'static str> {
    Some(match name {
        "G2" => include_str!("../../data/catalog/G2.txt"),
        "G3" => include_str!("../../data/catalog/G3.txt"),
        "G4" => include_str!("../../data/catalog/G4.txt"),
        "G10" => include_str!("../../data/catalog/G10.txt"),
        "G11" => include_str!("../../data/catalog/G11.txt"),
        "G12" => include_str!("../../data/catalog/G12.txt"),
        "G13" => include_str!("../../data/catalog/G13.txt"),
        _ => return None,
    })
}

/// Edge-list text of a fixed catalog graph as shipped.
pub fn fixed_edge_list(name: &str) -> Option<&'static str> {
    fixed_source(name)
}

fn triangles(name: &str, params: &Params) -> BTreeMap<String, [String; 3]> {
    let p = |k: &str| params.get(k).copied().unwrap_or(0);
    let t: Vec<(&str, [String; 3])> = match name {
        "H1" => vec![
            ("C1", tri("y1", "y2", "y3")),
            ("C2", tri("x3", "y2", "y3")),
            ("C3", tri("z2", "y2", "y3")),
            ("C4", tri("x2", "y1", "y2")),
            ("C5", tri("z1", "y1", "y2")),
            ("C6", tri("x1", "y1", "y3")),
            ("C7", tri("z3", "y1", "y3")),
        ],
        "G2" => vec![("C1", tri("v", "v2", "v3")), ("C2", tri("w", "v2", "v3"))],
        "G3" => vec![("C1", tri("v", "v1", "v2")), ("C2", tri("w", "v1", "v2"))],
        "G4" | "G9" => vec![("C1", tri("v", "y1", "x1")), ("C2", tri("v", "y2", "x1"))],
        "G7" => {
            let (pl, pk) = (format!("p{}", p("l")), format!("p{}", p("l").saturating_sub(1)));
            vec![("C1", [pl.clone(), "y2".into(), pk.clone()]), ("C2", ["v1".into(), pl, pk])]
        }
        "G8" => vec![("C1", tri("p", "y2", "v2")), ("C2", tri("v", "y2", "v2")), ("C3", tri("w", "y2", "p2"))],
        "G10" => vec![("C1", tri("y", "u0", "u1")), ("C2", tri("x", "y", "u0"))],
        "G11" => vec![
            ("C1", tri("x", "u0", "u3")),
            ("C2", tri("x", "u0", "x1")),
            ("C3", tri("u", "u0", "u3")),
            ("C4", tri("y", "u0", "x1")),
            ("C5", tri("y", "u0", "u1")),
            ("C6", tri("u", "u0", "u1")),
            ("C7", tri("u", "u3", "u2")),
            ("C8", tri("u", "u1", "u2")),
        ],
        "G12" => vec![("C1", tri("y", "u0", "u1")), ("C2", tri("u", "u0", "u1")), ("C3", tri("y", "u1", "y1"))],
        "G13" => vec![("C1", tri("z", "z1", "u2")), ("C2", tri("w", "z1", "u2"))],
        _ => vec![],
    };
    t.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

fn tri(a: &str, b: &str, c: &str) -> [String; 3] {
    [a.to_string(), b.to_string(), c.to_string()]
}

/// Builds a catalog entry and checks it is an MP2-graph of minimum degree
/// 4 whose named triangles exist.
pub fn catalog(name: &str, params: &Params) -> Result<CatalogEntry> {
    let keys = param_names(name);
    if !NAMES.contains(&name) {
        return Err(Error::Precondition(format!("unknown catalog entry {name}")));
    }
    if params.len() != keys.len() || keys.iter().any(|k| !params.contains_key(*k)) {
        return Err(Error::Precondition(format!("{name} takes parameters {keys:?}")));
    }
    let mins = min_params(name);
    for (k, &v) in params {
        if v < mins[k] {
            return Err(Error::Refused(format!("{name} needs {k} >= {}", mins[k])));
        }
    }
    let graph = generate(name, params)?;
    let entry = CatalogEntry {
        name: name.to_string(),
        params: params.clone(),
        graph,
        named_triangles: triangles(name, params),
    };
    check_entry(&entry)?;
    Ok(entry)
}

/// The labeled graph of an entry without the range check. Parameters below
/// the validated range may give graphs that are not MP2 or not of minimum
/// degree 4.
pub fn generate(name: &str, params: &Params) -> Result<Graph> {
    let p = |k: &str| params.get(k).copied().unwrap_or(0);
    if name == "G1" && p("n") < 3 {
        return Err(Error::Refused("G1 needs a cycle".into()));
    }
    Ok(match name {
        "H1" => h1_graph(),
        "H2" => h2_graph(),
        "G1" => g1_graph(p("n")),
        "G5" => g5_graph(p("n")),
        "G6" => g6_graph(p("n"), p("m")),
        "G7" => g7_graph(p("n"), p("m"), p("l")),
        "G8" => g8_graph(p("n"), p("m")),
        "G9" => g9_graph(p("n")),
        fixed => match fixed_source(fixed) {
            Some(text) => Graph::parse_edge_list(text)?,
            None => return Err(Error::Precondition(format!("unknown catalog entry {fixed}"))),
        },
    })
}

fn check_entry(e: &CatalogEntry) -> Result<()> {
    let g = &e.graph;
    if !is_mp2(g)? || g.vertices().any(|v| g.degree(v) < 4) {
        return Err(Error::Consistency(format!("{} is not an MP2-graph of minimum degree 4", e.title())));
    }
    for (tag, [a, b, c]) in &e.named_triangles {
        let vs: Option<Vec<_>> = [a, b, c].iter().map(|l| g.vertex(l)).collect();
        let ok = vs.is_some_and(|vs| g.has_edge(vs[0], vs[1]) && g.has_edge(vs[1], vs[2]) && g.has_edge(vs[0], vs[2]));
        if !ok {
            return Err(Error::Consistency(format!("{}: {tag} is not a triangle", e.title())));
        }
    }
    Ok(())
}

/// `K5` minus the edge `u v`, the base case.
pub(crate) fn k5e_graph() -> Graph {
    let order = names(&["u", "v", "w1", "w2", "w3"]);
    let mut b = Builder::new(&order);
    for (i, a) in order.iter().enumerate() {
        for c in &order[i + 1..] {
            if !(a == "u" && c == "v") {
                b.edge(a, c);
            }
        }
    }
    b.g
}

fn base_order(name: &str) -> usize {
    match name {
        "G1" => 2,
        "G5" | "G6" => 6,
        "G7" => 7,
        "G8" | "G9" => 9,
        _ => 0,
    }
}

/// Every in-range parameter tuple of a family whose graph has `order`
/// vertices, lexicographically.
pub fn params_of_order(name: &str, order: usize) -> Vec<Params> {
    let keys = param_names(name);
    if keys.is_empty() {
        return Vec::new();
    }
    let mins = min_params(name);
    let floor: usize = base_order(name) + mins.values().sum::<usize>();
    if order < floor {
        return Vec::new();
    }
    let mut layer = Vec::new();
    bump(keys, 0, order - floor, &mut Vec::new(), &mut layer);
    let mut out: Vec<Params> = layer
        .into_iter()
        .map(|offs| keys.iter().zip(offs).map(|(k, o)| (k.to_string(), mins[*k] + o)).collect())
        .collect();
    out.sort_by_key(|p: &Params| keys.iter().map(|k| p[*k]).collect::<Vec<_>>());
    out
}

/// Structured description of the whole catalog: parameters, validated
/// minimums, and labels and named triangles at the smallest parameters.
pub fn manifest() -> Result<serde_json::Value> {
    let mut entries = Vec::new();
    for name in NAMES {
        let e = catalog(name, &min_params(name))?;
        let file = fixed_source(name).map(|_| format!("{name}.txt"));
        entries.push(serde_json::json!({
            "name": name,
            "params": param_names(name),
            "min_params": e.params,
            "file": file,
            "smallest": e.title(),
            "labels": e.graph.labels(),
            "edges": e.graph.edge_count(),
            "named_triangles": e.named_triangles,
        }));
    }
    Ok(serde_json::json!({ "entries": entries }))
}
