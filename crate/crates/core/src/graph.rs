//! Simple undirected graphs with stable string identifiers, plus the metric
//! predicates used to recognize maximal planar graphs of diameter two.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::planarity;

/// Index of a vertex inside a [`Graph`]. Indices follow insertion order.
pub type Vertex = usize;
pub type Edge = (Vertex, Vertex);

/// A finite simple undirected graph.
///
/// Vertices carry string labels; internally they are addressed by dense
/// indices in insertion order, and that order is the "identifier order" used
/// for every deterministic tie-break in the crate.
#[derive(Clone, Default)]
pub struct Graph {
    labels: Vec<String>,
    index: HashMap<String, Vertex>,
    adj: Vec<BTreeSet<Vertex>>,
}

/// Equality is on labeled vertex and edge sets; insertion order is ignored.
impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        if self.vertex_count() != other.vertex_count() || self.edge_count() != other.edge_count() {
            return false;
        }
        let mut mine: Vec<_> = self.edge_labels().into_iter().map(sorted_pair).collect();
        let mut theirs: Vec<_> = other.edge_labels().into_iter().map(sorted_pair).collect();
        mine.sort();
        theirs.sort();
        mine == theirs && self.labels.iter().all(|l| other.index.contains_key(l))
    }
}

impl Eq for Graph {}

fn sorted_pair((a, b): (String, String)) -> (String, String) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph").field("vertices", &self.labels).field("edges", &self.edge_labels()).finish()
    }
}

/// Distance summary of a graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GraphMetrics {
    pub diameter: Diameter,
    pub min_degree: usize,
    pub max_degree: usize,
}

/// Diameter of a graph; disconnected graphs have infinite diameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Diameter {
    Finite(usize),
    Infinite,
}

impl Diameter {
    pub fn at_most(self, bound: usize) -> bool {
        matches!(self, Diameter::Finite(d) if d <= bound)
    }
}

impl fmt::Display for Diameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diameter::Finite(d) => write!(f, "{d}"),
            Diameter::Infinite => f.write_str("infinite"),
        }
    }
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a graph from an edge list. Duplicate edges (in either
    /// orientation) collapse; a self-loop is rejected.
    pub fn from_edges<S: AsRef<str>>(edges: &[(S, S)]) -> Result<Self> {
        let mut g = Graph::new();
        for (a, b) in edges {
            g.add_edge_by_label(a.as_ref(), b.as_ref())?;
        }
        Ok(g)
    }

    /// Adds a vertex if absent and returns its index.
    pub fn add_vertex(&mut self, label: &str) -> Vertex {
        if let Some(&v) = self.index.get(label) {
            return v;
        }
        let v = self.labels.len();
        self.labels.push(label.to_string());
        self.index.insert(label.to_string(), v);
        self.adj.push(BTreeSet::new());
        v
    }

    pub fn add_edge_by_label(&mut self, a: &str, b: &str) -> Result<()> {
        if a == b {
            return Err(Error::SelfLoop(a.to_string()));
        }
        let u = self.add_vertex(a);
        let v = self.add_vertex(b);
        self.add_edge(u, v)
    }

    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<()> {
        if u == v {
            return Err(Error::SelfLoop(self.labels[u].clone()));
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        Ok(())
    }

    pub fn remove_edge(&mut self, u: Vertex, v: Vertex) {
        self.adj[u].remove(&v);
        self.adj[v].remove(&u);
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(BTreeSet::len).sum::<usize>() / 2
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.labels.len()
    }

    pub fn label(&self, v: Vertex) -> &str {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn vertex(&self, label: &str) -> Option<Vertex> {
        self.index.get(label).copied()
    }

    pub fn neighbors(&self, v: Vertex) -> &BTreeSet<Vertex> {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj[u].contains(&v)
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in self.vertices() {
            for &v in self.adj[u].range(u + 1..) {
                out.push((u, v));
            }
        }
        out
    }

    pub fn edge_labels(&self) -> Vec<(String, String)> {
        self.edges().into_iter().map(|(u, v)| (self.labels[u].clone(), self.labels[v].clone())).collect()
    }

    /// Graph with `v` deleted. Remaining vertices keep their relative order.
    pub fn without_vertex(&self, v: Vertex) -> Graph {
        let mut g = Graph::new();
        for u in self.vertices().filter(|&u| u != v) {
            g.add_vertex(&self.labels[u]);
        }
        for (a, b) in self.edges() {
            if a != v && b != v {
                let (x, y) = (g.index[&self.labels[a]], g.index[&self.labels[b]]);
                g.add_edge(x, y).expect("source graph is simple");
            }
        }
        g
    }

    /// The subgraph induced by `keep`, in the order given.
    pub fn induced(&self, keep: &[Vertex]) -> Graph {
        let mut g = Graph::new();
        for &u in keep {
            g.add_vertex(&self.labels[u]);
        }
        for (i, &a) in keep.iter().enumerate() {
            for (j, &b) in keep.iter().enumerate().skip(i + 1) {
                if self.has_edge(a, b) {
                    g.add_edge(i, j).expect("distinct vertices");
                }
            }
        }
        g
    }

    /// Same graph with vertex `v` relabeled `labels[v]`.
    pub fn relabeled(&self, labels: &[String]) -> Result<Graph> {
        let mut g = Graph::new();
        for l in labels {
            g.add_vertex(l);
        }
        if g.vertex_count() != self.vertex_count() {
            return Err(Error::Parse("relabeling is not injective".into()));
        }
        for (u, v) in self.edges() {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// BFS distances from `source`; `None` for unreachable vertices.
    pub fn distances_from(&self, source: Vertex) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.vertex_count()];
        let mut queue = VecDeque::new();
        dist[source] = Some(0);
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap();
            for &w in &self.adj[u] {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count() == 0 || self.distances_from(0).iter().all(Option::is_some)
    }

    /// Connected components, each listed in identifier order.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let mut seen = vec![false; self.vertex_count()];
        let mut out = Vec::new();
        for s in self.vertices() {
            if seen[s] {
                continue;
            }
            let mut comp = Vec::new();
            let mut stack = vec![s];
            seen[s] = true;
            while let Some(u) = stack.pop() {
                comp.push(u);
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Parses the edge-list text format: one edge per line, two
    /// whitespace-separated tokens, `#` starts a comment line. A line with a
    /// single token declares an isolated vertex.
    pub fn parse_edge_list(text: &str) -> Result<Graph> {
        let mut g = Graph::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let tokens: Vec<&str> = line.split_whitespace().collect();
            match tokens.as_slice() {
                [v] => {
                    g.add_vertex(v);
                }
                [a, b] => g.add_edge_by_label(a, b)?,
                _ => {
                    return Err(Error::Parse(format!(
                        "line {}: expected two vertex tokens, got {}",
                        lineno + 1,
                        tokens.len()
                    )))
                }
            }
        }
        Ok(g)
    }

    /// Serializes to the edge-list format. Isolated vertices get their own
    /// line so the round trip preserves the vertex set.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for v in self.vertices() {
            if self.adj[v].is_empty() {
                out.push_str(&self.labels[v]);
                out.push('\n');
            }
        }
        for (u, v) in self.edges() {
            out.push_str(&self.labels[u]);
            out.push(' ');
            out.push_str(&self.labels[v]);
            out.push('\n');
        }
        out
    }

    pub fn complete(n: usize) -> Graph {
        let mut g = Graph::new();
        for i in 0..n {
            g.add_vertex(&i.to_string());
        }
        for i in 0..n {
            for j in i + 1..n {
                g.add_edge(i, j).unwrap();
            }
        }
        g
    }

    pub fn cycle(n: usize) -> Graph {
        let mut g = Graph::new();
        for i in 0..n {
            g.add_vertex(&i.to_string());
        }
        for i in 0..n {
            g.add_edge(i, (i + 1) % n).unwrap();
        }
        g
    }

    pub fn path(n: usize) -> Graph {
        let mut g = Graph::new();
        for i in 0..n {
            g.add_vertex(&i.to_string());
        }
        for i in 1..n {
            g.add_edge(i - 1, i).unwrap();
        }
        g
    }
}

/// Maximum shortest-path distance over all vertex pairs.
pub fn diameter(g: &Graph) -> Diameter {
    let mut best = 0;
    for s in g.vertices() {
        for d in g.distances_from(s) {
            match d {
                Some(d) => best = best.max(d),
                None => return Diameter::Infinite,
            }
        }
    }
    Diameter::Finite(best)
}

pub fn degree_stats(g: &Graph) -> GraphMetrics {
    let degrees = g.vertices().map(|v| g.degree(v));
    GraphMetrics {
        diameter: diameter(g),
        min_degree: degrees.clone().min().unwrap_or(0),
        max_degree: degrees.max().unwrap_or(0),
    }
}

pub fn is_planar(g: &Graph) -> bool {
    planarity::is_planar(g)
}

/// Maximal planarity via the edge count `3|V| - 6` on a planar graph.
pub fn is_maximal_planar(g: &Graph) -> Result<bool> {
    let n = g.vertex_count();
    if n < 3 {
        return Err(Error::Precondition(format!("maximal planarity needs at least 3 vertices, got {n}")));
    }
    Ok(g.edge_count() == 3 * n - 6 && is_planar(g))
}

/// Maximal planar with diameter at most two.
///
/// Graphs with fewer than three vertices are never MP2. For a positive answer
/// on five or more vertices the minimum degree must lie in `3..=4`; anything
/// else means one of the predicates is wrong and is reported as an
/// internal-consistency error.
pub fn is_mp2(g: &Graph) -> Result<bool> {
    if g.vertex_count() < 3 {
        return Ok(false);
    }
    let ok = diameter(g).at_most(2) && is_maximal_planar(g)?;
    if ok && g.vertex_count() >= 5 {
        let m = degree_stats(g);
        if !(3..=4).contains(&m.min_degree) {
            return Err(Error::Consistency(format!(
                "MP2 graph on {} vertices has minimum degree {}",
                g.vertex_count(),
                m.min_degree
            )));
        }
    }
    Ok(ok)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn k5_minus_edge() -> Graph {
        let mut g = Graph::complete(5);
        g.remove_edge(0, 1);
        g
    }

    fn octahedron() -> Graph {
        let mut g = Graph::complete(6);
        for i in 0..3 {
            g.remove_edge(i, i + 3);
        }
        g
    }

    fn star(leaves: usize) -> Graph {
        let mut g = Graph::new();
        g.add_vertex("c");
        for i in 0..leaves {
            g.add_edge_by_label("c", &format!("l{i}")).unwrap();
        }
        g
    }

    #[test]
    fn build_graph_examples() {
        let g = Graph::from_edges(&[("a", "b")]).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (2, 1));
        let g = Graph::from_edges(&[("a", "b"), ("b", "a")]).unwrap();
        assert_eq!(g.edge_count(), 1);
        match Graph::from_edges(&[("a", "a")]) {
            Err(Error::SelfLoop(v)) => assert_eq!(v, "a"),
            other => panic!("expected self-loop rejection, got {other:?}"),
        }
    }

    #[test]
    fn diameter_examples() {
        assert_eq!(diameter(&Graph::path(3)), Diameter::Finite(2));
        assert_eq!(diameter(&k5_minus_edge()), Diameter::Finite(2));
        let mut two = Graph::new();
        two.add_vertex("a");
        two.add_vertex("b");
        assert_eq!(diameter(&two), Diameter::Infinite);
    }

    #[test]
    fn degree_stats_examples() {
        let k4 = degree_stats(&Graph::complete(4));
        assert_eq!((k4.min_degree, k4.max_degree, k4.diameter), (3, 3, Diameter::Finite(1)));
        let k5e = degree_stats(&k5_minus_edge());
        assert_eq!((k5e.min_degree, k5e.max_degree, k5e.diameter), (3, 4, Diameter::Finite(2)));
        let s = degree_stats(&star(4));
        assert_eq!((s.min_degree, s.max_degree, s.diameter), (1, 4, Diameter::Finite(2)));
    }

    #[test]
    fn maximal_planar_examples() {
        assert!(is_maximal_planar(&Graph::complete(4)).unwrap());
        assert!(!is_maximal_planar(&Graph::cycle(5)).unwrap());
        let oct = octahedron();
        assert_eq!(oct.edge_count(), 12);
        assert!(is_maximal_planar(&oct).unwrap());
        assert!(is_maximal_planar(&Graph::path(2)).is_err());
    }

    #[test]
    fn mp2_examples() {
        assert!(is_mp2(&k5_minus_edge()).unwrap());
        assert!(is_mp2(&octahedron()).unwrap());
        assert!(!is_mp2(&Graph::cycle(6)).unwrap());
    }

    #[test]
    fn removing_an_edge_breaks_maximality() {
        for g in [Graph::complete(4), k5_minus_edge(), octahedron()] {
            for (u, v) in g.edges() {
                let mut h = g.clone();
                h.remove_edge(u, v);
                assert!(!is_maximal_planar(&h).unwrap());
            }
        }
    }

    #[test]
    fn edge_list_round_trip() {
        let text = "# a comment\na b\nb c\n\nz\n";
        let g = Graph::parse_edge_list(text).unwrap();
        assert_eq!(g.vertex_count(), 4);
        let again = Graph::parse_edge_list(&g.to_edge_list()).unwrap();
        assert_eq!(again, g);
        assert!(Graph::parse_edge_list("a b c\n").is_err());
    }
}
