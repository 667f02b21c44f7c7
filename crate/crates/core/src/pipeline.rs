//! Planar graphs of diameter at most two: complete to a maximal planar
//! graph on the same vertices, color that, keep the coloring.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cover::{residual_unchecked, MLColoring, MatchingAssignment, PartialColoring};
use crate::error::{Error, Result};
use crate::graph::{diameter, is_maximal_planar, is_planar, Graph, Vertex};
use crate::mp2::{self, ColoringTrace};
use crate::solver::verify_coloring;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Completion {
    pub original: Graph,
    pub completed: Graph,
    pub added_edges: Vec<(Vertex, Vertex)>,
}

impl Completion {
    pub fn added_labels(&self) -> Vec<[String; 2]> {
        self.added_edges
            .iter()
            .map(|&(u, v)| [self.completed.label(u).to_string(), self.completed.label(v).to_string()])
            .collect()
    }

    /// Completed graph maximal planar (or at most three vertices and
    /// complete), original spanning, distances not increased.
    pub fn check(&self) -> Result<()> {
        let (g, h) = (&self.original, &self.completed);
        if g.labels() != h.labels() || g.edges().iter().any(|&(u, v)| !h.has_edge(u, v)) {
            return Err(Error::Consistency("completion does not contain the original".into()));
        }
        if h.vertex_count() >= 3 && !is_maximal_planar(h)? {
            return Err(Error::Consistency("completion is not maximal planar".into()));
        }
        if diameter(h) > diameter(g) {
            return Err(Error::Consistency("completion increased the diameter".into()));
        }
        Ok(())
    }
}

fn check_diam2(g: &Graph) -> Result<()> {
    if !g.is_connected() {
        return Err(Error::Refused("graph is disconnected".into()));
    }
    if !diameter(g).at_most(2) {
        return Err(Error::Refused("graph has diameter greater than two".into()));
    }
    if !is_planar(g) {
        return Err(Error::Refused("graph is not planar".into()));
    }
    Ok(())
}

/// Adds every non-edge that keeps the graph planar, in index order. A
/// planar graph with no such edge left is a triangulation.
pub fn triangulate_diam2(g: &Graph) -> Result<Completion> {
    if g.vertex_count() < 3 {
        return Err(Error::Precondition("triangulation needs at least 3 vertices".into()));
    }
    check_diam2(g)?;
    let mut h = g.clone();
    let mut added = Vec::new();
    let target = 3 * g.vertex_count() - 6;
    'outer: for u in g.vertices() {
        for v in u + 1..g.vertex_count() {
            if h.edge_count() == target {
                break 'outer;
            }
            if h.has_edge(u, v) {
                continue;
            }
            h.add_edge(u, v)?;
            if is_planar(&h) {
                added.push((u, v));
            } else {
                h.remove_edge(u, v);
            }
        }
    }
    let c = Completion { original: g.clone(), completed: h, added_edges: added };
    c.check()?;
    Ok(c)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Certificate {
    pub added_edges: Vec<[String; 2]>,
    pub coloring: std::collections::BTreeMap<String, u32>,
    pub verified: bool,
    pub trace: ColoringTrace,
}

pub struct PipelineOutput {
    pub completion: Option<Completion>,
    pub coloring: MLColoring,
    pub trace: ColoringTrace,
}

impl PipelineOutput {
    pub fn certificate(&self, m: &MatchingAssignment) -> Certificate {
        let g = m.graph();
        Certificate {
            added_edges: self.completion.as_ref().map(Completion::added_labels).unwrap_or_default(),
            coloring: g.vertices().map(|v| (g.label(v).to_string(), self.coloring.color(v))).collect(),
            verified: verify_coloring(m, &self.coloring),
            trace: self.trace.clone(),
        }
    }
}

/// Colors a planar graph of diameter at most two from 4-lists.
pub fn color_diam2(m: &MatchingAssignment) -> Result<PipelineOutput> {
    let g = m.graph();
    if g.vertex_count() == 0 {
        return Err(Error::Precondition("graph has no vertices".into()));
    }
    if g.vertices().any(|v| m.list(v).len() != 4) {
        return Err(Error::Precondition("every list must have 4 colors".into()));
    }
    check_diam2(g)?;
    let m = m.normalized();
    if g.vertex_count() < 3 {
        let mut p = PartialColoring::empty(g.vertex_count());
        let mut trace = ColoringTrace::new();
        for v in g.vertices() {
            let c = residual_unchecked(&m, v, &p)[0];
            p.set(v, c);
            trace.push(mp2::Step::Color { vertex: g.label(v).to_string(), color: c, rule: mp2::Rule::Greedy });
        }
        let coloring = p.complete().expect("every vertex colored");
        return Ok(PipelineOutput { completion: None, coloring, trace });
    }
    let completion = triangulate_diam2(g)?;
    let big = m.extended_to(&completion.completed)?;
    let (coloring, trace) = mp2::color_mp2(&big)?;
    if !verify_coloring(&big, &coloring) || !verify_coloring(&m, &coloring) {
        return Err(Error::Consistency("restricted coloring fails verification".into()));
    }
    Ok(PipelineOutput { completion: Some(completion), coloring, trace })
}

/// A random planar graph of diameter at most two with at most `n`
/// vertices. Half the time it starts from vertices stacked into faces whose
/// corners dominate the graph, otherwise from a shuffled catalog graph;
/// random edges are then deleted while the diameter stays at most two.
pub fn random_diam2_planar(n: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = if n >= 6 && rng.gen_bool(0.5) { shuffled_catalog_graph(n, &mut rng) } else { stacked(n, &mut rng) };
    let deletions = rng.gen_range(0..=g.edge_count() / 2);
    for _ in 0..deletions {
        let edges = g.edges();
        let (u, v) = edges[rng.gen_range(0..edges.len())];
        g.remove_edge(u, v);
        if !diameter(&g).at_most(2) {
            g.add_edge(u, v).expect("restoring an edge");
        }
    }
    g
}

fn stacked(n: usize, rng: &mut ChaCha8Rng) -> Graph {
    let mut g = Graph::new();
    for i in 0..n.min(3) {
        g.add_vertex(&format!("v{i}"));
    }
    for i in 0..g.vertex_count() {
        for j in i + 1..g.vertex_count() {
            g.add_edge(i, j).expect("distinct");
        }
    }
    let mut faces: Vec<[Vertex; 3]> = if n >= 3 { vec![[0, 1, 2], [0, 1, 2]] } else { Vec::new() };
    while g.vertex_count() < n {
        let dominating: Vec<usize> = (0..faces.len())
            .filter(|&i| {
                let f = faces[i];
                g.vertices().all(|v| f.contains(&v) || f.iter().any(|&a| g.has_edge(a, v)))
            })
            .collect();
        let Some(&i) = dominating.choose(rng) else { break };
        let [a, b, c] = faces.swap_remove(i);
        let x = g.add_vertex(&format!("v{}", g.vertex_count()));
        for t in [a, b, c] {
            g.add_edge(x, t).expect("new vertex");
        }
        faces.extend([[a, b, x], [b, c, x], [a, c, x]]);
    }
    g
}

fn shuffled_catalog_graph(n: usize, rng: &mut ChaCha8Rng) -> Graph {
    let mut pool = Vec::new();
    for name in mp2::catalog::NAMES {
        for p in mp2::catalog::smallest_params(name, 6) {
            if let Ok(e) = mp2::catalog(name, &p) {
                if e.graph.vertex_count() <= n {
                    pool.push(e.graph);
                }
            }
        }
    }
    let src = pool.choose(rng).expect("H2 has six vertices");
    let mut perm: Vec<Vertex> = src.vertices().collect();
    perm.shuffle(rng);
    let mut g = Graph::new();
    for i in 0..perm.len() {
        g.add_vertex(&format!("v{i}"));
    }
    for (u, v) in src.edges() {
        g.add_edge(perm[u], perm[v]).expect("permuted edge");
    }
    g
}
