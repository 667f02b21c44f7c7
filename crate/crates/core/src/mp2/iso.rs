//! Backtracking graph isomorphism for the small graphs of the catalog.

use std::collections::BTreeSet;

use crate::graph::{Graph, Vertex};

/// Per-vertex invariant: degree and sorted neighbor degrees.
fn signature(g: &Graph, v: Vertex) -> (usize, Vec<usize>) {
    let mut nd: Vec<usize> = g.neighbors(v).iter().map(|&w| g.degree(w)).collect();
    nd.sort_unstable();
    (g.degree(v), nd)
}

/// Search order for `a`: highest degree first, then each next vertex has the
/// most already-placed neighbors.
fn search_order(a: &Graph) -> Vec<Vertex> {
    let n = a.vertex_count();
    let mut order = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    while order.len() < n {
        let next = a
            .vertices()
            .filter(|&v| !placed[v])
            .max_by_key(|&v| {
                let links = a.neighbors(v).iter().filter(|&&w| placed[w]).count();
                (links, a.degree(v), std::cmp::Reverse(v))
            })
            .expect("an unplaced vertex remains");
        placed[next] = true;
        order.push(next);
    }
    order
}

struct Search<'a> {
    a: &'a Graph,
    b: &'a Graph,
    order: Vec<Vertex>,
    sig_a: Vec<(usize, Vec<usize>)>,
    sig_b: Vec<(usize, Vec<usize>)>,
    map: Vec<Option<Vertex>>,
    used: Vec<bool>,
    limit: usize,
    found: Vec<Vec<Vertex>>,
}

impl Search<'_> {
    fn feasible(&self, v: Vertex, w: Vertex) -> bool {
        if self.used[w] || self.sig_a[v] != self.sig_b[w] {
            return false;
        }
        for u in self.a.vertices() {
            if let Some(x) = self.map[u] {
                if self.a.has_edge(u, v) != self.b.has_edge(x, w) {
                    return false;
                }
            }
        }
        true
    }

    fn run(&mut self, depth: usize) {
        if self.found.len() >= self.limit {
            return;
        }
        if depth == self.order.len() {
            self.found.push(self.map.iter().map(|x| x.expect("complete map")).collect());
            return;
        }
        let v = self.order[depth];
        if let Some(w) = self.map[v] {
            if self.fixed_ok(v, w) {
                self.run(depth + 1);
            }
            return;
        }
        for w in self.b.vertices() {
            if self.feasible(v, w) {
                self.map[v] = Some(w);
                self.used[w] = true;
                self.run(depth + 1);
                self.map[v] = None;
                self.used[w] = false;
                if self.found.len() >= self.limit {
                    return;
                }
            }
        }
    }

    /// A pre-assigned pair is checked against the vertices placed before it.
    fn fixed_ok(&self, v: Vertex, w: Vertex) -> bool {
        let pos = self.order.iter().position(|&x| x == v).expect("v is in the order");
        self.sig_a[v] == self.sig_b[w]
            && self.order[..pos].iter().all(|&u| {
                let x = self.map[u].expect("earlier vertices are mapped");
                self.a.has_edge(u, v) == self.b.has_edge(x, w)
            })
    }
}

/// Up to `limit` isomorphisms from `a` onto `b` that extend the partial map
/// `fixed`, each as a vector sending a vertex of `a` to one of `b`.
pub fn isomorphisms(a: &Graph, b: &Graph, fixed: &[(Vertex, Vertex)], limit: usize) -> Vec<Vec<Vertex>> {
    let n = a.vertex_count();
    if n != b.vertex_count() || a.edge_count() != b.edge_count() {
        return Vec::new();
    }
    let sig_a: Vec<_> = a.vertices().map(|v| signature(a, v)).collect();
    let sig_b: Vec<_> = b.vertices().map(|v| signature(b, v)).collect();
    let mut sa = sig_a.clone();
    let mut sb = sig_b.clone();
    sa.sort();
    sb.sort();
    if sa != sb {
        return Vec::new();
    }
    let mut map = vec![None; n];
    let mut used = vec![false; n];
    let mut images = BTreeSet::new();
    for &(v, w) in fixed {
        if map[v].is_some_and(|x| x != w) || (!images.insert(w) && map[v] != Some(w)) {
            return Vec::new();
        }
        map[v] = Some(w);
        used[w] = true;
    }
    let mut order: Vec<Vertex> = fixed.iter().map(|&(v, _)| v).collect::<BTreeSet<_>>().into_iter().collect();
    order.extend(search_order(a).into_iter().filter(|v| map[*v].is_none()));
    let mut s = Search { a, b, order, sig_a, sig_b, map, used, limit, found: Vec::new() };
    s.run(0);
    s.found
}

pub fn find_isomorphism(a: &Graph, b: &Graph) -> Option<Vec<Vertex>> {
    isomorphisms(a, b, &[], 1).pop()
}

pub fn is_isomorphic(a: &Graph, b: &Graph) -> bool {
    find_isomorphism(a, b).is_some()
}

/// Every automorphism of `g`.
pub fn automorphisms(g: &Graph) -> Vec<Vec<Vertex>> {
    isomorphisms(g, g, &[], usize::MAX)
}

/// An automorphism of `g` sending each `from[i]` to `to[i]`, if one exists.
pub fn automorphism_mapping(g: &Graph, from: &[Vertex], to: &[Vertex]) -> Option<Vec<Vertex>> {
    let fixed: Vec<_> = from.iter().copied().zip(to.iter().copied()).collect();
    isomorphisms(g, g, &fixed, 1).pop()
}
