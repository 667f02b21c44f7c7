//! List assignments, matching assignments and their cover graphs.
//!
//! Colors are small naturals local to each vertex. Nothing ties color `2` at
//! one vertex to color `2` at another except a matching that says so: lists
//! can be renamed per vertex without changing the instance.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

pub type Color = u32;

/// A set of color pairs `(c_u, c_v)` for an oriented edge `u -> v`, kept
/// sorted by the `u` side.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Matching {
    pairs: Vec<(Color, Color)>,
}

impl Matching {
    pub fn new(mut pairs: Vec<(Color, Color)>) -> Self {
        pairs.sort_unstable();
        pairs.dedup();
        Matching { pairs }
    }

    pub fn identity(colors: &[Color]) -> Self {
        Matching::new(colors.iter().map(|&c| (c, c)).collect())
    }

    pub fn pairs(&self) -> &[(Color, Color)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Partner on the far side of the color `c` on the near side.
    pub fn forward(&self, c: Color) -> Option<Color> {
        self.pairs.iter().find(|p| p.0 == c).map(|p| p.1)
    }

    pub fn backward(&self, c: Color) -> Option<Color> {
        self.pairs.iter().find(|p| p.1 == c).map(|p| p.0)
    }

    pub fn contains(&self, a: Color, b: Color) -> bool {
        self.pairs.contains(&(a, b))
    }

    pub fn mirrored(&self) -> Matching {
        Matching::new(self.pairs.iter().map(|&(a, b)| (b, a)).collect())
    }

    /// Every pair matches a color to itself.
    pub fn is_straight(&self) -> bool {
        self.pairs.iter().all(|&(a, b)| a == b)
    }
}

/// One color list per host vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ListAssignment {
    lists: Vec<Vec<Color>>,
}

impl ListAssignment {
    pub fn new(lists: Vec<Vec<Color>>) -> Self {
        ListAssignment { lists }
    }

    /// Every one of `n` vertices gets `{1, ..., k}`.
    pub fn uniform(n: usize, k: usize) -> Self {
        ListAssignment { lists: vec![(1..=k as Color).collect(); n] }
    }

    pub fn list(&self, v: Vertex) -> &[Color] {
        &self.lists[v]
    }

    pub fn len(&self) -> usize {
        self.lists.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lists.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Vec<Color>> {
        self.lists.iter()
    }
}

/// A host graph together with a list per vertex and a matching per edge.
///
/// Both orientations of every edge are stored and kept mirror images of each
/// other, so lookups never depend on which way round an edge is named.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchingAssignment {
    graph: Graph,
    lists: ListAssignment,
    matchings: BTreeMap<(Vertex, Vertex), Matching>,
}

impl MatchingAssignment {
    /// Assembles an assignment without validating it. `matchings` is keyed by
    /// either orientation; the mirror is filled in.
    pub fn from_parts(
        graph: Graph,
        lists: ListAssignment,
        matchings: impl IntoIterator<Item = ((Vertex, Vertex), Matching)>,
    ) -> Self {
        let mut m = MatchingAssignment { graph, lists, matchings: BTreeMap::new() };
        for ((u, v), matching) in matchings {
            m.set_matching(u, v, matching);
        }
        m
    }

    /// Like [`from_parts`](Self::from_parts) but rejects anything
    /// [`validate_assignment`] objects to.
    pub fn new(
        graph: Graph,
        lists: ListAssignment,
        matchings: impl IntoIterator<Item = ((Vertex, Vertex), Matching)>,
    ) -> Result<Self> {
        let m = Self::from_parts(graph, lists, matchings);
        let violations = validate_assignment(&m);
        if violations.is_empty() {
            Ok(m)
        } else {
            Err(Error::InvalidAssignment(violations))
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn lists(&self) -> &ListAssignment {
        &self.lists
    }

    pub fn list(&self, v: Vertex) -> &[Color] {
        self.lists.list(v)
    }

    /// Matching on the oriented edge `u -> v`; empty when `uv` is not an edge.
    pub fn matching(&self, u: Vertex, v: Vertex) -> &Matching {
        static EMPTY: Matching = Matching { pairs: Vec::new() };
        self.matchings.get(&(u, v)).unwrap_or(&EMPTY)
    }

    pub fn set_matching(&mut self, u: Vertex, v: Vertex, matching: Matching) {
        self.matchings.insert((v, u), matching.mirrored());
        self.matchings.insert((u, v), matching);
    }

    /// The color of `v` joined to `(u, c)` in the cover, if any.
    pub fn partner(&self, u: Vertex, c: Color, v: Vertex) -> Option<Color> {
        self.matching(u, v).forward(c)
    }

    pub fn is_straight(&self, u: Vertex, v: Vertex) -> bool {
        self.matching(u, v).is_straight()
    }

    /// Oriented keys as stored, both directions included.
    pub fn oriented_edges(&self) -> impl Iterator<Item = (&(Vertex, Vertex), &Matching)> {
        self.matchings.iter()
    }

    /// Renames the colors of `v` through `perm` (old color -> new color),
    /// rewriting every matching at `v`.
    pub fn rename(&mut self, v: Vertex, perm: &BTreeMap<Color, Color>) {
        let apply = |c: Color| *perm.get(&c).unwrap_or(&c);
        self.lists.lists[v] = self.lists.lists[v].iter().map(|&c| apply(c)).collect();
        let nbrs: Vec<Vertex> = self.graph.neighbors(v).iter().copied().collect();
        for w in nbrs {
            let renamed = Matching::new(self.matching(v, w).pairs().iter().map(|&(a, b)| (apply(a), b)).collect());
            self.set_matching(v, w, renamed);
        }
    }

    /// Restriction to the subgraph induced by `keep`, indexed as in
    /// [`Graph::induced`].
    pub fn induced(&self, keep: &[Vertex]) -> MatchingAssignment {
        let graph = self.graph.induced(keep);
        let lists = ListAssignment::new(keep.iter().map(|&v| self.list(v).to_vec()).collect());
        let matchings: Vec<_> =
            graph.edges().into_iter().map(|(i, j)| ((i, j), self.matching(keep[i], keep[j]).clone())).collect();
        MatchingAssignment::from_parts(graph, lists, matchings)
    }

    /// The same instance carried onto `target` along `map`, where `map[v]`
    /// is the image of `v` and every edge maps to an edge.
    pub fn transport(&self, target: &Graph, map: &[Vertex]) -> Result<MatchingAssignment> {
        if map.len() != self.graph.vertex_count() || target.vertex_count() != map.len() {
            return Err(Error::Precondition("map size does not match the graphs".into()));
        }
        let mut lists = vec![Vec::new(); map.len()];
        for v in self.graph.vertices() {
            lists[map[v]] = self.list(v).to_vec();
        }
        let mut matchings = Vec::new();
        for (u, v) in self.graph.edges() {
            if !target.has_edge(map[u], map[v]) {
                return Err(Error::Precondition("map does not preserve edges".into()));
            }
            matchings.push(((map[u], map[v]), self.matching(u, v).clone()));
        }
        Ok(MatchingAssignment::from_parts(target.clone(), ListAssignment::new(lists), matchings))
    }

    /// The instance on a supergraph with the same vertices: new edges carry
    /// [`identity_assignment`]-style matchings.
    pub fn extended_to(&self, sup: &Graph) -> Result<MatchingAssignment> {
        if sup.labels() != self.graph.labels() {
            return Err(Error::Precondition("supergraph must keep the vertex order".into()));
        }
        let padded = identity_assignment(sup, &self.lists);
        let mut matchings = Vec::new();
        for (u, v) in sup.edges() {
            let m = if self.graph.has_edge(u, v) { self.matching(u, v).clone() } else { padded.matching(u, v).clone() };
            matchings.push(((u, v), m));
        }
        for (u, v) in self.graph.edges() {
            if !sup.has_edge(u, v) {
                return Err(Error::Precondition("not a supergraph".into()));
            }
        }
        Ok(MatchingAssignment::from_parts(sup.clone(), self.lists.clone(), matchings))
    }

    /// Every matching between equal-size lists padded to a perfect one by
    /// pairing the unmatched colors of each side in list order.
    pub fn normalized(&self) -> MatchingAssignment {
        let mut out = self.clone();
        for (u, v) in self.graph.edges() {
            let (lu, lv) = (self.list(u), self.list(v));
            let mm = self.matching(u, v);
            if lu.len() != lv.len() || mm.len() == lu.len() {
                continue;
            }
            let mut pairs = mm.pairs().to_vec();
            let free_u = lu.iter().filter(|&&c| mm.forward(c).is_none());
            let free_v = lv.iter().filter(|&&c| mm.backward(c).is_none());
            pairs.extend(free_u.zip(free_v).map(|(&a, &b)| (a, b)));
            out.set_matching(u, v, Matching::new(pairs));
        }
        out
    }

    /// Canonical JSON form: lists keyed by vertex label, matchings keyed by
    /// `"u v"` with `u` the lexicographically smaller label. Keys and pairs
    /// are sorted so output is diff-stable.
    pub fn to_file(&self) -> AssignmentFile {
        let mut lists = BTreeMap::new();
        for v in self.graph.vertices() {
            lists.insert(self.graph.label(v).to_string(), self.list(v).to_vec());
        }
        let mut matchings = BTreeMap::new();
        for (u, v) in self.graph.edges() {
            let (a, b) = if self.graph.label(u) <= self.graph.label(v) { (u, v) } else { (v, u) };
            let key = format!("{} {}", self.graph.label(a), self.graph.label(b));
            let pairs = self.matching(a, b).pairs().iter().map(|&(x, y)| [x, y]).collect();
            matchings.insert(key, pairs);
        }
        AssignmentFile { lists, matchings }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("plain data serializes")
    }

    /// Parses and validates an assignment for `graph`.
    pub fn from_file(graph: &Graph, file: &AssignmentFile) -> Result<Self> {
        let mut lists = vec![Vec::new(); graph.vertex_count()];
        let mut seen = vec![false; graph.vertex_count()];
        for (label, colors) in &file.lists {
            let v = graph.vertex(label).ok_or_else(|| Error::UnknownVertex(label.clone()))?;
            lists[v] = colors.clone();
            seen[v] = true;
        }
        if let Some(v) = seen.iter().position(|s| !s) {
            return Err(Error::Parse(format!("no list for vertex {}", graph.label(v))));
        }
        let mut matchings = Vec::new();
        let mut covered = BTreeSet::new();
        for (key, pairs) in &file.matchings {
            let mut parts = key.split_whitespace();
            let (a, b) = match (parts.next(), parts.next(), parts.next()) {
                (Some(a), Some(b), None) => (a, b),
                _ => return Err(Error::Parse(format!("bad matching key {key:?}"))),
            };
            let u = graph.vertex(a).ok_or_else(|| Error::UnknownVertex(a.to_string()))?;
            let v = graph.vertex(b).ok_or_else(|| Error::UnknownVertex(b.to_string()))?;
            if !graph.has_edge(u, v) {
                return Err(Error::Parse(format!("matching given for non-edge {key:?}")));
            }
            if !covered.insert((u.min(v), u.max(v))) {
                return Err(Error::Parse(format!("edge {key:?} given twice")));
            }
            matchings.push(((u, v), Matching::new(pairs.iter().map(|p| (p[0], p[1])).collect())));
        }
        if let Some((u, v)) = graph.edges().into_iter().find(|e| !covered.contains(e)) {
            return Err(Error::Parse(format!("no matching for edge {} {}", graph.label(u), graph.label(v))));
        }
        MatchingAssignment::new(graph.clone(), ListAssignment::new(lists), matchings)
    }

    pub fn from_json(graph: &Graph, text: &str) -> Result<Self> {
        let file: AssignmentFile = serde_json::from_str(text)?;
        Self::from_file(graph, &file)
    }
}

/// On-disk form of a [`MatchingAssignment`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssignmentFile {
    pub lists: BTreeMap<String, Vec<Color>>,
    pub matchings: BTreeMap<String, Vec<[Color; 2]>>,
}

/// Colors chosen for some of the host vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PartialColoring {
    colors: Vec<Option<Color>>,
}

impl PartialColoring {
    pub fn empty(n: usize) -> Self {
        PartialColoring { colors: vec![None; n] }
    }

    pub fn get(&self, v: Vertex) -> Option<Color> {
        self.colors[v]
    }

    pub fn set(&mut self, v: Vertex, c: Color) {
        self.colors[v] = Some(c);
    }

    pub fn unset(&mut self, v: Vertex) {
        self.colors[v] = None;
    }

    pub fn is_colored(&self, v: Vertex) -> bool {
        self.colors[v].is_some()
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn colored(&self) -> impl Iterator<Item = (Vertex, Color)> + '_ {
        self.colors.iter().enumerate().filter_map(|(v, c)| c.map(|c| (v, c)))
    }

    pub fn uncolored(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.colors.iter().enumerate().filter(|(_, c)| c.is_none()).map(|(v, _)| v)
    }

    pub fn complete(&self) -> Option<MLColoring> {
        self.colors.iter().copied().collect::<Option<Vec<_>>>().map(|colors| MLColoring { colors })
    }
}

/// One color per vertex, meant to be an independent transversal of the cover.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MLColoring {
    colors: Vec<Color>,
}

impl MLColoring {
    pub fn new(colors: Vec<Color>) -> Self {
        MLColoring { colors }
    }

    pub fn color(&self, v: Vertex) -> Color {
        self.colors[v]
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn to_partial(&self) -> PartialColoring {
        PartialColoring { colors: self.colors.iter().map(|&c| Some(c)).collect() }
    }

    pub fn to_labeled(&self, g: &Graph) -> BTreeMap<String, Color> {
        g.vertices().map(|v| (g.label(v).to_string(), self.colors[v])).collect()
    }

    pub fn from_labeled(g: &Graph, map: &BTreeMap<String, Color>) -> Result<Self> {
        let mut colors = Vec::with_capacity(g.vertex_count());
        for v in g.vertices() {
            let c = map.get(g.label(v)).ok_or_else(|| Error::Parse(format!("no color for vertex {}", g.label(v))))?;
            colors.push(*c);
        }
        Ok(MLColoring { colors })
    }
}

/// The cover graph: nodes are `(vertex, color)` pairs, each fiber is a
/// clique, and cross edges are exactly the matchings.
#[derive(Clone, Debug)]
pub struct CoverGraph<'a> {
    pub host: &'a Graph,
    pub nodes: Vec<(Vertex, Color)>,
    pub edges: BTreeSet<(usize, usize)>,
}

impl CoverGraph<'_> {
    pub fn node(&self, v: Vertex, c: Color) -> Option<usize> {
        self.nodes.iter().position(|&n| n == (v, c))
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&(a.min(b), a.max(b)))
    }

    /// Whether the chosen nodes form an independent set.
    pub fn is_independent(&self, chosen: &[usize]) -> bool {
        chosen.iter().enumerate().all(|(i, &a)| chosen[i + 1..].iter().all(|&b| a != b && !self.adjacent(a, b)))
    }
}

pub fn build_cover(m: &MatchingAssignment) -> Result<CoverGraph<'_>> {
    let violations = validate_assignment(m);
    if !violations.is_empty() {
        return Err(Error::InvalidAssignment(violations));
    }
    let g = m.graph();
    let mut nodes = Vec::new();
    let mut first = Vec::with_capacity(g.vertex_count());
    for v in g.vertices() {
        first.push(nodes.len());
        nodes.extend(m.list(v).iter().map(|&c| (v, c)));
    }
    let idx = |v: Vertex, c: Color| first[v] + m.list(v).iter().position(|&x| x == c).unwrap();
    let mut edges = BTreeSet::new();
    for v in g.vertices() {
        let size = m.list(v).len();
        for i in 0..size {
            for j in i + 1..size {
                edges.insert((first[v] + i, first[v] + j));
            }
        }
    }
    for (u, v) in g.edges() {
        for &(a, b) in m.matching(u, v).pairs() {
            let (x, y) = (idx(u, a), idx(v, b));
            edges.insert((x.min(y), x.max(y)));
        }
    }
    Ok(CoverGraph { host: g, nodes, edges })
}

/// Straight matchings on shared colors, padded to perfect matchings when the
/// two lists have equal size by pairing leftover colors in list order.
pub fn identity_assignment(g: &Graph, lists: &ListAssignment) -> MatchingAssignment {
    let mut matchings = Vec::new();
    for (u, v) in g.edges() {
        let (lu, lv) = (lists.list(u), lists.list(v));
        let mut pairs: Vec<(Color, Color)> = lu.iter().filter(|c| lv.contains(c)).map(|&c| (c, c)).collect();
        if lu.len() == lv.len() {
            let rest_u = lu.iter().filter(|c| !lv.contains(c));
            let rest_v = lv.iter().filter(|c| !lu.contains(c));
            pairs.extend(rest_u.zip(rest_v).map(|(&a, &b)| (a, b)));
        }
        matchings.push(((u, v), Matching::new(pairs)));
    }
    MatchingAssignment::from_parts(g.clone(), lists.clone(), matchings)
}

/// Lists `{1..k}` everywhere and an independent uniform perfect matching per
/// edge, reproducible from `seed`.
pub fn random_assignment(g: &Graph, k: usize, seed: u64) -> MatchingAssignment {
    assert!(k >= 1, "random_assignment needs k >= 1");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let colors: Vec<Color> = (1..=k as Color).collect();
    let mut matchings = Vec::new();
    for (u, v) in g.edges() {
        let mut image = colors.clone();
        image.shuffle(&mut rng);
        matchings.push(((u, v), Matching::new(colors.iter().copied().zip(image).collect())));
    }
    MatchingAssignment::from_parts(g.clone(), ListAssignment::uniform(g.vertex_count(), k), matchings)
}

/// `L(v)` minus every color matched to a colored neighbor's chosen color.
pub fn residual_list(m: &MatchingAssignment, v: Vertex, partial: &PartialColoring) -> Result<Vec<Color>> {
    if partial.is_colored(v) {
        return Err(Error::Precondition(format!("vertex {} is already colored", m.graph().label(v))));
    }
    Ok(residual_unchecked(m, v, partial))
}

pub(crate) fn residual_unchecked(m: &MatchingAssignment, v: Vertex, partial: &PartialColoring) -> Vec<Color> {
    let blocked: Vec<Color> =
        m.graph().neighbors(v).iter().filter_map(|&u| partial.get(u).and_then(|c| m.partner(u, c, v))).collect();
    m.list(v).iter().copied().filter(|c| !blocked.contains(c)).collect()
}

/// Every violated invariant, as readable messages; empty means valid.
pub fn validate_assignment(m: &MatchingAssignment) -> Vec<String> {
    let g = m.graph();
    let mut out = Vec::new();
    if m.lists().len() != g.vertex_count() {
        out.push(format!("{} lists for {} vertices", m.lists().len(), g.vertex_count()));
        return out;
    }
    for v in g.vertices() {
        let list = m.list(v);
        if list.is_empty() {
            out.push(format!("vertex {} has an empty list", g.label(v)));
        }
        let distinct: BTreeSet<_> = list.iter().collect();
        if distinct.len() != list.len() {
            out.push(format!("vertex {} repeats a color in its list", g.label(v)));
        }
    }
    for (&(u, v), matching) in m.oriented_edges() {
        let name = format!("{} {}", g.label(u), g.label(v));
        if !g.has_edge(u, v) {
            out.push(format!("matching stored for non-edge {name}"));
            continue;
        }
        if m.matching(v, u) != &matching.mirrored() {
            out.push(format!("edge {name}: orientations are not mirror images"));
        }
        if u > v {
            continue;
        }
        let mut left = BTreeSet::new();
        let mut right = BTreeSet::new();
        for &(a, b) in matching.pairs() {
            if !left.insert(a) {
                out.push(format!("edge {name}: color {a} of {} used twice", g.label(u)));
            }
            if !right.insert(b) {
                out.push(format!("edge {name}: color {b} of {} used twice", g.label(v)));
            }
            if !m.list(u).contains(&a) {
                out.push(format!("edge {name}: color {a} not in the list of {}", g.label(u)));
            }
            if !m.list(v).contains(&b) {
                out.push(format!("edge {name}: color {b} not in the list of {}", g.label(v)));
            }
        }
    }
    out
}

/// Whether every matching is perfect between equal-size lists.
pub fn is_perfect(m: &MatchingAssignment) -> bool {
    m.graph().edges().into_iter().all(|(u, v)| {
        let (a, b) = (m.list(u).len(), m.list(v).len());
        a == b && m.matching(u, v).len() == a
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k2() -> Graph {
        Graph::from_edges(&[("u", "v")]).unwrap()
    }

    #[test]
    fn identity_assignment_examples() {
        let m = identity_assignment(&k2(), &ListAssignment::uniform(2, 4));
        assert_eq!(m.matching(0, 1).pairs(), &[(1, 1), (2, 2), (3, 3), (4, 4)]);

        let lists = ListAssignment::new(vec![vec![1, 2], vec![3, 4]]);
        let m = identity_assignment(&k2(), &lists);
        assert_eq!(m.matching(0, 1).pairs(), &[(1, 3), (2, 4)]);
        assert!(validate_assignment(&m).is_empty());

        let tri = Graph::cycle(3);
        let m = identity_assignment(&tri, &ListAssignment::uniform(3, 4));
        assert!(tri.edges().iter().all(|&(u, v)| m.is_straight(u, v)));
    }

    #[test]
    fn random_assignment_examples() {
        let mut k5e = Graph::complete(5);
        k5e.remove_edge(0, 1);
        let m = random_assignment(&k5e, 4, 11);
        assert_eq!(k5e.edge_count(), 9);
        assert!(k5e.edges().iter().all(|&(u, v)| m.matching(u, v).len() == 4));
        assert!(is_perfect(&m));
        assert_eq!(m, random_assignment(&k5e, 4, 11));
        assert_eq!(m.to_json(), random_assignment(&k5e, 4, 11).to_json());

        let c4 = Graph::cycle(4);
        let m = random_assignment(&c4, 2, 3);
        assert_eq!(c4.edges().len(), 4);
        assert!(c4.edges().iter().all(|&(u, v)| m.matching(u, v).len() == 2));
    }

    #[test]
    fn build_cover_examples() {
        let m = identity_assignment(&k2(), &ListAssignment::uniform(2, 4));
        let h = build_cover(&m).unwrap();
        assert_eq!(h.nodes.len(), 8);
        assert_eq!(h.edges.len(), 6 + 6 + 4);

        let mut single = Graph::new();
        single.add_vertex("s");
        let m = identity_assignment(&single, &ListAssignment::uniform(1, 4));
        let h = build_cover(&m).unwrap();
        assert_eq!((h.nodes.len(), h.edges.len()), (4, 6));

        let c4 = Graph::cycle(4);
        let m = identity_assignment(&c4, &ListAssignment::uniform(4, 2));
        let h = build_cover(&m).unwrap();
        let fiber = h.edges.iter().filter(|&&(a, b)| h.nodes[a].0 == h.nodes[b].0).count();
        assert_eq!((h.nodes.len(), fiber, h.edges.len() - fiber), (8, 4, 8));
    }

    #[test]
    fn cover_edges_follow_definition() {
        let g = Graph::cycle(5);
        let m = random_assignment(&g, 3, 5);
        let h = build_cover(&m).unwrap();
        for (i, &(u, a)) in h.nodes.iter().enumerate() {
            for (j, &(v, b)) in h.nodes.iter().enumerate().skip(i + 1) {
                let expect = if u == v {
                    true
                } else if g.has_edge(u, v) {
                    m.matching(u, v).contains(a, b)
                } else {
                    false
                };
                assert_eq!(h.adjacent(i, j), expect, "({u},{a}) ({v},{b})");
            }
        }
    }

    #[test]
    fn build_cover_rejects_invalid() {
        let mut m = identity_assignment(&k2(), &ListAssignment::uniform(2, 4));
        m.set_matching(0, 1, Matching::new(vec![(1, 1), (1, 2)]));
        match build_cover(&m) {
            Err(Error::InvalidAssignment(v)) => assert!(v[0].contains("u v")),
            other => panic!("expected rejection, got {other:?}"),
        }
    }

    #[test]
    fn residual_list_examples() {
        let tri = Graph::cycle(3);
        let m = identity_assignment(&tri, &ListAssignment::uniform(3, 4));
        let mut p = PartialColoring::empty(3);
        assert_eq!(residual_list(&m, 2, &p).unwrap(), vec![1, 2, 3, 4]);
        p.set(0, 1);
        assert_eq!(residual_list(&m, 2, &p).unwrap().len(), 3);
        p.set(1, 2);
        assert_eq!(residual_list(&m, 2, &p).unwrap(), vec![3, 4]);
        assert!(residual_list(&m, 0, &p).is_err());
    }

    #[test]
    fn validate_examples() {
        let m = identity_assignment(&k2(), &ListAssignment::uniform(2, 4));
        assert!(validate_assignment(&m).is_empty());

        let mut bad = m.clone();
        bad.set_matching(0, 1, Matching::new(vec![(1, 1), (1, 2)]));
        let v = validate_assignment(&bad);
        assert!(v.iter().any(|s| s.contains("color 1 of u used twice")), "{v:?}");

        let mut bad = m.clone();
        bad.set_matching(0, 1, Matching::new(vec![(9, 1)]));
        let v = validate_assignment(&bad);
        assert!(v.iter().any(|s| s.contains("not in the list")), "{v:?}");
    }

    #[test]
    fn rename_keeps_validity() {
        let g = Graph::cycle(4);
        let mut m = random_assignment(&g, 4, 9);
        let perm: BTreeMap<Color, Color> = [(1, 3), (2, 1), (3, 4), (4, 2)].into_iter().collect();
        m.rename(2, &perm);
        assert!(validate_assignment(&m).is_empty());
        assert!(is_perfect(&m));
    }

    #[test]
    fn json_round_trip() {
        let g = Graph::cycle(5);
        let m = random_assignment(&g, 4, 21);
        let back = MatchingAssignment::from_json(&g, &m.to_json()).unwrap();
        assert_eq!(back, m);
        assert!(MatchingAssignment::from_json(&g, r#"{"lists":{},"matchings":{}}"#).is_err());
    }
}
