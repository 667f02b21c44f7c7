//! Renaming color lists along trees, the triangle property P, and two small
//! coloring tricks that the case procedures lean on.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::cover::{residual_list, Color, MatchingAssignment, PartialColoring};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

/// Per-vertex color renamings, old name to new name.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Straightening {
    renames: BTreeMap<Vertex, BTreeMap<Color, Color>>,
}

impl Straightening {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_empty(&self) -> bool {
        self.renames.is_empty()
    }

    pub fn renamed(&self) -> impl Iterator<Item = (Vertex, &BTreeMap<Color, Color>)> {
        self.renames.iter().map(|(&v, p)| (v, p))
    }

    pub fn get(&self, v: Vertex) -> Option<&BTreeMap<Color, Color>> {
        self.renames.get(&v)
    }

    /// New name of the old color `c` at `v`.
    pub fn forward(&self, v: Vertex, c: Color) -> Color {
        self.renames.get(&v).and_then(|p| p.get(&c)).copied().unwrap_or(c)
    }

    /// Old name of the new color `c` at `v`.
    pub fn backward(&self, v: Vertex, c: Color) -> Color {
        self.renames.get(&v).and_then(|p| p.iter().find(|(_, &new)| new == c).map(|(&old, _)| old)).unwrap_or(c)
    }

    /// Renaming equal to applying `self` and then `later`.
    pub fn then(&self, later: &Straightening) -> Straightening {
        let mut out = self.clone();
        for (&v, perm) in &later.renames {
            let entry = out.renames.entry(v).or_default();
            let untouched: Vec<(Color, Color)> = perm
                .iter()
                .filter(|(c, _)| !entry.contains_key(c) && !entry.values().any(|x| x == *c))
                .map(|(&c, &d)| (c, d))
                .collect();
            for new in entry.values_mut() {
                *new = *perm.get(new).unwrap_or(new);
            }
            entry.extend(untouched);
        }
        out
    }

    /// Vertex label to the new names of its list, in list order.
    pub fn to_json(&self, m: &MatchingAssignment) -> String {
        let g = m.graph();
        let map: BTreeMap<&str, Vec<Color>> = self
            .renames
            .keys()
            .map(|&v| (g.label(v), m.list(v).iter().map(|&c| self.forward(v, c)).collect()))
            .collect();
        serde_json::to_string_pretty(&map).expect("plain data serializes")
    }
}

/// Edges whose matching pairs equal colors only, as `(u, v)` with `u < v`.
pub fn straight_edges(m: &MatchingAssignment) -> Vec<(Vertex, Vertex)> {
    m.graph().edges().into_iter().filter(|&(u, v)| m.is_straight(u, v)).collect()
}

/// Renames lists so every edge of `tree` becomes straight. Each component
/// of the forest is rooted at its least vertex and processed breadth-first.
pub fn straighten_tree(
    m: &MatchingAssignment,
    tree: &[(Vertex, Vertex)],
) -> Result<(MatchingAssignment, Straightening)> {
    let mut out = m.clone();
    let s = straighten_rooted(&mut out, tree, &BTreeSet::new())?;
    Ok((out, s))
}

/// In-place straightening that never renames a vertex in `pinned`. Each
/// forest component is rooted at its pinned vertex if it has one, otherwise
/// at its least vertex. A component containing two pinned vertices is
/// accepted only if the path between them needs no renaming.
pub fn straighten_rooted(
    m: &mut MatchingAssignment,
    edges: &[(Vertex, Vertex)],
    pinned: &BTreeSet<Vertex>,
) -> Result<Straightening> {
    let g = m.graph().clone();
    let n = g.vertex_count();
    let mut adj: Vec<Vec<Vertex>> = vec![Vec::new(); n];
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let next = p[y];
            p[y] = r;
            y = next;
        }
        r
    }
    let mut seen = BTreeSet::new();
    for &(u, v) in edges {
        if !g.has_edge(u, v) {
            return Err(Error::Precondition(format!("{} {} is not an edge", g.label(u), g.label(v))));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            continue;
        }
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        if a == b {
            return Err(Error::Precondition(format!(
                "edge set is not a forest: {} {} closes a cycle",
                g.label(u),
                g.label(v)
            )));
        }
        parent[a] = b;
        if m.matching(u, v).len() != m.list(u).len() || m.list(u).len() != m.list(v).len() {
            return Err(Error::Precondition(format!(
                "edge {} {} does not carry a perfect matching",
                g.label(u),
                g.label(v)
            )));
        }
        adj[u].push(v);
        adj[v].push(u);
    }

    let mut s = Straightening::new();
    let mut visited = vec![false; n];
    let mut roots: Vec<Vertex> = pinned.iter().copied().filter(|&v| !adj[v].is_empty()).collect();
    roots.extend((0..n).filter(|&v| !adj[v].is_empty() && !pinned.contains(&v)));
    for root in roots {
        if visited[root] {
            continue;
        }
        visited[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &w in &adj[u] {
                if visited[w] {
                    continue;
                }
                visited[w] = true;
                queue.push_back(w);
                let perm: BTreeMap<Color, Color> = m.matching(u, w).pairs().iter().map(|&(a, b)| (b, a)).collect();
                if perm.iter().all(|(a, b)| a == b) {
                    continue;
                }
                if pinned.contains(&w) {
                    return Err(Error::Precondition(format!(
                        "straightening would rename pinned vertex {}",
                        g.label(w)
                    )));
                }
                m.rename(w, &perm);
                let single = Straightening { renames: BTreeMap::from([(w, perm)]) };
                s = s.then(&single);
            }
        }
    }
    for &(u, v) in edges {
        if !m.is_straight(u, v) {
            return Err(Error::Consistency(format!(
                "edge {} {} not straight after straightening",
                g.label(u),
                g.label(v)
            )));
        }
    }
    Ok(s)
}

fn check_triangle(g: &Graph, (a, b, c): (Vertex, Vertex, Vertex)) -> Result<()> {
    if a == b || b == c || a == c || !g.has_edge(a, b) || !g.has_edge(b, c) || !g.has_edge(a, c) {
        return Err(Error::Precondition(format!("{} {} {} is not a triangle", g.label(a), g.label(b), g.label(c))));
    }
    Ok(())
}

/// Whether the matchings `v1 -> v2 -> v3` compose to the matching `v1 -> v3`.
pub fn has_property_p(m: &MatchingAssignment, tri: (Vertex, Vertex, Vertex)) -> Result<bool> {
    check_triangle(m.graph(), tri)?;
    let (v1, v2, v3) = tri;
    let mut composed: Vec<(Color, Color)> =
        m.matching(v1, v2).pairs().iter().filter_map(|&(a, b)| m.partner(v2, b, v3).map(|c| (a, c))).collect();
    composed.sort_unstable();
    Ok(composed == m.matching(v1, v3).pairs())
}

/// For a triangle without property P, the least pair `(a1, a2)` of colors
/// for `v1`, `v2` that is independent in the cover and leaves `v3` at least
/// three colors: both choices block the same color of `v3`.
pub fn exploit_non_property_p(m: &MatchingAssignment, tri: (Vertex, Vertex, Vertex)) -> Result<(Color, Color)> {
    if has_property_p(m, tri)? {
        return Err(Error::Precondition("triangle has property P".into()));
    }
    let (v1, v2, v3) = tri;
    if [v1, v2, v3].iter().any(|&v| m.list(v).len() != 4) {
        return Err(Error::Precondition("triangle lists must have size 4".into()));
    }
    for &a1 in m.list(v1) {
        for &a2 in m.list(v2) {
            if m.matching(v1, v2).contains(a1, a2) {
                continue;
            }
            let blocked: BTreeSet<Color> =
                [m.partner(v1, a1, v3), m.partner(v2, a2, v3)].into_iter().flatten().collect();
            if m.list(v3).len() - blocked.len() >= 3 {
                return Ok((a1, a2));
            }
        }
    }
    Err(Error::Consistency("no pair exploits a triangle without property P".into()))
}

/// For a path `x y z` with `xz` not an edge and enough room at the ends,
/// colors for `x` and `z` that cost `y` at most one residual color. Both
/// ends need a color left, which the size condition alone does not give. Among
/// pairs of least cost, the lexicographically least is returned.
pub fn color_path_ends(
    m: &MatchingAssignment,
    x: Vertex,
    y: Vertex,
    z: Vertex,
    partial: &PartialColoring,
) -> Result<(Color, Color)> {
    let g = m.graph();
    if !g.has_edge(x, y) || !g.has_edge(y, z) {
        return Err(Error::Precondition("x y z is not a path".into()));
    }
    if x == z || g.has_edge(x, z) {
        return Err(Error::Precondition(format!(
            "{} and {} must be distinct and non-adjacent",
            g.label(x),
            g.label(z)
        )));
    }
    let (rx, ry, rz) = (residual_list(m, x, partial)?, residual_list(m, y, partial)?, residual_list(m, z, partial)?);
    if rx.is_empty() || rz.is_empty() {
        return Err(Error::Precondition("an end of the path has no color left".into()));
    }
    if rx.len() + rz.len() <= ry.len() {
        return Err(Error::Precondition(format!(
            "residual sizes {} + {} do not exceed {}",
            rx.len(),
            rz.len(),
            ry.len()
        )));
    }
    let mut best: Option<(usize, Color, Color)> = None;
    for &a in &rx {
        for &b in &rz {
            let lost: BTreeSet<Color> =
                [m.partner(x, a, y), m.partner(z, b, y)].into_iter().flatten().filter(|c| ry.contains(c)).collect();
            if best.is_none_or(|(l, _, _)| lost.len() < l) {
                best = Some((lost.len(), a, b));
            }
        }
    }
    match best {
        Some((lost, a, b)) if lost <= 1 => Ok((a, b)),
        _ => Err(Error::Consistency("every end pair costs the middle two colors".into())),
    }
}
