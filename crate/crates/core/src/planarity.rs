//! Planarity testing by path addition (Demoucron, Malgrange, Pertuiset) on
//! each biconnected component. Quadratic per block, which is plenty for the
//! graph sizes this crate works with.

use std::collections::{BTreeSet, VecDeque};

use crate::graph::{Graph, Vertex};

pub fn is_planar(g: &Graph) -> bool {
    let n = g.vertex_count();
    if n <= 4 {
        return true;
    }
    if g.edge_count() > 3 * n - 6 {
        return false;
    }
    biconnected_blocks(g).iter().all(|block| block_is_planar(g, block))
}

/// Edge sets of the biconnected components.
fn biconnected_blocks(g: &Graph) -> Vec<Vec<(Vertex, Vertex)>> {
    struct State {
        disc: Vec<usize>,
        low: Vec<usize>,
        time: usize,
        stack: Vec<(Vertex, Vertex)>,
        blocks: Vec<Vec<(Vertex, Vertex)>>,
    }

    fn visit(g: &Graph, u: Vertex, parent: Option<Vertex>, st: &mut State) {
        st.time += 1;
        st.disc[u] = st.time;
        st.low[u] = st.time;
        for &w in g.neighbors(u) {
            if st.disc[w] == 0 {
                st.stack.push((u, w));
                visit(g, w, Some(u), st);
                st.low[u] = st.low[u].min(st.low[w]);
                if st.low[w] >= st.disc[u] {
                    let mut block = Vec::new();
                    while let Some(e) = st.stack.pop() {
                        block.push(e);
                        if e == (u, w) {
                            break;
                        }
                    }
                    st.blocks.push(block);
                }
            } else if Some(w) != parent && st.disc[w] < st.disc[u] {
                st.stack.push((u, w));
                st.low[u] = st.low[u].min(st.disc[w]);
            }
        }
    }

    let n = g.vertex_count();
    let mut st = State { disc: vec![0; n], low: vec![0; n], time: 0, stack: Vec::new(), blocks: Vec::new() };
    for s in g.vertices() {
        if st.disc[s] == 0 {
            visit(g, s, None, &mut st);
        }
    }
    st.blocks
}

/// A piece of the block not yet drawn: either a single chord between two
/// drawn vertices, or a component of undrawn vertices with its attachments.
struct Fragment {
    interior: Vec<Vertex>,
    attachments: BTreeSet<Vertex>,
    chord: Option<(Vertex, Vertex)>,
}

fn block_is_planar(g: &Graph, block: &[(Vertex, Vertex)]) -> bool {
    let n = g.vertex_count();
    let mut in_block = vec![false; n];
    let mut adj: Vec<Vec<Vertex>> = vec![Vec::new(); n];
    for &(u, v) in block {
        in_block[u] = true;
        in_block[v] = true;
        adj[u].push(v);
        adj[v].push(u);
    }
    let block_vertices: Vec<Vertex> = (0..n).filter(|&v| in_block[v]).collect();
    if block_vertices.len() <= 4 {
        return true;
    }
    if block.len() > 3 * block_vertices.len() - 6 {
        return false;
    }

    let cycle = match find_cycle(&adj, block_vertices[0]) {
        Some(c) => c,
        None => return true,
    };
    let mut drawn = vec![false; n];
    let mut drawn_edges: BTreeSet<(Vertex, Vertex)> = BTreeSet::new();
    for (i, &v) in cycle.iter().enumerate() {
        drawn[v] = true;
        let w = cycle[(i + 1) % cycle.len()];
        drawn_edges.insert(ordered(v, w));
    }
    let mut faces: Vec<Vec<Vertex>> = vec![cycle.clone(), cycle.iter().rev().copied().collect()];

    while drawn_edges.len() < block.len() {
        let fragments = fragments(&adj, &block_vertices, &drawn, &drawn_edges);
        let mut choice: Option<(usize, usize)> = None;
        for (fi, frag) in fragments.iter().enumerate() {
            let admissible: Vec<usize> = faces
                .iter()
                .enumerate()
                .filter(|(_, f)| frag.attachments.iter().all(|a| f.contains(a)))
                .map(|(i, _)| i)
                .collect();
            match admissible.len() {
                0 => return false,
                1 => {
                    choice = Some((fi, admissible[0]));
                    break;
                }
                _ => {
                    if choice.is_none() {
                        choice = Some((fi, admissible[0]));
                    }
                }
            }
        }
        let (fi, face_idx) = choice.expect("at least one fragment while edges remain");
        let path = fragment_path(&adj, &fragments[fi], &drawn);
        for w in path.windows(2) {
            drawn_edges.insert(ordered(w[0], w[1]));
        }
        for &v in &path {
            drawn[v] = true;
        }
        let face = faces.swap_remove(face_idx);
        let (a, b) = (path[0], *path.last().unwrap());
        let inner = &path[1..path.len() - 1];
        let ia = face.iter().position(|&x| x == a).unwrap();
        let ib = face.iter().position(|&x| x == b).unwrap();
        let walk = |from: usize, to: usize| {
            let mut out = Vec::new();
            let mut i = from;
            loop {
                out.push(face[i]);
                if i == to {
                    break;
                }
                i = (i + 1) % face.len();
            }
            out
        };
        let mut first = walk(ia, ib);
        first.extend(inner.iter().rev());
        let mut second = walk(ib, ia);
        second.extend(inner.iter());
        faces.push(first);
        faces.push(second);
    }
    true
}

fn ordered(u: Vertex, v: Vertex) -> (Vertex, Vertex) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

fn find_cycle(adj: &[Vec<Vertex>], start: Vertex) -> Option<Vec<Vertex>> {
    let n = adj.len();
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![usize::MAX; n];
    let mut stack = vec![(start, 0usize)];
    depth[start] = 0;
    while let Some((u, idx)) = stack.pop() {
        if idx < adj[u].len() {
            stack.push((u, idx + 1));
            let w = adj[u][idx];
            if depth[w] == usize::MAX {
                depth[w] = depth[u] + 1;
                parent[w] = u;
                stack.push((w, 0));
            } else if w != parent[u] && depth[w] < depth[u] {
                let mut cycle = vec![u];
                let mut x = u;
                while x != w {
                    x = parent[x];
                    cycle.push(x);
                }
                return Some(cycle);
            }
        }
    }
    None
}

fn fragments(
    adj: &[Vec<Vertex>],
    block_vertices: &[Vertex],
    drawn: &[bool],
    drawn_edges: &BTreeSet<(Vertex, Vertex)>,
) -> Vec<Fragment> {
    let mut out = Vec::new();
    for &u in block_vertices {
        if !drawn[u] {
            continue;
        }
        for &v in &adj[u] {
            if u < v && drawn[v] && !drawn_edges.contains(&(u, v)) {
                out.push(Fragment {
                    interior: Vec::new(),
                    attachments: [u, v].into_iter().collect(),
                    chord: Some((u, v)),
                });
            }
        }
    }
    let mut seen = vec![false; adj.len()];
    for &s in block_vertices {
        if drawn[s] || seen[s] {
            continue;
        }
        let mut interior = Vec::new();
        let mut attachments = BTreeSet::new();
        let mut queue = VecDeque::from([s]);
        seen[s] = true;
        while let Some(u) = queue.pop_front() {
            interior.push(u);
            for &w in &adj[u] {
                if drawn[w] {
                    attachments.insert(w);
                } else if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        out.push(Fragment { interior, attachments, chord: None });
    }
    out
}

/// A path through the fragment joining two distinct attachment vertices.
fn fragment_path(adj: &[Vec<Vertex>], frag: &Fragment, drawn: &[bool]) -> Vec<Vertex> {
    if let Some((u, v)) = frag.chord {
        return vec![u, v];
    }
    let in_frag: BTreeSet<Vertex> = frag.interior.iter().copied().collect();
    let a = *frag.attachments.iter().next().expect("blocks give fragments two attachments");
    let start = *adj[a].iter().find(|w| in_frag.contains(w)).unwrap();
    let mut prev = vec![usize::MAX; adj.len()];
    let mut queue = VecDeque::from([start]);
    prev[start] = start;
    while let Some(u) = queue.pop_front() {
        if let Some(&b) = adj[u].iter().find(|&&w| drawn[w] && w != a) {
            let mut path = vec![b, u];
            let mut x = u;
            while x != start {
                x = prev[x];
                path.push(x);
            }
            path.push(a);
            path.reverse();
            return path;
        }
        for &w in &adj[u] {
            if in_frag.contains(&w) && prev[w] == usize::MAX {
                prev[w] = u;
                queue.push_back(w);
            }
        }
    }
    unreachable!("fragment of a biconnected block has two attachments")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k33() -> Graph {
        let mut g = Graph::new();
        for a in ["a0", "a1", "a2"] {
            for b in ["b0", "b1", "b2"] {
                g.add_edge_by_label(a, b).unwrap();
            }
        }
        g
    }

    fn petersen() -> Graph {
        let mut g = Graph::new();
        for i in 0..5 {
            g.add_edge_by_label(&format!("o{i}"), &format!("o{}", (i + 1) % 5)).unwrap();
            g.add_edge_by_label(&format!("o{i}"), &format!("i{i}")).unwrap();
            g.add_edge_by_label(&format!("i{i}"), &format!("i{}", (i + 2) % 5)).unwrap();
        }
        g
    }

    #[test]
    fn kuratowski_graphs() {
        assert!(is_planar(&Graph::complete(4)));
        assert!(!is_planar(&Graph::complete(5)));
        assert!(!is_planar(&k33()));
        assert!(!is_planar(&petersen()));
    }

    #[test]
    fn sparse_nonplanar_subdivision() {
        // K3,3 with every edge subdivided: edge count alone cannot reject it.
        let mut g = Graph::new();
        for a in 0..3 {
            for b in 0..3 {
                let mid = format!("m{a}{b}");
                g.add_edge_by_label(&format!("a{a}"), &mid).unwrap();
                g.add_edge_by_label(&mid, &format!("b{b}")).unwrap();
            }
        }
        assert!(!is_planar(&g));
    }

    #[test]
    fn planar_families() {
        assert!(is_planar(&Graph::cycle(7)));
        assert!(is_planar(&Graph::path(6)));
        // wheel
        let mut w = Graph::cycle(8);
        let hub = w.add_vertex("hub");
        for i in 0..8 {
            w.add_edge(hub, i).unwrap();
        }
        assert!(is_planar(&w));
        // two K4s sharing a cut vertex
        let mut g = Graph::new();
        for side in ["p", "q"] {
            let quad = ["hub".to_string(), format!("{side}1"), format!("{side}2"), format!("{side}3")];
            for i in 0..4 {
                for j in i + 1..4 {
                    g.add_edge_by_label(&quad[i], &quad[j]).unwrap();
                }
            }
        }
        assert!(is_planar(&g));
    }

    #[test]
    fn k5_with_pendant_tree_is_nonplanar() {
        let mut g = Graph::complete(5);
        g.add_edge_by_label("0", "x").unwrap();
        g.add_edge_by_label("x", "y").unwrap();
        assert!(!is_planar(&g));
    }
}
