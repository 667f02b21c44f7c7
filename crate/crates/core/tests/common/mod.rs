#![allow(dead_code)]

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use dpcolor::cover::{identity_assignment, Color, ListAssignment, MLColoring, Matching, MatchingAssignment};
use dpcolor::graph::{Graph, Vertex};

/// Every color vector in the product of the lists, checked edge by edge.
/// Shares nothing with the solver.
pub fn naive_colorings(m: &MatchingAssignment) -> Vec<Vec<Color>> {
    let g = m.graph();
    let n = g.vertex_count();
    let mut out = Vec::new();
    let mut idx = vec![0usize; n];
    if g.vertices().any(|v| m.list(v).is_empty()) {
        return out;
    }
    loop {
        let colors: Vec<Color> = g.vertices().map(|v| m.list(v)[idx[v]]).collect();
        if g.edges().iter().all(|&(u, v)| !m.matching(u, v).contains(colors[u], colors[v])) {
            out.push(colors);
        }
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            idx[i] += 1;
            if idx[i] < m.list(i).len() {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
    }
}

pub fn naive_sat(m: &MatchingAssignment) -> bool {
    !naive_colorings(m).is_empty()
}

/// Independent check that `c` picks a listed color everywhere and no edge
/// matches the two chosen colors.
pub fn independent(m: &MatchingAssignment, c: &MLColoring) -> bool {
    let g = m.graph();
    c.len() == g.vertex_count()
        && g.vertices().all(|v| m.list(v).contains(&c.color(v)))
        && g.edges().iter().all(|&(u, v)| !m.matching(u, v).contains(c.color(u), c.color(v)))
}

/// Lists `{1..k}`, every edge straight.
pub fn identity(g: &Graph, k: usize) -> MatchingAssignment {
    identity_assignment(g, &ListAssignment::uniform(g.vertex_count(), k))
}

/// The permutation `perm` of `1..=k` as a matching: color `i` goes to
/// `perm[i-1]`.
pub fn perm_matching(perm: &[Color]) -> Matching {
    Matching::new((1..=perm.len() as Color).zip(perm.iter().copied()).collect())
}

/// `m` with the named edges replaced by the given permutations, written as
/// digit strings such as `"1243"`.
pub fn twisted(m: &MatchingAssignment, twists: &[(String, String, String)]) -> MatchingAssignment {
    let g = m.graph().clone();
    let mut t = m.clone();
    for (a, b, p) in twists {
        let (u, v) = (g.vertex(a).expect("label"), g.vertex(b).expect("label"));
        assert!(g.has_edge(u, v), "{a} {b} is not an edge");
        let perm: Vec<Color> = p.chars().map(|c| c.to_digit(10).expect("digit")).collect();
        t.set_matching(u, v, perm_matching(&perm));
    }
    t
}

/// Swaps colors 1 and 2 across one edge.
pub fn transposed(m: &MatchingAssignment, u: Vertex, v: Vertex) -> MatchingAssignment {
    let mut t = m.clone();
    let pairs = m
        .matching(u, v)
        .pairs()
        .iter()
        .map(|&(a, b)| {
            (
                a,
                if b == 1 {
                    2
                } else if b == 2 {
                    1
                } else {
                    b
                },
            )
        })
        .collect();
    t.set_matching(u, v, Matching::new(pairs));
    t
}

/// All connected graphs on `n` vertices, one labeled copy per edge set.
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let mut out = Vec::new();
    for mask in 0u32..(1 << pairs.len()) {
        let mut g = Graph::new();
        for i in 0..n {
            g.add_vertex(&format!("v{i}"));
        }
        for (bit, &(i, j)) in pairs.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                g.add_edge(i, j).unwrap();
            }
        }
        if g.is_connected() {
            out.push(g);
        }
    }
    out
}

/// All connected graphs on `n` vertices up to isomorphism, by brute-force
/// canonical form over vertex permutations.
pub fn connected_graphs_up_to_iso(n: usize) -> Vec<Graph> {
    let perms: Vec<Vec<usize>> = {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (0..n).collect();
        heap(&mut cur, n, &mut out);
        out
    };
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for g in connected_graphs(n) {
        let edges = g.edges();
        let canon = perms
            .iter()
            .map(|p| {
                let mut e: Vec<(usize, usize)> = edges.iter().map(|&(u, v)| (p[u].min(p[v]), p[u].max(p[v]))).collect();
                e.sort_unstable();
                e
            })
            .min()
            .unwrap_or_default();
        if seen.insert(canon) {
            out.push(g);
        }
    }
    out
}

fn heap(cur: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k <= 1 {
        out.push(cur.clone());
        return;
    }
    for i in 0..k {
        heap(cur, k - 1, out);
        let j = if k.is_multiple_of(2) { i } else { 0 };
        cur.swap(j, k - 1);
    }
}

/// A connected random graph on `n` vertices: a random spanning tree plus
/// each remaining pair with probability `p`.
pub fn random_connected(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Graph {
    let mut g = Graph::new();
    for i in 0..n {
        g.add_vertex(&format!("v{i}"));
    }
    for i in 1..n {
        let j = rng.gen_range(0..i);
        g.add_edge(i, j).unwrap();
    }
    for i in 0..n {
        for j in i + 1..n {
            if !g.has_edge(i, j) && rng.gen_bool(p) {
                g.add_edge(i, j).unwrap();
            }
        }
    }
    g
}

/// A uniformly shuffled spanning tree of a connected graph, grown by random
/// edge order (Kruskal on random weights).
pub fn random_spanning_tree(g: &Graph, rng: &mut ChaCha8Rng) -> Vec<(Vertex, Vertex)> {
    let mut edges = g.edges();
    edges.shuffle(rng);
    let mut comp: Vec<usize> = g.vertices().collect();
    let mut tree = Vec::new();
    for (u, v) in edges {
        let (cu, cv) = (comp[u], comp[v]);
        if cu != cv {
            for c in comp.iter_mut() {
                if *c == cv {
                    *c = cu;
                }
            }
            tree.push((u, v));
        }
    }
    tree
}

/// Lists of size `k` drawn from `1..=palette` and uniformly random perfect
/// matchings between them.
pub fn random_lists_assignment(g: &Graph, k: usize, palette: u32, rng: &mut ChaCha8Rng) -> MatchingAssignment {
    let lists: Vec<Vec<Color>> = g
        .vertices()
        .map(|_| {
            let mut all: Vec<Color> = (1..=palette).collect();
            all.shuffle(rng);
            let mut l: Vec<Color> = all[..k].to_vec();
            l.sort_unstable();
            l
        })
        .collect();
    let mut matchings = Vec::new();
    for (u, v) in g.edges() {
        let mut image = lists[v].clone();
        image.shuffle(rng);
        matchings.push(((u, v), Matching::new(lists[u].iter().copied().zip(image).collect())));
    }
    MatchingAssignment::new(g.clone(), ListAssignment::new(lists), matchings).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Graphs of the enumeration shipped under `tests/data`, by name.
pub fn enumerated_mp2() -> BTreeMap<String, Graph> {
    let text = include_str!("../data/mp2_delta4.txt");
    let mut out = BTreeMap::new();
    for block in text.split("# ").filter(|b| !b.trim().is_empty()) {
        let (name, body) = block.split_once('\n').unwrap();
        out.insert(name.trim().to_string(), Graph::parse_edge_list(body).unwrap());
    }
    out
}

pub type Twists = Vec<(String, String, String)>;

/// Branch witnesses: entry to branch name to twisted edges.
pub fn branch_witnesses() -> BTreeMap<String, BTreeMap<String, Twists>> {
    let raw: BTreeMap<String, BTreeMap<String, Vec<[String; 3]>>> =
        serde_json::from_str(include_str!("../data/branch_witnesses.json")).unwrap();
    raw.into_iter()
        .map(|(e, bs)| {
            let bs = bs.into_iter().map(|(b, ts)| (b, ts.into_iter().map(|[a, b, p]| (a, b, p)).collect())).collect();
            (e, bs)
        })
        .collect()
}
