//! Verification, greedy extension, exact search, and the adversarial
//! DP-chromatic number.

use std::time::{Duration, Instant};

use serde::Serialize;

use crate::cover::{
    residual_unchecked, Color, ListAssignment, MLColoring, Matching, MatchingAssignment, PartialColoring,
};
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, Vertex};

/// Default cap on the number of matching assignments the adversary search
/// will try.
pub const DEFAULT_BUDGET: u128 = 100_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Sat,
    Unsat,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveStats {
    pub nodes: u64,
    pub elapsed: Duration,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveResult {
    pub status: Status,
    pub coloring: Option<MLColoring>,
    pub stats: SolveStats,
}

impl SolveResult {
    pub fn is_sat(&self) -> bool {
        self.status == Status::Sat
    }

    /// Status, coloring by vertex label, and node count. Timing is left out
    /// so the output is reproducible.
    pub fn to_json(&self, g: &Graph) -> String {
        #[derive(Serialize)]
        struct Out {
            status: Status,
            #[serde(skip_serializing_if = "Option::is_none")]
            coloring: Option<std::collections::BTreeMap<String, Color>>,
            nodes: u64,
        }
        let out = Out {
            status: self.status,
            coloring: self.coloring.as_ref().map(|c| c.to_labeled(g)),
            nodes: self.stats.nodes,
        };
        serde_json::to_string_pretty(&out).expect("plain data serializes")
    }
}

pub fn verify_coloring(m: &MatchingAssignment, c: &MLColoring) -> bool {
    let g = m.graph();
    if c.len() != g.vertex_count() {
        return false;
    }
    g.vertices().all(|v| m.list(v).contains(&c.color(v)))
        && g.edges().into_iter().all(|(u, v)| !m.matching(u, v).contains(c.color(u), c.color(v)))
}

/// Colors the vertices of `order` one at a time with the least color left in
/// the residual list.
pub fn extend_greedy(m: &MatchingAssignment, partial: &PartialColoring, order: &[Vertex]) -> Result<MLColoring> {
    let g = m.graph();
    let mut expected: Vec<Vertex> = partial.uncolored().collect();
    let mut given = order.to_vec();
    expected.sort_unstable();
    given.sort_unstable();
    if expected != given {
        return Err(Error::Precondition("order must list exactly the uncolored vertices".into()));
    }
    let mut p = partial.clone();
    let mut history: Vec<Vec<Vec<Color>>> = vec![Vec::new(); g.vertex_count()];
    for &v in order {
        let before: Vec<Vec<Color>> =
            order.iter().filter(|&&w| !p.is_colored(w)).map(|&w| residual_unchecked(m, w, &p)).collect();
        for (&w, r) in order.iter().filter(|&&w| !p.is_colored(w)).zip(before) {
            history[w].push(r);
        }
        let res = residual_unchecked(m, v, &p);
        match res.iter().min() {
            Some(&c) => p.set(v, c),
            None => {
                return Err(Error::Stuck { vertex: g.label(v).to_string(), history: std::mem::take(&mut history[v]) })
            }
        }
    }
    Ok(p.complete().expect("every vertex colored"))
}

/// Search state over list indices: `domain[v]` has bit `i` set while the
/// `i`-th color of `v` is still available.
struct Kernel<'a> {
    m: &'a MatchingAssignment,
    /// `blocks[v][i]` lists `(w, j)`: coloring `v` with its `i`-th color
    /// removes the `j`-th color of `w`.
    blocks: Vec<Vec<Vec<(Vertex, u32)>>>,
    domain: Vec<u64>,
    chosen: Vec<Option<u32>>,
    undo: Vec<(Vertex, u32)>,
    nodes: u64,
}

impl<'a> Kernel<'a> {
    fn new(m: &'a MatchingAssignment) -> Result<Self> {
        let g = m.graph();
        let n = g.vertex_count();
        if let Some(v) = g.vertices().find(|&v| m.list(v).len() > 64) {
            return Err(Error::Refused(format!("list of {} has more than 64 colors", g.label(v))));
        }
        let index = |v: Vertex, c: Color| m.list(v).iter().position(|&x| x == c).map(|i| i as u32);
        let mut blocks = vec![Vec::new(); n];
        for v in g.vertices() {
            blocks[v] = m
                .list(v)
                .iter()
                .map(|&c| {
                    g.neighbors(v)
                        .iter()
                        .filter_map(|&w| m.partner(v, c, w).and_then(|d| index(w, d)).map(|j| (w, j)))
                        .collect()
                })
                .collect();
        }
        let domain = g.vertices().map(|v| low_bits(m.list(v).len())).collect();
        Ok(Kernel { m, blocks, domain, chosen: vec![None; n], undo: Vec::new(), nodes: 0 })
    }

    fn pick(&self) -> Option<Vertex> {
        (0..self.domain.len()).filter(|&v| self.chosen[v].is_none()).min_by_key(|&v| (self.domain[v].count_ones(), v))
    }

    fn search(&mut self) -> bool {
        let v = match self.pick() {
            Some(v) => v,
            None => return true,
        };
        let mut avail = self.domain[v];
        while avail != 0 {
            let i = avail.trailing_zeros();
            avail &= avail - 1;
            self.nodes += 1;
            self.chosen[v] = Some(i);
            let mark = self.undo.len();
            let mut dead = false;
            for k in 0..self.blocks[v][i as usize].len() {
                let (w, j) = self.blocks[v][i as usize][k];
                if self.chosen[w].is_none() && self.domain[w] & (1 << j) != 0 {
                    self.domain[w] &= !(1 << j);
                    self.undo.push((w, j));
                    if self.domain[w] == 0 {
                        dead = true;
                    }
                }
            }
            if !dead && self.search() {
                return true;
            }
            while self.undo.len() > mark {
                let (w, j) = self.undo.pop().unwrap();
                self.domain[w] |= 1 << j;
            }
            self.chosen[v] = None;
        }
        false
    }

    fn coloring(&self) -> MLColoring {
        MLColoring::new(
            self.chosen.iter().enumerate().map(|(v, i)| self.m.list(v)[i.expect("complete") as usize]).collect(),
        )
    }
}

fn low_bits(k: usize) -> u64 {
    if k >= 64 {
        u64::MAX
    } else {
        (1u64 << k) - 1
    }
}

/// Complete backtracking search for an M_L-coloring. Picks the uncolored
/// vertex with the fewest remaining colors, ties by vertex order.
pub fn solve_exact(m: &MatchingAssignment) -> Result<SolveResult> {
    let start = Instant::now();
    let mut k = Kernel::new(m)?;
    let sat = k.domain.iter().all(|&d| d != 0) && k.search();
    let coloring = sat.then(|| k.coloring());
    if let Some(c) = &coloring {
        if !verify_coloring(m, c) {
            return Err(Error::Consistency("solver produced an invalid coloring".into()));
        }
    }
    Ok(SolveResult {
        status: if sat { Status::Sat } else { Status::Unsat },
        coloring,
        stats: SolveStats { nodes: k.nodes, elapsed: start.elapsed() },
    })
}

/// Outcome of searching every matching assignment with `k`-lists.
#[derive(Clone, Debug)]
pub struct AdversaryResult {
    pub colorable: bool,
    /// First uncolorable assignment in enumeration order.
    pub counterexample: Option<MatchingAssignment>,
    pub instances: u128,
}

/// Spanning-forest edges (breadth-first from the least vertex of each
/// component) and the remaining edges.
pub fn spanning_forest(g: &Graph) -> (Vec<Edge>, Vec<Edge>) {
    let mut seen = vec![false; g.vertex_count()];
    let mut tree = Vec::new();
    for s in g.vertices() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    tree.push((u.min(w), u.max(w)));
                    queue.push_back(w);
                }
            }
        }
    }
    tree.sort_unstable();
    let rest = g.edges().into_iter().filter(|e| tree.binary_search(e).is_err()).collect();
    (tree, rest)
}

/// Number of assignments the canonical adversary search would try.
pub fn adversary_space(g: &Graph, k: usize) -> u128 {
    let (_, rest) = spanning_forest(g);
    let fact: u128 = (1..=k as u128).product();
    let mut total: u128 = 1;
    for _ in &rest {
        total = total.saturating_mul(fact);
    }
    total
}

/// All permutations of `1..=k` in lexicographic order.
pub fn permutations(k: usize) -> Vec<Vec<Color>> {
    let mut out = Vec::new();
    let mut cur: Vec<Color> = (1..=k as Color).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (1..cur.len()).rev().find(|&i| cur[i - 1] < cur[i]) else { break };
        let j = (i..cur.len()).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
    out
}

pub fn dp_colorable_for_all(g: &Graph, k: usize) -> Result<AdversaryResult> {
    dp_colorable_for_all_within(g, k, DEFAULT_BUDGET)
}

/// Tries every matching assignment with lists `{1..k}`, up to renaming:
/// spanning-forest edges are fixed to the identity and only the other edges
/// range over all `k!` perfect matchings.
pub fn dp_colorable_for_all_within(g: &Graph, k: usize, budget: u128) -> Result<AdversaryResult> {
    if k == 0 {
        return Err(Error::Precondition("k must be at least 1".into()));
    }
    let space = adversary_space(g, k);
    if space > budget {
        return Err(Error::Refused(format!(
            "{} vertices, {} edges, k={k}: {space} assignments exceed the budget of {budget}",
            g.vertex_count(),
            g.edge_count()
        )));
    }
    let (tree, rest) = spanning_forest(g);
    let perms = permutations(k);
    let colors: Vec<Color> = (1..=k as Color).collect();
    let identity = Matching::identity(&colors);
    let base = MatchingAssignment::from_parts(
        g.clone(),
        ListAssignment::uniform(g.vertex_count(), k),
        tree.iter().map(|&e| (e, identity.clone())),
    );
    let mut odometer = vec![0usize; rest.len()];
    let mut instances: u128 = 0;
    loop {
        let mut m = base.clone();
        for (&(u, v), &p) in rest.iter().zip(&odometer) {
            m.set_matching(u, v, Matching::new(colors.iter().copied().zip(perms[p].iter().copied()).collect()));
        }
        instances += 1;
        if !solve_exact(&m)?.is_sat() {
            return Ok(AdversaryResult { colorable: false, counterexample: Some(m), instances });
        }
        let mut i = 0;
        loop {
            if i == odometer.len() {
                return Ok(AdversaryResult { colorable: true, counterexample: None, instances });
            }
            odometer[i] += 1;
            if odometer[i] < perms.len() {
                break;
            }
            odometer[i] = 0;
            i += 1;
        }
    }
}

/// Least `k <= k_max` for which every `k`-list matching assignment is
/// colorable, or `None` if there is none.
pub fn dp_chromatic_number_exact(g: &Graph, k_max: usize) -> Result<Option<usize>> {
    dp_chromatic_number_within(g, k_max, DEFAULT_BUDGET)
}

pub fn dp_chromatic_number_within(g: &Graph, k_max: usize, budget: u128) -> Result<Option<usize>> {
    if g.vertex_count() == 0 {
        return Ok(Some(0));
    }
    for k in 1..=k_max {
        if dp_colorable_for_all_within(g, k, budget)?.colorable {
            return Ok(Some(k));
        }
    }
    Ok(None)
}
