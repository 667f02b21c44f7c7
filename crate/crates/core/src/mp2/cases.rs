//! The case procedures, one per catalog family.
//!
//! Each procedure follows the written argument step by step: property-P
//! tests, exploiting a failed test, straightenings, shared colors, path
//! ends and greedy completion. Residual bounds the argument states are
//! checked as they are claimed.

use std::collections::BTreeMap;

use crate::cover::{Color, MLColoring, Matching, MatchingAssignment};
use crate::error::{Error, Result};
use crate::graph::Vertex;

use super::iso::automorphism_mapping;
use super::run::{seq, Frame, Run};
use super::trace::{ColoringTrace, Rule, Step};

pub type Params = BTreeMap<String, usize>;

fn param(params: &Params, key: &str) -> Result<usize> {
    params.get(key).copied().ok_or_else(|| Error::Precondition(format!("missing parameter {key}")))
}

/// Runs the procedure for `entry` on an assignment whose graph is labeled
/// with the catalog names.
pub fn run_case(entry: &str, params: &Params, m: &MatchingAssignment) -> Result<(MLColoring, ColoringTrace)> {
    if entry == "H2" {
        return case_h2(m);
    }
    let frame = Frame::from_labels(m.graph().labels());
    let mut r = Run::new(m, frame, entry);
    match entry {
        "K5-e" => base(&mut r)?,
        "H1" => case_h1(&mut r)?,
        "G1" => case_g1(&mut r, param(params, "n")?)?,
        "G2" => case_g2(&mut r)?,
        "G3" => case_g3(&mut r)?,
        "G4" => case_g4(&mut r)?,
        "G5" => case_g5(&mut r, param(params, "n")?)?,
        "G6" => case_g6(&mut r, param(params, "n")?, param(params, "m")?)?,
        "G7" => case_g7(&mut r, param(params, "n")?, param(params, "m")?, param(params, "l")?)?,
        "G8" => case_g8(&mut r, param(params, "n")?, param(params, "m")?)?,
        "G9" => case_g9(&mut r, param(params, "n")?)?,
        "G10" => case_g10(&mut r)?,
        "G11" => case_g11(&mut r)?,
        "G12" => case_g12(&mut r)?,
        "G13" => case_g13(&mut r)?,
        other => return Err(Error::Precondition(format!("no case procedure for {other}"))),
    }
    r.finish()
}

/// The frame under an automorphism sending the named vertices `from` to
/// `to`, trying each listed target order in turn.
fn sym(r: &Run, from: &[&str], targets: &[&[&str]]) -> Result<Frame> {
    let g = r.graph();
    let src: Vec<Vertex> = from.iter().map(|n| r.v(n)).collect::<Result<_>>()?;
    for to in targets {
        let dst: Vec<Vertex> = to.iter().map(|n| r.v(n)).collect::<Result<_>>()?;
        if let Some(sigma) = automorphism_mapping(g, &src, &dst) {
            return Ok(r.frame.through(&sigma));
        }
    }
    Err(Error::Consistency(format!("no automorphism sends {} to {}", from.join(" "), targets[0].join(" "))))
}

pub(crate) fn base(r: &mut Run) -> Result<()> {
    r.straighten(&[("u", "w1"), ("w1", "v")])?;
    r.same(&["u", "v"], &[("u", "w1"), ("w1", "v")])?;
    r.greedy(&["w2", "w3", "w1"])
}

fn case_h1(r: &mut Run) -> Result<()> {
    if !r.is_p("C1", ["y1", "y2", "y3"])? {
        r.branch("C1 not P");
        r.exploit(["y3", "y2", "y1"])?;
        r.claim("z2", 2)?;
        r.claim("z1", 3)?;
        r.protect("z1", "z2", 2)?;
        r.protect("x2", "x3", 2)?;
        return r.greedy(&["y1", "x1", "x3", "z3", "z2"]);
    }
    r.branch("C1 P");
    r.straighten(&[("y1", "y2"), ("y2", "y3")])?;
    r.assert_straight(&[("y3", "y1")])?;
    let others: [(&str, [&str; 3]); 6] = [
        ("C2", ["x3", "y2", "y3"]),
        ("C3", ["z2", "y2", "y3"]),
        ("C4", ["x2", "y1", "y2"]),
        ("C5", ["z1", "y1", "y2"]),
        ("C6", ["x1", "y1", "y3"]),
        ("C7", ["z3", "y1", "y3"]),
    ];
    for (tag, tri) in others {
        if !r.is_p(tag, tri)? {
            r.branch(&format!("{tag} not P"));
            let f = sym(r, &["x3", "y2", "y3"], &[&tri, &[tri[0], tri[2], tri[1]]])?;
            return r.with_frame(f, h1_second_fails);
        }
        r.straighten(&[(tri[1], tri[0])])?;
        r.assert_straight(&[(tri[0], tri[2])])?;
    }
    r.branch("C2..C7 P");
    r.same(&["y2", "x1", "z3"], &[("y1", "y2"), ("y1", "x1"), ("y1", "z3"), ("y3", "y2"), ("y3", "x1"), ("y3", "z3")])?;
    r.claim("z1", 2)?;
    r.claim("y1", 3)?;
    r.claim("x2", 2)?;
    r.path_ends("z1", "y1", "x2")?;
    r.claim("y1", 2)?;
    r.claim("y3", 3)?;
    r.greedy(&["x3", "z2", "y3", "y1"])
}

/// H1 with the triangle `x3 y2 y3` failing property P.
fn h1_second_fails(r: &mut Run) -> Result<()> {
    r.exploit(["y3", "y2", "x3"])?;
    r.claim("y1", 2)?;
    r.claim("z1", 3)?;
    r.claim("z2", 2)?;
    r.path_ends("y1", "z1", "z2")?;
    r.claim("z1", 2)?;
    r.greedy(&["z3", "z1", "x1", "x2", "x3"])
}

/// H2 sits inside H1: color H1 and keep the common part.
fn case_h2(m: &MatchingAssignment) -> Result<(MLColoring, ColoringTrace)> {
    let host = super::catalog::h1_graph();
    let g = m.graph();
    let mut map = Vec::with_capacity(g.vertex_count());
    for v in g.vertices() {
        map.push(
            host.vertex(g.label(v))
                .ok_or_else(|| Error::Consistency(format!("H2 vertex {} is not in H1", g.label(v))))?,
        );
    }
    let mut lists = vec![vec![1, 2, 3, 4]; host.vertex_count()];
    for v in g.vertices() {
        lists[map[v]] = m.list(v).to_vec();
    }
    let lists = crate::cover::ListAssignment::new(lists);
    let padded = crate::cover::identity_assignment(&host, &lists);
    let mut matchings: Vec<((Vertex, Vertex), Matching)> = Vec::new();
    for (a, b) in host.edges() {
        matchings.push(((a, b), padded.matching(a, b).clone()));
    }
    for (u, v) in g.edges() {
        if !host.has_edge(map[u], map[v]) {
            return Err(Error::Consistency("H2 is not a subgraph of H1".into()));
        }
        let e = (map[u].min(map[v]), map[u].max(map[v]));
        let mm = if e.0 == map[u] { m.matching(u, v).clone() } else { m.matching(v, u).clone() };
        for slot in matchings.iter_mut().filter(|(k, _)| *k == e) {
            slot.1 = mm.clone();
        }
    }
    let big = MatchingAssignment::from_parts(host.clone(), lists, matchings);
    let added: Vec<String> = host.vertices().filter(|w| !map.contains(w)).map(|w| host.label(w).to_string()).collect();
    let frame = Frame::from_labels(host.labels());
    let mut r = Run::new(&big, frame, "H2");
    r.push(Step::Embed { host: "H1".into(), added });
    case_h1(&mut r)?;
    let (coloring, trace) = r.finish()?;
    let colors = g.vertices().map(|v| coloring.color(map[v])).collect();
    Ok((MLColoring::new(colors), trace))
}

fn case_g1(r: &mut Run, n: usize) -> Result<()> {
    r.straighten(&[("y", "x1"), ("x1", "z")])?;
    r.same(&["y", "z"], &[("y", "x1"), ("x1", "z")])?;
    let mut order = seq("x", 2..n);
    order.push("x0".into());
    order.push("x1".into());
    r.greedy(&order)
}

fn case_g2(r: &mut Run) -> Result<()> {
    if !r.is_p("C1", ["v", "v2", "v3"])? {
        r.branch("C1 not P");
        return g2_first_fails(r);
    }
    r.branch("C1 P");
    r.straighten(&[("v", "v2"), ("v2", "v3")])?;
    r.assert_straight(&[("v3", "v")])?;
    if !r.is_p("C2", ["w", "v2", "v3"])? {
        r.branch("C2 not P");
        let f = sym(r, &["v", "v2", "v3"], &[&["w", "v2", "v3"], &["w", "v3", "v2"]])?;
        return r.with_frame(f, g2_first_fails);
    }
    r.branch("C2 P");
    r.straighten(&[("v2", "w")])?;
    r.assert_straight(&[("v3", "w")])?;
    r.same(&["v", "w"], &[("v", "v2"), ("w", "v2"), ("v", "v3"), ("w", "v3")])?;
    r.claim("y1", 2)?;
    r.claim("x1", 3)?;
    r.claim("y2", 2)?;
    r.path_ends("y1", "x1", "y2")?;
    r.claim("x1", 2)?;
    r.claim("v2", 3)?;
    r.claim("v3", 3)?;
    r.greedy(&["x2", "x1", "v1", "z", "v4", "v3", "v2"])
}

fn g2_first_fails(r: &mut Run) -> Result<()> {
    r.exploit(["v", "v3", "v2"])?;
    r.claim("v4", 2)?;
    r.claim("y2", 3)?;
    r.protect("y2", "v4", 2)?;
    r.protect("y1", "x1", 2)?;
    r.greedy(&["w", "z", "v4", "x2", "x1", "v1", "v2"])
}

fn case_g3(r: &mut Run) -> Result<()> {
    if !r.is_p("C1", ["v", "v1", "v2"])? {
        r.branch("C1 not P");
        return g3_first_fails(r);
    }
    r.branch("C1 P");
    r.straighten(&[("v", "v1"), ("v1", "v2")])?;
    r.assert_straight(&[("v2", "v")])?;
    if !r.is_p("C2", ["w", "v1", "v2"])? {
        r.branch("C2 not P");
        let f = sym(r, &["v", "v1", "v2"], &[&["w", "v1", "v2"], &["w", "v2", "v1"]])?;
        return r.with_frame(f, g3_first_fails);
    }
    r.branch("C2 P");
    r.straighten(&[("v1", "w")])?;
    r.assert_straight(&[("v2", "w")])?;
    r.same(&["v", "w"], &[("v", "v1"), ("w", "v1"), ("v", "v2"), ("w", "v2")])?;
    r.claim("y1", 2)?;
    r.claim("x1", 3)?;
    r.claim("y2", 2)?;
    r.path_ends("y1", "x1", "y2")?;
    r.claim("x1", 2)?;
    r.claim("v1", 2)?;
    r.claim("v2", 3)?;
    r.greedy(&["x2", "x1", "z", "v3", "v2", "v1"])
}

fn g3_first_fails(r: &mut Run) -> Result<()> {
    r.exploit(["v", "v2", "v1"])?;
    r.claim("v3", 2)?;
    r.claim("y2", 3)?;
    r.protect("y2", "v3", 2)?;
    r.protect("y1", "x1", 2)?;
    r.greedy(&["w", "v1", "x2", "x1", "z", "v3"])
}

fn case_g4(r: &mut Run) -> Result<()> {
    if !r.is_p("C1", ["v", "y1", "x1"])? {
        r.branch("C1 not P");
        return g4_first_fails(r);
    }
    r.branch("C1 P");
    r.straighten(&[("v", "y1"), ("y1", "x1")])?;
    r.assert_straight(&[("x1", "v")])?;
    if !r.is_p("C2", ["v", "y2", "x1"])? {
        r.branch("C2 not P");
        let f = sym(r, &["v", "y1", "x1"], &[&["v", "y2", "x1"]])?;
        return r.with_frame(f, g4_first_fails);
    }
    r.branch("C2 P");
    r.straighten(&[("v", "y2")])?;
    r.assert_straight(&[("y2", "x1")])?;
    r.straighten(&[("y1", "v1"), ("v1", "v2")])?;
    r.same(&["y1", "y2", "v2"], &[("y1", "v1"), ("v1", "v2"), ("v", "y1"), ("v", "y2"), ("x1", "y1"), ("x1", "y2")])?;
    r.claim("v1", 3)?;
    r.claim("v", 2)?;
    r.claim("x1", 3)?;
    r.greedy(&["w", "x2", "z", "v3", "v", "x1", "p", "v1"])
}

fn g4_first_fails(r: &mut Run) -> Result<()> {
    r.exploit(["v", "y1", "x1"])?;
    r.claim("v1", 2)?;
    r.claim("v2", 3)?;
    r.protect("v2", "v1", 2)?;
    r.protect("y2", "v3", 2)?;
    r.greedy(&["w", "x2", "x1", "z", "v3", "p", "v1"])
}

fn case_g5(r: &mut Run, n: usize) -> Result<()> {
    r.straighten(&[("y1", "x1"), ("x1", "y2")])?;
    r.same(&["y1", "y2"], &[("y1", "x1"), ("x1", "y2")])?;
    r.claim("v", 2)?;
    r.claim("v2", 3)?;
    r.claim("w", 2)?;
    r.path_ends("v", "v2", "w")?;
    r.claim("v2", 2)?;
    r.claim("x1", 2)?;
    let mut order = seq("x", (1..=n).rev());
    order.extend(["v1".to_string(), "v2".to_string()]);
    r.greedy(&order)
}

fn case_g6(r: &mut Run, n: usize, m: usize) -> Result<()> {
    r.straighten(&[("y1", "x1"), ("x1", "y2")])?;
    r.same(&["y1", "y2"], &[("y1", "x1"), ("x1", "y2")])?;
    r.claim("w", 2)?;
    r.claim("v2", 3)?;
    r.protect("v2", "w", 2)?;
    r.claim("x1", 3)?;
    let mut order = vec!["v".to_string(), "v1".to_string()];
    order.extend(seq("z", 1..=m));
    order.push("w".into());
    order.extend(seq("x", (1..=n).rev()));
    r.greedy(&order)
}

fn case_g7(r: &mut Run, n: usize, m: usize, l: usize) -> Result<()> {
    let pl = format!("p{l}");
    let pk = format!("p{}", l - 1);
    let qm = format!("q{m}");
    if !r.is_p("C1", [&pl, "y2", &pk])? {
        r.branch("C1 not P");
        r.exploit([&pl, "y2", &pk])?;
        r.claim(&qm, 2)?;
        r.claim("z1", 3)?;
        r.protect("z1", &qm, 2)?;
        r.protect("y1", "w", 2)?;
        let mut order = vec!["v1".to_string(), "v".to_string()];
        order.extend(seq("x", 1..=n));
        order.push("w".into());
        order.extend(seq("q", 1..=m));
        order.push("v2".into());
        order.extend(seq("p", 1..l));
        return r.greedy(&order);
    }
    r.branch("C1 P");
    r.straighten(&[(&pl, &pk), (&pl, "y2")])?;
    r.assert_straight(&[(&pk, "y2")])?;
    if r.is_p("C2", ["v1", &pl, &pk])? {
        r.branch("C2 P");
        r.straighten(&[(&pl, "v1")])?;
        r.assert_straight(&[(&pk, "v1")])?;
        r.same(&["v1", "y2"], &[("v1", &pl), ("y2", &pl), ("v1", &pk), ("y2", &pk)])?;
        r.claim(&pl, 3)?;
        r.claim(&pk, 3)?;
        r.claim("v", 2)?;
        r.claim("y1", 3)?;
        r.protect("y1", "v", 2)?;
        let mut order = vec!["z1".to_string(), "w".to_string()];
        order.extend(seq("x", (1..=n).rev()));
        order.extend(["v".to_string(), "v2".to_string()]);
        order.extend(seq("p", 1..l - 1));
        order.extend(seq("q", 1..=m));
        order.extend([pl.clone(), pk.clone()]);
        return r.greedy(&order);
    }
    r.branch("C2 not P");
    r.straighten(&[("y1", "v"), ("v", "v1"), ("v", "y2"), ("y2", "w")])?;
    let (a1, a2) = r.exploit(["v1", &pl, &pk])?;
    if a1 == a2 {
        r.branch("alpha1 = alpha2");
        r.uncolor(&pl)?;
        r.color("y2", a1, Rule::Forced)?;
        r.claim(&pk, 3)?;
        r.claim("v", 3)?;
        r.claim(&pl, 2)?;
        r.claim("z1", 3)?;
        r.protect("z1", &pl, 2)?;
        let mut order = vec!["y1".to_string(), "w".to_string()];
        order.extend(seq("x", (1..=n).rev()));
        order.extend(["v".to_string(), "v2".to_string()]);
        order.extend(seq("p", 1..l - 1));
        order.extend(seq("q", 1..=m));
        order.extend([pl, pk]);
        r.greedy(&order)
    } else {
        r.branch("alpha1 != alpha2");
        r.color("y2", a1, Rule::Forced)?;
        r.claim("v", 3)?;
        r.claim(&pk, 2)?;
        let mut order = vec!["z1".to_string()];
        order.extend(seq("q", (1..=m).rev()));
        order.extend(["w".to_string(), "y1".to_string()]);
        order.extend(seq("x", (1..=n).rev()));
        order.extend(["v".to_string(), "v2".to_string()]);
        order.extend(seq("p", 1..l));
        r.greedy(&order)
    }
}

/// Name maps for the two symmetries of G8: the reflection that reverses
/// both strips, and the swap of the strip under `y2` with the one under `p`.
fn g8_reflect(n: usize, m: usize) -> impl Fn(&str) -> String {
    move |k: &str| {
        let fixed = match k {
            "w" => "v",
            "v" => "w",
            "p1" => "v1",
            "v1" => "p1",
            "p2" => "v2",
            "v2" => "p2",
            _ => "",
        };
        if !fixed.is_empty() {
            return fixed.to_string();
        }
        if let Some(i) = k.strip_prefix('x').and_then(|s| s.parse::<usize>().ok()) {
            return (n + 1).checked_sub(i).map_or(format!("x{i}*"), |j| format!("x{j}"));
        }
        if let Some(i) = k.strip_prefix('z').and_then(|s| s.parse::<usize>().ok()) {
            return (m + 1).checked_sub(i).map_or(format!("z{i}*"), |j| format!("z{j}"));
        }
        k.to_string()
    }
}

fn g8_swap(k: &str) -> String {
    let fixed = match k {
        "y2" => "p",
        "p" => "y2",
        "v" => "v1",
        "v1" => "v",
        "w" => "p1",
        "p1" => "w",
        _ => "",
    };
    if !fixed.is_empty() {
        return fixed.to_string();
    }
    if let Some(i) = k.strip_prefix('x') {
        return format!("z{i}");
    }
    if let Some(i) = k.strip_prefix('z') {
        return format!("x{i}");
    }
    k.to_string()
}

/// Claim 1: the triangle `p y2 v2` fails property P.
fn g8_claim1(r: &mut Run, n: usize, m: usize) -> Result<()> {
    r.branch("Claim 1");
    r.reset();
    r.exploit(["p", "y2", "v2"])?;
    r.claim("p2", 2)?;
    r.claim("w", 3)?;
    r.protect("w", "p2", 2)?;
    r.protect("y1", &format!("x{n}"), 2)?;
    let mut order = vec!["p1".to_string(), "p2".to_string()];
    order.extend(seq("z", (1..=m).rev()));
    order.extend(["v1".to_string(), "v".to_string(), "v2".to_string()]);
    order.extend(seq("x", 1..=n));
    r.greedy(&order)
}

/// Claim 2 with `w` keeping three colors: `y1`, `y2` get `a1`, `a2` and
/// `x_i` keeps three colors.
fn g8_claim2(r: &mut Run, n: usize, m: usize, i: usize, a1: Color, a2: Color) -> Result<()> {
    r.branch("Claim 2");
    r.reset();
    r.color("y1", a1, Rule::Forced)?;
    r.color("y2", a2, Rule::Forced)?;
    r.claim(&format!("x{i}"), 3)?;
    r.claim("w", 3)?;
    r.claim("v", 2)?;
    r.claim("v2", 3)?;
    r.protect("v2", "v", 2)?;
    let mut order = vec!["p".to_string(), "v1".to_string(), "v".to_string()];
    order.extend(seq("x", 1..i));
    order.extend(seq("z", 1..=m));
    order.extend(["p1".to_string(), "p2".to_string(), "w".to_string()]);
    order.extend(seq("x", (i..=n).rev()));
    r.greedy(&order)
}

/// Claim 3: `y1`, `p` get `a1`, `a2`; `z_i` and `p1` (or `v1`) keep three
/// colors. The argument of Claim 2 with the strips swapped.
fn g8_claim3(r: &mut Run, n: usize, m: usize, i: usize, a1: Color, a2: Color, via_v1: bool) -> Result<()> {
    r.branch(if via_v1 { "Claim 3 (v1)" } else { "Claim 3 (p1)" });
    let f = if via_v1 {
        let reflect = g8_reflect(n, m);
        r.frame.renamed(|k| g8_swap(&reflect(k)))?
    } else {
        r.frame.renamed(g8_swap)?
    };
    let j = if via_v1 { m + 1 - i } else { i };
    r.with_frame(f, |r| g8_claim2(r, m, n, j, a1, a2))
}

/// Claim 4: `y1`, `y2` get `a1`, `a2` and both `v`, `w` keep three colors.
fn g8_claim4(r: &mut Run, n: usize, m: usize, a1: Color, a2: Color) -> Result<()> {
    r.branch("Claim 4");
    r.reset();
    r.color("y1", a1, Rule::Forced)?;
    r.color("y2", a2, Rule::Forced)?;
    r.claim("v", 3)?;
    r.claim("w", 3)?;
    let xn = format!("x{n}");
    r.claim(&xn, 2)?;
    r.protect("w", &xn, 2)?;
    r.protect("p", "p1", 2)?;
    let mut order = vec!["p2".to_string(), "p1".to_string()];
    order.extend(seq("z", (1..=m).rev()));
    order.extend(["v1".to_string(), "v2".to_string(), "v".to_string()]);
    order.extend(seq("x", 1..=n));
    r.greedy(&order)
}

/// Claim 5: Claim 4 with the strips swapped.
fn g8_claim5(r: &mut Run, n: usize, m: usize, a1: Color, a2: Color) -> Result<()> {
    r.branch("Claim 5");
    let f = r.frame.renamed(g8_swap)?;
    r.with_frame(f, |r| g8_claim4(r, m, n, a1, a2))
}

fn case_g8(r: &mut Run, n: usize, m: usize) -> Result<()> {
    if !r.is_p("C2", ["v", "y2", "v2"])? {
        r.branch("Case 10.1");
        return g8_first(r, n, m);
    }
    if !r.is_p("C3", ["w", "y2", "p2"])? {
        r.branch("Case 10.1 mirrored");
        let reflect = g8_reflect(n, m);
        let f = r.frame.renamed(reflect)?;
        return r.with_frame(f, |r| g8_first(r, n, m));
    }
    r.branch("Case 10.2");
    if !r.is_p("C1", ["p", "y2", "v2"])? {
        return g8_claim1(r, n, m);
    }
    if !r.is_p("C1'", ["p", "y2", "p2"])? {
        r.branch("Claim 1 mirrored");
        let reflect = g8_reflect(n, m);
        let f = r.frame.renamed(reflect)?;
        return r.with_frame(f, |r| g8_claim1(r, n, m));
    }
    g8_tree(r, n, m)?;
    r.assert_straight(&[("v", "v2"), ("w", "p2")])?;
    let a1 = r.same(&["p", "v", "w"], &[("p", "v2"), ("v", "v2"), ("y2", "p"), ("y2", "v"), ("y2", "w")])?;
    r.claim("v2", 3)?;
    r.claim("y2", 3)?;
    r.claim("p2", 3)?;
    let a2 = r.partner("v", a1, "y1")?;
    if a2 == a1 {
        return g8_claim4(r, n, m, a1, a1);
    }
    let xn = format!("x{n}");
    let zm = format!("z{m}");
    let beta = r.partner("p", a1, "p1")?;
    if beta != a1 && beta != a2 {
        r.branch("beta free");
        r.color("y1", beta, Rule::Forced)?;
        r.claim(&xn, 2)?;
        r.claim("y2", 3)?;
        r.protect("y2", &xn, 2)?;
        r.claim("p1", 2)?;
        let mut order = vec!["v1".to_string(), "v2".to_string()];
        order.extend(seq("z", 1..=m));
        order.extend(["p1".to_string(), "p2".to_string()]);
        order.extend(seq("x", 1..=n));
        return r.greedy(&order);
    }
    let gamma = r.partner("p", a1, &zm)?;
    if gamma == beta {
        return g8_claim3(r, n, m, m, beta, a1, false);
    }
    if gamma != a1 && gamma != a2 {
        r.branch("gamma free");
        r.color("y1", gamma, Rule::Forced)?;
        r.claim(&zm, 3)?;
        r.claim(&xn, 2)?;
        r.claim("y2", 3)?;
        r.protect("y2", &xn, 2)?;
        let mut order: Vec<String> = ["p1", "p2", "v1", "v2"].iter().map(|s| s.to_string()).collect();
        order.extend(seq("z", 1..=m));
        order.extend(seq("x", 1..=n));
        return r.greedy(&order);
    }
    if r.matched("v1", beta, "p", a1)? {
        return g8_claim5(r, n, m, beta, a1);
    }
    if r.matched("v1", gamma, "p", a1)? {
        return g8_claim3(r, n, m, m, gamma, a1, true);
    }
    r.branch("gamma' free");
    let g2 = r.partner("p", a1, "v1")?;
    r.color("y1", g2, Rule::Forced)?;
    r.claim("v1", 2)?;
    r.claim(&xn, 2)?;
    r.claim("y2", 3)?;
    r.protect("y2", &xn, 2)?;
    let mut order = vec!["p1".to_string(), "p2".to_string()];
    order.extend(seq("z", (1..=m).rev()));
    order.extend(["v1".to_string(), "v2".to_string()]);
    order.extend(seq("x", 1..=n));
    r.greedy(&order)
}

/// The spanning tree straightened once both `p y2 v2` and `p y2 p2` have
/// property P; afterwards `v2 p` and `p2 p` are straight too.
fn g8_tree(r: &mut Run, n: usize, m: usize) -> Result<()> {
    let xn = format!("x{n}");
    let zm = format!("z{m}");
    r.straighten(&[
        ("y2", "w"),
        ("y2", &xn),
        ("y2", "v"),
        ("y2", "v2"),
        ("y2", "p2"),
        ("y2", "p"),
        ("w", "y1"),
        ("y1", "v1"),
        ("y1", &zm),
        ("y1", "p1"),
    ])?;
    r.assert_straight(&[("v2", "p"), ("p2", "p")])
}

/// The Remark: with `y1` colored `c`, `p1` matched to `p`'s `alpha`, and
/// `p` about to take `other`, hand off to Claim 3 or Claim 5 when the
/// matchings at `z_m` or `v1` line up.
fn g8_case_1_1(r: &mut Run, n: usize, m: usize, a1: Color) -> Result<()> {
    let xn = format!("x{n}");
    let zm = format!("z{m}");
    r.color("y1", a1, Rule::Forced)?;
    r.claim("w", 3)?;
    if r.res_with(&xn, &[("y1", a1), ("y2", a1)])?.len() >= 3 {
        return g8_claim2(r, n, m, n, a1, a1);
    }
    let b1 = r.partner("y1", a1, &xn)?;
    if b1 == a1 {
        return Err(Error::Consistency("x_n keeps two colors yet y1 x_n is straight at alpha1".into()));
    }
    if r.matched("w", a1, "p2", a1)? {
        if r.matched("p1", a1, "p2", a1)? {
            r.branch("Case 10.1.1 p1 p2 fixed");
            r.uncolor("y2")?;
            r.uncolor("v")?;
            r.color("p2", a1, Rule::Forced)?;
            r.color("y2", b1, Rule::Forced)?;
            r.claim("p1", 3)?;
            r.claim(&xn, 3)?;
            r.claim("w", 2)?;
            r.claim("v2", 3)?;
            r.claim("p", 2)?;
            r.protect("v2", "p", 2)?;
            let mut order: Vec<String> = ["v", "v1", "p"].iter().map(|s| s.to_string()).collect();
            order.extend(seq("z", 1..=m));
            order.extend(["p1".to_string(), "w".to_string()]);
            order.extend(seq("x", 1..=n));
            return r.greedy(&order);
        }
        r.branch("Case 10.1.1 w p2 fixed");
        let b2 = r.partner("p1", a1, "p2")?;
        r.color("p2", b2, Rule::Forced)?;
        r.claim("p1", 3)?;
        r.claim("w", 2)?;
        let alpha = r.partner("p1", a1, "p")?;
        if alpha != a1 && alpha != b2 {
            r.color("p", alpha, Rule::Forced)?;
            r.claim("p1", 3)?;
            r.claim("v2", 2)?;
            let mut order = vec!["v1".to_string(), "v2".to_string()];
            order.extend(seq("z", 1..=m));
            order.extend(seq("x", 1..=n));
            order.extend(["w".to_string(), "p1".to_string()]);
            return r.greedy(&order);
        }
        let bp = r.partner(&zm, a1, "p")?;
        if bp == alpha {
            return g8_claim3(r, n, m, m, a1, alpha, false);
        }
        if bp != a1 && bp != b2 {
            r.color("p", bp, Rule::Forced)?;
            r.claim(&zm, 3)?;
            let mut order = vec!["v1".to_string(), "v2".to_string()];
            order.extend(seq("z", 1..m));
            order.extend(seq("x", 1..=n));
            order.extend(["w".to_string(), "p1".to_string(), zm]);
            return r.greedy(&order);
        }
        if r.matched("p", alpha, "v1", a1)? {
            return g8_claim5(r, n, m, a1, alpha);
        }
        if r.matched("p", bp, "v1", a1)? {
            return g8_claim3(r, n, m, m, a1, bp, true);
        }
        let gamma = r.partner("v1", a1, "p")?;
        r.color("p", gamma, Rule::Forced)?;
        for u in ["v1", "v2", "p1", "w"] {
            r.claim(u, 2)?;
        }
        let mut order = seq("x", 1..=n);
        order.extend(["w".to_string(), "p1".to_string()]);
        order.extend(seq("z", (1..=m).rev()));
        order.extend(["v1".to_string(), "v2".to_string()]);
        return r.greedy(&order);
    }
    r.branch("Case 10.1.1 w p2 moved");
    let a3 = r.partner("w", a1, "p2")?;
    r.color("p2", a3, Rule::Forced)?;
    r.claim("w", 3)?;
    let alpha = r.partner("p1", a1, "p")?;
    if alpha != a1 && alpha != a3 {
        r.color("p", alpha, Rule::Forced)?;
        r.claim("p1", 2)?;
        let mut order = vec!["v1".to_string(), "v2".to_string()];
        order.extend(seq("z", 1..=m));
        order.push("p1".into());
        order.extend(seq("x", 1..=n));
        order.push("w".into());
        return r.greedy(&order);
    }
    let bpp = r.partner(&zm, a1, "p")?;
    if bpp == alpha {
        return g8_claim3(r, n, m, m, a1, alpha, false);
    }
    if bpp != a1 && bpp != a3 {
        r.color("p", bpp, Rule::Forced)?;
        r.claim(&zm, 3)?;
        let mut order = vec!["v1".to_string(), "v2".to_string()];
        order.extend(seq("z", 1..m));
        order.extend(["p1".to_string(), zm]);
        order.extend(seq("x", 1..=n));
        order.push("w".into());
        return r.greedy(&order);
    }
    if r.matched("p", alpha, "v1", a1)? {
        return g8_claim5(r, n, m, a1, alpha);
    }
    if r.matched("p", bpp, "v1", a1)? {
        return g8_claim3(r, n, m, m, a1, bpp, true);
    }
    let gp = r.partner("v1", a1, "p")?;
    r.color("p", gp, Rule::Forced)?;
    r.claim("v1", 2)?;
    r.claim("v2", 2)?;
    let mut order = vec!["p1".to_string()];
    order.extend(seq("z", (1..=m).rev()));
    order.extend(["v1".to_string(), "v2".to_string()]);
    order.extend(seq("x", 1..=n));
    order.push("w".into());
    r.greedy(&order)
}

fn g8_case_1_2(r: &mut Run, n: usize, m: usize, a1: Color) -> Result<()> {
    let xn = format!("x{n}");
    let zm = format!("z{m}");
    let w_room = r.res_with("w", &[("y1", a1), ("y2", a1)])?.len();
    if w_room < 3 {
        return Err(Error::Consistency("w should keep three colors".into()));
    }
    if r.res_with(&xn, &[("y1", a1), ("y2", a1)])?.len() >= 3 {
        return g8_claim2(r, n, m, n, a1, a1);
    }
    let a3 = r.partner(&xn, a1, "y1")?;
    r.color("y1", a3, Rule::Forced)?;
    r.claim(&xn, 3)?;
    r.claim("w", 2)?;
    r.claim("p2", 3)?;
    let a4 = r.protect("p2", "w", 2)?;
    let alpha = r.partner("p1", a3, "p")?;
    if alpha != a1 && alpha != a4 {
        r.color("p", alpha, Rule::Forced)?;
        r.claim("p1", 2)?;
        r.claim("v2", 2)?;
        let mut order = vec!["v1".to_string(), "v2".to_string()];
        order.extend(seq("z", 1..=m));
        order.extend(["p1".to_string(), "w".to_string()]);
        order.extend(seq("x", 1..=n));
        return r.greedy(&order);
    }
    let beta = r.partner(&zm, a3, "p")?;
    if beta == alpha {
        return g8_claim3(r, n, m, m, a3, alpha, false);
    }
    if beta != a1 && beta != a4 {
        r.color("p", beta, Rule::Forced)?;
        r.claim(&zm, 3)?;
        let mut order = vec!["v1".to_string(), "v2".to_string()];
        order.extend(seq("z", 1..m));
        order.extend(["p1".to_string(), zm, "w".to_string()]);
        order.extend(seq("x", 1..=n));
        return r.greedy(&order);
    }
    if r.matched("p", alpha, "v1", a3)? {
        return g8_claim5(r, n, m, a3, alpha);
    }
    if r.matched("p", beta, "v1", a3)? {
        return g8_claim3(r, n, m, m, a3, beta, true);
    }
    let gamma = r.partner("v1", a3, "p")?;
    r.color("p", gamma, Rule::Forced)?;
    for u in ["v1", "v2", "w"] {
        r.claim(u, 2)?;
    }
    r.claim(&xn, 3)?;
    let mut order = vec!["p1".to_string()];
    order.extend(seq("z", (1..=m).rev()));
    order.extend(["v1".to_string(), "v2".to_string(), "w".to_string()]);
    order.extend(seq("x", 1..=n));
    r.greedy(&order)
}

/// Case 10.1: the triangle `v y2 v2` fails property P.
fn g8_first(r: &mut Run, n: usize, m: usize) -> Result<()> {
    if !r.is_p("C1", ["p", "y2", "v2"])? {
        return g8_claim1(r, n, m);
    }
    if !r.is_p("C1'", ["p", "y2", "p2"])? {
        r.branch("Claim 1 mirrored");
        let reflect = g8_reflect(n, m);
        let f = r.frame.renamed(reflect)?;
        return r.with_frame(f, |r| g8_claim1(r, n, m));
    }
    g8_tree(r, n, m)?;
    let (a1, a2) = r.exploit(["y2", "v", "v2"])?;
    if !r.matched("v", a2, "y1", a1)? {
        r.branch("Case 10.1.1");
        g8_case_1_1(r, n, m, a1)
    } else {
        r.branch("Case 10.1.2");
        g8_case_1_2(r, n, m, a1)
    }
}

fn case_g9(r: &mut Run, n: usize) -> Result<()> {
    if !r.is_p("C1", ["v", "y1", "x1"])? {
        r.branch("C1 not P");
        return g9_first_fails(r, n);
    }
    r.branch("C1 P");
    r.straighten(&[("v", "y1"), ("y1", "x1")])?;
    r.assert_straight(&[("x1", "v")])?;
    if !r.is_p("C2", ["v", "y2", "x1"])? {
        r.branch("C2 not P");
        let f = sym(r, &["v", "y1", "x1"], &[&["v", "y2", "x1"]])?;
        return r.with_frame(f, |r| g9_first_fails(r, n));
    }
    r.branch("C2 P");
    r.straighten(&[("v", "y2")])?;
    r.assert_straight(&[("y2", "x1")])?;
    r.same(&["y1", "y2"], &[("v", "y1"), ("v", "y2"), ("x1", "y1"), ("x1", "y2")])?;
    r.claim("w", 2)?;
    r.claim("p2", 3)?;
    r.protect("p2", "w", 2)?;
    r.claim("v", 3)?;
    r.claim("x1", 3)?;
    let mut order = vec!["z1".to_string(), "p1".to_string(), "w".to_string()];
    order.extend(seq("x", (2..=n).rev()));
    order.extend(["v1", "v2", "v", "x1"].iter().map(|s| s.to_string()));
    r.greedy(&order)
}

fn g9_first_fails(r: &mut Run, n: usize) -> Result<()> {
    r.exploit(["v", "y1", "x1"])?;
    r.claim("v1", 2)?;
    r.claim("z1", 3)?;
    r.protect("z1", "v1", 2)?;
    r.protect("w", "p1", 2)?;
    let mut order = vec!["y2".to_string()];
    order.extend(seq("x", (1..=n).rev()));
    order.extend(["p2", "p1", "v2", "v1"].iter().map(|s| s.to_string()));
    r.greedy(&order)
}

fn case_g10(r: &mut Run) -> Result<()> {
    if !r.is_p("C1", ["y", "u0", "u1"])? {
        r.branch("C1 not P");
        r.exploit(["u0", "u1", "y"])?;
        r.claim("u", 2)?;
        r.claim("u3", 3)?;
        r.protect("u3", "u", 2)?;
        r.protect("z", "x", 2)?;
        return r.greedy(&["u2", "u", "w", "x", "y"]);
    }
    if !r.is_p("C2", ["x", "y", "u0"])? {
        r.branch("C2 not P");
        r.exploit(["x", "u0", "y"])?;
        r.claim("u3", 2)?;
        r.claim("w", 3)?;
        r.protect("w", "u3", 2)?;
        r.protect("u2", "z", 2)?;
        return r.greedy(&["u3", "u", "u1", "z", "y"]);
    }
    r.branch("C1 C2 P");
    r.straighten(&[("y", "u0"), ("u0", "u1"), ("y", "x")])?;
    r.assert_straight(&[("u1", "y"), ("x", "u0")])?;
    r.same(&["u1", "x"], &[("y", "u1"), ("y", "x"), ("u0", "u1"), ("u0", "x")])?;
    r.claim("z", 2)?;
    r.claim("u2", 3)?;
    r.protect("u2", "z", 2)?;
    r.claim("y", 3)?;
    r.claim("u0", 3)?;
    r.greedy(&["u3", "w", "z", "u", "u0", "y"])
}

fn g11_first_fails(r: &mut Run) -> Result<()> {
    r.exploit(["u0", "u3", "x"])?;
    r.claim("u", 2)?;
    r.claim("u1", 3)?;
    r.protect("u1", "u", 2)?;
    r.protect("z", "y", 2)?;
    r.greedy(&["u2", "w", "x1", "y", "u", "x"])
}

fn g11_seventh_fails(r: &mut Run) -> Result<()> {
    let (a1, _) = r.exploit(["u3", "u2", "u"])?;
    r.color("x1", a1, Rule::Same)?;
    r.claim("x", 3)?;
    r.claim("u0", 3)?;
    r.greedy(&["w", "z", "u1", "y", "u0", "u", "x"])
}

fn case_g11(r: &mut Run) -> Result<()> {
    if !r.is_p("C1", ["x", "u0", "u3"])? {
        r.branch("C1 not P");
        return g11_first_fails(r);
    }
    r.branch("C1 P");
    let others: [(&str, [&str; 3]); 5] = [
        ("C2", ["x", "u0", "x1"]),
        ("C3", ["u", "u0", "u3"]),
        ("C4", ["y", "u0", "x1"]),
        ("C5", ["y", "u0", "u1"]),
        ("C6", ["u", "u0", "u1"]),
    ];
    for (tag, tri) in others {
        if !r.is_p(tag, tri)? {
            r.branch(&format!("{tag} not P"));
            let f = sym(r, &["x", "u0", "u3"], &[&tri])?;
            return r.with_frame(f, g11_first_fails);
        }
    }
    r.straighten(&[("u0", "x"), ("u0", "u3"), ("u0", "x1"), ("u0", "u"), ("u0", "y"), ("u0", "u1")])?;
    r.assert_straight(&[("x", "u3"), ("x", "x1"), ("u", "u3"), ("y", "x1"), ("y", "u1"), ("u", "u1")])?;
    if !r.is_p("C7", ["u", "u3", "u2"])? {
        r.branch("C7 not P");
        return g11_seventh_fails(r);
    }
    if !r.is_p("C8", ["u", "u1", "u2"])? {
        r.branch("C8 not P");
        let f = sym(r, &["u", "u3", "u2", "u0"], &[&["u", "u1", "u2", "u0"]])?;
        return r.with_frame(f, g11_seventh_fails);
    }
    r.branch("C7 C8 P");
    r.straighten(&[("u", "u2")])?;
    r.assert_straight(&[("u3", "u2"), ("u1", "u2")])?;
    r.same(
        &["x1", "u3", "u1"],
        &[("u0", "x1"), ("u0", "u3"), ("u0", "u1"), ("u", "u3"), ("u", "u1"), ("u2", "u3"), ("u2", "u1")],
    )?;
    for v in ["x", "u0", "y", "u", "u2"] {
        r.claim(v, 3)?;
    }
    r.greedy(&["w", "z", "u2", "y", "u0", "u", "x"])
}

fn case_g12(r: &mut Run) -> Result<()> {
    if !r.is_p("C1", ["y", "u0", "u1"])? {
        r.branch("C1 not P");
        r.exploit(["u0", "u1", "y"])?;
        r.claim("u", 2)?;
        r.claim("u3", 3)?;
        r.protect("u3", "u", 2)?;
        r.protect("w", "x", 2)?;
        return r.greedy(&["u2", "u", "z", "y1", "x1", "x", "y"]);
    }
    if !r.is_p("C2", ["u", "u0", "u1"])? {
        r.branch("C2 not P");
        r.exploit(["u0", "u1", "u"])?;
        r.claim("y", 2)?;
        r.claim("y1", 3)?;
        r.protect("y1", "y", 2)?;
        r.protect("w", "x1", 2)?;
        return r.greedy(&["z", "u2", "u3", "u", "x", "x1", "y"]);
    }
    r.straighten(&[("u0", "u1"), ("u0", "y"), ("u0", "u")])?;
    r.assert_straight(&[("u1", "y"), ("u1", "u")])?;
    if r.is_p("C3", ["y", "u1", "y1"])? {
        r.branch("C3 P");
        r.straighten(&[("u1", "y1")])?;
        r.assert_straight(&[("y", "y1")])?;
        r.same(&["u0", "y1"], &[("y", "u0"), ("y", "y1"), ("u1", "u0"), ("u1", "y1")])?;
        r.claim("x1", 2)?;
        r.claim("w", 3)?;
        r.protect("w", "x1", 2)?;
        r.protect("u2", "z", 2)?;
        r.claim("y", 3)?;
        r.claim("u1", 2)?;
        return r.greedy(&["u3", "x", "x1", "u", "u1", "z", "y"]);
    }
    r.branch("C3 not P");
    let (a1, _) = r.exploit(["u1", "y1", "y"])?;
    r.straighten(&[("u", "u2")])?;
    if r.res("u2")?.contains(&a1) {
        r.branch("u2 takes alpha1");
        r.color("u2", a1, Rule::Same)?;
        r.claim("u", 3)?;
        r.greedy(&["z", "w"])?;
        r.claim("u3", 2)?;
        r.claim("x", 3)?;
        r.protect("x", "u3", 2)?;
        return r.greedy(&["x1", "u0", "y", "u3", "u"]);
    }
    r.branch("u2 blocked");
    if !r.matched("u2", a1, "u1", a1)? {
        return Err(Error::Consistency("u2 lost alpha1 to something other than u1".into()));
    }
    r.uncolor("u1")?;
    r.uncolor("y1")?;
    r.color("u0", a1, Rule::Same)?;
    r.color("u2", a1, Rule::Same)?;
    r.claim("u", 3)?;
    r.claim("u1", 3)?;
    r.claim("u3", 2)?;
    r.claim("w", 3)?;
    r.protect("w", "u3", 2)?;
    r.protect("y1", "z", 2)?;
    r.greedy(&["x1", "y", "u1", "z", "x", "u3", "u"])
}

/// Whether `u1 u2` matches some color to itself, and the least such color.
fn fixed_color(r: &Run, a: &str, b: &str) -> Result<Option<Color>> {
    for c in r.list(a)? {
        if r.matched(a, c, b, c)? {
            return Ok(Some(c));
        }
    }
    Ok(None)
}

fn g13_first_fails(r: &mut Run) -> Result<()> {
    r.exploit(["z1", "u2", "z"])?;
    r.claim("w", 2)?;
    r.claim("u3", 3)?;
    r.protect("u3", "w", 2)?;
    r.protect("u0", "u", 2)?;
    r.greedy(&["x", "w", "x1", "y", "u1", "u", "z"])
}

fn g13_fixed_point(r: &mut Run, a1: Color) -> Result<()> {
    r.color("z1", a1, Rule::Same)?;
    r.color("u1", a1, Rule::Same)?;
    r.claim("z", 3)?;
    r.claim("u2", 3)?;
    r.claim("y", 2)?;
    r.claim("u0", 3)?;
    r.protect("u0", "y", 2)?;
    r.protect("u3", "u", 2)?;
    r.greedy(&["x", "x1", "y", "w", "u2", "u", "z"])
}

fn case_g13(r: &mut Run) -> Result<()> {
    if !r.is_p("C1", ["z", "z1", "u2"])? {
        r.branch("C1 not P");
        return g13_first_fails(r);
    }
    r.branch("C1 P");
    if !r.is_p("C2", ["w", "z1", "u2"])? {
        r.branch("C2 not P");
        let f = sym(r, &["z", "z1", "u2"], &[&["w", "z1", "u2"]])?;
        return r.with_frame(f, g13_first_fails);
    }
    r.straighten(&[("z1", "u2"), ("z1", "z"), ("z1", "w")])?;
    r.assert_straight(&[("u2", "z"), ("u2", "w")])?;
    r.straighten(&[("w", "u3"), ("z", "u1")])?;
    if let Some(a1) = fixed_color(r, "u1", "u2")? {
        r.branch("u1 u2 fixed point");
        return g13_fixed_point(r, a1);
    }
    if let Some(a1) = fixed_color(r, "u3", "u2")? {
        r.branch("u3 u2 fixed point");
        let f = sym(r, &["z", "z1", "u2", "u1"], &[&["w", "z1", "u2", "u3"]])?;
        return r.with_frame(f, |r| g13_fixed_point(r, a1));
    }
    r.branch("no fixed point");
    r.same(&["u2", "u1", "u3"], &[("z", "u1"), ("z", "u2"), ("w", "u3"), ("w", "u2")])?;
    r.claim("w", 3)?;
    r.claim("z", 3)?;
    r.greedy(&["u", "u0"])?;
    r.claim("x", 2)?;
    r.claim("x1", 3)?;
    r.claim("y", 2)?;
    r.path_ends("x", "x1", "y")?;
    r.claim("x1", 2)?;
    r.claim("z", 2)?;
    r.claim("w", 2)?;
    r.greedy(&["z1", "x1", "w", "z"])
}
