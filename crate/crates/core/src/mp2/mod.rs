//! Constructive DP-4-coloring of maximal planar graphs of diameter two.
//!
//! Five vertices is the base case `K5 - e`. A vertex of degree three is
//! deleted, the rest colored recursively and the vertex colored last. With
//! minimum degree four the graph is one of the catalog entries and that
//! entry's case procedure runs on a copy of the assignment carried onto the
//! labeled catalog graph.

pub mod cases;
pub mod catalog;
pub mod iso;
pub mod run;
pub mod trace;

use crate::cover::{
    is_perfect, residual_unchecked, validate_assignment, MLColoring, MatchingAssignment, PartialColoring,
};
use crate::error::{Error, Result};
use crate::graph::{is_mp2, Graph, Vertex};

pub use catalog::{catalog, CatalogEntry};
pub use trace::{ColoringTrace, Rule, Step};

use cases::{run_case, Params};

/// The catalog entry `g` is isomorphic to, with the isomorphism from `g`
/// onto the entry's labeled graph. Entries are tried in catalog order,
/// smallest parameters first.
pub fn identify_catalog(g: &Graph) -> Result<Option<(CatalogEntry, Vec<Vertex>)>> {
    if !is_mp2(g)? || g.vertices().any(|v| g.degree(v) < 4) {
        return Err(Error::Precondition("identification needs an MP2-graph of minimum degree 4".into()));
    }
    let n = g.vertex_count();
    for name in catalog::NAMES {
        let tuples =
            if catalog::param_names(name).is_empty() { vec![Params::new()] } else { catalog::params_of_order(name, n) };
        for p in tuples {
            let entry = catalog(name, &p)?;
            if entry.graph.vertex_count() != n {
                continue;
            }
            if let Some(map) = iso::find_isomorphism(g, &entry.graph) {
                return Ok(Some((entry, map)));
            }
        }
    }
    Ok(None)
}

/// `g - v` for a vertex of degree three, checked to be MP2 again.
pub fn reduce_degree3(g: &Graph, v: Vertex) -> Result<Graph> {
    if g.degree(v) != 3 {
        return Err(Error::Precondition(format!("{} has degree {}, not 3", g.label(v), g.degree(v))));
    }
    if !is_mp2(g)? {
        return Err(Error::Precondition("reduction needs an MP2-graph".into()));
    }
    let h = g.without_vertex(v);
    if !is_mp2(&h)? {
        return Err(Error::Consistency(format!("deleting {} does not leave an MP2-graph", g.label(v))));
    }
    Ok(h)
}

fn check_input(m: &MatchingAssignment) -> Result<()> {
    let problems = validate_assignment(m);
    if !problems.is_empty() {
        return Err(Error::InvalidAssignment(problems));
    }
    let g = m.graph();
    if g.vertices().any(|v| m.list(v).len() != 4) || !is_perfect(m) {
        return Err(Error::Precondition("expected 4-lists with perfect matchings".into()));
    }
    if !is_mp2(g)? {
        return Err(Error::Precondition("graph is not maximal planar of diameter two".into()));
    }
    Ok(())
}

/// Colors an MP2-graph from a 4-list perfect-matching assignment, returning
/// the coloring and the trace of how it was built.
pub fn color_mp2(m: &MatchingAssignment) -> Result<(MLColoring, ColoringTrace)> {
    check_input(m)?;
    color_checked(m)
}

fn color_checked(m: &MatchingAssignment) -> Result<(MLColoring, ColoringTrace)> {
    let g = m.graph();
    let n = g.vertex_count();
    if n < 5 {
        let mut partial = PartialColoring::empty(n);
        let mut trace = ColoringTrace::new();
        for v in g.vertices() {
            greedy_step(m, v, &mut partial, &mut trace)?;
        }
        return finish(m, partial, trace);
    }
    if n == 5 {
        let base = catalog::k5e_graph();
        let map = iso::find_isomorphism(g, &base)
            .ok_or_else(|| Error::Consistency("five-vertex MP2-graph is not K5 - e".into()))?;
        return on_entry("K5-e", &Params::new(), &base, m, &map);
    }
    if let Some(v) = g.vertices().find(|&v| g.degree(v) == 3) {
        let rest = reduce_degree3(g, v)?;
        let keep: Vec<Vertex> = g.vertices().filter(|&u| u != v).collect();
        let sub = m.induced(&keep);
        debug_assert_eq!(sub.graph(), &rest);
        let (inner, inner_trace) = color_checked(&sub)?;
        let mut partial = PartialColoring::empty(n);
        for (i, &u) in keep.iter().enumerate() {
            partial.set(u, inner.color(i));
        }
        let mut trace = ColoringTrace::new();
        trace.push(Step::Reduce { vertex: g.label(v).to_string() });
        trace.extend(inner_trace);
        greedy_step(m, v, &mut partial, &mut trace)?;
        return finish(m, partial, trace);
    }
    let (entry, map) = identify_catalog(g)?
        .ok_or_else(|| Error::Consistency("graph is outside the catalog of minimum-degree-4 MP2-graphs".into()))?;
    on_entry(&entry.name, &entry.params, &entry.graph, m, &map)
}

/// Runs a case procedure on `m` carried onto `target` by `map`, then brings
/// the coloring and trace back to `m`'s names.
fn on_entry(
    name: &str,
    params: &Params,
    target: &Graph,
    m: &MatchingAssignment,
    map: &[Vertex],
) -> Result<(MLColoring, ColoringTrace)> {
    let g = m.graph();
    let moved = m.transport(target, map)?;
    let (coloring, trace) = run_case(name, params, &moved)?;
    let colors = g.vertices().map(|v| coloring.color(map[v])).collect();
    let mut back = std::collections::BTreeMap::new();
    for v in g.vertices() {
        back.insert(target.label(map[v]).to_string(), g.label(v).to_string());
    }
    let trace = trace.relabeled(|l| back.get(l).cloned().unwrap_or_else(|| format!("{name}:{l}")));
    finish(m, crate::cover::MLColoring::new(colors).to_partial(), trace)
}

fn greedy_step(
    m: &MatchingAssignment,
    v: Vertex,
    partial: &mut PartialColoring,
    trace: &mut ColoringTrace,
) -> Result<()> {
    let c = residual_unchecked(m, v, partial)
        .first()
        .copied()
        .ok_or_else(|| Error::Consistency(format!("no color left for {}", m.graph().label(v))))?;
    partial.set(v, c);
    trace.push(Step::Color { vertex: m.graph().label(v).to_string(), color: c, rule: Rule::Greedy });
    Ok(())
}

fn finish(
    m: &MatchingAssignment,
    partial: PartialColoring,
    trace: ColoringTrace,
) -> Result<(MLColoring, ColoringTrace)> {
    let coloring = partial.complete().ok_or_else(|| Error::Consistency("coloring is incomplete".into()))?;
    if !crate::solver::verify_coloring(m, &coloring) {
        return Err(Error::CaseFailed { message: "coloring fails verification".into(), trace: Box::new(trace) });
    }
    Ok((coloring, trace))
}
