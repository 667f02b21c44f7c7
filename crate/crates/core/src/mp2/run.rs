//! Execution context for the case procedures.
//!
//! A procedure refers to vertices by their catalog names and to colors by
//! their current names, which change as straightenings rename lists. Every
//! residual bound the argument relies on is checked when it is claimed.

use std::collections::{BTreeMap, BTreeSet};

use crate::cover::{residual_unchecked, Color, MLColoring, MatchingAssignment, PartialColoring};
use crate::error::{Error, Result};
use crate::graph::Vertex;
use crate::solver::verify_coloring;
use crate::transform::{color_path_ends, exploit_non_property_p, has_property_p, straighten_rooted, Straightening};

use super::trace::{ColoringTrace, Rule, Step};

/// Catalog names bound to vertices of the graph being colored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frame {
    names: BTreeMap<String, Vertex>,
}

impl Frame {
    pub fn new(names: BTreeMap<String, Vertex>) -> Self {
        Frame { names }
    }

    /// The frame that names every vertex by its label.
    pub fn from_labels(labels: &[String]) -> Self {
        Frame { names: labels.iter().cloned().enumerate().map(|(i, l)| (l, i)).collect() }
    }

    pub fn get(&self, name: &str) -> Option<Vertex> {
        self.names.get(name).copied()
    }

    /// Each name now denotes `sigma` applied to its old vertex.
    pub fn through(&self, sigma: &[Vertex]) -> Frame {
        Frame { names: self.names.iter().map(|(k, &v)| (k.clone(), sigma[v])).collect() }
    }

    /// The vertex named `j` is called `to(j)` from now on.
    pub fn renamed(&self, to: impl Fn(&str) -> String) -> Result<Frame> {
        let mut names = BTreeMap::new();
        for (j, &v) in &self.names {
            if names.insert(to(j), v).is_some() {
                return Err(Error::Consistency(format!("renaming sends two names to {}", to(j))));
            }
        }
        Ok(Frame { names })
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, Vertex)> {
        self.names.iter().map(|(k, &v)| (k.as_str(), v))
    }
}

pub struct Run<'a> {
    original: &'a MatchingAssignment,
    m: MatchingAssignment,
    renames: Straightening,
    partial: PartialColoring,
    pinned: BTreeSet<Vertex>,
    pub frame: Frame,
    trace: ColoringTrace,
}

impl<'a> Run<'a> {
    pub fn new(original: &'a MatchingAssignment, frame: Frame, entry: &str) -> Self {
        let n = original.graph().vertex_count();
        let mut trace = ColoringTrace::new();
        trace.push(Step::Case { entry: entry.to_string() });
        Run {
            original,
            m: original.clone(),
            renames: Straightening::new(),
            partial: PartialColoring::empty(n),
            pinned: BTreeSet::new(),
            frame,
            trace,
        }
    }

    pub fn v(&self, name: &str) -> Result<Vertex> {
        self.frame.get(name).ok_or_else(|| self.fail(format!("no vertex named {name}")))
    }

    fn label(&self, v: Vertex) -> String {
        self.m.graph().label(v).to_string()
    }

    pub fn graph(&self) -> &crate::graph::Graph {
        self.m.graph()
    }

    /// Current list of `name`.
    pub fn list(&self, name: &str) -> Result<Vec<Color>> {
        Ok(self.m.list(self.v(name)?).to_vec())
    }

    pub fn trace(&self) -> &ColoringTrace {
        &self.trace
    }

    pub fn push(&mut self, step: Step) {
        self.trace.push(step);
    }

    pub fn branch(&mut self, name: &str) {
        self.trace.push(Step::Branch { name: name.to_string() });
    }

    fn fail(&self, message: String) -> Error {
        Error::CaseFailed { message, trace: Box::new(self.trace.clone()) }
    }

    /// Runs `body` with the frame replaced, restoring it afterwards.
    pub fn with_frame<T>(&mut self, frame: Frame, body: impl FnOnce(&mut Self) -> Result<T>) -> Result<T> {
        let saved = std::mem::replace(&mut self.frame, frame);
        let out = body(self);
        self.frame = saved;
        out
    }

    pub fn is_p(&mut self, tag: &str, tri: [&str; 3]) -> Result<bool> {
        let [a, b, c] = [self.v(tri[0])?, self.v(tri[1])?, self.v(tri[2])?];
        let holds = has_property_p(&self.m, (a, b, c))?;
        let triangle = [self.label(a), self.label(b), self.label(c)];
        self.trace.push(Step::PropertyP { tag: tag.to_string(), triangle, holds });
        Ok(holds)
    }

    /// Makes `edges` straight without renaming any vertex pinned by an
    /// earlier call, then pins their endpoints. Colors already chosen are
    /// carried along the renaming.
    pub fn straighten(&mut self, edges: &[(&str, &str)]) -> Result<()> {
        let mut es = Vec::with_capacity(edges.len());
        for &(a, b) in edges {
            es.push((self.v(a)?, self.v(b)?));
        }
        let s = straighten_rooted(&mut self.m, &es, &self.pinned)
            .map_err(|e| self.fail(format!("straightening failed: {e}")))?;
        for (v, perm) in s.renamed() {
            if let Some(c) = self.partial.get(v) {
                self.partial.set(v, perm.get(&c).copied().unwrap_or(c));
            }
        }
        self.renames = self.renames.then(&s);
        for &(a, b) in &es {
            self.pinned.insert(a);
            self.pinned.insert(b);
        }
        let labels = es.iter().map(|&(a, b)| [self.label(a), self.label(b)]).collect();
        self.trace.push(Step::Straighten { edges: labels });
        Ok(())
    }

    pub fn assert_straight(&self, edges: &[(&str, &str)]) -> Result<()> {
        for &(a, b) in edges {
            if !self.m.is_straight(self.v(a)?, self.v(b)?) {
                return Err(self.fail(format!("edge {a} {b} is not straight")));
            }
        }
        Ok(())
    }

    pub fn res(&self, name: &str) -> Result<Vec<Color>> {
        Ok(residual_unchecked(&self.m, self.v(name)?, &self.partial))
    }

    /// Residual list of `name` if only `colored` were colored.
    pub fn res_with(&self, name: &str, colored: &[(&str, Color)]) -> Result<Vec<Color>> {
        let mut p = PartialColoring::empty(self.m.graph().vertex_count());
        for &(u, c) in colored {
            p.set(self.v(u)?, c);
        }
        Ok(residual_unchecked(&self.m, self.v(name)?, &p))
    }

    pub fn color_of(&self, name: &str) -> Result<Color> {
        self.partial.get(self.v(name)?).ok_or_else(|| self.fail(format!("{name} is not colored")))
    }

    /// The color of `b` matched to color `c` of `a`.
    pub fn partner(&self, a: &str, c: Color, b: &str) -> Result<Color> {
        self.m.partner(self.v(a)?, c, self.v(b)?).ok_or_else(|| self.fail(format!("{a} {b}: color {c} is unmatched")))
    }

    pub fn matched(&self, a: &str, c: Color, b: &str, d: Color) -> Result<bool> {
        Ok(self.m.matching(self.v(a)?, self.v(b)?).contains(c, d))
    }

    pub fn claim(&mut self, name: &str, at_least: usize) -> Result<()> {
        let actual = self.res(name)?.len();
        self.trace.push(Step::Claim { vertex: self.label(self.v(name)?), at_least, actual });
        if actual < at_least {
            return Err(self.fail(format!("claimed {at_least} colors left at {name}, found {actual}")));
        }
        Ok(())
    }

    pub fn color(&mut self, name: &str, c: Color, rule: Rule) -> Result<()> {
        let v = self.v(name)?;
        if self.partial.is_colored(v) {
            return Err(self.fail(format!("{name} is already colored")));
        }
        if !residual_unchecked(&self.m, v, &self.partial).contains(&c) {
            return Err(self.fail(format!("color {c} is not available at {name}")));
        }
        self.partial.set(v, c);
        let original = self.renames.backward(v, c);
        self.trace.push(Step::Color { vertex: self.label(v), color: original, rule });
        Ok(())
    }

    pub fn uncolor(&mut self, name: &str) -> Result<()> {
        let v = self.v(name)?;
        self.partial.unset(v);
        self.trace.push(Step::Uncolor { vertex: self.label(v) });
        Ok(())
    }

    /// Clears the whole coloring so an argument can start over.
    pub fn reset(&mut self) {
        let colored: Vec<Vertex> = self.partial.colored().map(|(v, _)| v).collect();
        for v in colored {
            self.partial.unset(v);
            self.trace.push(Step::Uncolor { vertex: self.label(v) });
        }
    }

    /// Colors the first two vertices of a triangle without property P so
    /// the third keeps three colors.
    pub fn exploit(&mut self, tri: [&str; 3]) -> Result<(Color, Color)> {
        let (a, b, c) = (self.v(tri[0])?, self.v(tri[1])?, self.v(tri[2])?);
        let (c1, c2) =
            exploit_non_property_p(&self.m, (a, b, c)).map_err(|e| self.fail(format!("exploit failed: {e}")))?;
        self.color(tri[0], c1, Rule::Exploit)?;
        self.color(tri[1], c2, Rule::Exploit)?;
        self.claim(tri[2], 3)?;
        Ok((c1, c2))
    }

    /// Least color for `a` leaving `b` at least `k` colors.
    pub fn protect(&mut self, a: &str, b: &str, k: usize) -> Result<Color> {
        let (va, vb) = (self.v(a)?, self.v(b)?);
        for c in residual_unchecked(&self.m, va, &self.partial) {
            let mut p = self.partial.clone();
            p.set(va, c);
            if residual_unchecked(&self.m, vb, &p).len() >= k {
                self.color(a, c, Rule::Protect)?;
                self.claim(b, k)?;
                return Ok(c);
            }
        }
        Err(self.fail(format!("no color for {a} leaves {k} colors at {b}")))
    }

    pub fn path_ends(&mut self, x: &str, y: &str, z: &str) -> Result<(Color, Color)> {
        let (vx, vy, vz) = (self.v(x)?, self.v(y)?, self.v(z)?);
        let (a, b) = color_path_ends(&self.m, vx, vy, vz, &self.partial)
            .map_err(|e| self.fail(format!("path ends {x} {y} {z}: {e}")))?;
        self.color(x, a, Rule::PathEnds)?;
        self.color(z, b, Rule::PathEnds)?;
        Ok((a, b))
    }

    /// One color for all of `names`, the least that can be given to each in
    /// turn. The argument needs `straight` to be straight for this to pay off.
    pub fn same(&mut self, names: &[&str], straight: &[(&str, &str)]) -> Result<Color> {
        self.assert_straight(straight)?;
        let vs: Vec<Vertex> = names.iter().map(|n| self.v(n)).collect::<Result<_>>()?;
        let first = residual_unchecked(&self.m, vs[0], &self.partial);
        let fits = |c: Color| {
            let mut p = self.partial.clone();
            vs.iter().all(|&v| {
                let ok = residual_unchecked(&self.m, v, &p).contains(&c);
                p.set(v, c);
                ok
            })
        };
        let c = first
            .into_iter()
            .find(|&c| fits(c))
            .ok_or_else(|| self.fail(format!("{} share no color", names.join(" "))))?;
        for &n in names {
            self.color(n, c, Rule::Same)?;
        }
        Ok(c)
    }

    pub fn greedy<S: AsRef<str>>(&mut self, order: &[S]) -> Result<()> {
        for name in order {
            let name = name.as_ref();
            let c = match self.res(name)?.into_iter().min() {
                Some(c) => c,
                None => return Err(self.fail(format!("no color left at {name}"))),
            };
            self.color(name, c, Rule::Greedy)?;
        }
        Ok(())
    }

    /// The coloring in the names of the input assignment, verified.
    pub fn finish(self) -> Result<(MLColoring, ColoringTrace)> {
        let g = self.m.graph();
        let mut colors = Vec::with_capacity(g.vertex_count());
        for v in g.vertices() {
            match self.partial.get(v) {
                Some(c) => colors.push(self.renames.backward(v, c)),
                None => return Err(self.fail(format!("{} left uncolored", g.label(v)))),
            }
        }
        let coloring = MLColoring::new(colors);
        if !verify_coloring(self.original, &coloring) {
            return Err(self.fail("final coloring is not independent in the cover".into()));
        }
        Ok((coloring, self.trace))
    }
}

/// Names `prefix1 .. prefixN`.
pub fn seq(prefix: &str, range: impl IntoIterator<Item = usize>) -> Vec<String> {
    range.into_iter().map(|i| format!("{prefix}{i}")).collect()
}
