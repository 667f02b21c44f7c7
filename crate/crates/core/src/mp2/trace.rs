//! Auditable record of a constructive coloring run.
//!
//! Colors in a trace use the names of the input assignment, never the
//! renamed ones, so a trace can be replayed against the assignment it was
//! produced from.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::cover::{residual_unchecked, Color, MLColoring, MatchingAssignment, PartialColoring};
use crate::error::{Error, Result};

/// Why a color was picked.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Rule {
    /// The pair that defeats a triangle without property P.
    Exploit,
    /// One color shared by several vertices across straight edges.
    Same,
    /// Least color keeping a named neighbor's residual list large enough.
    Protect,
    /// The two ends of a path, costing the middle at most one color.
    PathEnds,
    /// A color fixed by the case analysis itself.
    Forced,
    /// Least remaining color in a "successively" step.
    Greedy,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "step", rename_all = "snake_case")]
pub enum Step {
    /// Start of a case procedure on a catalog graph.
    Case {
        entry: String,
    },
    /// Branch marker naming the sub-case being followed.
    Branch {
        name: String,
    },
    /// Vertices that exist only in a supergraph the run was embedded in.
    Embed {
        host: String,
        added: Vec<String>,
    },
    /// A degree-3 vertex set aside for later.
    Reduce {
        vertex: String,
    },
    PropertyP {
        tag: String,
        triangle: [String; 3],
        holds: bool,
    },
    Straighten {
        edges: Vec<[String; 2]>,
    },
    Claim {
        vertex: String,
        at_least: usize,
        actual: usize,
    },
    Color {
        vertex: String,
        color: Color,
        rule: Rule,
    },
    Uncolor {
        vertex: String,
    },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringTrace {
    pub steps: Vec<Step>,
}

impl ColoringTrace {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, step: Step) {
        self.steps.push(step);
    }

    pub fn extend(&mut self, other: ColoringTrace) {
        self.steps.extend(other.steps);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// Property-P outcomes as `(tag, holds)`, in order.
    pub fn property_p_outcomes(&self) -> Vec<(&str, bool)> {
        self.steps
            .iter()
            .filter_map(|s| match s {
                Step::PropertyP { tag, holds, .. } => Some((tag.as_str(), *holds)),
                _ => None,
            })
            .collect()
    }

    pub fn branches(&self) -> Vec<&str> {
        self.steps
            .iter()
            .filter_map(|s| match s {
                Step::Branch { name } => Some(name.as_str()),
                _ => None,
            })
            .collect()
    }

    /// The same trace with every vertex name passed through `rename`.
    pub fn relabeled(&self, rename: impl Fn(&str) -> String) -> ColoringTrace {
        let steps = self
            .steps
            .iter()
            .map(|s| match s {
                Step::Embed { host, added } => {
                    Step::Embed { host: host.clone(), added: added.iter().map(|a| rename(a)).collect() }
                }
                Step::Reduce { vertex } => Step::Reduce { vertex: rename(vertex) },
                Step::PropertyP { tag, triangle, holds } => {
                    Step::PropertyP { tag: tag.clone(), triangle: triangle.clone().map(|t| rename(&t)), holds: *holds }
                }
                Step::Straighten { edges } => {
                    Step::Straighten { edges: edges.iter().map(|[a, b]| [rename(a), rename(b)]).collect() }
                }
                Step::Claim { vertex, at_least, actual } => {
                    Step::Claim { vertex: rename(vertex), at_least: *at_least, actual: *actual }
                }
                Step::Color { vertex, color, rule } => {
                    Step::Color { vertex: rename(vertex), color: *color, rule: *rule }
                }
                Step::Uncolor { vertex } => Step::Uncolor { vertex: rename(vertex) },
                other => other.clone(),
            })
            .collect();
        ColoringTrace { steps }
    }

    /// Re-applies every color and uncolor step to `m`, checking each color
    /// against the residual list at that moment, and returns the final
    /// coloring. Vertices introduced by an embedding are skipped.
    pub fn replay(&self, m: &MatchingAssignment) -> Result<MLColoring> {
        let g = m.graph();
        let added: BTreeSet<&str> = self
            .steps
            .iter()
            .filter_map(|s| match s {
                Step::Embed { added, .. } => Some(added.iter().map(String::as_str)),
                _ => None,
            })
            .flatten()
            .collect();
        let mut p = PartialColoring::empty(g.vertex_count());
        for step in &self.steps {
            match step {
                Step::Color { vertex, color, .. } if !added.contains(vertex.as_str()) => {
                    let v = g.vertex(vertex).ok_or_else(|| Error::UnknownVertex(vertex.clone()))?;
                    if p.is_colored(v) {
                        return Err(Error::Consistency(format!("replay colors {vertex} twice")));
                    }
                    if !residual_unchecked(m, v, &p).contains(color) {
                        return Err(Error::Consistency(format!("replay: color {color} is not available at {vertex}")));
                    }
                    p.set(v, *color);
                }
                Step::Uncolor { vertex } if !added.contains(vertex.as_str()) => {
                    let v = g.vertex(vertex).ok_or_else(|| Error::UnknownVertex(vertex.clone()))?;
                    p.unset(v);
                }
                _ => {}
            }
        }
        p.complete().ok_or_else(|| Error::Consistency("replay leaves vertices uncolored".into()))
    }
}
