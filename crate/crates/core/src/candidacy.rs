//! Necessary conditions for a graph to be an off-shell adinkra candidate.
//!
//! Each filter is unsigned: it looks only at the colored topology, never at
//! the dashing.

use std::fmt;

use serde::Serialize;

use crate::graph::{ColorIndex, Statistics, ValiseGraph, VertexRef};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EqualCounts {
    pub ok: bool,
    pub bosons: usize,
    pub fermions: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MissingColors {
    pub vertex: VertexRef,
    pub colors: Vec<ColorIndex>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Coverage {
    pub ok: bool,
    pub missing: Vec<MissingColors>,
}

impl Coverage {
    pub fn missing_for(&self, v: VertexRef) -> Option<&[ColorIndex]> {
        self.missing
            .iter()
            .find(|m| m.vertex == v)
            .map(|m| m.colors.as_slice())
    }

    /// Vertices touching every color.
    pub fn fully_covered(&self, g: &ValiseGraph, statistics: Statistics) -> Vec<VertexRef> {
        let count = match statistics {
            Statistics::Boson => g.boson_count(),
            Statistics::Fermion => g.fermion_count(),
        };
        (0..count)
            .map(|index| VertexRef { statistics, index })
            .filter(|v| self.missing_for(*v).is_none())
            .collect()
    }
}

/// A closed walk alternating between two colors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BicolorCycle {
    pub colors: (ColorIndex, ColorIndex),
    /// Starting at the lowest node (bosons first), first step along `colors.0`.
    pub vertices: Vec<VertexRef>,
    /// 0-based edge indices in walk order.
    #[serde(skip)]
    pub edges: Vec<usize>,
}

impl BicolorCycle {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

impl fmt::Display for BicolorCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let path: Vec<String> = self.vertices.iter().map(|v| v.to_string()).collect();
        write!(
            f,
            "colors ({}, {}) cycle of length {}: {}",
            self.colors.0,
            self.colors.1,
            self.len(),
            path.join(" -> ")
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Quads {
    pub ok: bool,
    pub offending: Vec<BicolorCycle>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum RejectReason {
    NotBipartite,
    UnequalCounts { bosons: usize, fermions: usize },
    Coverage { vertices: usize },
    NonQuadCycles { cycles: usize },
}

impl fmt::Display for RejectReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RejectReason::NotBipartite => f.write_str("edges join vertices of equal statistics"),
            RejectReason::UnequalCounts { bosons, fermions } => {
                write!(f, "unequal counts ({bosons} vs {fermions})")
            }
            RejectReason::Coverage { vertices } => write!(
                f,
                "color coverage fails ({vertices} vertices miss at least one color)"
            ),
            RejectReason::NonQuadCycles { cycles } => {
                write!(f, "{cycles} bi-color cycles have length other than 4")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", content = "reasons", rename_all = "snake_case")]
pub enum Verdict {
    Candidate,
    Rejected(Vec<RejectReason>),
}

impl Verdict {
    pub fn is_candidate(&self) -> bool {
        matches!(self, Verdict::Candidate)
    }

    pub fn reasons(&self) -> &[RejectReason] {
        match self {
            Verdict::Candidate => &[],
            Verdict::Rejected(r) => r,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CandidacyReport {
    pub bipartite_ok: bool,
    pub equal_counts: EqualCounts,
    pub coverage: Coverage,
    pub quads: Quads,
    pub verdict: Verdict,
    pub notes: Vec<String>,
}

impl CandidacyReport {
    pub fn is_candidate(&self) -> bool {
        self.verdict.is_candidate()
    }
}

/// Every edge runs from an existing boson to an existing fermion. The data
/// model already forces boson/fermion endpoints, so this only catches
/// dangling indices.
pub fn check_bipartite(g: &ValiseGraph) -> bool {
    g.edges()
        .iter()
        .all(|e| e.boson < g.boson_count() && e.fermion < g.fermion_count())
}

pub fn check_equal_counts(g: &ValiseGraph) -> EqualCounts {
    EqualCounts {
        ok: g.boson_count() == g.fermion_count(),
        bosons: g.boson_count(),
        fermions: g.fermion_count(),
    }
}

/// Every vertex must touch one edge of every color. Bosons are listed before
/// fermions.
pub fn check_color_coverage(g: &ValiseGraph) -> Coverage {
    let inc = g.incidence();
    let mut missing = Vec::new();
    for node in 0..g.vertex_count() {
        let colors: Vec<ColorIndex> = g
            .colors()
            .filter(|c| inc.edge_at(node, c.index()).is_none())
            .collect();
        if !colors.is_empty() {
            missing.push(MissingColors {
                vertex: g.vertex_ref(node),
                colors,
            });
        }
    }
    Coverage {
        ok: missing.is_empty(),
        missing,
    }
}

/// All cycles of every two-color subgraph, color pairs in lexicographic
/// order and cycles by lowest node. Open paths are skipped.
pub fn bicolor_cycles(g: &ValiseGraph) -> Vec<BicolorCycle> {
    let inc = g.incidence();
    let n = g.vertex_count();
    let mut out = Vec::new();
    for a in 0..g.n_colors() {
        for b in a + 1..g.n_colors() {
            let mut seen = vec![false; n];
            for start in 0..n {
                if seen[start] {
                    continue;
                }
                // Walk one way along alternating colors; a cycle returns to start.
                let mut vertices = Vec::new();
                let mut edges = Vec::new();
                let mut cur = start;
                let mut color = a;
                let closed = loop {
                    seen[cur] = true;
                    vertices.push(g.vertex_ref(cur));
                    let Some(e) = inc.edge_at(cur, color) else {
                        break false;
                    };
                    edges.push(e);
                    cur = inc.other(e, cur);
                    color = if color == a { b } else { a };
                    if cur == start {
                        break true;
                    }
                };
                if closed {
                    out.push(BicolorCycle {
                        colors: (ColorIndex::from_index(a), ColorIndex::from_index(b)),
                        vertices,
                        edges,
                    });
                } else {
                    mark_component(&inc, start, a, b, &mut seen);
                }
            }
        }
    }
    out
}

fn mark_component(
    inc: &crate::graph::Incidence,
    start: usize,
    a: usize,
    b: usize,
    seen: &mut [bool],
) {
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for c in [a, b] {
            if let Some(w) = inc.neighbor(v, c) {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
    }
}

/// True when every bi-color cycle is a 4-cycle; open paths are allowed.
pub fn check_bicolor_quads(g: &ValiseGraph) -> Quads {
    let offending: Vec<BicolorCycle> = bicolor_cycles(g)
        .into_iter()
        .filter(|c| c.len() != 4)
        .collect();
    Quads {
        ok: offending.is_empty(),
        offending,
    }
}

/// Runs every filter; `Rejected` lists each failure.
pub fn candidacy(g: &ValiseGraph) -> CandidacyReport {
    let bipartite_ok = check_bipartite(g);
    let equal_counts = check_equal_counts(g);
    let coverage = check_color_coverage(g);
    let quads = check_bicolor_quads(g);

    let mut reasons = Vec::new();
    if !bipartite_ok {
        reasons.push(RejectReason::NotBipartite);
    }
    if !equal_counts.ok {
        reasons.push(RejectReason::UnequalCounts {
            bosons: equal_counts.bosons,
            fermions: equal_counts.fermions,
        });
    }
    if !coverage.ok {
        reasons.push(RejectReason::Coverage {
            vertices: coverage.missing.len(),
        });
    }
    if !quads.ok {
        reasons.push(RejectReason::NonQuadCycles {
            cycles: quads.offending.len(),
        });
    }
    let mut notes = Vec::new();
    if g.vertex_count() == 0 {
        notes.push("empty graph: candidate only vacuously".to_string());
    }
    CandidacyReport {
        bipartite_ok,
        equal_counts,
        coverage,
        quads,
        verdict: if reasons.is_empty() {
            Verdict::Candidate
        } else {
            Verdict::Rejected(reasons)
        },
        notes,
    }
}
