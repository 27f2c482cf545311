//! Valise graphs: bosons on one level, fermions on the other, edges colored
//! by the supercharge they encode and signed by their dashing.
//!
//! All indices are 0-based in memory. Everything user facing (reports,
//! `Display`, the JSON format) is 1-based so that boson `0` prints as `Phi1`
//! and color `0` prints as `1`.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::matrix::SignedMatrix;

/// A supercharge color. Stored 0-based, displayed 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ColorIndex(usize);

impl ColorIndex {
    pub const fn from_index(index: usize) -> Self {
        Self(index)
    }

    /// From the 1-based number used in files and reports.
    pub fn from_number(number: usize) -> Option<Self> {
        number.checked_sub(1).map(Self)
    }

    pub const fn index(self) -> usize {
        self.0
    }

    pub const fn number(self) -> usize {
        self.0 + 1
    }
}

impl fmt::Display for ColorIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.number())
    }
}

impl Serialize for ColorIndex {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_u64(self.number() as u64)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Statistics {
    Boson,
    Fermion,
}

impl Statistics {
    pub fn flipped(self) -> Self {
        match self {
            Statistics::Boson => Statistics::Fermion,
            Statistics::Fermion => Statistics::Boson,
        }
    }
}

/// Edge dashing. `Minus` is drawn dashed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub enum Sign {
    Minus,
    #[default]
    Plus,
}

impl Sign {
    pub fn value(self) -> i32 {
        match self {
            Sign::Minus => -1,
            Sign::Plus => 1,
        }
    }

    pub fn from_value(v: i32) -> Option<Self> {
        match v {
            -1 => Some(Sign::Minus),
            1 => Some(Sign::Plus),
            _ => None,
        }
    }

    pub fn negate(self) -> Self {
        match self {
            Sign::Minus => Sign::Plus,
            Sign::Plus => Sign::Minus,
        }
    }

    pub fn times(self, other: Sign) -> Sign {
        if self == other {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl Serialize for Sign {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_i32(self.value())
    }
}

/// Names one vertex of a graph by statistics and 0-based index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexRef {
    pub statistics: Statistics,
    pub index: usize,
}

impl VertexRef {
    pub const fn boson(index: usize) -> Self {
        Self {
            statistics: Statistics::Boson,
            index,
        }
    }

    pub const fn fermion(index: usize) -> Self {
        Self {
            statistics: Statistics::Fermion,
            index,
        }
    }
}

impl fmt::Display for VertexRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.statistics {
            Statistics::Boson => write!(f, "boson {}", self.index + 1),
            Statistics::Fermion => write!(f, "fermion {}", self.index + 1),
        }
    }
}

impl Serialize for VertexRef {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("VertexRef", 2)?;
        st.serialize_field("statistics", &self.statistics)?;
        st.serialize_field("id", &(self.index + 1))?;
        st.end()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Vertex {
    pub id: usize,
    pub statistics: Statistics,
    pub label: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub boson: usize,
    pub fermion: usize,
    pub color: ColorIndex,
    pub sign: Sign,
}

impl Edge {
    pub fn new(boson: usize, fermion: usize, color: ColorIndex, sign: Sign) -> Self {
        Self {
            boson,
            fermion,
            color,
            sign,
        }
    }
}

/// A structural problem found by [`ValiseGraph::validate`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    NoColors,
    ColorOutOfRange {
        edge: usize,
        color: ColorIndex,
        n_colors: usize,
    },
    EndpointOutOfRange {
        edge: usize,
        vertex: VertexRef,
        count: usize,
    },
    DuplicateEdge {
        edge: usize,
        first: usize,
    },
    /// Two edges of one color meet at `vertex`.
    MatchingConflict {
        edge: usize,
        first: usize,
        vertex: VertexRef,
        color: ColorIndex,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NoColors => write!(f, "graph declares zero colors"),
            Violation::ColorOutOfRange {
                edge,
                color,
                n_colors,
            } => write!(
                f,
                "edge {}: color {color} exceeds the {n_colors} declared colors",
                edge + 1
            ),
            Violation::EndpointOutOfRange {
                edge,
                vertex,
                count,
            } => write!(f, "edge {}: {vertex} does not exist (count {count})", edge + 1),
            Violation::DuplicateEdge { edge, first } => {
                write!(f, "edge {} duplicates edge {}", edge + 1, first + 1)
            }
            Violation::MatchingConflict {
                edge,
                first,
                vertex,
                color,
            } => write!(
                f,
                "edge {}: {vertex} already has a color-{color} edge (edge {})",
                edge + 1,
                first + 1
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("invalid graph: {}", join_violations(.0))]
    Invalid(Vec<Violation>),
    #[error("no matrices given")]
    NoMatrices,
    #[error("matrix {index} is {found_rows}x{found_cols}, expected {rows}x{cols}")]
    DimensionMismatch {
        index: usize,
        rows: usize,
        cols: usize,
        found_rows: usize,
        found_cols: usize,
    },
    #[error("matrix {index} entry ({row}, {col}) is {value}, expected -1, 0 or 1")]
    EntryOutOfRange {
        index: usize,
        row: usize,
        col: usize,
        value: i32,
    },
    #[error("matrix {index} row {row} has more than one nonzero entry")]
    RowNotMatching { index: usize, row: usize },
    #[error("matrix {index} column {col} has more than one nonzero entry")]
    ColumnNotMatching { index: usize, col: usize },
}

fn join_violations(v: &[Violation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}

/// Edge-colored, signed bipartite graph in two-level valise form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValiseGraph {
    name: String,
    n_colors: usize,
    bosons: Vec<Vertex>,
    fermions: Vec<Vertex>,
    edges: Vec<Edge>,
}

pub fn boson_label(index: usize) -> String {
    format!("Phi{}", index + 1)
}

pub fn fermion_label(index: usize) -> String {
    format!("Psi{}", index + 1)
}

fn make_vertices(labels: Vec<String>, statistics: Statistics) -> Vec<Vertex> {
    labels
        .into_iter()
        .enumerate()
        .map(|(id, label)| Vertex {
            id,
            statistics,
            label,
        })
        .collect()
}

impl ValiseGraph {
    /// Assembles a graph without checking it; call [`validate`](Self::validate).
    pub fn new(
        name: impl Into<String>,
        n_colors: usize,
        boson_labels: Vec<String>,
        fermion_labels: Vec<String>,
        edges: Vec<Edge>,
    ) -> Self {
        Self {
            name: name.into(),
            n_colors,
            bosons: make_vertices(boson_labels, Statistics::Boson),
            fermions: make_vertices(fermion_labels, Statistics::Fermion),
            edges,
        }
    }

    /// Like [`new`](Self::new) with `Phi<i>` / `Psi<j>` labels.
    pub fn with_default_labels(
        name: impl Into<String>,
        n_colors: usize,
        bosons: usize,
        fermions: usize,
        edges: Vec<Edge>,
    ) -> Self {
        Self::new(
            name,
            n_colors,
            (0..bosons).map(boson_label).collect(),
            (0..fermions).map(fermion_label).collect(),
            edges,
        )
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn n_colors(&self) -> usize {
        self.n_colors
    }

    pub fn bosons(&self) -> &[Vertex] {
        &self.bosons
    }

    pub fn fermions(&self) -> &[Vertex] {
        &self.fermions
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn boson_count(&self) -> usize {
        self.bosons.len()
    }

    pub fn fermion_count(&self) -> usize {
        self.fermions.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.bosons.len() + self.fermions.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn colors(&self) -> impl Iterator<Item = ColorIndex> {
        (0..self.n_colors).map(ColorIndex::from_index)
    }

    pub fn vertex(&self, v: VertexRef) -> &Vertex {
        match v.statistics {
            Statistics::Boson => &self.bosons[v.index],
            Statistics::Fermion => &self.fermions[v.index],
        }
    }

    /// Flat node numbering: bosons first, then fermions.
    pub fn node(&self, v: VertexRef) -> usize {
        match v.statistics {
            Statistics::Boson => v.index,
            Statistics::Fermion => self.bosons.len() + v.index,
        }
    }

    pub fn vertex_ref(&self, node: usize) -> VertexRef {
        if node < self.bosons.len() {
            VertexRef::boson(node)
        } else {
            VertexRef::fermion(node - self.bosons.len())
        }
    }

    pub fn endpoints(&self, edge: usize) -> (usize, usize) {
        let e = &self.edges[edge];
        (e.boson, self.bosons.len() + e.fermion)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Same topology with the edge signs replaced.
    ///
    /// Panics if `signs.len()` differs from the edge count.
    pub fn with_signs(&self, signs: &[Sign]) -> Self {
        assert_eq!(signs.len(), self.edges.len(), "sign vector length");
        let mut g = self.clone();
        for (e, &s) in g.edges.iter_mut().zip(signs) {
            e.sign = s;
        }
        g
    }

    pub fn signs(&self) -> Vec<Sign> {
        self.edges.iter().map(|e| e.sign).collect()
    }

    /// Every broken structural invariant, ordered by edge index.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if self.n_colors == 0 {
            out.push(Violation::NoColors);
        }
        let mut triples: HashMap<(usize, usize, ColorIndex), usize> = HashMap::new();
        let mut at_boson: HashMap<(usize, ColorIndex), usize> = HashMap::new();
        let mut at_fermion: HashMap<(usize, ColorIndex), usize> = HashMap::new();
        for (k, e) in self.edges.iter().enumerate() {
            let mut ok = true;
            if e.color.index() >= self.n_colors {
                out.push(Violation::ColorOutOfRange {
                    edge: k,
                    color: e.color,
                    n_colors: self.n_colors,
                });
                ok = false;
            }
            if e.boson >= self.bosons.len() {
                out.push(Violation::EndpointOutOfRange {
                    edge: k,
                    vertex: VertexRef::boson(e.boson),
                    count: self.bosons.len(),
                });
                ok = false;
            }
            if e.fermion >= self.fermions.len() {
                out.push(Violation::EndpointOutOfRange {
                    edge: k,
                    vertex: VertexRef::fermion(e.fermion),
                    count: self.fermions.len(),
                });
                ok = false;
            }
            if !ok {
                continue;
            }
            if let Some(&first) = triples.get(&(e.boson, e.fermion, e.color)) {
                out.push(Violation::DuplicateEdge { edge: k, first });
                continue;
            }
            triples.insert((e.boson, e.fermion, e.color), k);
            match at_boson.get(&(e.boson, e.color)) {
                Some(&first) => out.push(Violation::MatchingConflict {
                    edge: k,
                    first,
                    vertex: VertexRef::boson(e.boson),
                    color: e.color,
                }),
                None => {
                    at_boson.insert((e.boson, e.color), k);
                }
            }
            match at_fermion.get(&(e.fermion, e.color)) {
                Some(&first) => out.push(Violation::MatchingConflict {
                    edge: k,
                    first,
                    vertex: VertexRef::fermion(e.fermion),
                    color: e.color,
                }),
                None => {
                    at_fermion.insert((e.fermion, e.color), k);
                }
            }
        }
        out
    }

    pub fn ensure_valid(&self) -> Result<(), GraphError> {
        let v = self.validate();
        if v.is_empty() {
            Ok(())
        } else {
            Err(GraphError::Invalid(v))
        }
    }

    /// The L-matrices: `L_I[i][j]` is the sign of the color-I edge between
    /// boson i and fermion j, zero when there is none.
    pub fn to_matrices(&self) -> Result<Vec<SignedMatrix>, GraphError> {
        self.ensure_valid()?;
        let mut mats =
            vec![SignedMatrix::zeros(self.boson_count(), self.fermion_count()); self.n_colors];
        for e in &self.edges {
            mats[e.color.index()].set(e.boson, e.fermion, e.sign.value());
        }
        Ok(mats)
    }

    /// Inverse of [`to_matrices`](Self::to_matrices). Edges come out ordered
    /// by color, then boson, then fermion.
    pub fn from_matrices(
        name: impl Into<String>,
        mats: &[SignedMatrix],
    ) -> Result<Self, GraphError> {
        let first = mats.first().ok_or(GraphError::NoMatrices)?;
        let (rows, cols) = (first.rows(), first.cols());
        let mut edges = Vec::new();
        for (index, m) in mats.iter().enumerate() {
            if (m.rows(), m.cols()) != (rows, cols) {
                return Err(GraphError::DimensionMismatch {
                    index,
                    rows,
                    cols,
                    found_rows: m.rows(),
                    found_cols: m.cols(),
                });
            }
            let mut col_used = vec![false; cols];
            for r in 0..rows {
                let mut row_used = false;
                for c in 0..cols {
                    let value = m.get(r, c);
                    if value == 0 {
                        continue;
                    }
                    let sign = Sign::from_value(value).ok_or(GraphError::EntryOutOfRange {
                        index,
                        row: r,
                        col: c,
                        value,
                    })?;
                    if row_used {
                        return Err(GraphError::RowNotMatching { index, row: r });
                    }
                    if col_used[c] {
                        return Err(GraphError::ColumnNotMatching { index, col: c });
                    }
                    row_used = true;
                    col_used[c] = true;
                    edges.push(Edge::new(r, c, ColorIndex::from_index(index), sign));
                }
            }
        }
        Ok(Self::with_default_labels(
            name,
            mats.len(),
            rows,
            cols,
            edges,
        ))
    }

    /// Per node and color, the incident edge if any. Assumes a valid graph.
    pub fn incidence(&self) -> Incidence {
        let n = self.vertex_count();
        let mut slots = vec![None; n * self.n_colors];
        for (k, e) in self.edges.iter().enumerate() {
            let (b, f) = self.endpoints(k);
            slots[b * self.n_colors + e.color.index()] = Some(k);
            slots[f * self.n_colors + e.color.index()] = Some(k);
        }
        Incidence {
            n_colors: self.n_colors,
            bosons: self.boson_count(),
            slots,
            edges: (0..self.edges.len()).map(|k| self.endpoints(k)).collect(),
        }
    }

    /// Connected components as a node -> component id map plus the count.
    pub fn components(&self) -> (Vec<usize>, usize) {
        let n = self.vertex_count();
        let mut adj = vec![Vec::new(); n];
        for k in 0..self.edges.len() {
            let (a, b) = self.endpoints(k);
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut comp = vec![usize::MAX; n];
        let mut count = 0;
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let mut stack = vec![start];
            comp[start] = count;
            while let Some(v) = stack.pop() {
                for &w in &adj[v] {
                    if comp[w] == usize::MAX {
                        comp[w] = count;
                        stack.push(w);
                    }
                }
            }
            count += 1;
        }
        (comp, count)
    }
}

/// Color-indexed adjacency over flat node numbers (bosons first).
#[derive(Debug, Clone)]
pub struct Incidence {
    n_colors: usize,
    bosons: usize,
    slots: Vec<Option<usize>>,
    edges: Vec<(usize, usize)>,
}

impl Incidence {
    pub fn edge_at(&self, node: usize, color: usize) -> Option<usize> {
        self.slots[node * self.n_colors + color]
    }

    /// The node across `edge` from `node`.
    pub fn other(&self, edge: usize, node: usize) -> usize {
        let (a, b) = self.edges[edge];
        if a == node {
            b
        } else {
            a
        }
    }

    pub fn neighbor(&self, node: usize, color: usize) -> Option<usize> {
        self.edge_at(node, color).map(|e| self.other(e, node))
    }

    pub fn is_boson(&self, node: usize) -> bool {
        node < self.bosons
    }

    pub fn node_count(&self) -> usize {
        self.slots.len() / self.n_colors.max(1)
    }

    pub fn n_colors(&self) -> usize {
        self.n_colors
    }
}
