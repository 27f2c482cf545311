//! Graph JSON and DOT formats.
//!
//! The JSON layout is
//! `{"name", "colors", "bosons": [labels], "fermions": [labels], "edges": [{"b", "f", "c", "s"}]}`
//! with 1-based `b`, `f`, `c` and `s` in {-1, 1}. [`to_json`] emits a single
//! canonical byte layout so checked-in fixtures can be compared exactly.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{ColorIndex, Edge, Sign, ValiseGraph};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("malformed graph JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("edge {edge}: field \"{field}\" must be a 1-based index, got 0")]
    ZeroIndex { edge: usize, field: &'static str },
    #[error("edge {edge}: sign must be -1 or 1, got {value}")]
    BadSign { edge: usize, value: i64 },
    #[error("edge {edge} repeats the (b, f, c) triple of edge {first}")]
    DuplicateEdge { edge: usize, first: usize },
    #[error("not bipartite: vertex \"{label}\" is listed as both boson and fermion")]
    SharedLabel { label: String },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphFile {
    name: String,
    colors: usize,
    bosons: Vec<String>,
    fermions: Vec<String>,
    edges: Vec<EdgeFile>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeFile {
    b: usize,
    f: usize,
    c: usize,
    s: i64,
}

/// Parses the graph JSON format. Index ranges are left to
/// [`ValiseGraph::validate`]; everything the format itself forbids is an error here.
pub fn from_json(text: &str) -> Result<ValiseGraph, FormatError> {
    let file: GraphFile = serde_json::from_str(text)?;
    let boson_labels: HashSet<&str> = file.bosons.iter().map(String::as_str).collect();
    if let Some(shared) = file.fermions.iter().find(|l| boson_labels.contains(l.as_str())) {
        return Err(FormatError::SharedLabel {
            label: shared.clone(),
        });
    }
    let mut seen: HashMap<(usize, usize, usize), usize> = HashMap::new();
    let mut edges = Vec::with_capacity(file.edges.len());
    for (k, e) in file.edges.iter().enumerate() {
        let edge = k + 1;
        for (field, v) in [("b", e.b), ("f", e.f), ("c", e.c)] {
            if v == 0 {
                return Err(FormatError::ZeroIndex { edge, field });
            }
        }
        let sign = i32::try_from(e.s)
            .ok()
            .and_then(Sign::from_value)
            .ok_or(FormatError::BadSign {
                edge,
                value: e.s,
            })?;
        if let Some(&first) = seen.get(&(e.b, e.f, e.c)) {
            return Err(FormatError::DuplicateEdge { edge, first });
        }
        seen.insert((e.b, e.f, e.c), edge);
        edges.push(Edge::new(
            e.b - 1,
            e.f - 1,
            ColorIndex::from_index(e.c - 1),
            sign,
        ));
    }
    Ok(ValiseGraph::new(
        file.name,
        file.colors,
        file.bosons,
        file.fermions,
        edges,
    ))
}

#[derive(Serialize)]
struct GraphOut<'a> {
    name: &'a str,
    colors: usize,
    bosons: Vec<&'a str>,
    fermions: Vec<&'a str>,
    edges: Vec<EdgeOut>,
}

#[derive(Serialize)]
struct EdgeOut {
    b: usize,
    f: usize,
    c: usize,
    s: i32,
}

/// Serde adapter writing a graph in the file layout, for embedding graphs
/// in larger JSON documents.
pub fn serialize_graph<S: serde::Serializer>(g: &ValiseGraph, s: S) -> Result<S::Ok, S::Error> {
    GraphOut {
        name: g.name(),
        colors: g.n_colors(),
        bosons: g.bosons().iter().map(|v| v.label.as_str()).collect(),
        fermions: g.fermions().iter().map(|v| v.label.as_str()).collect(),
        edges: g
            .edges()
            .iter()
            .map(|e| EdgeOut {
                b: e.boson + 1,
                f: e.fermion + 1,
                c: e.color.number(),
                s: e.sign.value(),
            })
            .collect(),
    }
    .serialize(s)
}

fn quoted(s: &str) -> String {
    serde_json::to_string(s).expect("string serialization")
}

fn label_list(labels: impl Iterator<Item = String>) -> String {
    let items: Vec<String> = labels.map(|l| quoted(&l)).collect();
    format!("[{}]", items.join(", "))
}

/// Canonical JSON text, newline terminated.
pub fn to_json(g: &ValiseGraph) -> String {
    let mut out = String::new();
    out.push_str("{\n");
    let _ = writeln!(out, "  \"name\": {},", quoted(g.name()));
    let _ = writeln!(out, "  \"colors\": {},", g.n_colors());
    let _ = writeln!(
        out,
        "  \"bosons\": {},",
        label_list(g.bosons().iter().map(|v| v.label.clone()))
    );
    let _ = writeln!(
        out,
        "  \"fermions\": {},",
        label_list(g.fermions().iter().map(|v| v.label.clone()))
    );
    if g.edges().is_empty() {
        out.push_str("  \"edges\": []\n");
    } else {
        out.push_str("  \"edges\": [\n");
        let lines: Vec<String> = g
            .edges()
            .iter()
            .map(|e| {
                format!(
                    "    {{\"b\": {}, \"f\": {}, \"c\": {}, \"s\": {}}}",
                    e.boson + 1,
                    e.fermion + 1,
                    e.color.number(),
                    e.sign.value()
                )
            })
            .collect();
        out.push_str(&lines.join(",\n"));
        out.push_str("\n  ]\n");
    }
    out.push_str("}\n");
    out
}

const PALETTE: [&str; 10] = [
    "red", "green", "blue", "orange", "purple", "cyan", "magenta", "brown", "gold", "gray40",
];

pub fn pen_color(color: ColorIndex) -> &'static str {
    PALETTE[color.index() % PALETTE.len()]
}

/// Graphviz rendering: hollow bosons, filled fermions, one pen color per
/// supercharge, dashed lines for negative signs.
pub fn to_dot(g: &ValiseGraph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "graph {} {{", quoted(g.name()));
    out.push_str("  node [shape=circle, fixedsize=true, width=0.5];\n");
    for v in g.bosons() {
        let _ = writeln!(
            out,
            "  b{} [label={}, style=solid, fillcolor=white];",
            v.id + 1,
            quoted(&v.label)
        );
    }
    for v in g.fermions() {
        let _ = writeln!(
            out,
            "  f{} [label={}, style=filled, fillcolor=black, fontcolor=white];",
            v.id + 1,
            quoted(&v.label)
        );
    }
    let ranks = |prefix: char, n: usize| -> String {
        (1..=n)
            .map(|i| format!("{prefix}{i}"))
            .collect::<Vec<_>>()
            .join("; ")
    };
    if g.boson_count() > 0 {
        let _ = writeln!(out, "  {{ rank=sink; {}; }}", ranks('b', g.boson_count()));
    }
    if g.fermion_count() > 0 {
        let _ = writeln!(out, "  {{ rank=source; {}; }}", ranks('f', g.fermion_count()));
    }
    for e in g.edges() {
        let style = match e.sign {
            Sign::Plus => "solid",
            Sign::Minus => "dashed",
        };
        let _ = writeln!(
            out,
            "  b{} -- f{} [color={}, style={}];",
            e.boson + 1,
            e.fermion + 1,
            pen_color(e.color),
            style
        );
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const SMALL: &str = r#"{"name": "x", "colors": 2, "bosons": ["A"], "fermions": ["B", "C"],
        "edges": [{"b": 1, "f": 1, "c": 1, "s": 1}, {"b": 1, "f": 2, "c": 2, "s": -1}]}"#;

    #[test]
    fn parses_and_reemits() {
        let g = from_json(SMALL).unwrap();
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.edges()[1].sign, Sign::Minus);
        let text = to_json(&g);
        let again = from_json(&text).unwrap();
        assert_eq!(g, again);
        assert_eq!(to_json(&again), text);
    }

    #[test]
    fn unknown_keys_rejected() {
        let bad = r#"{"name": "x", "colors": 1, "bosons": [], "fermions": [], "edges": [], "extra": 1}"#;
        assert!(matches!(from_json(bad), Err(FormatError::Json(_))));
        let bad_edge = r#"{"name": "x", "colors": 1, "bosons": ["a"], "fermions": ["b"],
            "edges": [{"b": 1, "f": 1, "c": 1, "s": 1, "w": 2}]}"#;
        assert!(matches!(from_json(bad_edge), Err(FormatError::Json(_))));
    }

    #[test]
    fn format_level_rejections() {
        let dup = r#"{"name": "x", "colors": 1, "bosons": ["a"], "fermions": ["b"],
            "edges": [{"b": 1, "f": 1, "c": 1, "s": 1}, {"b": 1, "f": 1, "c": 1, "s": -1}]}"#;
        assert!(matches!(
            from_json(dup),
            Err(FormatError::DuplicateEdge { edge: 2, first: 1 })
        ));
        let sign = r#"{"name": "x", "colors": 1, "bosons": ["a"], "fermions": ["b"],
            "edges": [{"b": 1, "f": 1, "c": 1, "s": 0}]}"#;
        assert!(matches!(from_json(sign), Err(FormatError::BadSign { value: 0, .. })));
        let zero = r#"{"name": "x", "colors": 1, "bosons": ["a"], "fermions": ["b"],
            "edges": [{"b": 0, "f": 1, "c": 1, "s": 1}]}"#;
        assert!(matches!(
            from_json(zero),
            Err(FormatError::ZeroIndex { field: "b", .. })
        ));
        let shared = r#"{"name": "x", "colors": 1, "bosons": ["a"], "fermions": ["a"], "edges": []}"#;
        assert!(matches!(from_json(shared), Err(FormatError::SharedLabel { .. })));
    }

    #[test]
    fn parse_error_carries_location() {
        let err = from_json("{\n  \"name\": }").unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
    }

    #[test]
    fn dot_styles() {
        let g = from_json(SMALL).unwrap();
        let dot = to_dot(&g);
        assert!(dot.contains("b1 -- f1 [color=red, style=solid];"));
        assert!(dot.contains("b1 -- f2 [color=green, style=dashed];"));
        assert!(dot.contains("f1 [label=\"B\", style=filled"));
        assert!(dot.contains("b1 [label=\"A\", style=solid, fillcolor=white]"));
    }
}
