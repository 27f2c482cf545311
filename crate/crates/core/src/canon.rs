//! Canonical forms and isomorphisms of edge-colored valise graphs, up to
//! boson relabeling, fermion relabeling and color permutation. Signs are
//! ignored.
//!
//! Every color class is a matching, so once a start vertex and a color
//! order are fixed, a breadth-first walk that tries colors in that order
//! labels a connected component in exactly one way. The canonical code of a
//! component is the lexicographically least walk code over all starts; the
//! code of a graph is, minimized over color orders, the sorted list of its
//! component codes.

use std::collections::VecDeque;

use itertools::Itertools;
use serde::Serialize;
use thiserror::Error;

use crate::graph::{Incidence, Sign, ValiseGraph};

/// Equal keys exactly when the graphs are isomorphic as unsigned
/// edge-colored bipartite graphs.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CanonicalKey(Vec<u32>);

impl CanonicalKey {
    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CanonError {
    #[error("graph is not connected")]
    Disconnected,
}

/// A color-preserving bijection `g -> h` on flat node numbers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Isomorphism {
    pub vertex: Vec<usize>,
    /// `color[c]` is the color of `h` that color `c` of `g` maps to.
    pub color: Vec<usize>,
}

struct Walk {
    code: Vec<u32>,
    order: Vec<usize>,
}

fn walk(inc: &Incidence, order: &[usize], start: usize, cap: usize) -> Walk {
    let mut label = vec![u32::MAX; cap];
    let mut visit = vec![start];
    label[start] = 0;
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        for &c in order {
            if let Some(w) = inc.neighbor(v, c) {
                if label[w] == u32::MAX {
                    label[w] = visit.len() as u32;
                    visit.push(w);
                    queue.push_back(w);
                }
            }
        }
    }
    let mut code = Vec::with_capacity(2 + visit.len() * order.len());
    code.push(visit.len() as u32);
    code.push(u32::from(!inc.is_boson(start)));
    for &v in &visit {
        for &c in order {
            code.push(inc.neighbor(v, c).map_or(0, |w| label[w] + 1));
        }
    }
    Walk { code, order: visit }
}

fn component_starts(g: &ValiseGraph) -> Vec<Vec<usize>> {
    let (comp, count) = g.components();
    let mut out = vec![Vec::new(); count];
    for (node, &c) in comp.iter().enumerate() {
        out[c].push(node);
    }
    out
}

/// Canonical key of the unsigned colored topology. Expects a valid graph.
pub fn canonical_form(g: &ValiseGraph) -> CanonicalKey {
    let inc = g.incidence();
    let n = g.vertex_count();
    let comps = component_starts(g);
    let mut best: Option<Vec<u32>> = None;
    for order in (0..g.n_colors()).permutations(g.n_colors()) {
        let mut codes: Vec<Vec<u32>> = comps
            .iter()
            .map(|nodes| {
                nodes
                    .iter()
                    .map(|&s| walk(&inc, &order, s, n).code)
                    .min()
                    .expect("nonempty component")
            })
            .collect();
        codes.sort();
        let mut key = vec![
            g.n_colors() as u32,
            g.boson_count() as u32,
            g.fermion_count() as u32,
        ];
        for c in codes {
            key.extend(c);
        }
        if best.as_ref().is_none_or(|b| key < *b) {
            best = Some(key);
        }
    }
    CanonicalKey(best.unwrap_or_else(|| {
        vec![
            g.n_colors() as u32,
            g.boson_count() as u32,
            g.fermion_count() as u32,
        ]
    }))
}

pub fn is_isomorphic(g: &ValiseGraph, h: &ValiseGraph) -> bool {
    canonical_form(g) == canonical_form(h)
}

/// Every color-permuting isomorphism between two connected graphs.
pub fn isomorphisms(g: &ValiseGraph, h: &ValiseGraph) -> Result<Vec<Isomorphism>, CanonError> {
    if g.components().1 > 1 || h.components().1 > 1 {
        return Err(CanonError::Disconnected);
    }
    if g.vertex_count() != h.vertex_count()
        || g.boson_count() != h.boson_count()
        || g.n_colors() != h.n_colors()
        || g.vertex_count() == 0
    {
        return Ok(Vec::new());
    }
    let (ginc, hinc) = (g.incidence(), h.incidence());
    let n = g.vertex_count();
    let identity: Vec<usize> = (0..g.n_colors()).collect();
    let reference = walk(&ginc, &identity, 0, n);
    let mut out = Vec::new();
    for order in (0..h.n_colors()).permutations(h.n_colors()) {
        for start in 0..n {
            let w = walk(&hinc, &order, start, n);
            if w.code == reference.code {
                let mut vertex = vec![0; n];
                for (gv, hv) in reference.order.iter().zip(&w.order) {
                    vertex[*gv] = *hv;
                }
                out.push(Isomorphism {
                    vertex,
                    color: order.clone(),
                });
            }
        }
    }
    Ok(out)
}

/// Whether the signs of `h`, pulled back along `iso`, differ from those of
/// `g` by vertex gauge flips only.
pub fn gauge_equivalent_under(g: &ValiseGraph, h: &ValiseGraph, iso: &Isomorphism) -> bool {
    let hinc = h.incidence();
    let n = g.vertex_count();
    // relative[e] = sign_g(e) * sign_h(iso(e)); must equal flip(a) * flip(b).
    let mut adj: Vec<Vec<(usize, Sign)>> = vec![Vec::new(); n];
    for (k, e) in g.edges().iter().enumerate() {
        let (a, b) = g.endpoints(k);
        let Some(hk) = hinc.edge_at(iso.vertex[a], iso.color[e.color.index()]) else {
            return false;
        };
        if hinc.other(hk, iso.vertex[a]) != iso.vertex[b] {
            return false;
        }
        let rel = e.sign.times(h.edges()[hk].sign);
        adj[a].push((b, rel));
        adj[b].push((a, rel));
    }
    let mut flip: Vec<Option<Sign>> = vec![None; n];
    for root in 0..n {
        if flip[root].is_some() {
            continue;
        }
        flip[root] = Some(Sign::Plus);
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            let fv = flip[v].expect("assigned");
            for &(w, rel) in &adj[v] {
                let want = fv.times(rel);
                match flip[w] {
                    None => {
                        flip[w] = Some(want);
                        stack.push(w);
                    }
                    Some(fw) if fw != want => return false,
                    Some(_) => {}
                }
            }
        }
    }
    true
}

/// Whether some color isomorphism carries `g`'s dashing onto `h`'s up to gauge.
pub fn signed_gauge_isomorphic(g: &ValiseGraph, h: &ValiseGraph) -> Result<bool, CanonError> {
    Ok(isomorphisms(g, h)?
        .iter()
        .any(|iso| gauge_equivalent_under(g, h, iso)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::hypercube;
    use crate::graph::{ColorIndex, Edge};

    fn relabel(g: &ValiseGraph, bperm: &[usize], fperm: &[usize], cperm: &[usize]) -> ValiseGraph {
        let edges = g
            .edges()
            .iter()
            .map(|e| {
                Edge::new(
                    bperm[e.boson],
                    fperm[e.fermion],
                    ColorIndex::from_index(cperm[e.color.index()]),
                    e.sign,
                )
            })
            .collect();
        ValiseGraph::with_default_labels("r", g.n_colors(), g.boson_count(), g.fermion_count(), edges)
    }

    #[test]
    fn relabeled_cube_has_same_key() {
        let cube = hypercube(3).unwrap();
        let r = relabel(&cube, &[2, 0, 3, 1], &[1, 3, 0, 2], &[2, 0, 1]);
        assert_eq!(canonical_form(&cube), canonical_form(&r));
        let isos = isomorphisms(&cube, &r).unwrap();
        // The colored cube has 8 * 6 symmetries once colors may be permuted
        // and statistics are kept: 4 boson starts times 3! color orders.
        assert_eq!(isos.len(), 24);
    }

    #[test]
    fn disconnected_graphs_rejected_by_isomorphisms() {
        let g = ValiseGraph::with_default_labels("e", 1, 2, 2, vec![]);
        assert_eq!(isomorphisms(&g, &g), Err(CanonError::Disconnected));
    }

    #[test]
    fn statistics_matter() {
        // A boson with two colored edges vs a fermion with two.
        let c = ColorIndex::from_index;
        let a = ValiseGraph::with_default_labels(
            "a",
            2,
            1,
            2,
            vec![Edge::new(0, 0, c(0), Sign::Plus), Edge::new(0, 1, c(1), Sign::Plus)],
        );
        let b = ValiseGraph::with_default_labels(
            "b",
            2,
            2,
            1,
            vec![Edge::new(0, 0, c(0), Sign::Plus), Edge::new(1, 0, c(1), Sign::Plus)],
        );
        assert_ne!(canonical_form(&a), canonical_form(&b));
    }
}
