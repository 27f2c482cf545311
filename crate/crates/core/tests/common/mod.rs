#![allow(dead_code)]

use adinkra::{ColorIndex, Edge, Sign, ValiseGraph};
use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::Rng;

pub fn random_sign(rng: &mut impl Rng) -> Sign {
    if rng.gen() {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

/// Each color is an independent random partial matching; `density` is the
/// chance that a boson takes part in a given color.
pub fn random_graph(
    rng: &mut impl Rng,
    bosons: usize,
    fermions: usize,
    colors: usize,
    density: f64,
) -> ValiseGraph {
    let mut edges = Vec::new();
    for c in 0..colors {
        let mut fs: Vec<usize> = (0..fermions).collect();
        fs.shuffle(rng);
        for (b, &f) in (0..bosons).zip(fs.iter()) {
            if rng.gen_bool(density) {
                edges.push(Edge::new(b, f, ColorIndex::from_index(c), random_sign(rng)));
            }
        }
    }
    ValiseGraph::with_default_labels("random", colors, bosons, fermions, edges)
}

/// Every color a perfect matching on d + d vertices.
pub fn random_full_graph(rng: &mut impl Rng, d: usize, colors: usize) -> ValiseGraph {
    random_graph(rng, d, d, colors, 1.0)
}

pub fn random_signs(rng: &mut impl Rng, g: &ValiseGraph) -> Vec<Sign> {
    (0..g.edge_count()).map(|_| random_sign(rng)).collect()
}

pub fn relabel(g: &ValiseGraph, bperm: &[usize], fperm: &[usize], cperm: &[usize]) -> ValiseGraph {
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
    ValiseGraph::with_default_labels(
        g.name(),
        g.n_colors(),
        g.boson_count(),
        g.fermion_count(),
        edges,
    )
}

pub fn random_relabel(rng: &mut impl Rng, g: &ValiseGraph) -> ValiseGraph {
    let mut b: Vec<usize> = (0..g.boson_count()).collect();
    let mut f: Vec<usize> = (0..g.fermion_count()).collect();
    let mut c: Vec<usize> = (0..g.n_colors()).collect();
    b.shuffle(rng);
    f.shuffle(rng);
    c.shuffle(rng);
    relabel(g, &b, &f, &c)
}

fn unsigned_edges(g: &ValiseGraph) -> Vec<(usize, usize, usize)> {
    let mut v: Vec<_> = g
        .edges()
        .iter()
        .map(|e| (e.boson, e.fermion, e.color.index()))
        .collect();
    v.sort_unstable();
    v
}

/// Isomorphism of unsigned colored graphs by trying every relabeling.
pub fn brute_force_isomorphic(g: &ValiseGraph, h: &ValiseGraph) -> bool {
    if (g.boson_count(), g.fermion_count(), g.n_colors(), g.edge_count())
        != (h.boson_count(), h.fermion_count(), h.n_colors(), h.edge_count())
    {
        return false;
    }
    let target = unsigned_edges(h);
    let n = g.n_colors();
    for bp in (0..g.boson_count()).permutations(g.boson_count()) {
        for fp in (0..g.fermion_count()).permutations(g.fermion_count()) {
            for cp in (0..n).permutations(n) {
                if unsigned_edges(&relabel(g, &bp, &fp, &cp)) == target {
                    return true;
                }
            }
        }
    }
    false
}

/// Number of sign assignments of `g` that satisfy the Garden Algebra, by
/// checking all 2^E of them.
pub fn raw_garden_count(g: &ValiseGraph) -> u64 {
    let e = g.edge_count();
    assert!(e <= 20);
    (0u64..1 << e)
        .filter(|mask| {
            let signs = mask_signs(*mask, e);
            let m = g.with_signs(&signs).to_matrices().unwrap();
            adinkra::garden_check(&m).unwrap().ok
        })
        .count() as u64
}

pub fn mask_signs(mask: u64, len: usize) -> Vec<Sign> {
    (0..len)
        .map(|k| if mask >> k & 1 == 1 { Sign::Minus } else { Sign::Plus })
        .collect()
}
