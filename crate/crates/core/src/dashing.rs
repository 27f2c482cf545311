//! Exhaustive search for dashings (edge sign assignments) that satisfy the
//! Garden Algebra on a fixed topology.
//!
//! Negating every edge at one vertex conjugates each L-matrix by a diagonal
//! ±1 matrix and so preserves both identities. Fixing the signs of a
//! spanning forest to +1 picks one representative per gauge orbit, leaving
//! `E - V + #components` free edges to enumerate.
//!
//! For a graph that passes every candidacy filter (all colors perfect
//! matchings, every bi-color cycle a quad) the Garden Algebra holds exactly
//! when each bi-color quad carries sign product -1. The enumeration tests
//! that parity condition per assignment and re-checks the chosen witness
//! with the full matrix check; `full_garden` switches the per-assignment
//! test to the matrix check as well.

use std::collections::VecDeque;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::candidacy::{bicolor_cycles, candidacy, BicolorCycle};
use crate::garden::garden_check;
use crate::graph::{GraphError, Sign, ValiseGraph};

/// Default cap on the number of gauge-fixed assignments enumerated.
pub const DEFAULT_BUDGET: u64 = 1 << 28;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DashingError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("{free} free edges need 2^{free} assignments, over the budget of {budget}")]
    BudgetExceeded { free: usize, budget: u64 },
    #[error("assignment has {found} signs but the graph has {expected} edges")]
    LengthMismatch { expected: usize, found: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DashingAssignment {
    pub signs: Vec<Sign>,
    pub gauge_fixed: bool,
}

impl DashingAssignment {
    pub fn of(g: &ValiseGraph) -> Self {
        Self {
            signs: g.signs(),
            gauge_fixed: false,
        }
    }
}

/// A spanning forest of the unsigned graph and the edges left over.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GaugeFixing {
    pub tree: Vec<usize>,
    pub free: Vec<usize>,
    pub components: usize,
}

/// Breadth-first spanning forest, roots and edges taken in index order.
pub fn gauge_fix(g: &ValiseGraph) -> GaugeFixing {
    let n = g.vertex_count();
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for k in 0..g.edge_count() {
        let (a, b) = g.endpoints(k);
        adj[a].push((b, k));
        adj[b].push((a, k));
    }
    let mut in_tree = vec![false; g.edge_count()];
    let mut seen = vec![false; n];
    let mut components = 0;
    for root in 0..n {
        if seen[root] {
            continue;
        }
        components += 1;
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &(w, k) in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    in_tree[k] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    let (tree, free) = (0..g.edge_count()).partition(|&k| in_tree[k]);
    GaugeFixing {
        tree,
        free,
        components,
    }
}

/// Negates every edge at each vertex whose flag is set (flat node order,
/// bosons first).
pub fn gauge_flip(g: &ValiseGraph, signs: &[Sign], flips: &[bool]) -> Vec<Sign> {
    signs
        .iter()
        .enumerate()
        .map(|(k, &s)| {
            let (a, b) = g.endpoints(k);
            if flips[a] != flips[b] {
                s.negate()
            } else {
                s
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OddQuadReport {
    pub ok: bool,
    pub offending: Vec<BicolorCycle>,
}

/// Every bi-color 4-cycle must carry sign product -1.
pub fn odd_quad_check(
    g: &ValiseGraph,
    a: &DashingAssignment,
) -> Result<OddQuadReport, DashingError> {
    if a.signs.len() != g.edge_count() {
        return Err(DashingError::LengthMismatch {
            expected: g.edge_count(),
            found: a.signs.len(),
        });
    }
    let offending: Vec<BicolorCycle> = bicolor_cycles(g)
        .into_iter()
        .filter(|c| c.len() == 4)
        .filter(|c| {
            c.edges
                .iter()
                .fold(Sign::Plus, |acc, &e| acc.times(a.signs[e]))
                == Sign::Plus
        })
        .collect();
    Ok(OddQuadReport {
        ok: offending.is_empty(),
        offending,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOptions {
    /// Count every feasible orbit instead of stopping at the first witness.
    pub exhaustive: bool,
    pub budget: u64,
    /// Worker threads; `None` uses the global rayon pool.
    pub workers: Option<usize>,
    /// Run the full matrix check on every assignment.
    pub full_garden: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            exhaustive: false,
            budget: DEFAULT_BUDGET,
            workers: None,
            full_garden: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DashingSearchResult {
    pub feasible: bool,
    pub witness: Option<DashingAssignment>,
    /// Feasible gauge-fixed assignments seen. Exact when the search was
    /// exhaustive, otherwise 0 or 1.
    pub count_gauge_orbits: u64,
    /// Feasible raw sign vectors, `orbits * 2^(V - components)`.
    pub count_total: Option<u128>,
    pub free_edges: usize,
    pub pruned_reason: Option<String>,
}

impl DashingSearchResult {
    fn pruned(reason: String, free_edges: usize) -> Self {
        Self {
            feasible: false,
            witness: None,
            count_gauge_orbits: 0,
            count_total: Some(0),
            free_edges,
            pruned_reason: Some(reason),
        }
    }
}

/// A quad constraint over the free edges: the number of `Minus` signs among
/// the masked free bits must be odd.
struct ParitySystem {
    masks: Vec<u64>,
}

impl ParitySystem {
    fn new(g: &ValiseGraph, fix: &GaugeFixing) -> Self {
        let f = fix.free.len();
        let mut position = vec![None; g.edge_count()];
        for (p, &k) in fix.free.iter().enumerate() {
            position[k] = Some(p);
        }
        let masks = bicolor_cycles(g)
            .into_iter()
            .filter(|c| c.len() == 4)
            .map(|c| {
                c.edges
                    .iter()
                    .filter_map(|&e| position[e])
                    .fold(0u64, |m, p| m | 1 << (f - 1 - p))
            })
            .collect();
        Self { masks }
    }

    /// Whether `Ax = 1` has a solution over GF(2), with the rank of `A`.
    fn solvable(&self) -> (bool, usize) {
        let mut basis: [Option<(u64, bool)>; 64] = [None; 64];
        let mut rank = 0;
        for &m in &self.masks {
            let (mut row, mut rhs) = (m, true);
            while row != 0 {
                let lead = 63 - row.leading_zeros() as usize;
                match basis[lead] {
                    Some((b, brhs)) => {
                        row ^= b;
                        rhs ^= brhs;
                    }
                    None => {
                        basis[lead] = Some((row, rhs));
                        rank += 1;
                        break;
                    }
                }
            }
            if row == 0 && rhs {
                return (false, rank);
            }
        }
        (true, rank)
    }

    /// `code` bit set means `Plus`; a quad is odd when it holds an odd
    /// number of `Minus` free edges.
    #[inline]
    fn holds(&self, code: u64, full: u64) -> bool {
        let minus = !code & full;
        self.masks.iter().all(|&m| (minus & m).count_ones() % 2 == 1)
    }
}

/// Full sign vector for gauge-fixed code `code`: tree edges `Plus`, free edge
/// `p` is `Plus` when bit `f - 1 - p` is set, so increasing codes are
/// lexicographically increasing with `Minus < Plus`.
fn signs_for(g: &ValiseGraph, fix: &GaugeFixing, code: u64) -> Vec<Sign> {
    let f = fix.free.len();
    let mut signs = vec![Sign::Plus; g.edge_count()];
    for (p, &k) in fix.free.iter().enumerate() {
        if code >> (f - 1 - p) & 1 == 0 {
            signs[k] = Sign::Minus;
        }
    }
    signs
}

fn in_pool<T: Send>(workers: Option<usize>, job: impl FnOnce() -> T + Send) -> T {
    match workers {
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k.max(1))
            .build()
            .expect("thread pool")
            .install(job),
        None => job(),
    }
}

/// Decides whether any dashing of `g`'s topology satisfies the Garden
/// Algebra. The signs already on `g` are ignored.
pub fn search_dashings(
    g: &ValiseGraph,
    opts: &SearchOptions,
) -> Result<DashingSearchResult, DashingError> {
    g.ensure_valid()?;
    let fix = gauge_fix(g);
    let f = fix.free.len();

    let report = candidacy(g);
    if !report.is_candidate() {
        let reasons: Vec<String> = report.verdict.reasons().iter().map(|r| r.to_string()).collect();
        return Ok(DashingSearchResult::pruned(
            format!("candidacy filter failed: {}", reasons.join("; ")),
            f,
        ));
    }

    let too_big = f >= 64 || (1u64 << f) > opts.budget;
    let system = (!too_big).then(|| ParitySystem::new(g, &fix));
    if let Some(sys) = &system {
        if !sys.solvable().0 {
            return Ok(DashingSearchResult::pruned(
                "odd-quad parity system has no solution".to_string(),
                f,
            ));
        }
    }
    let Some(system) = system else {
        return Err(DashingError::BudgetExceeded {
            free: f,
            budget: opts.budget,
        });
    };

    let total: u64 = 1 << f;
    let full: u64 = total - 1;
    let accept = |code: u64| -> bool {
        if opts.full_garden {
            let trial = g.with_signs(&signs_for(g, &fix, code));
            garden_check(&trial.to_matrices().expect("valid")).is_ok_and(|r| r.ok)
        } else {
            system.holds(code, full)
        }
    };

    let chunk: u64 = (total / 256).max(1 << 10).min(total);
    let n_chunks = total.div_ceil(chunk);
    let range = |c: u64| (c * chunk)..((c + 1) * chunk).min(total);

    let (first, count) = in_pool(opts.workers, || {
        if opts.exhaustive {
            (0..n_chunks)
                .into_par_iter()
                .map(|c| {
                    let mut first = None;
                    let mut count = 0u64;
                    for code in range(c) {
                        if accept(code) {
                            first.get_or_insert(code);
                            count += 1;
                        }
                    }
                    (first, count)
                })
                .reduce(
                    || (None, 0),
                    |a, b| {
                        let first = match (a.0, b.0) {
                            (Some(x), Some(y)) => Some(x.min(y)),
                            (x, y) => x.or(y),
                        };
                        (first, a.1 + b.1)
                    },
                )
        } else {
            let first = (0..n_chunks)
                .into_par_iter()
                .find_map_first(|c| range(c).find(|&code| accept(code)));
            (first, u64::from(first.is_some()))
        }
    });

    let Some(code) = first else {
        return Ok(DashingSearchResult {
            feasible: false,
            witness: None,
            count_gauge_orbits: 0,
            count_total: Some(0),
            free_edges: f,
            pruned_reason: None,
        });
    };

    let signs = signs_for(g, &fix, code);
    let witness_graph = g.with_signs(&signs);
    let verified = garden_check(&witness_graph.to_matrices()?).is_ok_and(|r| r.ok);
    assert!(verified, "parity witness failed the matrix check");

    let count_total = if opts.exhaustive && flips_act_freely(g, &signs) {
        let gauge_dim = g.vertex_count() - fix.components;
        1u128
            .checked_shl(gauge_dim as u32)
            .filter(|_| gauge_dim < 128)
            .and_then(|orbit| orbit.checked_mul(u128::from(count)))
    } else {
        None
    };
    Ok(DashingSearchResult {
        feasible: true,
        witness: Some(DashingAssignment {
            signs,
            gauge_fixed: true,
        }),
        count_gauge_orbits: count,
        count_total,
        free_edges: f,
        pruned_reason: None,
    })
}

/// Samples single-vertex flips of the witness: each must change the sign
/// vector (a free gauge action) and keep the algebra intact.
fn flips_act_freely(g: &ValiseGraph, signs: &[Sign]) -> bool {
    let inc = g.incidence();
    let n = g.vertex_count();
    (0..n)
        .filter(|&v| (0..g.n_colors()).any(|c| inc.edge_at(v, c).is_some()))
        .take(8)
        .all(|v| {
            let mut flips = vec![false; n];
            flips[v] = true;
            let flipped = gauge_flip(g, signs, &flips);
            flipped != signs
                && garden_check(&g.with_signs(&flipped).to_matrices().expect("valid"))
                    .is_ok_and(|r| r.ok)
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::hypercube;

    #[test]
    fn forest_sizes() {
        let cube = hypercube(3).unwrap();
        let fix = gauge_fix(&cube);
        assert_eq!((fix.tree.len(), fix.free.len(), fix.components), (7, 5, 1));
    }

    #[test]
    fn parity_rank_of_cube_faces() {
        let cube = hypercube(3).unwrap();
        let fix = gauge_fix(&cube);
        let sys = ParitySystem::new(&cube, &fix);
        assert_eq!(sys.masks.len(), 6);
        assert_eq!(sys.solvable(), (true, 5));
    }

    #[test]
    fn budget_refusal() {
        let t = hypercube(4).unwrap();
        let opts = SearchOptions {
            budget: 1 << 10,
            ..Default::default()
        };
        assert_eq!(
            search_dashings(&t, &opts),
            Err(DashingError::BudgetExceeded {
                free: 17,
                budget: 1 << 10
            })
        );
    }

    #[test]
    fn length_mismatch() {
        let g = hypercube(2).unwrap();
        let a = DashingAssignment {
            signs: vec![Sign::Plus],
            gauge_fixed: false,
        };
        assert!(matches!(
            odd_quad_check(&g, &a),
            Err(DashingError::LengthMismatch { .. })
        ));
    }
}
