//! Exhaustive search over N-color topologies on d bosons and d fermions.
//!
//! A topology assigns each color a perfect matching, written as a
//! permutation `σ_I` from bosons to fermions. Color 1 is fixed to the
//! identity, which absorbs fermion relabeling. With pruning on, a partial
//! assignment is dropped as soon as some `σ_J⁻¹ σ_I` is not a fixed-point
//! free involution, i.e. the colors I and J do not close into 4-cycles.

use std::collections::BTreeMap;

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::canon::{canonical_form, CanonicalKey};
use crate::catalog::hypercube;
use crate::dashing::{search_dashings, DashingAssignment, DashingError, SearchOptions, DEFAULT_BUDGET};
use crate::garden::garden_check;
use crate::graph::{ColorIndex, Edge, Sign, ValiseGraph};

/// Default cap on `(d!)^(N-1)` raw candidates.
pub const DEFAULT_SEARCH_BUDGET: u64 = 1_000_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("need at least one boson and one color")]
    EmptySpec,
    #[error("search space (d!)^(N-1) exceeds the budget of {budget}")]
    BudgetExceeded { budget: u64 },
    #[error(transparent)]
    Dashing(#[from] DashingError),
    #[error("solution failed re-verification: {0}")]
    Verification(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchSpec {
    pub d: usize,
    pub n_colors: usize,
    /// Merge candidates that are isomorphic up to relabeling and color permutation.
    pub dedupe: bool,
    /// Drop partial assignments whose color pairs cannot close into quads.
    pub prune: bool,
    pub allow_disconnected: bool,
    pub budget: u64,
    pub dashing_budget: u64,
    #[serde(skip)]
    pub workers: Option<usize>,
}

impl SearchSpec {
    pub fn new(d: usize, n_colors: usize) -> Self {
        Self {
            d,
            n_colors,
            dedupe: true,
            prune: true,
            allow_disconnected: false,
            budget: DEFAULT_SEARCH_BUDGET,
            dashing_budget: DEFAULT_BUDGET,
            workers: None,
        }
    }

    /// `(d!)^(N-1)`, `None` on overflow.
    pub fn raw_size(&self) -> Option<u64> {
        let fact = (1..=self.d as u64).try_fold(1u64, |acc, k| acc.checked_mul(k))?;
        (1..self.n_colors).try_fold(1u64, |acc, _| acc.checked_mul(fact))
    }
}

/// One perfect matching per color: `perms[I][boson] = fermion`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Topology {
    pub perms: Vec<Vec<usize>>,
}

impl Topology {
    pub fn d(&self) -> usize {
        self.perms.first().map_or(0, Vec::len)
    }

    /// All-plus graph; edges ordered by color then boson.
    pub fn to_graph(&self, name: impl Into<String>) -> ValiseGraph {
        let d = self.d();
        let edges = self
            .perms
            .iter()
            .enumerate()
            .flat_map(|(c, p)| {
                p.iter()
                    .enumerate()
                    .map(move |(b, &f)| Edge::new(b, f, ColorIndex::from_index(c), Sign::Plus))
            })
            .collect();
        ValiseGraph::with_default_labels(name, self.perms.len(), d, d, edges)
    }
}

/// `q⁻¹ ∘ p` is an involution without fixed points.
fn closes_into_quads(p: &[usize], q_inv: &[usize]) -> bool {
    let tau: Vec<usize> = p.iter().map(|&f| q_inv[f]).collect();
    tau.iter().enumerate().all(|(i, &t)| t != i && tau[t] == i)
}

/// Depth-first stream of topologies in lexicographic order of the
/// permutation indices for colors 2..N.
pub struct TopologyIter {
    perms: Vec<Vec<usize>>,
    inverses: Vec<Vec<usize>>,
    levels: usize,
    prune: bool,
    idx: Vec<usize>,
    pending: bool,
    done: bool,
    rejected: u64,
}

impl TopologyIter {
    /// Partial assignments discarded by pruning so far.
    pub fn rejected(&self) -> u64 {
        self.rejected
    }

    fn identity(&self) -> &[usize] {
        &self.perms[0]
    }

    fn top_valid(&self) -> bool {
        if !self.prune {
            return true;
        }
        let level = self.idx.len() - 1;
        let p = &self.perms[self.idx[level]];
        if !closes_into_quads(p, self.identity()) {
            return false;
        }
        self.idx[..level]
            .iter()
            .all(|&j| closes_into_quads(p, &self.inverses[j]))
    }

    fn advance(&mut self) -> bool {
        while let Some(top) = self.idx.last_mut() {
            *top += 1;
            if *top < self.perms.len() {
                return true;
            }
            self.idx.pop();
        }
        false
    }

    fn current(&self) -> Topology {
        let mut perms = vec![self.identity().to_vec()];
        perms.extend(self.idx.iter().map(|&k| self.perms[k].clone()));
        Topology { perms }
    }
}

impl Iterator for TopologyIter {
    type Item = Topology;

    fn next(&mut self) -> Option<Topology> {
        if self.done {
            return None;
        }
        if self.levels == 0 {
            self.done = true;
            return Some(self.current());
        }
        loop {
            if !self.pending && !self.advance() {
                self.done = true;
                return None;
            }
            self.pending = false;
            if self.top_valid() {
                if self.idx.len() == self.levels {
                    return Some(self.current());
                }
                self.idx.push(0);
                self.pending = true;
            } else {
                self.rejected += 1;
            }
        }
    }
}

pub fn enumerate_topologies(spec: &SearchSpec) -> Result<TopologyIter, SearchError> {
    if spec.d == 0 || spec.n_colors == 0 {
        return Err(SearchError::EmptySpec);
    }
    match spec.raw_size() {
        Some(n) if n <= spec.budget => {}
        _ => {
            return Err(SearchError::BudgetExceeded {
                budget: spec.budget,
            })
        }
    }
    let perms: Vec<Vec<usize>> = (0..spec.d).permutations(spec.d).collect();
    let inverses = perms
        .iter()
        .map(|p| {
            let mut inv = vec![0; p.len()];
            for (i, &x) in p.iter().enumerate() {
                inv[x] = i;
            }
            inv
        })
        .collect();
    Ok(TopologyIter {
        perms,
        inverses,
        levels: spec.n_colors - 1,
        prune: spec.prune,
        idx: vec![0],
        pending: true,
        done: false,
        rejected: 0,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Solution {
    pub key: CanonicalKey,
    /// The class representative with its witness dashing applied.
    #[serde(serialize_with = "crate::io::serialize_graph")]
    pub graph: ValiseGraph,
    pub witness: DashingAssignment,
    pub connected: bool,
    pub components: usize,
    /// Raw candidates that fell into this class.
    pub class_size: usize,
    /// Dimension of the hypercube this class is isomorphic to, if any.
    pub hypercube: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchOutcome {
    pub spec: SearchSpec,
    pub solutions: Vec<Solution>,
    /// Complete candidates produced by the enumerator.
    pub scanned: u64,
    /// Classes examined after dedupe.
    pub classes: u64,
    pub pruned: BTreeMap<String, u64>,
}

fn hypercube_match(key: &CanonicalKey, d: usize, n_colors: usize) -> Option<usize> {
    if d != 1usize.checked_shl(n_colors as u32 - 1)? {
        return None;
    }
    let cube = hypercube(n_colors).ok()?;
    (canonical_form(&cube) == *key).then_some(n_colors)
}

/// Enumerate, dedupe, then look for a dashing on each class.
pub fn run_search(spec: &SearchSpec) -> Result<SearchOutcome, SearchError> {
    let mut iter = enumerate_topologies(spec)?;
    let candidates: Vec<Topology> = iter.by_ref().collect();
    let support_pruned = iter.rejected();

    let job = || -> Result<SearchOutcome, SearchError> {
        let keys: Vec<CanonicalKey> = candidates
            .par_iter()
            .map(|t| canonical_form(&t.to_graph("candidate")))
            .collect();

        // class representative = first candidate in enumeration order
        let mut classes: BTreeMap<CanonicalKey, (usize, usize)> = BTreeMap::new();
        let mut reps: Vec<(CanonicalKey, usize, usize)> = Vec::new();
        if spec.dedupe {
            for (i, k) in keys.iter().enumerate() {
                classes.entry(k.clone()).or_insert((i, 0)).1 += 1;
            }
            reps.extend(classes.into_iter().map(|(k, (i, n))| (k, i, n)));
        } else {
            reps.extend(keys.iter().cloned().enumerate().map(|(i, k)| (k, i, 1)));
        }

        let dash_opts = SearchOptions {
            budget: spec.dashing_budget,
            ..SearchOptions::default()
        };
        let examined: Vec<Result<Examined, SearchError>> = reps
            .par_iter()
            .map(|(key, i, size)| {
                let name = format!("d{}-n{}-class{}", spec.d, spec.n_colors, i + 1);
                let g = candidates[*i].to_graph(name);
                let result = search_dashings(&g, &dash_opts)?;
                if let Some(reason) = result.pruned_reason {
                    return Ok(Examined::Pruned(if reason.starts_with("candidacy") {
                        "candidacy"
                    } else {
                        "no dashing"
                    }));
                }
                let Some(witness) = result.witness else {
                    return Ok(Examined::Pruned("no dashing"));
                };
                let graph = g.with_signs(&witness.signs);
                let report = garden_check(&graph.to_matrices().map_err(DashingError::from)?)
                    .map_err(|e| SearchError::Verification(e.to_string()))?;
                if !report.ok {
                    return Err(SearchError::Verification(format!(
                        "{} has {} residual entries",
                        graph.name(),
                        report.violations.len()
                    )));
                }
                let components = graph.components().1;
                Ok(Examined::Solution(Solution {
                    key: key.clone(),
                    hypercube: hypercube_match(key, spec.d, spec.n_colors),
                    graph,
                    witness,
                    connected: components == 1,
                    components,
                    class_size: *size,
                }))
            })
            .collect();

        let mut pruned: BTreeMap<String, u64> = BTreeMap::new();
        if support_pruned > 0 {
            pruned.insert("support".to_string(), support_pruned);
        }
        let dupes = candidates.len() - reps.len();
        if dupes > 0 {
            pruned.insert("duplicate".to_string(), dupes as u64);
        }
        let mut solutions = Vec::new();
        for e in examined {
            match e? {
                Examined::Pruned(reason) => *pruned.entry(reason.to_string()).or_default() += 1,
                Examined::Solution(s) if !s.connected && !spec.allow_disconnected => {
                    *pruned.entry("disconnected".to_string()).or_default() += 1;
                }
                Examined::Solution(s) => solutions.push(s),
            }
        }
        Ok(SearchOutcome {
            spec: spec.clone(),
            solutions,
            scanned: candidates.len() as u64,
            classes: reps.len() as u64,
            pruned,
        })
    };

    match spec.workers {
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k.max(1))
            .build()
            .expect("thread pool")
            .install(job),
        None => job(),
    }
}

enum Examined {
    Pruned(&'static str),
    Solution(Solution),
}

#[cfg(test)]
mod tests {
    use super::*;

    fn collect(d: usize, n: usize, prune: bool) -> Vec<Topology> {
        let mut spec = SearchSpec::new(d, n);
        spec.prune = prune;
        enumerate_topologies(&spec).unwrap().collect()
    }

    #[test]
    fn two_by_two_has_one_survivor() {
        let c = collect(2, 2, true);
        assert_eq!(c, vec![Topology {
            perms: vec![vec![0, 1], vec![1, 0]]
        }]);
        assert_eq!(collect(2, 2, false).len(), 2);
    }

    #[test]
    fn single_boson_two_colors_has_none() {
        assert!(collect(1, 2, true).is_empty());
        assert_eq!(collect(1, 2, false).len(), 1);
    }

    #[test]
    fn one_color_is_the_identity() {
        assert_eq!(collect(3, 1, true).len(), 1);
    }

    #[test]
    fn unpruned_counts_are_full_products() {
        assert_eq!(collect(3, 3, false).len(), 36);
        assert_eq!(collect(4, 3, false).len(), 576);
    }

    #[test]
    fn budget_and_empty_specs() {
        let mut spec = SearchSpec::new(8, 4);
        spec.budget = 1000;
        assert!(matches!(
            enumerate_topologies(&spec),
            Err(SearchError::BudgetExceeded { .. })
        ));
        assert!(matches!(
            enumerate_topologies(&SearchSpec::new(0, 2)),
            Err(SearchError::EmptySpec)
        ));
        assert_eq!(SearchSpec::new(20, 4).raw_size(), None);
    }
}
