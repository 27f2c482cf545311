//! Exact-arithmetic toolkit for adinkra-candidate graphs.
//!
//! A [`ValiseGraph`] holds bosons, fermions and colored, signed edges. From it
//! come the L-matrices ([`ValiseGraph::to_matrices`]), the Garden Algebra
//! check ([`garden_check`]), the candidacy filters ([`candidacy`]), the
//! dashing search ([`search_dashings`]) and the topology search
//! ([`run_search`]).

pub mod canon;
pub mod candidacy;
pub mod catalog;
pub mod cli;
pub mod dashing;
pub mod fixtures;
pub mod garden;
pub mod graph;
pub mod io;
pub mod matrix;
pub mod search;

pub use candidacy::{candidacy, CandidacyReport, Verdict};
pub use catalog::TopologyId;
pub use dashing::{search_dashings, DashingAssignment, DashingSearchResult, SearchOptions};
pub use garden::{garden_check, GardenReport, Side};
pub use graph::{ColorIndex, Edge, Sign, Statistics, ValiseGraph, VertexRef};
pub use matrix::SignedMatrix;
pub use search::{run_search, SearchOutcome, SearchSpec};
