//! Verification of the checked-in appendix product tables.
//!
//! Each fixture file lists, for one builtin topology, every boson-side and
//! fermion-side anticommutator block as transcribed by hand. The verifier
//! recomputes each block and diffs it cell by cell.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::catalog::{rhombic_dodecahedron, rhombic_icosahedron};
use crate::garden::{garden_check, pair_label, GardenReport, Side};
use crate::graph::{ColorIndex, ValiseGraph};

pub const FIXTURE_FILES: [&str; 2] = ["appendix_a.json", "appendix_b.json"];

/// `fixtures/` next to this crate's manifest.
pub fn default_fixture_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

#[derive(Debug, Error)]
pub enum FixtureError {
    #[error("cannot read {}: {source}", .path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("cannot parse {}: {source}", .path.display())]
    Parse {
        path: PathBuf,
        source: serde_json::Error,
    },
    #[error("{}: {message}", .path.display())]
    Corrupt { path: PathBuf, message: String },
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct FixtureProduct {
    pub label: String,
    pub side: Side,
    pub i: usize,
    pub j: usize,
    pub matrix: Vec<Vec<i32>>,
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct FixtureFile {
    pub topology: String,
    pub products: Vec<FixtureProduct>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CellDiff {
    pub row: usize,
    pub col: usize,
    pub expected: i32,
    pub found: i32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MatrixDiff {
    pub file: String,
    pub label: String,
    /// Set when the shapes differ; `cells` is then empty.
    pub shape: Option<((usize, usize), (usize, usize))>,
    pub cells: Vec<CellDiff>,
}

impl fmt::Display for MatrixDiff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.file, self.label)?;
        if let Some(((er, ec), (fr, fc))) = self.shape {
            return write!(f, " shape {er}x{ec} expected, {fr}x{fc} computed");
        }
        for c in &self.cells {
            write!(
                f,
                "\n  cell ({}, {}): expected {}, computed {}",
                c.row, c.col, c.expected, c.found
            )?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FixtureSummary {
    pub total: usize,
    pub matched: usize,
    pub diffs: Vec<MatrixDiff>,
}

impl FixtureSummary {
    pub fn all_match(&self) -> bool {
        self.diffs.is_empty() && self.matched == self.total
    }
}

fn topology_graph(name: &str) -> Option<ValiseGraph> {
    match name {
        "rhombic-dodecahedron" => Some(rhombic_dodecahedron()),
        "rhombic-icosahedron" => Some(rhombic_icosahedron()),
        _ => None,
    }
}

pub fn load_fixture(path: &Path) -> Result<FixtureFile, FixtureError> {
    let text = fs::read_to_string(path).map_err(|source| FixtureError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| FixtureError::Parse {
        path: path.to_path_buf(),
        source,
    })
}

/// Diffs one fixture file against freshly computed products.
pub fn verify_file(path: &Path) -> Result<(usize, Vec<MatrixDiff>), FixtureError> {
    let corrupt = |message: String| FixtureError::Corrupt {
        path: path.to_path_buf(),
        message,
    };
    let file = load_fixture(path)?;
    let g = topology_graph(&file.topology)
        .ok_or_else(|| corrupt(format!("unknown topology \"{}\"", file.topology)))?;
    let report: GardenReport = garden_check(&g.to_matrices().expect("builtin is valid"))
        .expect("builtin matrices are consistent");
    let file_name = path
        .file_name()
        .map_or_else(|| path.display().to_string(), |n| n.to_string_lossy().into_owned());

    let mut diffs = Vec::new();
    for p in &file.products {
        let (i, j) = match (ColorIndex::from_number(p.i), ColorIndex::from_number(p.j)) {
            (Some(i), Some(j)) if p.i <= p.j && p.j <= g.n_colors() => (i, j),
            _ => return Err(corrupt(format!("bad color pair ({}, {})", p.i, p.j))),
        };
        if pair_label(p.side, i, j) != p.label {
            return Err(corrupt(format!(
                "label \"{}\" does not match side {} pair ({}, {})",
                p.label, p.side, p.i, p.j
            )));
        }
        let computed = &report.pair(p.side, i, j).expect("pair exists").product;
        let rows = p.matrix.len();
        let cols = p.matrix.first().map_or(0, Vec::len);
        if p.matrix.iter().any(|r| r.len() != cols) {
            return Err(corrupt(format!("{}: ragged matrix", p.label)));
        }
        let mut diff = MatrixDiff {
            file: file_name.clone(),
            label: p.label.clone(),
            shape: None,
            cells: Vec::new(),
        };
        if (rows, cols) != (computed.rows(), computed.cols()) {
            diff.shape = Some(((rows, cols), (computed.rows(), computed.cols())));
        } else {
            for (r, row) in p.matrix.iter().enumerate() {
                for (c, &expected) in row.iter().enumerate() {
                    let found = computed.get(r, c);
                    if found != expected {
                        diff.cells.push(CellDiff {
                            row: r + 1,
                            col: c + 1,
                            expected,
                            found,
                        });
                    }
                }
            }
        }
        if diff.shape.is_some() || !diff.cells.is_empty() {
            diffs.push(diff);
        }
    }
    Ok((file.products.len(), diffs))
}

/// Verifies every fixture file in `dir`.
pub fn verify_fixtures(dir: &Path) -> Result<FixtureSummary, FixtureError> {
    let mut total = 0;
    let mut diffs = Vec::new();
    for name in FIXTURE_FILES {
        let (n, d) = verify_file(&dir.join(name))?;
        total += n;
        diffs.extend(d);
    }
    Ok(FixtureSummary {
        total,
        matched: total - diffs.len(),
        diffs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn checked_in_fixtures_match() {
        let s = verify_fixtures(&default_fixture_dir()).unwrap();
        assert_eq!(s.total, 50);
        assert!(s.all_match(), "{:?}", s.diffs);
    }

    #[test]
    fn missing_directory_is_an_io_error() {
        let err = verify_fixtures(Path::new("/nonexistent/fixtures")).unwrap_err();
        assert!(matches!(err, FixtureError::Io { .. }));
    }
}
