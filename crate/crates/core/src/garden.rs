//! Garden Algebra verification.
//!
//! For L-matrices `L_1..L_N` (each d x d̂) with `R_I = L_I^T`, a valid system
//! satisfies, for every pair I, J,
//!
//! ```text
//! L_I R_J + L_J R_I = 2 δ_IJ 1_d        (boson side, "left")
//! R_I L_J + R_J L_I = 2 δ_IJ 1_d̂        (fermion side, "right")
//! ```
//!
//! The report keeps every product and residual so callers can print them.

use std::fmt::{self, Write as _};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::ColorIndex;
use crate::matrix::SignedMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GardenError {
    #[error("no matrices given")]
    NoMatrices,
    #[error("matrix {} is {found_rows}x{found_cols}, expected {rows}x{cols}", .index + 1)]
    DimensionMismatch {
        index: usize,
        rows: usize,
        cols: usize,
        found_rows: usize,
        found_cols: usize,
    },
    #[error("matrix {} entry ({}, {}) is {value}, expected -1, 0 or 1", .index + 1, .row + 1, .col + 1)]
    NotSigned {
        index: usize,
        row: usize,
        col: usize,
        value: i32,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

/// One (I, J) block of the check, I <= J.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairProduct {
    pub i: ColorIndex,
    pub j: ColorIndex,
    /// `L_I R_I` on the diagonal, `L_I R_J + L_J R_I` off it (right side analogous).
    pub product: SignedMatrix,
    /// Anticommutator minus `2 δ_IJ 1`.
    pub residual: SignedMatrix,
}

impl PairProduct {
    pub fn label(&self, side: Side) -> String {
        pair_label(side, self.i, self.j)
    }
}

/// Labels in the `L1*R2 + L2*R1` style.
pub fn pair_label(side: Side, i: ColorIndex, j: ColorIndex) -> String {
    let (a, b) = match side {
        Side::Left => ('L', 'R'),
        Side::Right => ('R', 'L'),
    };
    if i == j {
        format!("{a}{i}*{b}{i}")
    } else {
        format!("{a}{i}*{b}{j} + {a}{j}*{b}{i}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct GardenViolation {
    pub side: Side,
    pub i: ColorIndex,
    pub j: ColorIndex,
    /// 0-based; serialized and displayed 1-based.
    #[serde(serialize_with = "one_based")]
    pub row: usize,
    #[serde(serialize_with = "one_based")]
    pub col: usize,
    pub value: i32,
}

fn one_based<S: serde::Serializer>(v: &usize, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_u64(*v as u64 + 1)
}

impl fmt::Display for GardenViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} ({}, {}) entry ({}, {}) = {}",
            self.side,
            self.i,
            self.j,
            self.row + 1,
            self.col + 1,
            self.value
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GardenReport {
    pub n_colors: usize,
    pub bosons: usize,
    pub fermions: usize,
    pub left: Vec<PairProduct>,
    pub right: Vec<PairProduct>,
    pub left_ok: bool,
    pub right_ok: bool,
    pub ok: bool,
    pub violations: Vec<GardenViolation>,
}

impl GardenReport {
    pub fn pairs(&self, side: Side) -> &[PairProduct] {
        match side {
            Side::Left => &self.left,
            Side::Right => &self.right,
        }
    }

    /// Looks up the block for an unordered pair of colors.
    pub fn pair(&self, side: Side, i: ColorIndex, j: ColorIndex) -> Option<&PairProduct> {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        self.pairs(side).iter().find(|p| p.i == i && p.j == j)
    }

    /// Appendix-style text: a label line then the matrix, for every block.
    pub fn render(&self, side: Side) -> String {
        let mut out = String::new();
        for p in self.pairs(side) {
            let _ = writeln!(out, "{}", p.label(side));
            out.push_str(&p.product.to_string());
            out.push('\n');
        }
        out
    }
}

fn check_inputs(mats: &[SignedMatrix]) -> Result<(usize, usize), GardenError> {
    let first = mats.first().ok_or(GardenError::NoMatrices)?;
    let (rows, cols) = (first.rows(), first.cols());
    for (index, m) in mats.iter().enumerate() {
        if (m.rows(), m.cols()) != (rows, cols) {
            return Err(GardenError::DimensionMismatch {
                index,
                rows,
                cols,
                found_rows: m.rows(),
                found_cols: m.cols(),
            });
        }
        if let Some((row, col, value)) = m.nonzeros().find(|&(_, _, v)| !(-1..=1).contains(&v)) {
            return Err(GardenError::NotSigned {
                index,
                row,
                col,
                value,
            });
        }
    }
    Ok((rows, cols))
}

/// The anticommutator block for one side and an ordered color pair, in
/// appendix form (single product on the diagonal).
fn block(
    side: Side,
    ls: &[SignedMatrix],
    rs: &[SignedMatrix],
    i: usize,
    j: usize,
) -> SignedMatrix {
    let (a, b) = match side {
        Side::Left => (ls, rs),
        Side::Right => (rs, ls),
    };
    let ij = a[i].multiply(&b[j]).expect("shapes checked");
    if i == j {
        return ij;
    }
    let ji = a[j].multiply(&b[i]).expect("shapes checked");
    ij.add(&ji).expect("shapes checked")
}

/// `L_I R_J + L_J R_I - 2 δ_IJ 1` (or the fermion-side analogue) for any
/// ordered pair of 0-based colors.
pub fn residual(
    mats: &[SignedMatrix],
    side: Side,
    i: usize,
    j: usize,
) -> Result<SignedMatrix, GardenError> {
    check_inputs(mats)?;
    let rs: Vec<SignedMatrix> = mats.iter().map(SignedMatrix::transpose).collect();
    Ok(residual_of(side, mats, &rs, i, j).1)
}

fn residual_of(
    side: Side,
    ls: &[SignedMatrix],
    rs: &[SignedMatrix],
    i: usize,
    j: usize,
) -> (SignedMatrix, SignedMatrix) {
    let product = block(side, ls, rs, i, j);
    let n = product.rows();
    let residual = if i == j {
        product
            .scale(2)
            .sub(&SignedMatrix::identity(n).scale(2))
            .expect("square")
    } else {
        product.clone()
    };
    // Each product entry is a sum of at most min(d, d̂) unit terms.
    let inner = ls[0].rows().min(ls[0].cols()) as i32;
    debug_assert!(product.max_abs() <= 2 * inner);
    (product, residual)
}

/// Checks both Garden Algebra identities on `mats` (the L-matrices).
/// Rectangular inputs are accepted; non-square systems show up as nonzero
/// residuals on at least one side.
pub fn garden_check(mats: &[SignedMatrix]) -> Result<GardenReport, GardenError> {
    let (rows, cols) = check_inputs(mats)?;
    let rs: Vec<SignedMatrix> = mats.iter().map(SignedMatrix::transpose).collect();
    let n = mats.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();

    let build = |side: Side| -> Vec<PairProduct> {
        pairs
            .par_iter()
            .map(|&(i, j)| {
                let (product, residual) = residual_of(side, mats, &rs, i, j);
                PairProduct {
                    i: ColorIndex::from_index(i),
                    j: ColorIndex::from_index(j),
                    product,
                    residual,
                }
            })
            .collect()
    };
    let left = build(Side::Left);
    let right = build(Side::Right);

    let mut violations = Vec::new();
    for (side, blocks) in [(Side::Left, &left), (Side::Right, &right)] {
        for p in blocks {
            violations.extend(p.residual.nonzeros().map(|(row, col, value)| GardenViolation {
                side,
                i: p.i,
                j: p.j,
                row,
                col,
                value,
            }));
        }
    }
    let left_ok = left.iter().all(|p| p.residual.is_zero());
    let right_ok = right.iter().all(|p| p.residual.is_zero());
    Ok(GardenReport {
        n_colors: n,
        bosons: rows,
        fermions: cols,
        left,
        right,
        left_ok,
        right_ok,
        ok: left_ok && right_ok,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_negative_entry_is_valid() {
        let m = SignedMatrix::from_rows(&[[-1]]).unwrap();
        let r = garden_check(&[m]).unwrap();
        assert!(r.ok);
        assert!(r.violations.is_empty());
        assert_eq!(r.left[0].product, SignedMatrix::identity(1));
    }

    #[test]
    fn zero_matrix_fails_both_sides() {
        let r = garden_check(&[SignedMatrix::zeros(1, 1)]).unwrap();
        assert!(!r.left_ok && !r.right_ok);
        assert_eq!(r.violations.len(), 2);
        assert_eq!(r.violations[0].value, -2);
    }

    #[test]
    fn rejects_mixed_shapes_and_unsigned_entries() {
        let a = SignedMatrix::zeros(2, 2);
        let b = SignedMatrix::zeros(2, 3);
        assert!(matches!(
            garden_check(&[a.clone(), b]),
            Err(GardenError::DimensionMismatch { index: 1, .. })
        ));
        let c = SignedMatrix::from_rows(&[[2, 0], [0, 1]]).unwrap();
        assert!(matches!(
            garden_check(&[a, c]),
            Err(GardenError::NotSigned { value: 2, .. })
        ));
        assert_eq!(garden_check(&[]), Err(GardenError::NoMatrices));
    }

    #[test]
    fn labels() {
        let c = ColorIndex::from_number;
        assert_eq!(pair_label(Side::Left, c(1).unwrap(), c(1).unwrap()), "L1*R1");
        assert_eq!(
            pair_label(Side::Right, c(2).unwrap(), c(4).unwrap()),
            "R2*L4 + R4*L2"
        );
    }
}
