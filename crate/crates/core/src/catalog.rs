//! Builders for every topology in the catalog: the two rhombic zonohedra,
//! hypercubes, the small two-color graphs, the lifting construction and the
//! tesseract-deletion construction of the rhombic dodecahedron.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::graph::{ColorIndex, Edge, GraphError, Sign, ValiseGraph};
use crate::matrix::SignedMatrix;

/// Largest hypercube dimension the builder accepts.
pub const MAX_HYPERCUBE_DIM: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("hypercube dimension must be at least 1")]
    ZeroDimension,
    #[error("hypercube dimension {0} exceeds the supported maximum {MAX_HYPERCUBE_DIM}")]
    TooLarge(usize),
    #[error("unknown topology \"{0}\" (expected bow-tie, diamond, cube, tesseract, hypercube:<n>, rd, ri, lifted-rd or rd-tesseract)")]
    Unknown(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TopologyId {
    BowTie,
    Diamond,
    Hypercube(usize),
    RhombicDodecahedron,
    RhombicIcosahedron,
    LiftedRD,
    /// The rhombic dodecahedron obtained by deleting two antipodal bosons of the tesseract.
    TesseractDeletion,
}

impl TopologyId {
    pub fn build(self) -> Result<ValiseGraph, CatalogError> {
        Ok(match self {
            TopologyId::BowTie => bow_tie(),
            TopologyId::Diamond => diamond(),
            TopologyId::Hypercube(n) => hypercube(n)?,
            TopologyId::RhombicDodecahedron => rhombic_dodecahedron(),
            TopologyId::RhombicIcosahedron => rhombic_icosahedron(),
            TopologyId::LiftedRD => lift(&rhombic_dodecahedron())?.with_name("lifted-rd"),
            TopologyId::TesseractDeletion => rd_from_tesseract_deletion(),
        })
    }
}

impl fmt::Display for TopologyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TopologyId::BowTie => f.write_str("bow-tie"),
            TopologyId::Diamond => f.write_str("diamond"),
            TopologyId::Hypercube(n) => write!(f, "hypercube:{n}"),
            TopologyId::RhombicDodecahedron => f.write_str("rd"),
            TopologyId::RhombicIcosahedron => f.write_str("ri"),
            TopologyId::LiftedRD => f.write_str("lifted-rd"),
            TopologyId::TesseractDeletion => f.write_str("rd-tesseract"),
        }
    }
}

impl FromStr for TopologyId {
    type Err = CatalogError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let lower = s.to_ascii_lowercase();
        Ok(match lower.as_str() {
            "bow-tie" | "bowtie" => TopologyId::BowTie,
            "diamond" => TopologyId::Diamond,
            "cube" => TopologyId::Hypercube(3),
            "tesseract" => TopologyId::Hypercube(4),
            "rd" | "rhombic-dodecahedron" => TopologyId::RhombicDodecahedron,
            "ri" | "rhombic-icosahedron" => TopologyId::RhombicIcosahedron,
            "lifted-rd" => TopologyId::LiftedRD,
            "rd-tesseract" => TopologyId::TesseractDeletion,
            other => {
                let n = other
                    .strip_prefix("hypercube:")
                    .and_then(|n| n.parse::<usize>().ok())
                    .ok_or_else(|| CatalogError::Unknown(s.to_string()))?;
                TopologyId::Hypercube(n)
            }
        })
    }
}

const RD_L: [[[i32; 8]; 6]; 4] = [
    [
        [ 0,  0, -1,  0,  0,  0,  0,  0],
        [ 0,  0,  0,  0,  1,  0,  0,  0],
        [ 1,  0,  0,  0,  0,  0,  0,  0],
        [ 0,  0,  0,  0,  0,  0,  0,  1],
        [ 0,  0,  0,  1,  0,  0,  0,  0],
        [ 0,  0,  0,  0,  0, -1,  0,  0],
    ],
    [
        [ 0,  0,  0,  1,  0,  0,  0,  0],
        [ 0,  0,  0,  0,  0,  1,  0,  0],
        [ 0,  0,  0,  0,  0,  0, -1,  0],
        [ 0,  1,  0,  0,  0,  0,  0,  0],
        [ 0,  0,  1,  0,  0,  0,  0,  0],
        [ 0,  0,  0,  0,  1,  0,  0,  0],
    ],
    [
        [ 1,  0,  0,  0,  0,  0,  0,  0],
        [ 0, -1,  0,  0,  0,  0,  0,  0],
        [ 0,  0,  1,  0,  0,  0,  0,  0],
        [ 0,  0,  0,  0,  0,  1,  0,  0],
        [ 0,  0,  0,  0,  0,  0,  1,  0],
        [ 0,  0,  0,  0,  0,  0,  0,  1],
    ],
    [
        [ 0,  1,  0,  0,  0,  0,  0,  0],
        [ 1,  0,  0,  0,  0,  0,  0,  0],
        [ 0,  0,  0,  0, -1,  0,  0,  0],
        [ 0,  0,  0, -1,  0,  0,  0,  0],
        [ 0,  0,  0,  0,  0,  0,  0,  1],
        [ 0,  0,  0,  0,  0,  0, -1,  0],
    ],
];

const RI_L: [[[i32; 11]; 11]; 5] = [
    [
        [-1,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0],
        [ 0,  1,  0,  0,  0,  0,  0,  0,  0,  0,  0],
        [ 0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0],
        [ 0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0],
        [ 0,  0,  0, -1,  0,  0,  0,  0,  0,  0,  0],
        [ 0,  0, -1,  0,  0,  0,  0,  0,  0,  0,  0],
        [ 0,  0,  0,  0,  0,  0,  1,  0,  0,  0,  0],
        [ 0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0],
        [ 0,  0,  0,  0,  0,  0,  0,  0,  0,  1,  0],
        [ 0,  0,  0,  0,  0,  1,  0,  0,  0,  0,  0],
        [ 0,  0,  0,  0,  0,  0,  0, -1,  0,  0,  0],
    ],
    [
        [ 0,  1,  0,  0,  0,  0,  0,  0,  0,  0,  0],
        [ 1,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0],
        [ 0,  0,  1,  0,  0,  0,  0,  0,  0,  0,  0],
        [ 0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0],
        [ 0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0],
        [ 0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0],
        [ 0,  0,  0,  0, -1,  0,  0,  0,  0,  0,  0],
        [ 0,  0,  0, -1,  0,  0,  0,  0,  0,  0,  0],
        [ 0,  0,  0,  0,  0,  0,  0,  1,  0,  0,  0],
        [ 0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  1],
        [ 0,  0,  0,  0,  0,  0,  0,  0,  0,  1,  0],
    ],
    [
        [ 0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0],
        [ 0,  0,  1,  0,  0,  0,  0,  0,  0,  0,  0],
        [-1,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0],
        [ 0,  0,  0,  0,  1,  0,  0,  0,  0,  0,  0],
        [ 0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0],
        [ 0,  1,  0,  0,  0,  0,  0,  0,  0,  0,  0],
        [ 0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0],
        [ 0,  0,  0,  0,  0,  0,  0,  0,  1,  0,  0],
        [ 0,  0,  0,  0,  0, -1,  0,  0,  0,  0,  0],
        [ 0,  0,  0,  0,  0,  0,  0,  0,  0,  1,  0],
        [ 0,  0,  0,  0,  0,  0,  0,  0,  0,  0, -1],
    ],
    [
        [ 0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0],
        [ 0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0],
        [ 0,  0,  0,  0,  1,  0,  0,  0,  0,  0,  0],
        [ 1,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0],
        [ 0,  0,  0,  0,  0,  1,  0,  0,  0,  0,  0],
        [ 0,  0,  0,  0,  0,  0,  1,  0,  0,  0,  0],
        [ 0,  0,  1,  0,  0,  0,  0,  0,  0,  0,  0],
        [ 0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  1],
        [ 0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0],
        [ 0,  0,  0,  1,  0,  0,  0,  0,  0,  0,  0],
        [ 0,  0,  0,  0,  0,  0,  0,  0,  1,  0,  0],
    ],
    [
        [ 0,  0,  0,  1,  0,  0,  0,  0,  0,  0,  0],
        [ 0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0],
        [ 0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0],
        [ 0,  0,  0,  0,  0,  1,  0,  0,  0,  0,  0],
        [-1,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0],
        [ 0,  0,  0,  0,  0,  0,  0,  0, -1,  0,  0],
        [ 0,  0,  0,  0,  0,  0,  0,  1,  0,  0,  0],
        [ 0,  1,  0,  0,  0,  0,  0,  0,  0,  0,  0],
        [ 0,  0,  0,  0,  1,  0,  0,  0,  0,  0,  0],
        [ 0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0],
        [ 0,  0,  0,  0,  0,  0,  1,  0,  0,  0,  0],
    ],
];

fn graph_from_table<const R: usize, const C: usize>(name: &str, table: &[[[i32; C]; R]]) -> ValiseGraph {
    let mats: Vec<SignedMatrix> = table
        .iter()
        .map(|m| SignedMatrix::from_rows(m).expect("rectangular table"))
        .collect();
    ValiseGraph::from_matrices(name, &mats).expect("catalog table is a valid matching system")
}

/// Six bosons, eight fermions, four colors, signs fixed from the tesseract.
pub fn rhombic_dodecahedron() -> ValiseGraph {
    graph_from_table("rhombic-dodecahedron", &RD_L)
}

/// Eleven bosons, eleven fermions, five colors.
pub fn rhombic_icosahedron() -> ValiseGraph {
    graph_from_table("rhombic-icosahedron", &RI_L)
}

fn bit_label(code: u32, n: usize) -> String {
    (0..n)
        .map(|k| if code >> k & 1 == 1 { '1' } else { '0' })
        .collect()
}

/// Vertex codes of the n-cube split by parity: (even = bosons, odd = fermions),
/// each ascending.
pub fn hypercube_codes(n: usize) -> (Vec<u32>, Vec<u32>) {
    (0..1u32 << n).partition(|c| c.count_ones() % 2 == 0)
}

/// Sign of the color-`color` edge at vertex `code`: -1 to the number of set
/// bits below the toggled one. Both endpoints agree since they differ only
/// in that bit.
pub fn hypercube_sign(code: u32, color: usize) -> Sign {
    let below = code & ((1u32 << color) - 1);
    if below.count_ones() % 2 == 0 {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

/// The n-cube: vertices are n-bit strings, even parity bosons, odd parity
/// fermions, color I toggles bit I. Labels are the bit strings, bit 1 first.
pub fn hypercube(n: usize) -> Result<ValiseGraph, CatalogError> {
    if n == 0 {
        return Err(CatalogError::ZeroDimension);
    }
    if n > MAX_HYPERCUBE_DIM {
        return Err(CatalogError::TooLarge(n));
    }
    let (bosons, fermions) = hypercube_codes(n);
    // Fermion codes are ascending, so the position of a code is its rank.
    let fermion_index = |code: u32| fermions.binary_search(&code).expect("odd code");
    let mut edges = Vec::with_capacity(n << (n - 1));
    for color in 0..n {
        for (b, &code) in bosons.iter().enumerate() {
            edges.push(Edge::new(
                b,
                fermion_index(code ^ (1 << color)),
                ColorIndex::from_index(color),
                hypercube_sign(code, color),
            ));
        }
    }
    let name = match n {
        2 => "diamond".to_string(),
        3 => "cube".to_string(),
        4 => "tesseract".to_string(),
        _ => format!("hypercube-{n}"),
    };
    Ok(ValiseGraph::new(
        name,
        n,
        bosons.iter().map(|&c| bit_label(c, n)).collect(),
        fermions.iter().map(|&c| bit_label(c, n)).collect(),
        edges,
    ))
}

/// The two-color square.
pub fn diamond() -> ValiseGraph {
    hypercube(2).expect("n = 2")
}

/// One boson joined to two fermions by different colors. The shape is an
/// interpretation; no fixture depends on it.
pub fn bow_tie() -> ValiseGraph {
    ValiseGraph::with_default_labels(
        "bow-tie",
        2,
        1,
        2,
        vec![
            Edge::new(0, 0, ColorIndex::from_index(0), Sign::Plus),
            Edge::new(0, 1, ColorIndex::from_index(1), Sign::Plus),
        ],
    )
}

/// Doubles `g` with a Klein-flipped mirror copy and adds one color.
///
/// New bosons are the bosons of `g` followed by the mirrored fermions; new
/// fermions are the fermions of `g` followed by the mirrored bosons. Colors
/// 1..N repeat `g` on both copies with the same signs, and color N+1 joins
/// every vertex to its mirror with sign +1.
pub fn lift(g: &ValiseGraph) -> Result<ValiseGraph, GraphError> {
    g.ensure_valid()?;
    let (d, dh) = (g.boson_count(), g.fermion_count());
    let extra = ColorIndex::from_index(g.n_colors());
    let mut edges = g.edges().to_vec();
    edges.extend(
        g.edges()
            .iter()
            .map(|e| Edge::new(d + e.fermion, dh + e.boson, e.color, e.sign)),
    );
    edges.extend((0..d).map(|b| Edge::new(b, dh + b, extra, Sign::Plus)));
    edges.extend((0..dh).map(|f| Edge::new(d + f, f, extra, Sign::Plus)));

    let mirror = |s: &str| format!("{s}'");
    let bosons = g
        .bosons()
        .iter()
        .map(|v| v.label.clone())
        .chain(g.fermions().iter().map(|v| mirror(&v.label)))
        .collect();
    let fermions = g
        .fermions()
        .iter()
        .map(|v| v.label.clone())
        .chain(g.bosons().iter().map(|v| mirror(&v.label)))
        .collect();
    Ok(ValiseGraph::new(
        format!("lift({})", g.name()),
        g.n_colors() + 1,
        bosons,
        fermions,
        edges,
    ))
}

/// The tesseract with bosons 0000 and 1111 (and their edges) removed.
pub fn rd_from_tesseract_deletion() -> ValiseGraph {
    let tesseract = hypercube(4).expect("n = 4");
    let (codes, _) = hypercube_codes(4);
    let removed = |b: usize| codes[b] == 0 || codes[b] == 0b1111;
    let mut remap = vec![usize::MAX; codes.len()];
    let mut next = 0;
    for (b, slot) in remap.iter_mut().enumerate() {
        if !removed(b) {
            *slot = next;
            next += 1;
        }
    }
    let edges = tesseract
        .edges()
        .iter()
        .filter(|e| !removed(e.boson))
        .map(|e| Edge::new(remap[e.boson], e.fermion, e.color, e.sign))
        .collect();
    ValiseGraph::new(
        "rd-from-tesseract",
        4,
        tesseract
            .bosons()
            .iter()
            .filter(|v| !removed(v.id))
            .map(|v| v.label.clone())
            .collect(),
        tesseract.fermions().iter().map(|v| v.label.clone()).collect(),
        edges,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rd_shape() {
        let rd = rhombic_dodecahedron();
        assert_eq!(
            (rd.boson_count(), rd.fermion_count(), rd.n_colors(), rd.edge_count()),
            (6, 8, 4, 24)
        );
        let l3 = &rd.to_matrices().unwrap()[2];
        assert_eq!(l3.get(1, 1), -1);
    }

    #[test]
    fn ri_shape() {
        let ri = rhombic_icosahedron();
        assert_eq!(
            (ri.boson_count(), ri.fermion_count(), ri.n_colors(), ri.edge_count()),
            (11, 11, 5, 40)
        );
    }

    #[test]
    fn hypercube_counts() {
        for n in 1..=6 {
            let g = hypercube(n).unwrap();
            assert_eq!(g.boson_count(), 1 << (n - 1));
            assert_eq!(g.fermion_count(), 1 << (n - 1));
            assert_eq!(g.edge_count(), n << (n - 1));
            assert!(g.validate().is_empty());
        }
        assert_eq!(hypercube(0), Err(CatalogError::ZeroDimension));
        assert!(matches!(hypercube(21), Err(CatalogError::TooLarge(21))));
    }

    #[test]
    fn lift_counts() {
        let l = lift(&rhombic_dodecahedron()).unwrap();
        assert_eq!(
            (l.boson_count(), l.fermion_count(), l.n_colors(), l.edge_count()),
            (14, 14, 5, 62)
        );
        assert!(l.validate().is_empty());
    }

    #[test]
    fn lift_of_single_edge_is_a_square() {
        let one = hypercube(1).unwrap();
        let l = lift(&one).unwrap();
        assert_eq!((l.vertex_count(), l.n_colors(), l.edge_count()), (4, 2, 4));
        let (_, comps) = l.components();
        assert_eq!(comps, 1);
    }

    #[test]
    fn tesseract_deletion_counts() {
        let g = rd_from_tesseract_deletion();
        assert_eq!((g.boson_count(), g.fermion_count(), g.edge_count()), (6, 8, 24));
        assert!(g.validate().is_empty());
    }

    #[test]
    fn ids_round_trip_through_text() {
        for id in [
            TopologyId::BowTie,
            TopologyId::Diamond,
            TopologyId::Hypercube(5),
            TopologyId::RhombicDodecahedron,
            TopologyId::RhombicIcosahedron,
            TopologyId::LiftedRD,
            TopologyId::TesseractDeletion,
        ] {
            assert_eq!(id.to_string().parse::<TopologyId>().unwrap(), id);
            assert!(id.build().unwrap().validate().is_empty());
        }
        assert_eq!("cube".parse::<TopologyId>().unwrap(), TopologyId::Hypercube(3));
        assert!("dodecahedron".parse::<TopologyId>().is_err());
    }
}
