mod common;

use std::collections::BTreeSet;

use adinkra::canon::{canonical_form, is_isomorphic, signed_gauge_isomorphic};
use adinkra::catalog::{
    diamond, hypercube, lift, rd_from_tesseract_deletion, rhombic_dodecahedron,
    rhombic_icosahedron,
};
use adinkra::dashing::{odd_quad_check, DashingError};
use adinkra::garden::residual;
use adinkra::io::to_json;
use adinkra::{
    garden_check, run_search, search_dashings, ColorIndex, DashingAssignment, SearchOptions,
    SearchSpec, Side,
};
use rand::rngs::StdRng;
use rand::SeedableRng;

use common::*;

fn color(n: usize) -> ColorIndex {
    ColorIndex::from_number(n).unwrap()
}

#[test]
fn graph_fixtures_match_catalog_bytes() {
    let dir = adinkra::fixtures::default_fixture_dir();
    for (file, g) in [("rd.json", rhombic_dodecahedron()), ("ri.json", rhombic_icosahedron())] {
        let on_disk = std::fs::read_to_string(dir.join(file)).unwrap();
        assert_eq!(on_disk, to_json(&g), "{file}");
    }
}

#[test]
fn ri_off_diagonal_residual_entry() {
    let mats = rhombic_icosahedron().to_matrices().unwrap();
    let r = residual(&mats, Side::Left, 0, 1).unwrap();
    assert_eq!(r.get(2, 5), -1);
    let report = garden_check(&mats).unwrap();
    assert!(report
        .violations
        .iter()
        .any(|v| v.side == Side::Left && v.i == color(1) && v.j == color(2)
            && (v.row, v.col, v.value) == (2, 5, -1)));
}

#[test]
fn rd_fermion_side_violation() {
    let report = garden_check(&rhombic_dodecahedron().to_matrices().unwrap()).unwrap();
    assert!(report.left_ok);
    assert!(!report.right_ok);
    let first = report.violations[0];
    assert_eq!(
        (first.side, first.i, first.j, first.row + 1, first.col + 1, first.value),
        (Side::Right, color(1), color(1), 2, 2, -2)
    );
}

#[test]
fn lifted_cube_is_the_tesseract() {
    let lifted = lift(&hypercube(3).unwrap()).unwrap();
    let tesseract = hypercube(4).unwrap();
    assert!(is_isomorphic(&lifted, &tesseract));
    assert!(brute_force_isomorphic(&lift(&diamond()).unwrap(), &hypercube(3).unwrap()));
    let r = search_dashings(&lifted, &SearchOptions::default());
    assert!(matches!(r, Err(DashingError::BudgetExceeded { .. })) || r.unwrap().feasible);
}

#[test]
fn tesseract_deletion_is_the_rhombic_dodecahedron() {
    let deleted = rd_from_tesseract_deletion();
    let rd = rhombic_dodecahedron();
    assert!(is_isomorphic(&deleted, &rd));
    assert!(signed_gauge_isomorphic(&deleted, &rd).unwrap());
}

#[test]
fn raw_dashing_counts_match_gauge_reduced_counts() {
    let opts = SearchOptions {
        exhaustive: true,
        ..SearchOptions::default()
    };
    for n in [2, 3] {
        let cube = hypercube(n).unwrap();
        let r = search_dashings(&cube, &opts).unwrap();
        assert!(r.feasible);
        assert_eq!(r.count_total, Some(u128::from(raw_garden_count(&cube))), "n = {n}");
    }
}

#[test]
fn odd_quads_iff_garden_exhaustively() {
    for n in [2, 3] {
        let cube = hypercube(n).unwrap();
        let e = cube.edge_count();
        for mask in 0u64..1 << e {
            let g = cube.with_signs(&mask_signs(mask, e));
            let quads = odd_quad_check(&g, &DashingAssignment::of(&g)).unwrap().ok;
            let garden = garden_check(&g.to_matrices().unwrap()).unwrap().ok;
            assert_eq!(quads, garden, "n = {n}, mask = {mask:#x}");
        }
    }
}

#[test]
fn canonical_form_agrees_with_brute_force() {
    let mut rng = StdRng::seed_from_u64(7);
    for round in 0..400 {
        let d = 1 + round % 4;
        let n = 1 + (round / 4) % if d == 4 { 2 } else { 3 };
        let density = [0.5, 0.8, 1.0][round % 3];
        let g = random_graph(&mut rng, d, d, n, density);
        let h = if round % 2 == 0 {
            random_relabel(&mut rng, &g)
        } else {
            random_graph(&mut rng, d, d, n, density)
        };
        assert_eq!(
            is_isomorphic(&g, &h),
            brute_force_isomorphic(&g, &h),
            "round {round}:\n{}\n{}",
            to_json(&g),
            to_json(&h)
        );
    }
}

fn solution_keys(d: usize, n: usize, prune: bool) -> BTreeSet<Vec<u32>> {
    let mut spec = SearchSpec::new(d, n);
    spec.prune = prune;
    spec.allow_disconnected = true;
    run_search(&spec)
        .unwrap()
        .solutions
        .into_iter()
        .map(|s| s.key.as_slice().to_vec())
        .collect()
}

#[test]
fn pruning_loses_no_solutions() {
    for d in 1..=3 {
        for n in 1..=3 {
            assert_eq!(solution_keys(d, n, true), solution_keys(d, n, false), "d={d} n={n}");
        }
    }
}

#[test]
fn search_finds_the_small_hypercubes() {
    let two = run_search(&SearchSpec::new(2, 2)).unwrap();
    assert_eq!(two.solutions.len(), 1);
    assert_eq!(two.solutions[0].key, canonical_form(&diamond()));
    let four = run_search(&SearchSpec::new(4, 3)).unwrap();
    assert_eq!(four.solutions.len(), 1);
    assert_eq!(four.solutions[0].hypercube, Some(3));
}

#[test]
fn results_do_not_depend_on_worker_count() {
    let run = |workers| {
        let mut spec = SearchSpec::new(4, 3);
        spec.prune = false;
        spec.allow_disconnected = true;
        spec.workers = Some(workers);
        serde_json::to_string(&run_search(&spec).unwrap()).unwrap()
    };
    assert_eq!(run(1), run(4));

    let cube = hypercube(4).unwrap();
    let dash = |workers| {
        let opts = SearchOptions {
            exhaustive: true,
            workers: Some(workers),
            ..SearchOptions::default()
        };
        search_dashings(&cube, &opts).unwrap()
    };
    assert_eq!(dash(1), dash(3));
}
