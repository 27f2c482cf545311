mod common;

use adinkra::candidacy;
use adinkra::catalog::hypercube;
use adinkra::dashing::{gauge_flip, odd_quad_check};
use adinkra::garden::residual;
use adinkra::io::{from_json, to_json};
use adinkra::{garden_check, search_dashings, SearchOptions, Side, ValiseGraph};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

use common::*;

fn graph_params() -> impl Strategy<Value = (usize, usize, usize, f64, u64)> {
    (0usize..7, 0usize..7, 1usize..6, 0.0f64..=1.0, any::<u64>())
}

fn build((b, f, n, density, seed): (usize, usize, usize, f64, u64)) -> ValiseGraph {
    random_graph(&mut StdRng::seed_from_u64(seed), b, f, n, density)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn json_and_matrix_round_trip(p in graph_params()) {
        let g = build(p);
        prop_assert!(g.validate().is_empty());
        let text = to_json(&g);
        let parsed = from_json(&text).unwrap();
        prop_assert_eq!(&parsed, &g);
        prop_assert_eq!(to_json(&parsed), text);

        if g.boson_count() > 0 && g.fermion_count() > 0 {
            let mats = g.to_matrices().unwrap();
            let back = ValiseGraph::from_matrices("random", &mats).unwrap();
            prop_assert_eq!(back.to_matrices().unwrap(), mats);
            prop_assert_eq!(back.edge_count(), g.edge_count());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn candidacy_ignores_signs(p in graph_params(), seed in any::<u64>()) {
        let g = build(p);
        let mut rng = StdRng::seed_from_u64(seed);
        let flipped = g.with_signs(&random_signs(&mut rng, &g));
        prop_assert_eq!(candidacy(&g), candidacy(&flipped));
    }

    #[test]
    fn residual_is_symmetric_in_the_pair(p in graph_params()) {
        let g = build(p);
        prop_assume!(g.boson_count() > 0 && g.fermion_count() > 0);
        let mats = g.to_matrices().unwrap();
        for side in [Side::Left, Side::Right] {
            for i in 0..g.n_colors() {
                for j in 0..g.n_colors() {
                    prop_assert_eq!(
                        residual(&mats, side, i, j).unwrap(),
                        residual(&mats, side, j, i).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn signed_permutations_pass_both_sides_or_neither(
        d in 1usize..6, n in 1usize..5, seed in any::<u64>()
    ) {
        let g = random_full_graph(&mut StdRng::seed_from_u64(seed), d, n);
        let r = garden_check(&g.to_matrices().unwrap()).unwrap();
        prop_assert_eq!(r.left_ok, r.right_ok);
    }

    #[test]
    fn gauge_flips_preserve_the_garden_algebra(n in 1usize..5, seed in any::<u64>()) {
        let cube = hypercube(n).unwrap();
        let mut rng = StdRng::seed_from_u64(seed);
        let flips: Vec<bool> = (0..cube.vertex_count()).map(|_| rand::Rng::gen(&mut rng)).collect();
        let flipped = cube.with_signs(&gauge_flip(&cube, &cube.signs(), &flips));
        prop_assert!(garden_check(&flipped.to_matrices().unwrap()).unwrap().ok);
    }

    #[test]
    fn odd_quads_agree_with_garden_on_random_cube_dashings(n in 2usize..5, seed in any::<u64>()) {
        let cube = hypercube(n).unwrap();
        let signs = random_signs(&mut StdRng::seed_from_u64(seed), &cube);
        let g = cube.with_signs(&signs);
        let quads = odd_quad_check(&g, &adinkra::DashingAssignment::of(&g)).unwrap();
        prop_assert_eq!(quads.ok, garden_check(&g.to_matrices().unwrap()).unwrap().ok);
    }

    #[test]
    fn witnesses_are_genuine(d in 1usize..5, n in 1usize..4, seed in any::<u64>()) {
        let g = random_full_graph(&mut StdRng::seed_from_u64(seed), d, n);
        let r = search_dashings(&g, &SearchOptions::default()).unwrap();
        if let Some(w) = r.witness {
            let signed = g.with_signs(&w.signs);
            prop_assert!(garden_check(&signed.to_matrices().unwrap()).unwrap().ok);
        }
    }
}
