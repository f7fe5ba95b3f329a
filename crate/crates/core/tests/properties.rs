mod common;

use common::*;
use cremona::invariants::{class_flip, hilbert_burch_hp, DivisorClass};
use cremona::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn bilinear_identity_on_random_matrices(seed in any::<u64>(), n in 1usize..5, extra in 0usize..3) {
        let f = fp(101);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_matrix(&f, n + extra, n, &mut rng);
        prop_assert!(bilinear_holds(&a, &mut rng));
    }

    #[test]
    fn flip_classes_recover_the_source(d1 in 1u64..=20, d2 in 1u64..=20) {
        let fwd = class_flip(d1, d2);
        let back = class_flip(d2, d1);
        let in_first = |c: DivisorClass| c.a * fwd.h2 + c.b * fwd.e2;
        prop_assert_eq!(in_first(back.h2), DivisorClass::H1);
        prop_assert_eq!(in_first(back.e2), DivisorClass::E1);
    }
}

#[test]
fn fiber_rank_duality_segre_f3() {
    let f = fp(3);
    let rows = vec![vec!["x0", "x3"], vec!["x1", "x4"], vec!["x2", "x5"]];
    fiber_rank_duality(&PolyMatrix::parse(&f, 6, &rows).unwrap()).unwrap();
}

#[test]
fn fiber_rank_duality_random_f3_f5() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for p in [3, 5] {
        let f = fp(p);
        fiber_rank_duality(&random_matrix(&f, 4, 3, &mut rng)).unwrap();
    }
    fiber_rank_duality(&random_matrix(&fp(3), 4, 4, &mut rng)).unwrap();
}

#[test]
fn groebner_s_pairs_reduce_to_zero() {
    for (name, ideal) in regression_ideals() {
        let gb = ideal.groebner(GbLimits::default()).unwrap();
        assert!(gb.verify_s_pairs(), "{name}");
        assert!(gb.is_reduced(), "{name}");
        assert!(ideal.gens().iter().all(|g| gb.contains(g)), "{name}");
    }
}

#[test]
fn hilbert_data_is_coordinate_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for (name, ideal) in regression_ideals() {
        let moved = ideal.substitute(&random_coordinates(ideal.field(), ideal.nvars(), &mut rng)).unwrap();
        let h0 = ideal.groebner(GbLimits::default()).unwrap().hilbert_data().unwrap();
        let h1 = moved.groebner(GbLimits::default()).unwrap().hilbert_data().unwrap();
        assert_eq!(h0, h1, "{name}");
    }
}

#[test]
fn hilbert_burch_matches_groebner() {
    let f = fp(101);
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for (m, n) in [(3, 2), (4, 3), (4, 4), (5, 2), (5, 4), (6, 2)] {
        let map = DetMap::build(random_matrix(&f, m, n, &mut rng)).unwrap();
        let gb = map.base_ideal().groebner(GbLimits::default()).unwrap();
        assert_eq!(gb.hilbert_data().unwrap(), hilbert_burch_hp(m, n).unwrap(), "({m},{n})");
    }
}
