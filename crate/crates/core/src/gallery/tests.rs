use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::groebner::GbLimits;
use crate::points::enumerate_projective_points;

fn fp(p: u64) -> Fp {
    Fp::new(p).unwrap()
}

fn cfg(p: u64) -> FieldCfg {
    FieldCfg::prime(p).unwrap()
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn poly(f: &Fp, n: usize, s: &str) -> Poly<Fp> {
    parse_poly(f, n, s).unwrap()
}

fn count_points(ideal: &Ideal<Fp>) -> usize {
    let f = *ideal.field();
    enumerate_projective_points(&f, ideal.nvars() - 1, u64::MAX)
        .unwrap()
        .filter(|p| ideal.gens().iter().all(|g| g.eval(p.coords()).unwrap() == 0))
        .count()
}

#[test]
fn segre_cones_count_points() {
    // P^1 x P^2 has (q+1)(q^2+q+1) points; a cone with vertex a point adds q per point plus the vertex.
    let f = fp(3);
    let q = 3;
    let base = (q + 1) * (q * q + q + 1);
    assert_eq!(count_points(&segre_cone(&f, 5).unwrap()), base);
    assert_eq!(count_points(&segre_cone(&f, 6).unwrap()), 1 + q * base);
    assert!(segre_cone(&f, 4).is_err());
}

#[test]
fn segre_cone_hilbert() {
    let f = fp(101);
    for (ambient, dim) in [(5, 3), (6, 4), (7, 5)] {
        let h = segre_cone(&f, ambient).unwrap().groebner(GbLimits::default()).unwrap().hilbert_data().unwrap();
        assert_eq!((h.projective_dimension, h.degree), (dim, 3));
    }
}

#[test]
fn residual_rejects_quadric_in_cone() {
    let f = fp(101);
    let cone = segre_cone(&f, 6).unwrap();
    let q = construct::segre_minors(&f, 7)[1].clone();
    let ruling = Ideal::new(&f, 7, construct::ruling_forms(&f, 7, 1, 0)).unwrap();
    let err = construct::residual_divisor(&cone, &q, &ruling, GbLimits::default()).unwrap_err();
    assert!(matches!(err, Error::ConstructionFailed(_)));
}

#[test]
fn del_pezzo_has_five_quadrics() {
    let f = fp(101);
    let dp = del_pezzo_quintic(&f, &mut rng(3), GbLimits::default()).unwrap();
    assert_eq!(dp.quadrics.len(), 5);
    assert!(dp.quadrics.iter().all(|q| q.degree() == Some(2)));
    let gb = dp.ideal.groebner(GbLimits::default()).unwrap();
    let h = gb.hilbert_data().unwrap();
    assert_eq!((h.projective_dimension, h.degree, h.sectional_genus), (2, 5, Some(1)));
}

#[test]
fn fano_cubic_rejects_zero_forms() {
    let f = fp(101);
    let dp = del_pezzo_quintic(&f, &mut rng(3), GbLimits::default()).unwrap();
    let zeros = vec![Poly::zero(&f, 6); 4];
    assert!(matches!(fano_cubic(&dp.quadrics, &zeros), Err(Error::ConstructionFailed(_))));
    assert!(matches!(fano_cubic(&dp.quadrics, &zeros[..3]), Err(Error::Shape(_))));
}

#[test]
fn binary_roots_from_known_factors() {
    let f = fp(101);
    let b = |s: &str| poly(&f, 2, s);
    // x0 = s, x1 = t; common factor (s - t) t
    let g = b("x0*x1 - x1^2");
    let f1 = g.mul(&b("x0 + 3x1"));
    let f2 = g.mul(&b("x0 - 5x1"));
    assert_eq!(construct::binary_common_roots(&[f1.clone(), f2.clone()]), Some(2));
    assert_eq!(construct::binary_common_roots(&[f1.mul(&b("x1")), f2.mul(&b("x1"))]), Some(3));
    assert_eq!(construct::binary_common_roots(&[b("x0"), b("x1")]), Some(0));
    assert_eq!(construct::binary_common_roots(&[Poly::zero(&f, 2)]), None);
}

#[test]
fn ruling_planes_on_cubics() {
    let f = fp(101);
    let x = |i| Poly::var(&f, 6, i);
    // In the Segre ideal: every plane of the ruling lies on it.
    let y = x(2).mul(&construct::segre_minors(&f, 6)[0]);
    assert_eq!(count_ruling_planes(&y).unwrap(), RulingCount { count: 3, degenerate: true });
    // x0 x1 x2 - x3 x4 x5 restricted to (s u, t u) is (s^3 - t^3) u0 u1 u2.
    let y = poly(&f, 6, "x0*x1*x2 - x3*x4*x5");
    assert_eq!(count_ruling_planes(&y).unwrap(), RulingCount { count: 3, degenerate: false });
    assert!(count_ruling_planes(&Poly::var(&f, 5, 0)).is_err());
}

#[test]
fn constructed_cubic_contains_a_ruling_plane() {
    let f = fp(101);
    let b = Budget::default();
    let mut r = rng(5);
    let dp = del_pezzo_quintic(&f, &mut r, b.gb).unwrap();
    let (y, attempts) = construct::smooth_fano_cubic(&dp, &mut r, &b).unwrap();
    assert!(attempts <= MAX_RESEEDS);
    let c = count_ruling_planes(&y).unwrap();
    assert!(!c.degenerate);
    assert!((1..=2).contains(&c.count), "{c:?}");
}

#[test]
fn json_round_trip() {
    let b = Budget::default();
    for id in EXAMPLE_IDS {
        let inst = build_example(id, &cfg(101), DEFAULT_SEED, &b).unwrap();
        let v = inst.to_json();
        let back = ExampleInstance::from_json(&v).unwrap();
        assert_eq!(back.to_json(), v, "{id}");
    }
}

#[test]
fn unknown_id() {
    assert!(matches!(build_example("nope", &cfg(101), 1, &Budget::default()), Err(Error::UnknownId(_))));
}

#[test]
fn bad_prime_moves_to_next_prime() {
    let inst = build_example("todd_room", &cfg(2), 1, &Budget::default()).unwrap();
    assert_eq!(inst.field.characteristic, 3);
    assert_eq!(inst.warnings.len(), 1);
    assert!(inst.warnings[0].starts_with("BadPrime"));
    let inst = build_example("segre_p5", &cfg(2), 1, &Budget::default()).unwrap();
    assert_eq!(inst.field.characteristic, 2);
    assert!(inst.warnings.is_empty());
}

#[test]
fn every_check_has_an_anchor() {
    for id in EXAMPLE_IDS {
        let inst = build_example(id, &cfg(101), DEFAULT_SEED, &Budget::default()).unwrap();
        for c in &inst.manifest.0 {
            assert!(!c.anchor.trim().is_empty(), "{id}/{}", c.name);
        }
    }
}

#[test]
fn todd_room_manifest_passes() {
    let inst = build_example("todd_room", &cfg(101), DEFAULT_SEED, &Budget::default()).unwrap();
    let r = verify_manifest(&inst, &VerifyOptions::default());
    assert!(r.pass, "{:?}", r.checks.iter().filter(|c| !c.pass).collect::<Vec<_>>());
    assert_eq!(r.exit_code(), 0);
}

#[test]
fn wrong_expectation_fails_exactly_one_check() {
    let mut inst = build_example("todd_room", &cfg(101), DEFAULT_SEED, &Budget::default()).unwrap();
    let i = inst.manifest.0.iter().position(|c| c.name == "h0_I4").unwrap();
    inst.manifest.0[i].expected = json!(6);
    let r = verify_manifest(&inst, &VerifyOptions::default());
    let failed: Vec<_> = r.checks.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect();
    assert_eq!(failed, ["h0_I4"]);
    assert_eq!(r.exit_code(), 1);
}

#[test]
fn starved_budget_reports_unknown() {
    let inst = build_example("todd_room", &cfg(101), DEFAULT_SEED, &Budget::default()).unwrap();
    let mut budget = Budget::default();
    budget.gb.max_pairs = 1;
    let r = verify_manifest(&inst, &VerifyOptions { budget, trials: None });
    assert!(r.has_unknown());
    assert!(r.checks.iter().filter(|c| !c.pass).all(|c| c.is_unknown()));
    assert_eq!(r.exit_code(), 2);
}

#[test]
fn default_matrix_manifest() {
    let f = fp(101);
    let rows: Vec<Vec<String>> = data::TODD_ROOM.iter().map(|r| r.iter().map(|s| s.to_string()).collect()).collect();
    let inst = ExampleInstance::from_matrix(PolyMatrix::parse(&f, 5, &rows).unwrap(), 1).unwrap();
    let r = verify_manifest(&inst, &VerifyOptions::default());
    assert_eq!(r.checks.len(), 4);
    assert!(r.pass);
}

#[test]
fn verification_is_deterministic() {
    let inst = build_example("bordiga_random", &cfg(101), 7, &Budget::default()).unwrap();
    let a = verify_manifest(&inst, &VerifyOptions::default()).without_timings();
    let b = verify_manifest(&inst, &VerifyOptions::default()).without_timings();
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
}
