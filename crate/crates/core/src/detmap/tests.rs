use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::budget::Budget;
use crate::field::Fp;
use crate::groebner::GbLimits;
use crate::points::random_point;
use crate::poly::parse_poly;

fn fp(p: u64) -> Fp {
    Fp::new(p).unwrap()
}

fn matrix(f: &Fp, nvars: usize, rows: &[&[&str]]) -> PolyMatrix<Fp> {
    let rows: Vec<Vec<&str>> = rows.iter().map(|r| r.to_vec()).collect();
    PolyMatrix::parse(f, nvars, &rows).unwrap()
}

fn segre(f: &Fp) -> DetMap {
    DetMap::build(matrix(f, 6, &[&["x0", "x3"], &["x1", "x4"], &["x2", "x5"]])).unwrap()
}

fn todd_room(f: &Fp) -> DetMap {
    DetMap::build(matrix(
        f,
        5,
        &[
            &["-2x1+x0", "-2x2+x0", "2x0", "-x1-x4"],
            &["x3+x0", "-x1+x2", "x1-2x3", "2x2-x3"],
            &["-x1-x3", "-x3+2x4", "-2x4+x0", "x1-x0"],
            &["-2x1+x4", "-x2-x0", "x2+x3", "x2+x4"],
            &["x3", "x4", "x3", "x4"],
        ],
    ))
    .unwrap()
}

fn pt(f: &Fp, c: &[i64]) -> ProjPoint<Fp> {
    ProjPoint::from_i64(f, c).unwrap()
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[test]
fn segre_flip_matrix() {
    let f = fp(101);
    let map = segre(&f);
    let expected = matrix(&f, 3, &[&["x0", "x1", "x2", "0", "0", "0"], &["0", "0", "0", "x0", "x1", "x2"]]);
    assert_eq!(map.b().entries(), expected.entries());
    assert_eq!(map.minors()[0].to_string(), "-x2*x4 + x1*x5");
}

#[test]
fn smallest_shape() {
    let f = fp(7);
    let map = DetMap::build(matrix(&f, 2, &[&["x0"], &["x1"]])).unwrap();
    assert_eq!(map.b().entries(), matrix(&f, 2, &[&["x0", "x1"]]).entries());
    assert_eq!(map.minors(), &[Poly::var(&f, 2, 1), Poly::var(&f, 2, 0).neg()][..]);
    assert!(map.check_identity().is_ok());
}

#[test]
fn shape_errors() {
    let f = fp(7);
    assert!(matches!(DetMap::build(matrix(&f, 3, &[&["x0", "x1"]])), Err(Error::Shape(_))));
    assert!(matches!(DetMap::build(matrix(&f, 2, &[&["x0^2"], &["x1"]])), Err(Error::Shape(_))));
    // three rows, two columns, but only two variables
    assert!(matches!(
        DetMap::build(matrix(&f, 2, &[&["x0", "x1"], &["x1", "x0"], &["x0", "x0"]])),
        Err(Error::Shape(_))
    ));
}

#[test]
fn todd_room_flip_matches_printed_matrix() {
    // the printed matrix lists the columns in the order x1, x2, x3, x4, x0
    let f = fp(101);
    let map = todd_room(&f);
    let printed = matrix(
        &f,
        5,
        &[
            &["-2x0-x2-2x3", "0", "x1-x2+x4", "x3", "x0+x1"],
            &["-x1", "-2x0+x1-x3", "-x2", "2x2+x4", "x0-x3"],
            &["x1", "x3", "-2x1+x3+x4", "-2x2", "2x0+x2"],
            &["-x0+x2", "2x1+x3", "-x1", "-x0+x3+x4", "-x2"],
        ],
    );
    for j in 0..4 {
        for k in 0..5 {
            assert_eq!(map.b().get(j, (k + 1) % 5), printed.get(j, k));
        }
    }
}

#[test]
fn eval_examples() {
    let f = fp(101);
    let s = segre(&f);
    assert_eq!(s.eval(&pt(&f, &[1, 0, 0, 0, 1, 0])).unwrap(), pt(&f, &[0, 0, 1]));
    assert_eq!(s.eval(&pt(&f, &[1, 0, 0, 2, 0, 0])), Err(Error::BasePoint));
    let t = todd_room(&f);
    let mut r = rng(5);
    for _ in 0..10 {
        let mut c = random_point(&f, 4, &mut r).into_coords();
        c[3] = 0;
        c[4] = 0;
        let Ok(p) = ProjPoint::new(&f, c) else { continue };
        if let Ok(y) = t.eval(&p) {
            assert_eq!(y, pt(&f, &[0, 0, 0, 0, 1]));
        }
    }
}

#[test]
fn self_incidence() {
    let f = fp(101);
    let t = todd_room(&f);
    let mut r = rng(9);
    for _ in 0..20 {
        let p = random_point(&f, 4, &mut r);
        let y = t.eval(&p).unwrap();
        assert!(t.b_at(y.coords()).unwrap().mul_vec(p.coords()).unwrap().iter().all(|&c| c == 0));
    }
}

#[test]
fn segre_fiber() {
    let f = fp(101);
    let rep = fiber(&segre(&f), &pt(&f, &[1, 0, 0]), GbLimits::default()).unwrap();
    assert_eq!(rep.rank, 2);
    assert_eq!(rep.dim(), 3);
    assert_eq!(rep.subspace.equation_strings(), vec!["x0", "x3"]);
    assert!(rep.is_hypersurface_of_degree(2));
}

#[test]
fn todd_room_special_fiber() {
    let f = fp(101);
    let t = todd_room(&f);
    let rep = fiber(&t, &pt(&f, &[0, 0, 0, 0, 1]), GbLimits::default()).unwrap();
    assert_eq!(rep.subspace, LinearSubspace::coordinate(&f, 4, &[3, 4]));
    assert!(rep.is_hypersurface_of_degree(4));
    let verdict = smoothness_certificate(&rep.intersection, 1, &mut rng(1), &Budget::default());
    assert!(verdict.is_smooth());
    // a general fiber is the point itself
    let p = random_point(&f, 4, &mut rng(2));
    let rep = fiber(&t, &t.eval(&p).unwrap(), GbLimits::default()).unwrap();
    assert_eq!(rep.dim(), 0);
    assert!(rep.subspace.contains(p.coords()));
}

#[test]
fn todd_room_stratum_is_one_point() {
    let f = fp(101);
    let s = rank_stratum(&todd_room(&f), 2, &Budget::default()).unwrap();
    assert_eq!(s.rational_points(), vec![vec![0, 0, 0, 0, 1]]);
    assert_eq!(s.points.as_ref().unwrap().len(), 1);
    assert_eq!(s.counts, vec![(1, 1), (2, 1), (3, 1)]);
}

#[test]
fn smoothness_examples() {
    let f = fp(101);
    let b = Budget::default();
    assert!(smoothness_certificate(&todd_room(&f).base_ideal(), 2, &mut rng(1), &b).is_smooth());
    assert!(smoothness_certificate(&segre(&f).base_ideal(), 2, &mut rng(1), &b).is_smooth());
    let twin = DetMap::build(matrix(
        &f,
        5,
        &[&["x0", "x0", "x1"], &["x1", "x1", "x2"], &["x2", "x2", "x3"], &["x3", "x3", "x4"]],
    ))
    .unwrap();
    match smoothness_certificate(&twin.base_ideal(), 2, &mut rng(1), &b) {
        SmoothnessVerdict::SingularAt { field, point } => {
            assert_eq!(field.degree(), 1);
            assert_eq!(point.coords().len(), 5);
        }
        v => panic!("unexpected verdict {v:?}"),
    }
}

#[test]
fn linear_systems() {
    let f = fp(101);
    let b = Budget::default();
    let x = todd_room(&f).base_ideal();
    let d4 = linear_system_dim(&x, 2, 4, &mut rng(3), &b).unwrap();
    assert_eq!((d4.interpolation, d4.groebner), (5, Some(5)));
    let d3 = linear_system_dim(&x, 2, 3, &mut rng(4), &b).unwrap();
    assert_eq!((d3.interpolation, d3.groebner), (0, Some(0)));
    let h = Ideal::new(&f, 4, vec![parse_poly(&f, 4, "x0 + 3x2").unwrap()]).unwrap();
    let d1 = linear_system_dim(&h, 2, 1, &mut rng(5), &b).unwrap();
    assert_eq!((d1.interpolation, d1.groebner), (1, Some(1)));
    assert!(matches!(linear_system_dim_points(&[pt(&f, &[1, 0])], &f, 1), Err(Error::InsufficientPoints(_))));
}

#[test]
fn probes() {
    let f = fp(101);
    let t = todd_room(&f);
    let sys = t.system().unwrap();
    let pts: Vec<_> = (0..5).map(|i| random_point(&f, 4, &mut rng(i))).collect();
    assert_eq!(image_dim_estimate(&sys, None, &pts).unwrap(), 4);
    assert_eq!(fiber_dim_at(&sys, &pts[0]).unwrap(), 0);
    let constant =
        SystemMap::new(&f, 3, vec![parse_poly(&f, 3, "x0^2").unwrap(), parse_poly(&f, 3, "2x0^2").unwrap()]).unwrap();
    let pts: Vec<_> = (0..5).map(|i| pt(&f, &[1, i, 2 * i])).collect();
    assert_eq!(image_dim_estimate(&constant, None, &pts).unwrap(), 0);
    assert!(matches!(
        birationality_probe(&t, 10, &mut rng(7)).unwrap(),
        ProbeVerdict::BirationalEvidence { trials: 10, .. }
    ));
    assert!(matches!(birationality_probe(&segre(&f), 10, &mut rng(7)).unwrap(), ProbeVerdict::FiberDim { dim: 3, .. }));
    assert!(matches!(
        system_birationality_probe(&segre(&f).system().unwrap(), 10, &mut rng(7)).unwrap(),
        ProbeVerdict::FiberDim { dim: 3, .. }
    ));
}

#[test]
fn exceptional_points() {
    let f = fp(101);
    let t = todd_room(&f);
    assert!(exceptional_membership(&t, &pt(&f, &[1, 2, 5, 0, 0])).unwrap());
    let mut r = rng(11);
    let off = (0..100).filter(|_| !exceptional_membership(&t, &random_point(&f, 4, &mut r)).unwrap_or(true)).count();
    assert!(off >= 80, "{off}");
    let on_x = sample_points(&t.base_ideal(), 2, 1, &mut r, &Budget::default(), 200).unwrap();
    assert_eq!(exceptional_membership(&t, &on_x[0]), Err(Error::BasePoint));
    assert!(matches!(exceptional_membership(&segre(&f), &pt(&f, &[1, 0, 0, 0, 1, 0])), Err(Error::Shape(_))));
}
