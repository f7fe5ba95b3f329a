use super::zerodim::{closed_points, points_over_extension, AffineQuotient};
use super::*;
use crate::field::{FiniteField, Fp, Fq, Q};
use crate::points::enumerate_projective_points;
use crate::poly::parse_poly;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn fp(p: u64) -> Fp {
    Fp::new(p).unwrap()
}

fn ideal(f: &Fp, n: usize, gens: &[&str]) -> Ideal<Fp> {
    Ideal::new(f, n, gens.iter().map(|s| parse_poly(f, n, s).unwrap()).collect()).unwrap()
}

fn lim() -> GbLimits {
    GbLimits::default()
}

#[test]
fn principal_and_coordinate_ideals() {
    let f = fp(101);
    let gb = ideal(&f, 3, &["x0^2"]).groebner(lim()).unwrap();
    assert_eq!(gb.polys(), vec![parse_poly(&f, 3, "x0^2").unwrap()]);
    let gb = ideal(&f, 3, &["x0", "x1"]).groebner(lim()).unwrap();
    assert_eq!(gb.len(), 2);
    assert!(gb.verify_s_pairs());
    assert!(gb.is_reduced());
}

#[test]
fn twisted_cubic() {
    let f = fp(101);
    let i = ideal(&f, 4, &["x0*x2 - x1^2", "x0*x3 - x1*x2", "x1*x3 - x2^2"]);
    let gb = i.groebner(lim()).unwrap();
    assert_eq!(gb.len(), 3);
    assert!(gb.verify_s_pairs());
    let h = gb.hilbert_data().unwrap();
    assert_eq!((h.projective_dimension, h.degree, h.sectional_genus), (1, 3, Some(0)));
}

#[test]
fn twisted_cubic_degree_by_hyperplane_point_counts() {
    // the section by x0 - x1 + 2x2 - x3 = 0 has N1 + 2 N2 + 3 N3 = 3 points
    let f = fp(5);
    let gens = ["x0*x2 - x1^2", "x0*x3 - x1*x2", "x1*x3 - x2^2", "x0 - x1 + 2x2 - x3"];
    let count = |e: u32| -> usize {
        let fq = Fq::new(5, e).unwrap();
        let polys: Vec<_> = gens.iter().map(|s| parse_poly(&f, 4, s).unwrap().to_extension(&fq)).collect();
        enumerate_projective_points(&fq, 3, 10_000_000)
            .unwrap()
            .filter(|p| polys.iter().all(|g| fq.is_zero(&g.eval(p.coords()).unwrap())))
            .count()
    };
    let (c1, c2, c3) = (count(1), count(2), count(3));
    assert_eq!(c2 + c3 - c1, 3);
}

#[test]
fn emptiness() {
    let f = fp(101);
    assert!(ideal(&f, 3, &["x0", "x1", "x2"]).is_projectively_empty(lim()).unwrap());
    assert!(!ideal(&f, 3, &["x0"]).is_projectively_empty(lim()).unwrap());
    assert!(ideal(&f, 3, &["x0^2 - x1*x2", "x1^2", "x2^3 + x0*x1*x2"]).is_projectively_empty(lim()).unwrap());
}

#[test]
fn rational_coefficients_are_rejected() {
    let q = Q;
    let i = Ideal::new(&q, 2, vec![parse_poly(&q, 2, "x0 - x1").unwrap()]).unwrap();
    assert!(matches!(i.groebner(lim()), Err(Error::CharZeroUnsupported)));
}

#[test]
fn tiny_budget_is_reported() {
    let f = fp(101);
    let i = ideal(&f, 4, &["x0*x2 - x1^2", "x0*x3 - x1*x2", "x1*x3 - x2^2"]);
    let r = i.groebner(GbLimits { max_pairs: 1, max_degree: 30 });
    assert!(matches!(r, Err(Error::BudgetExceeded(_))));
    let r = i.groebner(GbLimits { max_pairs: 1000, max_degree: 2 });
    assert!(matches!(r, Err(Error::BudgetExceeded(_))));
}

#[test]
fn quotient_examples() {
    let f = fp(101);
    let i = ideal(&f, 3, &["x0*x1"]);
    let j = ideal(&f, 3, &["x0"]);
    let q = ideal_quotient(&i, &j, lim()).unwrap();
    assert_eq!(q.gens(), &[parse_poly(&f, 3, "x1").unwrap()][..]);
    let unit = ideal(&f, 3, &["1"]);
    let tc = ideal(&f, 4, &["x0*x2 - x1^2", "x0*x3 - x1*x2", "x1*x3 - x2^2"]);
    let unit4 = Ideal::new(&f, 4, vec![Poly::one(&f, 4)]).unwrap();
    let same = ideal_quotient(&tc, &unit4, lim()).unwrap();
    assert_eq!(same.gens(), &tc.groebner(lim()).unwrap().polys()[..]);
    assert!(ideal_quotient(&i, &unit, lim()).is_ok());
}

#[test]
fn intersection_of_coordinate_hyperplanes() {
    let f = fp(101);
    let a = ideal(&f, 3, &["x0"]);
    let b = ideal(&f, 3, &["x1"]);
    let c = intersect(&a, &b, lim()).unwrap();
    assert_eq!(c.groebner(lim()).unwrap().polys(), vec![parse_poly(&f, 3, "x0*x1").unwrap()]);
}

/// For a homogeneous ideal and grevlex, dividing each basis element by the
/// last variable once generates the quotient by that variable.
fn quotient_by_last_variable(i: &Ideal<Fp>) -> Ideal<Fp> {
    let f = *i.field();
    let n = i.nvars();
    let last = Poly::var(&f, n, n - 1);
    let gens = i.groebner(lim()).unwrap().polys().into_iter().map(|g| g.div_exact(&last).unwrap_or(g)).collect();
    Ideal::new(&f, n, gens).unwrap()
}

#[test]
fn quotient_agrees_with_grevlex_oracle() {
    let f = fp(101);
    let cases = [
        ideal(&f, 4, &["x0*x3 - x1*x2", "x3^2*x1 - x0^3", "x2*x3^2"]),
        ideal(&f, 4, &["x3*x0 - x3*x1", "x3^2 - x0*x2 + x1^2"]),
        ideal(&f, 5, &["x0*x4 - x1*x3", "x1*x4 - x2*x3", "x0*x4^2 - x2^2*x1"]),
    ];
    for i in &cases {
        let n = i.nvars();
        let via_tag = quotient_by_poly(i, &Poly::var(&f, n, n - 1), lim()).unwrap();
        let a = via_tag.groebner(lim()).unwrap();
        let b = quotient_by_last_variable(i).groebner(lim()).unwrap();
        assert_eq!(a.polys(), b.polys());
    }
}

#[test]
fn saturation_removes_embedded_origin() {
    let f = fp(101);
    // line x0 = 0 with an embedded component at the point x0 = x1 = 0
    let i = ideal(&f, 3, &["x0^2", "x0*x1"]);
    let s = saturate_by_poly(&i, &parse_poly(&f, 3, "x1").unwrap(), lim()).unwrap();
    assert_eq!(s.groebner(lim()).unwrap().polys(), vec![parse_poly(&f, 3, "x0").unwrap()]);
}

#[test]
fn minimal_generators_of_twisted_cubic() {
    let f = fp(101);
    let i = ideal(&f, 4, &["x0*x2 - x1^2", "x0*x3 - x1*x2", "x1*x3 - x2^2", "x0^2*x2 - x0*x1^2"]);
    assert_eq!(i.minimal_generators(lim()).unwrap().len(), 3);
}

#[test]
fn zero_dimensional_points_and_closed_points() {
    let f = fp(101);
    // a point of degree two (x0^2 = 2 x2^2, x1 = 0) plus the rational point (0:1:0)
    let i = ideal(&f, 3, &["x1*x0", "x1*x2", "x0^2 - 2x2^2"]);
    let h = i.groebner(lim()).unwrap().hilbert_data().unwrap();
    assert_eq!((h.projective_dimension, h.degree), (0, 3));
    let f1 = Fq::new(101, 1).unwrap();
    assert_eq!(points_over_extension(&i, &f1, lim(), 1_000_000).unwrap().len(), 1);
    let f2 = Fq::new(101, 2).unwrap();
    assert_eq!(points_over_extension(&i, &f2, lim(), 1_000_000).unwrap().len(), 3);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let cp = closed_points(&i, &mut rng, lim(), 5).unwrap();
    assert!(cp.reduced);
    assert_eq!(cp.by_degree, vec![(1, 1), (2, 1)]);
    assert_eq!(cp.count_over(2), 3);
}

#[test]
fn nonreduced_point_is_detected() {
    let f = fp(101);
    let i = ideal(&f, 3, &["x0^2", "x1"]);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let cp = closed_points(&i, &mut rng, lim(), 5).unwrap();
    assert_eq!(cp.length, 2);
    assert!(!cp.reduced);
    assert_eq!(cp.by_degree, vec![(1, 1)]);
}

#[test]
fn min_poly_of_coordinate() {
    let f = fp(101);
    let i = ideal(&f, 2, &["x0^2 - 3", "x1 - x0"]);
    let q = AffineQuotient::new(&i, lim()).unwrap();
    assert_eq!(q.dim(), 2);
    assert_eq!(q.min_poly(&parse_poly(&f, 2, "x1").unwrap()), vec![98, 0, 1]);
    let el = Fq::new(7, 2).unwrap();
    assert_eq!(el.size(), 49);
}
