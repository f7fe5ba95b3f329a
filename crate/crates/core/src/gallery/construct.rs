//! Cones over the Segre threefold and the residual constructions on them.

use rand::Rng;

use crate::budget::Budget;
use crate::detmap::{degree_monomials, smoothness_certificate, SmoothnessVerdict};
use crate::error::{Error, Result};
use crate::field::{Field, Fp};
use crate::groebner::{ideal_quotient, GbLimits, Ideal};
use crate::matrix::Matrix;
use crate::monomial::Monomial;
use crate::poly::Poly;
use crate::upoly;

/// Reseeds allowed to the retry-until-smooth loops.
pub const MAX_RESEEDS: usize = 50;

pub fn random_linear_form<R: Rng>(field: &Fp, nvars: usize, rng: &mut R) -> Poly<Fp> {
    let c: Vec<u32> = (0..nvars).map(|_| rng.gen_range(0..field.p())).collect();
    Poly::linear(field, &c)
}

/// The 2x2 minors `x_i x_{j+3} - x_j x_{i+3}` of `[[x0,x1,x2],[x3,x4,x5]]`,
/// in the order `(0,1), (0,2), (1,2)`.
pub fn segre_minors(field: &Fp, nvars: usize) -> Vec<Poly<Fp>> {
    let x = |i| Poly::var(field, nvars, i);
    [(0, 1), (0, 2), (1, 2)].iter().map(|&(i, j)| x(i).mul(&x(j + 3)).sub(&x(j).mul(&x(i + 3)))).collect()
}

/// The Segre threefold in `P^5` (ambient 5), or the cone over it with vertex
/// a point (ambient 6) or a line (ambient 7) spanned by the extra coordinates.
pub fn segre_cone(field: &Fp, ambient: usize) -> Result<Ideal<Fp>> {
    if !(5..=7).contains(&ambient) {
        return Err(Error::Shape(format!("no Segre cone in P^{ambient}")));
    }
    Ideal::new(field, ambient + 1, segre_minors(field, ambient + 1))
}

/// Linear forms `t x_i - s x_{i+3}` cutting the ruling space over `(s:t)`.
pub fn ruling_forms(field: &Fp, nvars: usize, s: u32, t: u32) -> Vec<Poly<Fp>> {
    (0..3).map(|i| Poly::var(field, nvars, i).scale(&t).sub(&Poly::var(field, nvars, i + 3).scale(&s))).collect()
}

/// `(I_cone + q) : I_R` for a quadric `q` through the ruling space `R`.
pub fn residual_divisor(cone: &Ideal<Fp>, q: &Poly<Fp>, ruling: &Ideal<Fp>, limits: GbLimits) -> Result<Ideal<Fp>> {
    if cone.groebner(limits)?.contains(q) {
        return Err(Error::ConstructionFailed("the quadric contains the whole cone".into()));
    }
    ideal_quotient(&cone.with_gens([q.clone()]), ruling, limits)
}

/// A random divisor of type (1,2) on a Segre cone.
pub fn random_divisor12<R: Rng>(cone: &Ideal<Fp>, rng: &mut R, limits: GbLimits) -> Result<Ideal<Fp>> {
    let f = *cone.field();
    let n = cone.nvars();
    let (s, t) = loop {
        let st = (rng.gen_range(0..f.p()), rng.gen_range(0..f.p()));
        if st != (0, 0) {
            break st;
        }
    };
    let ruling = ruling_forms(&f, n, s, t);
    let q = ruling.iter().fold(Poly::zero(&f, n), |acc, l| acc.add(&random_linear_form(&f, n, rng).mul(l)));
    residual_divisor(cone, &q, &Ideal::new(&f, n, ruling)?, limits)
}

/// Complete intersection of two random (1,2) divisors on a Segre cone;
/// fails unless it has codimension 2 in the cone and degree 8.
pub fn divisor12_complete_intersection<R: Rng>(cone: &Ideal<Fp>, rng: &mut R, limits: GbLimits) -> Result<Ideal<Fp>> {
    let d1 = random_divisor12(cone, rng, limits)?;
    let d2 = random_divisor12(cone, rng, limits)?;
    let x = d1.sum(&d2)?;
    let h_cone = cone.groebner(limits)?.hilbert_data()?;
    let gb = x.groebner(limits)?;
    let h = gb.hilbert_data()?;
    if h.projective_dimension != h_cone.projective_dimension - 2 || h.degree != 8 {
        return Err(Error::ConstructionFailed(format!(
            "residual intersection has dimension {} and degree {}",
            h.projective_dimension, h.degree
        )));
    }
    Ok(gb.ideal())
}

/// Basis of the degree-`d` part `I_d`, in reduced echelon form.
pub fn degree_basis(ideal: &Ideal<Fp>, d: u32, limits: GbLimits) -> Result<Vec<Poly<Fp>>> {
    let f = *ideal.field();
    let n = ideal.nvars();
    let gb = ideal.groebner(limits)?;
    let mut products = Vec::new();
    for g in gb.polys() {
        let Some(e) = g.degree() else { continue };
        if e > d {
            continue;
        }
        for m in degree_monomials(n, d - e) {
            products.push(g.mul_term(&m, &f.one()));
        }
    }
    span_basis(&f, n, d, &products)
}

fn span_basis(f: &Fp, n: usize, d: u32, polys: &[Poly<Fp>]) -> Result<Vec<Poly<Fp>>> {
    if polys.is_empty() {
        return Ok(Vec::new());
    }
    let monos: Vec<Monomial> = degree_monomials(n, d);
    let rows = polys.iter().map(|p| monos.iter().map(|m| p.coefficient(m)).collect()).collect();
    let (r, pivots) = Matrix::from_rows(f, rows)?.rref();
    Ok((0..pivots.len()).map(|i| Poly::from_terms(f, n, monos.iter().zip(r.row(i)).map(|(m, c)| (*m, *c)))).collect())
}

/// Members of `cands` extending `base` to a basis of their joint span.
fn extend_independent(f: &Fp, n: usize, d: u32, base: &[Poly<Fp>], cands: &[Poly<Fp>]) -> Result<Vec<Poly<Fp>>> {
    let mut cur = base.to_vec();
    let mut rank = span_basis(f, n, d, &cur)?.len();
    let mut out = Vec::new();
    for c in cands {
        cur.push(c.clone());
        let r = span_basis(f, n, d, &cur)?.len();
        if r > rank {
            rank = r;
            out.push(c.clone());
        } else {
            cur.pop();
        }
    }
    Ok(out)
}

/// The quintic del Pezzo surface residual to the plane `x0 = x1 = x2 = 0`
/// in a quadric section of the Segre threefold.
#[derive(Clone, Debug)]
pub struct DelPezzo {
    /// `Q0, Q1, Q2` (Segre minors), `Q3` (through the plane) and one more quadric.
    pub quadrics: Vec<Poly<Fp>>,
    pub ideal: Ideal<Fp>,
    pub plane: Ideal<Fp>,
}

pub fn del_pezzo_quintic<R: Rng>(field: &Fp, rng: &mut R, limits: GbLimits) -> Result<DelPezzo> {
    let n = 6;
    let plane = Ideal::coordinate(field, n, &[0, 1, 2]);
    let q3 = (0..3)
        .fold(Poly::zero(field, n), |acc, i| acc.add(&random_linear_form(field, n, rng).mul(&Poly::var(field, n, i))));
    let mut quadrics = segre_minors(field, n);
    quadrics.push(q3.clone());
    let segre = Ideal::new(field, n, segre_minors(field, n))?;
    let residual = residual_divisor(&segre, &q3, &plane, limits)?;
    let basis = degree_basis(&residual, 2, limits)?;
    let extra = extend_independent(field, n, 2, &quadrics, &basis)?;
    if extra.len() != 1 {
        return Err(Error::ConstructionFailed(format!("residual has {} quadrics", 4 + extra.len())));
    }
    quadrics.extend(extra);
    let ideal = Ideal::new(field, n, quadrics.clone())?;
    let gb = ideal.groebner(limits)?;
    if !residual.gens().iter().all(|g| gb.contains(g)) {
        return Err(Error::ConstructionFailed("residual is not generated by quadrics".into()));
    }
    let h = gb.hilbert_data()?;
    if h.projective_dimension != 2 || h.degree != 5 {
        return Err(Error::ConstructionFailed(format!(
            "residual has dimension {} and degree {}",
            h.projective_dimension, h.degree
        )));
    }
    Ok(DelPezzo { quadrics, ideal, plane })
}

/// `l0 Q0 + .. + l3 Q3`.
pub fn fano_cubic(quadrics: &[Poly<Fp>], l: &[Poly<Fp>]) -> Result<Poly<Fp>> {
    if l.len() != 4 || quadrics.len() < 4 {
        return Err(Error::Shape("need four linear forms and at least four quadrics".into()));
    }
    let y = l
        .iter()
        .zip(quadrics)
        .fold(Poly::zero(quadrics[0].field(), quadrics[0].nvars()), |acc, (a, q)| acc.add(&a.mul(q)));
    if y.is_zero() {
        return Err(Error::ConstructionFailed("the cubic form vanishes identically".into()));
    }
    Ok(y)
}

/// Random cubic `l0 Q0 + .. + l3 Q3`, redrawn until certified smooth.
pub fn smooth_fano_cubic<R: Rng>(dp: &DelPezzo, rng: &mut R, budget: &Budget) -> Result<(Poly<Fp>, usize)> {
    let f = *dp.ideal.field();
    for attempt in 1..=MAX_RESEEDS {
        let l: Vec<Poly<Fp>> = (0..4).map(|_| random_linear_form(&f, 6, rng)).collect();
        let Ok(y) = fano_cubic(&dp.quadrics, &l) else { continue };
        let ideal = Ideal::new(&f, 6, vec![y.clone()])?;
        match smoothness_certificate(&ideal, 1, rng, budget) {
            SmoothnessVerdict::Smooth => return Ok((y, attempt)),
            SmoothnessVerdict::Unknown(why) => return Err(Error::BudgetExceeded(why)),
            SmoothnessVerdict::SingularAt { .. } => {}
        }
    }
    Err(Error::ConstructionFailed(format!("no smooth cubic in {MAX_RESEEDS} draws")))
}

/// Number of common zeros in `P^1`, with multiplicity, of binary forms in
/// two variables; `None` when all forms vanish.
pub fn binary_common_roots(forms: &[Poly<Fp>]) -> Option<usize> {
    let f = *forms.first()?.field();
    let mut g: Option<Vec<u32>> = None;
    let mut at_infinity = usize::MAX;
    for form in forms.iter().filter(|p| !p.is_zero()) {
        let d = form.degree().unwrap() as usize;
        let mut dense = vec![0u32; d + 1];
        for (m, c) in form.terms() {
            dense[m.exponent(0) as usize] = *c;
        }
        let deg_s = upoly::degree(&f, &dense).unwrap();
        at_infinity = at_infinity.min(d - deg_s);
        g = Some(match g {
            None => upoly::monic(&f, &dense),
            Some(h) => upoly::gcd(&f, &h, &dense),
        });
    }
    g.map(|h| upoly::degree(&f, &h).unwrap_or(0) + at_infinity)
}

/// Planes of the ruling `x = (s u, t u)` of the Segre threefold inside a
/// cubic hypersurface.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RulingCount {
    /// With multiplicity over the algebraic closure.
    pub count: usize,
    /// Every plane of the ruling lies on the cubic.
    pub degenerate: bool,
}

pub fn count_ruling_planes(y: &Poly<Fp>) -> Result<RulingCount> {
    if y.nvars() != 6 {
        return Err(Error::Arity { expected: 6, got: y.nvars() });
    }
    let f = *y.field();
    let d = y.degree().unwrap_or(0) as usize;
    // variables s, t, u0, u1, u2
    let v = |i| Poly::var(&f, 5, i);
    let images: Vec<Poly<Fp>> = (0..6).map(|k| v(k / 3).mul(&v(2 + k % 3))).collect();
    let sub = y.substitute(&images)?;
    let mut groups: Vec<(Vec<u32>, Vec<(Monomial, u32)>)> = Vec::new();
    for (m, c) in sub.terms() {
        let key = m.exponents(5)[2..].to_vec();
        let st = Monomial::from_exponents(&[m.exponent(0), m.exponent(1)]);
        match groups.iter_mut().find(|(k, _)| *k == key) {
            Some((_, terms)) => terms.push((st, *c)),
            None => groups.push((key, vec![(st, *c)])),
        }
    }
    let forms: Vec<Poly<Fp>> = groups.into_iter().map(|(_, t)| Poly::from_terms(&f, 2, t)).collect();
    Ok(match binary_common_roots(&forms) {
        Some(count) => RulingCount { count, degenerate: false },
        None => RulingCount { count: d, degenerate: true },
    })
}
