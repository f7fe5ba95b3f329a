//! Zero-dimensional schemes: standard-monomial quotients, minimal
//! polynomials, points over extension fields and closed-point degrees.

use rand::Rng;
use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::field::{Field, FiniteField, Fp, Fq};
use crate::matrix::Matrix;
use crate::monomial::Monomial;
use crate::points::ProjPoint;
use crate::poly::Poly;
use crate::upoly;

use super::{GbLimits, GroebnerBasis, Ideal};

/// `k[y]/J` for a zero-dimensional affine ideal `J`, with the standard
/// monomials as a basis.
pub struct AffineQuotient<F: Field> {
    gb: GroebnerBasis<F>,
    basis: Vec<Monomial>,
    index: FxHashMap<Monomial, usize>,
}

impl<F: Field> AffineQuotient<F> {
    pub fn new(ideal: &Ideal<F>, limits: GbLimits) -> Result<Self> {
        let gb = ideal.groebner(limits)?;
        Self::from_basis(gb)
    }

    pub fn from_basis(gb: GroebnerBasis<F>) -> Result<Self> {
        let n = gb.nvars();
        let lms = gb.leading_monomials();
        if gb.is_unit() {
            return Ok(AffineQuotient { gb, basis: Vec::new(), index: FxHashMap::default() });
        }
        for v in 0..n {
            if !lms.iter().any(|m| m.pure_power_var() == Some(v)) {
                return Err(Error::Range("affine ideal is not zero-dimensional".into()));
            }
        }
        let mut basis = vec![Monomial::one()];
        let mut index = FxHashMap::default();
        index.insert(Monomial::one(), 0);
        let mut frontier = vec![Monomial::one()];
        while let Some(m) = frontier.pop() {
            for v in 0..n {
                let next = m.mul(&Monomial::var(v));
                if index.contains_key(&next) || lms.iter().any(|l| l.divides(&next)) {
                    continue;
                }
                index.insert(next, basis.len());
                basis.push(next);
                frontier.push(next);
            }
        }
        Ok(AffineQuotient { gb, basis, index })
    }

    /// Vector-space dimension of the quotient (the affine degree).
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn groebner(&self) -> &GroebnerBasis<F> {
        &self.gb
    }

    pub fn standard_monomials(&self) -> &[Monomial] {
        &self.basis
    }

    fn coords(&self, nf: &Poly<F>) -> Vec<F::Elem> {
        let f = self.gb.field();
        let mut v = vec![f.zero(); self.basis.len()];
        for (m, c) in nf.terms() {
            v[self.index[m]] = c.clone();
        }
        v
    }

    /// Minimal polynomial of multiplication by `g`, low degree first, monic.
    pub fn min_poly(&self, g: &Poly<F>) -> Vec<F::Elem> {
        let f = self.gb.field().clone();
        let n = self.basis.len();
        if n == 0 {
            return vec![f.one()];
        }
        // rows: reduced vectors with their combination in powers of g
        let mut rows: Vec<(usize, Vec<F::Elem>, Vec<F::Elem>)> = Vec::new();
        let mut power = self.gb.normal_form(&Poly::one(&f, self.gb.nvars()));
        for k in 0..=n {
            let mut v = self.coords(&power);
            let mut comb = vec![f.zero(); n + 1];
            comb[k] = f.one();
            for (pivot, rv, rc) in &rows {
                let c = v[*pivot].clone();
                if f.is_zero(&c) {
                    continue;
                }
                for j in 0..n {
                    v[j] = f.sub(&v[j], &f.mul(&c, &rv[j]));
                }
                for j in 0..=n {
                    comb[j] = f.sub(&comb[j], &f.mul(&c, &rc[j]));
                }
            }
            match v.iter().position(|c| !f.is_zero(c)) {
                None => return upoly::monic(&f, &comb),
                Some(p) => {
                    let inv = f.inv(&v[p]).unwrap();
                    for x in v.iter_mut() {
                        *x = f.mul(x, &inv);
                    }
                    for x in comb.iter_mut() {
                        *x = f.mul(x, &inv);
                    }
                    // keep earlier rows reduced at the new pivot
                    for (_, rv, rc) in rows.iter_mut() {
                        let c = rv[p].clone();
                        if f.is_zero(&c) {
                            continue;
                        }
                        for j in 0..n {
                            rv[j] = f.sub(&rv[j], &f.mul(&c, &v[j]));
                        }
                        for j in 0..=n {
                            rc[j] = f.sub(&rc[j], &f.mul(&c, &comb[j]));
                        }
                    }
                    rows.push((p, v, comb));
                }
            }
            power = self.gb.normal_form(&power.mul(g));
        }
        unreachable!("Krylov sequence longer than the dimension")
    }
}

/// Restriction of a homogeneous ideal in `x_0..x_n` to the chart
/// `x_0 = .. = x_{i-1} = 0, x_i = 1`, in the remaining `n - i` variables.
pub fn chart_ideal<F: Field>(ideal: &Ideal<F>, i: usize) -> Result<Ideal<F>> {
    let f = ideal.field();
    let n1 = ideal.nvars();
    let k = n1 - i - 1;
    let images: Vec<Poly<F>> = (0..n1)
        .map(|j| match j.cmp(&i) {
            std::cmp::Ordering::Less => Poly::zero(f, k),
            std::cmp::Ordering::Equal => Poly::one(f, k),
            std::cmp::Ordering::Greater => Poly::var(f, k, j - i - 1),
        })
        .collect();
    if k == 0 {
        let gens = ideal.gens().iter().map(|g| g.substitute(&images)).collect::<Result<Vec<_>>>()?;
        return Ideal::new(f, 0, gens);
    }
    ideal.substitute(&images)
}

/// All points over `F_{p^e}` of a projective scheme whose charts are
/// zero-dimensional, sorted by coordinates.
pub fn points_over_extension(
    ideal: &Ideal<Fp>,
    fq: &Fq,
    limits: GbLimits,
    candidate_budget: u64,
) -> Result<Vec<ProjPoint<Fq>>> {
    let fp = *ideal.field();
    let n1 = ideal.nvars();
    let mut out = Vec::new();
    for i in 0..n1 {
        let chart = chart_ideal(ideal, i)?;
        let k = chart.nvars();
        let ext_gens: Vec<Poly<Fq>> = chart.gens().iter().map(|g| g.to_extension(fq)).collect();
        if k == 0 {
            if ext_gens.iter().all(|g| g.is_zero()) {
                out.push(ProjPoint::unit(fq, n1 - 1, i));
            }
            continue;
        }
        let q = AffineQuotient::new(&chart, limits)?;
        if q.dim() == 0 {
            continue;
        }
        let mut candidates: Vec<Vec<[u32; 4]>> = Vec::with_capacity(k);
        let mut total: u64 = 1;
        for v in 0..k {
            let m = q.min_poly(&Poly::var(&fp, k, v));
            let lifted: Vec<[u32; 4]> = m.iter().map(|&c| fq.embed(c)).collect();
            let rs = upoly::roots(fq, &lifted);
            total = total.saturating_mul(rs.len() as u64);
            candidates.push(rs);
        }
        if total > candidate_budget {
            return Err(Error::BudgetExceeded(format!("{total} candidate points in chart {i}")));
        }
        let mut assignment = vec![fq.zero(); k];
        search(fq, &ext_gens, &candidates, 0, &mut assignment, &mut |vals| {
            let mut coords = vec![fq.zero(); n1];
            coords[i] = fq.one();
            coords[i + 1..].clone_from_slice(vals);
            out.push(ProjPoint::new(fq, coords).unwrap());
        });
    }
    out.sort_by(|a, b| {
        let ka: Vec<u64> = a.coords().iter().map(|c| fq.index_of(c)).collect();
        let kb: Vec<u64> = b.coords().iter().map(|c| fq.index_of(c)).collect();
        ka.cmp(&kb)
    });
    Ok(out)
}

fn search(
    fq: &Fq,
    gens: &[Poly<Fq>],
    cands: &[Vec<[u32; 4]>],
    depth: usize,
    assignment: &mut Vec<[u32; 4]>,
    emit: &mut dyn FnMut(&[[u32; 4]]),
) {
    if depth == cands.len() {
        if gens.iter().all(|g| fq.is_zero(&g.eval(assignment).unwrap())) {
            emit(assignment);
        }
        return;
    }
    for c in &cands[depth] {
        assignment[depth] = *c;
        search(fq, gens, cands, depth + 1, assignment, emit);
    }
}

/// Closed points of a zero-dimensional projective scheme over the algebraic
/// closure, grouped by residue degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedPoints {
    /// Degree of the scheme (length over the algebraic closure).
    pub length: usize,
    /// Whether a separating linear form with squarefree minimal polynomial
    /// of full degree was found (the scheme is reduced).
    pub reduced: bool,
    /// `(residue degree, number of closed points)`.
    pub by_degree: Vec<(usize, usize)>,
}

impl ClosedPoints {
    /// Number of points over `F_{p^e}`: sum of `d * N_d` over `d | e`.
    pub fn count_over(&self, e: usize) -> usize {
        self.by_degree.iter().filter(|(d, _)| e.is_multiple_of(*d)).map(|(d, n)| d * n).sum()
    }

    pub fn total_points(&self) -> usize {
        self.by_degree.iter().map(|(d, n)| d * n).sum()
    }
}

/// Generic coordinates and a generic linear form: when the minimal polynomial
/// of the form is squarefree of degree equal to the quotient dimension the
/// scheme is reduced and its distinct-degree factorization counts closed
/// points by residue degree.
pub fn closed_points<R: Rng>(ideal: &Ideal<Fp>, rng: &mut R, limits: GbLimits, trials: usize) -> Result<ClosedPoints> {
    let fp = *ideal.field();
    let n1 = ideal.nvars();
    let p = fp.p() as u64;
    let mut last_err = None;
    for _ in 0..trials.max(1) {
        // random invertible change of coordinates
        let g = loop {
            let rows: Vec<Vec<u32>> = (0..n1).map(|_| (0..n1).map(|_| rng.gen_range(0..p) as u32).collect()).collect();
            let m = Matrix::from_rows(&fp, rows).unwrap();
            if m.rank() == n1 {
                break m;
            }
        };
        let images: Vec<Poly<Fp>> = (0..n1).map(|r| Poly::linear(&fp, g.row(r))).collect();
        let moved = ideal.substitute(&images)?;
        let at_infinity = moved.with_gens([Poly::var(&fp, n1, 0)]);
        if !at_infinity.is_projectively_empty(limits)? {
            last_err = Some(Error::Range("a point lies on the chosen hyperplane".into()));
            continue;
        }
        let chart = chart_ideal(&moved, 0)?;
        let k = chart.nvars();
        let q = AffineQuotient::new(&chart, limits)?;
        let dim = q.dim();
        if dim == 0 {
            return Ok(ClosedPoints { length: 0, reduced: true, by_degree: Vec::new() });
        }
        let coeffs: Vec<u32> = (0..k).map(|_| rng.gen_range(0..p) as u32).collect();
        let form = Poly::linear(&fp, &coeffs);
        let m = q.min_poly(&form);
        let deg = upoly::degree(&fp, &m).unwrap_or(0);
        let sq = upoly::squarefree(&fp, &m);
        let reduced = deg == dim && upoly::degree(&fp, &sq) == Some(deg);
        if !reduced && deg == dim {
            // cyclic but not squarefree: the scheme is non-reduced
            let by_degree = ddf_counts(&fp, &sq);
            return Ok(ClosedPoints { length: dim, reduced: false, by_degree });
        }
        if !reduced {
            last_err = Some(Error::Range("linear form does not separate points".into()));
            continue;
        }
        return Ok(ClosedPoints { length: dim, reduced: true, by_degree: ddf_counts(&fp, &m) });
    }
    Err(last_err.unwrap_or_else(|| Error::Range("no separating form found".into())))
}

fn ddf_counts(fp: &Fp, m: &[u32]) -> Vec<(usize, usize)> {
    upoly::distinct_degree(fp, m).into_iter().map(|(d, g)| (d, upoly::degree(fp, &g).unwrap_or(0) / d)).collect()
}
