use rand::Rng;

use super::sample::sample_points;
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::field::{Field, Fp};
use crate::groebner::{GbLimits, Ideal};
use crate::matrix::Matrix;
use crate::monomial::Monomial;
use crate::points::ProjPoint;

/// All monomials of degree `d` in `nvars` variables.
pub fn degree_monomials(nvars: usize, d: u32) -> Vec<Monomial> {
    fn go(nvars: usize, i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i + 1 == nvars {
            cur.push(left);
            out.push(Monomial::from_exponents(cur));
            cur.pop();
            return;
        }
        for e in (0..=left).rev() {
            cur.push(e);
            go(nvars, i + 1, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if nvars > 0 {
        go(nvars, 0, d, &mut Vec::with_capacity(nvars), &mut out);
    }
    out
}

/// `dim I_d` read off the Hilbert function of a Gröbner basis.
pub fn linear_system_dim_gb(ideal: &Ideal<Fp>, d: u32, limits: GbLimits) -> Result<u64> {
    let hs = ideal.groebner(limits)?.hilbert_series()?;
    Ok(hs.ideal_dimension(d as i64) as u64)
}

/// Corank of the evaluation matrix of degree-`d` monomials at `points`.
pub fn linear_system_dim_points(points: &[ProjPoint<Fp>], field: &Fp, d: u32) -> Result<u64> {
    let nvars = points.first().map_or(0, |p| p.coords().len());
    let monos = degree_monomials(nvars, d);
    if points.len() <= monos.len() {
        return Err(Error::InsufficientPoints(format!(
            "{} points for {} monomials of degree {d}",
            points.len(),
            monos.len()
        )));
    }
    let rows: Vec<Vec<u32>> = points
        .iter()
        .map(|p| {
            monos
                .iter()
                .map(|m| {
                    (0..nvars)
                        .fold(field.one(), |acc, i| field.mul(&acc, &field.pow(&p.coords()[i], m.exponent(i) as u64)))
                })
                .collect()
        })
        .collect();
    let rank = Matrix::from_rows(field, rows)?.rank();
    Ok((monos.len() - rank) as u64)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSystemDim {
    pub interpolation: u64,
    pub points_used: usize,
    pub groebner: Option<u64>,
}

impl LinearSystemDim {
    pub fn agree(&self) -> bool {
        self.groebner.is_none_or(|g| g == self.interpolation)
    }
}

/// `h^0(I(d))` by interpolation through sampled points of `V(I)` (of
/// projective dimension `proj_dim`), cross-checked against the Gröbner route.
pub fn linear_system_dim<R: Rng>(
    ideal: &Ideal<Fp>,
    proj_dim: usize,
    d: u32,
    rng: &mut R,
    budget: &Budget,
) -> Result<LinearSystemDim> {
    let f = *ideal.field();
    let need = degree_monomials(ideal.nvars(), d).len() + 8;
    let points = sample_points(ideal, proj_dim, need, rng, budget, 40 * need)?;
    let interpolation = linear_system_dim_points(&points, &f, d)?;
    let groebner = match linear_system_dim_gb(ideal, d, budget.gb) {
        Ok(v) => Some(v),
        Err(e) if e.is_budget() => None,
        Err(e) => return Err(e),
    };
    Ok(LinearSystemDim { interpolation, points_used: points.len(), groebner })
}
