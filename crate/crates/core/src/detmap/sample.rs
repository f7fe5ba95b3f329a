use rand::Rng;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::field::{Field, Fp, Fq};
use crate::groebner::zerodim::points_over_extension;
use crate::groebner::Ideal;
use crate::matrix::Matrix;
use crate::points::ProjPoint;
use crate::poly::Poly;

/// `dim + 1` independent random vectors of `F_p^{ambient+1}`.
pub fn random_linear_subspace<R: Rng>(field: &Fp, ambient: usize, dim: usize, rng: &mut R) -> Vec<Vec<u32>> {
    let p = field.p();
    loop {
        let rows: Vec<Vec<u32>> = (0..=dim).map(|_| (0..=ambient).map(|_| rng.gen_range(0..p)).collect()).collect();
        if Matrix::from_rows(field, rows.clone()).unwrap().rank() == dim + 1 {
            return rows;
        }
    }
}

/// Random `F_p`-points of the projective scheme of `ideal`, assumed of
/// projective dimension `proj_dim`, found on random linear sections of
/// complementary dimension.
pub fn sample_points<R: Rng>(
    ideal: &Ideal<Fp>,
    proj_dim: usize,
    count: usize,
    rng: &mut R,
    budget: &Budget,
    max_trials: usize,
) -> Result<Vec<ProjPoint<Fp>>> {
    sample_points_off(ideal, proj_dim, count, rng, budget, max_trials, |_| true)
}

/// As [`sample_points`], keeping only points accepted by `keep`.
pub fn sample_points_off<R: Rng>(
    ideal: &Ideal<Fp>,
    proj_dim: usize,
    count: usize,
    rng: &mut R,
    budget: &Budget,
    max_trials: usize,
    keep: impl Fn(&ProjPoint<Fp>) -> bool,
) -> Result<Vec<ProjPoint<Fp>>> {
    let f = *ideal.field();
    let n1 = ideal.nvars();
    let ambient = n1 - 1;
    if proj_dim > ambient {
        return Err(Error::Range(format!("dimension {proj_dim} exceeds the ambient P^{ambient}")));
    }
    let c = ambient - proj_dim;
    let f1 = Fq::new(f.p() as u64, 1)?;
    let mut out: Vec<ProjPoint<Fp>> = Vec::new();
    for _ in 0..max_trials {
        if out.len() >= count {
            break;
        }
        let span = random_linear_subspace(&f, ambient, c, rng);
        let images: Vec<Poly<Fp>> =
            (0..n1).map(|i| Poly::linear(&f, &span.iter().map(|v| v[i]).collect::<Vec<_>>())).collect();
        let restricted = ideal.substitute(&images)?;
        let pts = match points_over_extension(&restricted, &f1, budget.gb, budget.candidates) {
            Ok(p) => p,
            Err(e) if e.is_budget() => return Err(e),
            Err(_) => continue,
        };
        for t in pts {
            let t: Vec<u32> = t.coords().iter().map(|c| c[0]).collect();
            let x: Vec<u32> = (0..n1)
                .map(|i| span.iter().zip(&t).fold(0u32, |acc, (v, tj)| f.add(&acc, &f.mul(&v[i], tj))))
                .collect();
            let pt = ProjPoint::new(&f, x)?;
            if keep(&pt) && !out.contains(&pt) {
                out.push(pt);
            }
            if out.len() >= count {
                break;
            }
        }
    }
    if out.len() < count {
        return Err(Error::InsufficientPoints(format!("found {} of {count} points", out.len())));
    }
    Ok(out)
}
