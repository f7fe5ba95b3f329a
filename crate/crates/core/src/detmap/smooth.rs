use rand::Rng;

use super::sample::sample_points;
use super::stratum::{defined_over, StratumPoint};
use crate::budget::Budget;
use crate::error::Result;
use crate::field::{Field, Fp, Fq};
use crate::groebner::zerodim::points_over_extension;
use crate::groebner::Ideal;
use crate::matrix::{Matrix, PolyMatrix};
use crate::points::{enumerate_projective_points, projective_count, ProjPoint};
use crate::poly::Poly;

/// Above this many maximal-size Jacobian minors, the Jacobian is first
/// compressed by random row combinations.
const FULL_MINOR_LIMIT: usize = 400;
const COMPRESSIONS: usize = 3;

#[derive(Clone, Debug, PartialEq)]
pub enum SmoothnessVerdict {
    /// `I` plus the Jacobian minors has no zeros over the algebraic closure.
    Smooth,
    /// A point of `V(I)` where the Jacobian has rank below the codimension.
    SingularAt {
        field: Fq,
        point: ProjPoint<Fq>,
    },
    Unknown(String),
}

impl SmoothnessVerdict {
    pub fn is_smooth(&self) -> bool {
        matches!(self, SmoothnessVerdict::Smooth)
    }

    pub fn label(&self) -> String {
        match self {
            SmoothnessVerdict::Smooth => "Smooth".into(),
            SmoothnessVerdict::SingularAt { field, point } => {
                format!("SingularAt({})", point.coords().iter().map(|c| field.display(c)).collect::<Vec<_>>().join(":"))
            }
            SmoothnessVerdict::Unknown(why) => format!("Unknown({why})"),
        }
    }
}

pub fn jacobian_matrix(ideal: &Ideal<Fp>) -> PolyMatrix<Fp> {
    let n = ideal.nvars();
    let rows = ideal.gens().iter().map(|g| (0..n).map(|k| g.derivative(k)).collect()).collect();
    PolyMatrix::new(ideal.field(), n, rows).unwrap()
}

/// `I` plus `c x c` minors of its Jacobian. Large Jacobians are replaced by
/// a few random `c x (m+1)` row compressions, whose minors lie in the full
/// minor ideal; emptiness of the result is therefore still a certificate.
pub fn singular_ideal<R: Rng>(ideal: &Ideal<Fp>, codim: usize, rng: &mut R) -> Ideal<Fp> {
    let f = *ideal.field();
    let j = jacobian_matrix(ideal);
    let (s, n) = (j.rows(), j.cols());
    if codim == 0 || s < codim {
        return ideal.clone();
    }
    let full = binom(s, codim).saturating_mul(binom(n, codim));
    let minors = if full <= FULL_MINOR_LIMIT || s == codim {
        j.minors(codim)
    } else {
        let mut out = Vec::new();
        for _ in 0..COMPRESSIONS {
            let rows = (0..codim)
                .map(|_| {
                    (0..n)
                        .map(|k| {
                            (0..s)
                                .fold(Poly::zero(&f, n), |acc, i| acc.add(&j.get(i, k).scale(&rng.gen_range(0..f.p()))))
                        })
                        .collect()
                })
                .collect();
            out.extend(PolyMatrix::new(&f, n, rows).unwrap().minors(codim));
        }
        out
    };
    ideal.with_gens(minors)
}

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

fn jacobian_rank_at(ideal: &Ideal<Fp>, fq: &Fq, p: &[[u32; 4]]) -> Result<usize> {
    let n = ideal.nvars();
    let rows = ideal
        .gens()
        .iter()
        .map(|g| {
            let g = g.to_extension(fq);
            (0..n).map(|k| g.derivative(k).eval(p)).collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    if rows.is_empty() {
        return Ok(0);
    }
    Ok(Matrix::from_rows(fq, rows)?.rank())
}

fn vanishes(ideal: &Ideal<Fp>, fq: &Fq, p: &[[u32; 4]]) -> Result<bool> {
    for g in ideal.gens() {
        if !fq.is_zero(&g.to_extension(fq).eval(p)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Certificate that `V(I)` is smooth of codimension `codim` (for `I`
/// unmixed of that codimension), or an explicit singular point.
pub fn smoothness_certificate<R: Rng>(
    ideal: &Ideal<Fp>,
    codim: usize,
    rng: &mut R,
    budget: &Budget,
) -> SmoothnessVerdict {
    let sing = singular_ideal(ideal, codim, rng);
    match sing.is_projectively_empty(budget.gb) {
        Ok(true) => return SmoothnessVerdict::Smooth,
        Ok(false) => {}
        Err(e) => return SmoothnessVerdict::Unknown(e.to_string()),
    }
    match find_witness(ideal, &sing, codim, rng, budget) {
        Ok(Some((field, point))) => SmoothnessVerdict::SingularAt { field, point },
        Ok(None) => SmoothnessVerdict::Unknown("no singular point located within budget".into()),
        Err(e) => SmoothnessVerdict::Unknown(e.to_string()),
    }
}

fn find_witness<R: Rng>(
    ideal: &Ideal<Fp>,
    sing: &Ideal<Fp>,
    codim: usize,
    rng: &mut R,
    budget: &Budget,
) -> Result<Option<(Fq, ProjPoint<Fq>)>> {
    let f = *ideal.field();
    let p = f.p() as u64;
    let ambient = ideal.nvars() - 1;
    let is_witness = |fq: &Fq, x: &[[u32; 4]]| -> Result<bool> {
        Ok(vanishes(ideal, fq, x)? && jacobian_rank_at(ideal, fq, x)? < codim)
    };
    let f1 = Fq::new(p, 1)?;
    // small ambient spaces: scan every rational point
    if projective_count(ambient, p).is_some_and(|c| c <= budget.enumeration) {
        for pt in enumerate_projective_points(&f, ambient, budget.enumeration)? {
            let x: Vec<[u32; 4]> = pt.coords().iter().map(|&c| f1.embed(c)).collect();
            if is_witness(&f1, &x)? {
                return Ok(Some((f1, ProjPoint::new(&f1, x)?)));
            }
        }
    }
    let gb = sing.groebner(budget.gb)?;
    let h = gb.hilbert_data()?;
    let reduced = gb.ideal();
    if h.projective_dimension == 0 {
        for e in 1..=budget.extension_bound {
            let fq = Fq::new(p, e)?;
            for pt in points_over_extension(&reduced, &fq, budget.gb, budget.candidates)? {
                if is_witness(&fq, pt.coords())? {
                    return Ok(Some((fq, pt)));
                }
            }
        }
        return Ok(None);
    }
    if h.projective_dimension > 0 {
        let d = h.projective_dimension as usize;
        for _ in 0..8 {
            let Ok(pts) = sample_points(&reduced, d, 1, rng, budget, 50) else { continue };
            for pt in pts {
                let x: Vec<[u32; 4]> = pt.coords().iter().map(|&c| f1.embed(c)).collect();
                if is_witness(&f1, &x)? {
                    return Ok(Some((f1, ProjPoint::new(&f1, x)?)));
                }
            }
        }
    }
    Ok(None)
}

/// Singular points of `V(I)` over `F_{p^e}` for `e` up to the extension
/// bound, each listed once at its field of definition; `None` when the
/// singular locus has positive dimension.
pub fn singular_points<R: Rng>(
    ideal: &Ideal<Fp>,
    codim: usize,
    rng: &mut R,
    budget: &Budget,
) -> Result<Option<Vec<StratumPoint>>> {
    let p = ideal.field().p() as u64;
    let gb = singular_ideal(ideal, codim, rng).groebner(budget.gb)?;
    let h = gb.hilbert_data()?;
    if h.projective_dimension < 0 {
        return Ok(Some(Vec::new()));
    }
    if h.projective_dimension > 0 {
        return Ok(None);
    }
    let reduced = gb.ideal();
    let mut out = Vec::new();
    for e in 1..=budget.extension_bound {
        let fq = Fq::new(p, e)?;
        for pt in points_over_extension(&reduced, &fq, budget.gb, budget.candidates)? {
            if (1..e).any(|d| e % d == 0 && defined_over(&fq, &pt, d)) {
                continue;
            }
            if vanishes(ideal, &fq, pt.coords())? && jacobian_rank_at(ideal, &fq, pt.coords())? < codim {
                out.push(StratumPoint { extension: e, field: fq, point: pt });
            }
        }
    }
    Ok(Some(out))
}
