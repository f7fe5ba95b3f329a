use rand::Rng;
use serde_json::{json, Value};

use super::{DetMap, SystemMap};
use crate::error::{Error, Result};
use crate::field::{Fp, Fq};
use crate::groebner::Ideal;
use crate::matrix::Matrix;
use crate::points::{random_point, ProjPoint};

/// Local fiber dimension `m - rank J(p) + 1`, exact where the fiber is
/// generically reduced and `p` a smooth point of it, a lower bound otherwise.
pub fn fiber_dim_at(map: &SystemMap, p: &ProjPoint<Fp>) -> Result<usize> {
    map.eval(p)?;
    let r = map.jacobian_at(p.coords())?.rank();
    Ok(map.source_dim() + 1 - r)
}

/// Tangent space of the affine cone of `V(I)` at `p`, as spanning vectors.
fn cone_tangent(ideal: &Ideal<Fp>, p: &[u32]) -> Result<Vec<Vec<u32>>> {
    let f = *ideal.field();
    let n = ideal.nvars();
    if ideal.gens().is_empty() {
        return Ok(Matrix::identity(&f, n).to_rows());
    }
    let rows = ideal
        .gens()
        .iter()
        .map(|g| (0..n).map(|k| g.derivative(k).eval(p)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_rows(&f, rows)?.kernel())
}

/// Maximum over `points` of `rank(J(p) T_p) - 1`, where `T_p` spans the
/// tangent space of the cone over `restricted_to` (the whole space if `None`).
pub fn image_dim_estimate(
    map: &SystemMap,
    restricted_to: Option<&Ideal<Fp>>,
    points: &[ProjPoint<Fp>],
) -> Result<usize> {
    let f = *map.field();
    let mut best: Option<usize> = None;
    for p in points {
        if map.eval(p).is_err() {
            continue;
        }
        let j = map.jacobian_at(p.coords())?;
        let t = match restricted_to {
            Some(i) => cone_tangent(i, p.coords())?,
            None => Matrix::identity(&f, p.coords().len()).to_rows(),
        };
        if t.is_empty() {
            continue;
        }
        let tm = Matrix::from_rows(&f, t)?.transpose();
        let r = j.mul(&tm)?.rank();
        best = Some(best.unwrap_or(0).max(r.saturating_sub(1)));
    }
    best.ok_or_else(|| Error::InsufficientPoints("no sample point off the base locus".into()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProbeVerdict {
    /// Every sampled fiber was the single source point.
    BirationalEvidence {
        trials: usize,
        fields: Vec<u64>,
    },
    /// Smallest fiber dimension observed over the trials.
    FiberDim {
        dim: usize,
        trials: usize,
    },
    Inconclusive(String),
}

impl ProbeVerdict {
    pub fn label(&self) -> String {
        match self {
            ProbeVerdict::BirationalEvidence { .. } => "BirationalEvidence".into(),
            ProbeVerdict::FiberDim { dim, .. } => format!("FiberDim({dim})"),
            ProbeVerdict::Inconclusive(_) => "Inconclusive".into(),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            ProbeVerdict::BirationalEvidence { trials, fields } => {
                json!({"verdict": "BirationalEvidence", "trials": trials, "fields": fields})
            }
            ProbeVerdict::FiberDim { dim, trials } => json!({"verdict": "FiberDim", "dim": dim, "trials": trials}),
            ProbeVerdict::Inconclusive(why) => json!({"verdict": "Inconclusive", "reason": why}),
        }
    }
}

/// Fibers of random source points over `F_p` and `F_{p^2}`. A fiber is a
/// linear space through the point, so dimension zero means it is the point.
pub fn birationality_probe<R: Rng>(map: &DetMap, trials: usize, rng: &mut R) -> Result<ProbeVerdict> {
    let f = *map.field();
    let m = map.source_dim();
    let p = f.p() as u64;
    let f2 = Fq::new(p, 2)?;
    let mut min_dim: Option<usize> = None;
    let mut used = 0;
    for t in 0..trials {
        let dim = if t % 2 == 0 {
            let x = random_point(&f, m, rng);
            let Ok(y) = map.eval(&x) else { continue };
            m - map.b_at(y.coords())?.rank()
        } else {
            let x = random_point(&f2, m, rng);
            let Ok(y) = map.eval_ext(&f2, x.coords()) else { continue };
            m - map.b_at_ext(&f2, y.coords())?.rank()
        };
        used += 1;
        min_dim = Some(min_dim.map_or(dim, |d| d.min(dim)));
    }
    Ok(match min_dim {
        None => ProbeVerdict::Inconclusive("every sample was a base point".into()),
        Some(0) => ProbeVerdict::BirationalEvidence { trials: used, fields: vec![p, p * p] },
        Some(d) => ProbeVerdict::FiberDim { dim: d, trials: used },
    })
}

/// Generic fiber dimension of a form system from Jacobian ranks; dimension
/// zero only shows the map is generically finite.
pub fn system_birationality_probe<R: Rng>(map: &SystemMap, trials: usize, rng: &mut R) -> Result<ProbeVerdict> {
    let f = *map.field();
    let mut min_dim: Option<usize> = None;
    let mut used = 0;
    for _ in 0..trials {
        let x = random_point(&f, map.source_dim(), rng);
        let Ok(d) = fiber_dim_at(map, &x) else { continue };
        used += 1;
        min_dim = Some(min_dim.map_or(d, |m| m.min(d)));
    }
    Ok(match min_dim {
        None => ProbeVerdict::Inconclusive("every sample was a base point".into()),
        Some(0) => ProbeVerdict::Inconclusive(format!("generically finite on {used} samples")),
        Some(d) => ProbeVerdict::FiberDim { dim: d, trials: used },
    })
}

/// `p` lies on the exceptional locus iff its fiber is positive-dimensional.
pub fn exceptional_membership(map: &DetMap, p: &ProjPoint<Fp>) -> Result<bool> {
    let n = map.target_dim();
    if map.source_dim() != n {
        return Err(Error::Shape("exceptional membership needs a map P^n -> P^n".into()));
    }
    let y = map.eval(p)?;
    Ok(map.b_at(y.coords())?.rank() < n)
}
