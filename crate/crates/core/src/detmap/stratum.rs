use serde_json::{json, Value};

use super::DetMap;
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::field::{Field, Fp, Fq};
use crate::groebner::zerodim::points_over_extension;
use crate::groebner::{HilbertData, Ideal};
use crate::points::{enumerate_projective_points, projective_count, ProjPoint};

/// A point found over `F_{p^e}` and not over any proper subfield.
#[derive(Clone, Debug, PartialEq)]
pub struct StratumPoint {
    pub extension: u32,
    pub field: Fq,
    pub point: ProjPoint<Fq>,
}

impl StratumPoint {
    pub fn coords_display(&self) -> Vec<String> {
        self.point.coords().iter().map(|c| self.field.display(c)).collect()
    }

    /// Coordinates in the prime field, for points of degree one.
    pub fn rational(&self) -> Option<Vec<u32>> {
        self.point.coords().iter().map(|c| self.field.as_base(c)).collect()
    }

    pub fn to_json(&self) -> Value {
        json!({ "extension": self.extension, "coords": self.coords_display() })
    }
}

#[derive(Clone, Debug)]
pub struct RankStratum {
    pub rank_bound: usize,
    /// `(r+1) x (r+1)` minors of `B(y)`.
    pub ideal: Ideal<Fp>,
    pub hilbert: Option<HilbertData>,
    /// Points over `F_{p^e}` for `e` up to `searched_extension`, each listed
    /// once at its field of definition.
    pub points: Option<Vec<StratumPoint>>,
    pub searched_extension: u32,
    /// `(e, number of points over F_{p^e})`.
    pub counts: Vec<(u32, usize)>,
}

impl RankStratum {
    pub fn rational_points(&self) -> Vec<Vec<u32>> {
        self.points.iter().flatten().filter_map(|p| p.rational()).collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "rank_bound": self.rank_bound,
            "minors": self.ideal.gens().len(),
            "hilbert": self.hilbert.as_ref().map(|h| h.to_json()),
            "points": self.points.as_ref().map(|v| v.iter().map(|p| p.to_json()).collect::<Vec<_>>()),
            "searched_extension": self.searched_extension,
            "counts": self.counts.iter().map(|(e, c)| json!({"extension": e, "points": c})).collect::<Vec<_>>(),
        })
    }
}

/// Whether the normalized point is fixed by the `d`-th power of Frobenius.
pub(super) fn defined_over(fq: &Fq, pt: &ProjPoint<Fq>, d: u32) -> bool {
    let q = (fq.base().p() as u64).pow(d);
    pt.coords().iter().all(|c| fq.pow(c, q) == *c)
}

pub fn rank_stratum(map: &DetMap, r: usize, budget: &Budget) -> Result<RankStratum> {
    let n = map.target_dim();
    if r == 0 || r >= n {
        return Err(Error::Range(format!("rank bound {r} outside 1..{n}")));
    }
    let f = *map.field();
    let p = f.p() as u64;
    let ideal = Ideal::new(&f, n + 1, map.b().minors(r + 1))?;
    let gb = ideal.groebner(budget.gb)?;
    let hilbert = gb.hilbert_data()?;
    let rank_ok = |fq: &Fq, y: &ProjPoint<Fq>| -> Result<bool> { Ok(map.b_at_ext(fq, y.coords())?.rank() <= r) };
    let mut points = Vec::new();
    let mut counts = Vec::new();
    let mut searched = 0;
    for e in 1..=budget.extension_bound {
        let fq = Fq::new(p, e)?;
        let found: Vec<ProjPoint<Fq>> = if hilbert.projective_dimension <= 0 {
            points_over_extension(&gb.ideal(), &fq, budget.gb, budget.candidates)?
        } else {
            match projective_count(n, p.pow(e)) {
                Some(c) if c <= budget.enumeration => enumerate_projective_points(&fq, n, budget.enumeration)?
                    .filter(|y| rank_ok(&fq, y).unwrap_or(false))
                    .collect(),
                _ => break,
            }
        };
        for y in &found {
            if !rank_ok(&fq, y)? {
                return Err(Error::IdentityFailure("stratum point with rank above the bound".into()));
            }
        }
        counts.push((e, found.len()));
        for y in found {
            if (1..e).filter(|d| e % d == 0).all(|d| !defined_over(&fq, &y, d)) {
                points.push(StratumPoint { extension: e, field: fq, point: y });
            }
        }
        searched = e;
    }
    Ok(RankStratum {
        rank_bound: r,
        ideal,
        hilbert: Some(hilbert),
        points: if searched > 0 { Some(points) } else { None },
        searched_extension: searched,
        counts,
    })
}
