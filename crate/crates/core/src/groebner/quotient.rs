//! Intersections, ideal quotients and saturation by tag-variable elimination.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::monomial::{MonomialOrder, MAX_VARS};
use crate::poly::Poly;

use super::{GbLimits, Ideal};

/// `I ∩ J` as the elimination of `t` from `t I + (1 - t) J`.
pub fn intersect<F: Field>(i: &Ideal<F>, j: &Ideal<F>, limits: GbLimits) -> Result<Ideal<F>> {
    if i.nvars() != j.nvars() {
        return Err(Error::Shape("ideals live in different rings".into()));
    }
    let n = i.nvars();
    if n + 1 > MAX_VARS {
        return Err(Error::Shape("no room for a tag variable".into()));
    }
    if i.gens().is_empty() || j.gens().is_empty() {
        return Ok(Ideal::zero(i.field(), n));
    }
    let f = i.field();
    let t = Poly::var(f, n + 1, n);
    let one_minus_t = Poly::one(f, n + 1).sub(&t);
    let mut gens = Vec::new();
    for g in i.gens() {
        gens.push(g.extend_vars(n + 1).mul(&t));
    }
    for g in j.gens() {
        gens.push(g.extend_vars(n + 1).mul(&one_minus_t));
    }
    let big = Ideal::new(f, n + 1, gens)?;
    let gb = big.groebner_with_order(MonomialOrder::Elimination { keep: n }, limits)?;
    Ideal::new(f, n, gb.eliminate(n))
}

/// `(I : g)` from `I ∩ <g>` divided by `g`.
pub fn quotient_by_poly<F: Field>(i: &Ideal<F>, g: &Poly<F>, limits: GbLimits) -> Result<Ideal<F>> {
    let f = i.field();
    let n = i.nvars();
    if g.is_zero() {
        return Ideal::new(f, n, vec![Poly::one(f, n)]);
    }
    if g.is_constant() {
        return Ok(i.clone());
    }
    let principal = Ideal::new(f, n, vec![g.clone()])?;
    let cap = intersect(i, &principal, limits)?;
    let gens = cap
        .gens()
        .iter()
        .map(|h| h.div_exact(g).ok_or_else(|| Error::Shape("intersection element not divisible".into())))
        .collect::<Result<Vec<_>>>()?;
    Ideal::new(f, n, gens)
}

/// `(I : J)` as the intersection of the quotients by the generators of `J`.
pub fn ideal_quotient<F: Field>(i: &Ideal<F>, j: &Ideal<F>, limits: GbLimits) -> Result<Ideal<F>> {
    let f = i.field();
    let n = i.nvars();
    if i.nvars() != j.nvars() {
        return Err(Error::Shape("ideals live in different rings".into()));
    }
    if j.gens().is_empty() {
        return Ideal::new(f, n, vec![Poly::one(f, n)]);
    }
    let mut acc: Option<Ideal<F>> = None;
    for g in j.gens() {
        let q = quotient_by_poly(i, g, limits)?;
        acc = Some(match acc {
            None => q,
            Some(a) => intersect(&a, &q, limits)?,
        });
    }
    let out = acc.unwrap();
    // return a reduced basis for a canonical generating set
    Ok(out.groebner(limits)?.ideal())
}

/// `I : g^∞`.
pub fn saturate_by_poly<F: Field>(i: &Ideal<F>, g: &Poly<F>, limits: GbLimits) -> Result<Ideal<F>> {
    let mut cur = i.groebner(limits)?;
    loop {
        let next = quotient_by_poly(&cur.ideal(), g, limits)?.groebner(limits)?;
        if next.polys().iter().all(|p| cur.contains(p)) {
            return Ok(cur.ideal());
        }
        cur = next;
    }
}

impl<F: Field> Ideal<F> {
    /// A minimal homogeneous generating set, ascending by degree.
    pub fn minimal_generators(&self, limits: GbLimits) -> Result<Vec<Poly<F>>> {
        if !self.is_homogeneous() {
            return Err(Error::Shape("minimal generators need a homogeneous ideal".into()));
        }
        let mut cands = self.groebner(limits)?.polys();
        cands.sort_by_key(|p| p.degree().unwrap_or(0));
        let mut kept: Vec<Poly<F>> = Vec::new();
        for c in cands {
            let redundant = if kept.is_empty() {
                false
            } else {
                Ideal::new(self.field(), self.nvars(), kept.clone())?.groebner(limits)?.contains(&c)
            };
            if !redundant {
                kept.push(c);
            }
        }
        Ok(kept)
    }
}
