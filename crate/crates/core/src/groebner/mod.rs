//! Ideals, Gröbner bases and the invariants read off from them.

mod engine;
pub mod hilbert;
pub mod quotient;
pub mod zerodim;

pub use engine::GbLimits;
pub use hilbert::{HilbertData, HilbertSeries};
pub use quotient::{ideal_quotient, intersect, quotient_by_poly, saturate_by_poly};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::Poly;
use engine::{Outcome, Row};

/// Ideal given by generators in a polynomial ring with `nvars` variables.
#[derive(Clone, Debug, PartialEq)]
pub struct Ideal<F: Field> {
    field: F,
    nvars: usize,
    gens: Vec<Poly<F>>,
}

impl<F: Field> Ideal<F> {
    pub fn new(field: &F, nvars: usize, gens: Vec<Poly<F>>) -> Result<Self> {
        if gens.iter().any(|g| g.nvars() != nvars) {
            return Err(Error::Shape("generators live in different rings".into()));
        }
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(Ideal { field: field.clone(), nvars, gens })
    }

    pub fn zero(field: &F, nvars: usize) -> Self {
        Ideal { field: field.clone(), nvars, gens: Vec::new() }
    }

    /// The ideal of the coordinate subspace where `x_i = 0` for `i` in `vars`.
    pub fn coordinate(field: &F, nvars: usize, vars: &[usize]) -> Self {
        Ideal { field: field.clone(), nvars, gens: vars.iter().map(|&i| Poly::var(field, nvars, i)).collect() }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn gens(&self) -> &[Poly<F>] {
        &self.gens
    }

    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(|g| g.is_homogeneous())
    }

    pub fn sum(&self, other: &Ideal<F>) -> Result<Ideal<F>> {
        if self.nvars != other.nvars {
            return Err(Error::Shape("ideals live in different rings".into()));
        }
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ok(Ideal { field: self.field.clone(), nvars: self.nvars, gens })
    }

    pub fn with_gens(&self, extra: impl IntoIterator<Item = Poly<F>>) -> Ideal<F> {
        let mut gens = self.gens.clone();
        gens.extend(extra.into_iter().filter(|g| !g.is_zero()));
        Ideal { field: self.field.clone(), nvars: self.nvars, gens }
    }

    /// Applies a substitution to every generator.
    pub fn substitute(&self, images: &[Poly<F>]) -> Result<Ideal<F>> {
        let nvars = images.first().map_or(0, |p| p.nvars());
        let gens = self.gens.iter().map(|g| g.substitute(images)).collect::<Result<Vec<_>>>()?;
        Ideal::new(&self.field, nvars, gens)
    }

    pub fn groebner(&self, limits: GbLimits) -> Result<GroebnerBasis<F>> {
        GroebnerBasis::compute(self, MonomialOrder::Grevlex, limits)
    }

    pub fn groebner_with_order(&self, order: MonomialOrder, limits: GbLimits) -> Result<GroebnerBasis<F>> {
        GroebnerBasis::compute(self, order, limits)
    }

    /// `true` iff the ideal has no zeros in projective space over the
    /// algebraic closure. Stops as soon as the leading ideal contains a pure
    /// power of every variable.
    pub fn is_projectively_empty(&self, limits: GbLimits) -> Result<bool> {
        let n = self.nvars;
        let stop = move |lms: &[Monomial]| has_all_pure_powers(lms, n);
        match engine::buchberger(&self.field, MonomialOrder::Grevlex, &self.gens, limits, Some(&stop))? {
            Outcome::Stopped => Ok(true),
            Outcome::Complete(rows) => {
                let lms: Vec<Monomial> = rows.iter().map(|r| r.lm()).collect();
                Ok(has_all_pure_powers(&lms, n))
            }
        }
    }
}

fn has_all_pure_powers(lms: &[Monomial], nvars: usize) -> bool {
    if lms.iter().any(|m| m.is_one()) {
        return true;
    }
    let mut seen = vec![false; nvars];
    for m in lms {
        if let Some(v) = m.pure_power_var() {
            seen[v] = true;
        }
    }
    seen.iter().all(|&s| s)
}

/// Reduced Gröbner basis.
#[derive(Clone, Debug)]
pub struct GroebnerBasis<F: Field> {
    field: F,
    nvars: usize,
    order: MonomialOrder,
    rows: Vec<Row<F::Elem>>,
}

impl<F: Field> GroebnerBasis<F> {
    fn compute(ideal: &Ideal<F>, order: MonomialOrder, limits: GbLimits) -> Result<Self> {
        match engine::buchberger(&ideal.field, order, &ideal.gens, limits, None)? {
            Outcome::Complete(rows) => {
                Ok(GroebnerBasis { field: ideal.field.clone(), nvars: ideal.nvars, order, rows })
            }
            Outcome::Stopped => Err(Error::IncompleteBasis),
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Minimal generators of the leading ideal, ascending in the order.
    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.rows.iter().map(|r| r.lm()).collect()
    }

    pub fn polys(&self) -> Vec<Poly<F>> {
        self.rows.iter().map(|r| Poly::from_terms(&self.field, self.nvars, r.terms.iter().cloned())).collect()
    }

    pub fn ideal(&self) -> Ideal<F> {
        Ideal { field: self.field.clone(), nvars: self.nvars, gens: self.polys() }
    }

    pub fn is_unit(&self) -> bool {
        self.rows.iter().any(|r| r.lm().is_one())
    }

    pub fn normal_form(&self, f: &Poly<F>) -> Poly<F> {
        let mut t = f.terms().to_vec();
        engine::sort_terms(self.order, &mut t);
        let nf = engine::normal_form(&self.field, self.order, t, &self.rows);
        Poly::from_terms(&self.field, self.nvars, nf)
    }

    pub fn contains(&self, f: &Poly<F>) -> bool {
        self.normal_form(f).is_zero()
    }

    pub fn is_projectively_empty(&self) -> bool {
        has_all_pure_powers(&self.leading_monomials(), self.nvars)
    }

    /// Every S-polynomial of the basis reduces to zero.
    pub fn verify_s_pairs(&self) -> bool {
        engine::s_pairs_reduce_to_zero(&self.field, self.order, &self.rows)
    }

    /// No leading monomial divides a term of another element, all monic.
    pub fn is_reduced(&self) -> bool {
        let lms = self.leading_monomials();
        self.rows.iter().enumerate().all(|(k, r)| {
            r.terms[0].1 == self.field.one()
                && r.terms
                    .iter()
                    .enumerate()
                    .all(|(ti, (m, _))| lms.iter().enumerate().all(|(j, l)| (j == k && ti == 0) || !l.divides(m)))
        })
    }

    /// Elements not involving any variable with index `>= keep`.
    pub fn eliminate(&self, keep: usize) -> Vec<Poly<F>> {
        self.rows
            .iter()
            .filter(|r| r.terms.iter().all(|(m, _)| m.support_max().is_none_or(|v| v < keep)))
            .map(|r| Poly::from_terms(&self.field, keep, r.terms.iter().cloned()))
            .collect()
    }

    pub fn hilbert_series(&self) -> Result<HilbertSeries> {
        if self.order != MonomialOrder::Grevlex {
            return Err(Error::UnsupportedField("Hilbert series need a degree-compatible order".into()));
        }
        Ok(HilbertSeries::from_leading_monomials(&self.leading_monomials(), self.nvars))
    }

    pub fn hilbert_data(&self) -> Result<HilbertData> {
        Ok(self.hilbert_series()?.data())
    }
}

#[cfg(test)]
mod tests;
