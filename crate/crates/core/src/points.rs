//! Projective points and their enumeration over finite fields.

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{Field, FiniteField};

/// A projective point, normalized so that its first nonzero coordinate is one.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProjPoint<F: Field> {
    coords: Vec<F::Elem>,
}

impl<F: Field> ProjPoint<F> {
    pub fn new(field: &F, mut coords: Vec<F::Elem>) -> Result<Self> {
        let lead = coords
            .iter()
            .position(|c| !field.is_zero(c))
            .ok_or_else(|| Error::Range("the zero vector is not a projective point".into()))?;
        let inv = field.inv(&coords[lead]).unwrap();
        for c in coords.iter_mut().skip(lead) {
            *c = field.mul(c, &inv);
        }
        Ok(ProjPoint { coords })
    }

    pub fn from_i64(field: &F, coords: &[i64]) -> Result<Self> {
        Self::new(field, coords.iter().map(|&c| field.from_i64(c)).collect())
    }

    /// Coordinate vector `e_i` in `P^n`.
    pub fn unit(field: &F, n: usize, i: usize) -> Self {
        let mut c = vec![field.zero(); n + 1];
        c[i] = field.one();
        ProjPoint { coords: c }
    }

    pub fn coords(&self) -> &[F::Elem] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<F::Elem> {
        self.coords
    }

    /// Ambient projective dimension.
    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }
}

/// Number of points of `P^n(F_q)`.
pub fn projective_count(n: usize, q: u64) -> Option<u64> {
    let mut total: u64 = 0;
    let mut power: u64 = 1;
    for _ in 0..=n {
        total = total.checked_add(power)?;
        power = power.checked_mul(q)?;
    }
    Some(total)
}

/// All points of `P^n(F_q)` in lexicographic order of their normalized
/// coordinates (element order given by `FiniteField::element`).
pub fn enumerate_projective_points<F: FiniteField>(
    field: &F,
    n: usize,
    budget: u64,
) -> Result<impl Iterator<Item = ProjPoint<F>> + '_> {
    let q = field.size();
    let count = projective_count(n, q).unwrap_or(u64::MAX);
    if count > budget {
        return Err(Error::BudgetExceeded(format!("P^{n}(F_{q}) has {count} points, budget is {budget}")));
    }
    Ok((0..=n).rev().flat_map(move |lead| {
        let free = n - lead;
        let total = q.pow(free as u32);
        (0..total).map(move |mut idx| {
            let mut coords = vec![field.zero(); n + 1];
            coords[lead] = field.one();
            for j in (lead + 1..=n).rev() {
                coords[j] = field.element(idx % q);
                idx /= q;
            }
            ProjPoint { coords }
        })
    }))
}

/// Uniformly random point of `P^n(F_q)`.
pub fn random_point<F: FiniteField, R: Rng>(field: &F, n: usize, rng: &mut R) -> ProjPoint<F> {
    loop {
        let coords: Vec<F::Elem> = (0..=n).map(|_| field.element(rng.gen_range(0..field.size()))).collect();
        if let Ok(p) = ProjPoint::new(field, coords) {
            return p;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Fp, Fq};
    use std::collections::HashSet;

    #[test]
    fn p1_over_f2_in_order() {
        let f = Fp::new(2).unwrap();
        let pts: Vec<Vec<u32>> = enumerate_projective_points(&f, 1, 100).unwrap().map(|p| p.into_coords()).collect();
        assert_eq!(pts, vec![vec![0, 1], vec![1, 0], vec![1, 1]]);
    }

    #[test]
    fn counts_and_uniqueness() {
        let f3 = Fp::new(3).unwrap();
        let pts: Vec<_> = enumerate_projective_points(&f3, 4, 1000).unwrap().collect();
        assert_eq!(pts.len(), 121);
        let set: HashSet<_> = pts.iter().cloned().collect();
        assert_eq!(set.len(), 121);
        let mut sorted = pts.clone();
        sorted.sort_by(|a, b| a.coords().cmp(b.coords()));
        assert_eq!(sorted, pts);
        for p in &pts {
            assert_eq!(&ProjPoint::new(&f3, p.coords().to_vec()).unwrap(), p);
        }

        let f4 = Fq::new(2, 2).unwrap();
        let pts: Vec<_> = enumerate_projective_points(&f4, 2, 1000).unwrap().collect();
        assert_eq!(pts.len(), 21);
        assert_eq!(pts.iter().cloned().collect::<HashSet<_>>().len(), 21);
    }

    #[test]
    fn budget_is_enforced() {
        let f = Fp::new(101).unwrap();
        assert!(matches!(enumerate_projective_points(&f, 5, 1000), Err(Error::BudgetExceeded(_))));
    }

    #[test]
    fn normalization_is_canonical() {
        let f = Fp::new(7).unwrap();
        let a = ProjPoint::from_i64(&f, &[0, 3, 6]).unwrap();
        let b = ProjPoint::from_i64(&f, &[0, 1, 2]).unwrap();
        assert_eq!(a, b);
        assert!(ProjPoint::from_i64(&f, &[0, 0]).is_err());
    }
}
