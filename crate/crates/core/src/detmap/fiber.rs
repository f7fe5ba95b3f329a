use serde_json::{json, Value};

use super::DetMap;
use crate::error::{Error, Result};
use crate::field::{Field, Fp};
use crate::groebner::{GbLimits, HilbertData, Ideal};
use crate::matrix::Matrix;
use crate::points::ProjPoint;
use crate::poly::Poly;

/// Linear subspace of `P^m` cut out by linear equations in reduced echelon form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSubspace {
    field: Fp,
    ambient: usize,
    equations: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl LinearSubspace {
    pub fn from_equations(field: &Fp, ambient: usize, rows: Vec<Vec<u32>>) -> Result<Self> {
        if rows.iter().any(|r| r.len() != ambient + 1) {
            return Err(Error::Shape("equation length does not match the ambient space".into()));
        }
        if rows.is_empty() {
            return Ok(LinearSubspace { field: *field, ambient, equations: Vec::new(), pivots: Vec::new() });
        }
        let (r, pivots) = Matrix::from_rows(field, rows)?.rref();
        let equations = r.to_rows().into_iter().take(pivots.len()).collect();
        Ok(LinearSubspace { field: *field, ambient, equations, pivots })
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn equations(&self) -> &[Vec<u32>] {
        &self.equations
    }

    /// `m - (number of independent equations)`; `-1` for the empty set.
    pub fn projective_dim(&self) -> i64 {
        self.ambient as i64 - self.equations.len() as i64
    }

    /// Spanning vectors: the reduced kernel basis, one per free coordinate.
    pub fn basis(&self) -> Vec<Vec<u32>> {
        let f = &self.field;
        let n = self.ambient + 1;
        let mut is_pivot = vec![false; n];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..n)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![0u32; n];
                v[free] = 1;
                for (row, &pc) in self.pivots.iter().enumerate() {
                    v[pc] = f.neg(&self.equations[row][free]);
                }
                v
            })
            .collect()
    }

    /// `x_i = sum_j basis[j][i] t_j`, polynomials in `dim + 1` variables.
    pub fn parametrization(&self) -> Vec<Poly<Fp>> {
        let basis = self.basis();
        let k = basis.len();
        (0..=self.ambient)
            .map(|i| {
                let coeffs: Vec<u32> = basis.iter().map(|v| v[i]).collect();
                Poly::linear(&self.field, &coeffs).extend_vars(k)
            })
            .collect()
    }

    pub fn contains(&self, p: &[u32]) -> bool {
        let f = &self.field;
        self.equations.iter().all(|e| e.iter().zip(p).fold(0u32, |acc, (a, b)| f.add(&acc, &f.mul(a, b))) == 0)
    }

    pub fn equation_polys(&self) -> Vec<Poly<Fp>> {
        self.equations.iter().map(|e| Poly::linear(&self.field, e)).collect()
    }

    pub fn equation_strings(&self) -> Vec<String> {
        self.equation_polys().iter().map(|p| p.to_string()).collect()
    }

    /// Coordinate subspace `x_i = 0` for `i` in `vars`.
    pub fn coordinate(field: &Fp, ambient: usize, vars: &[usize]) -> Self {
        let rows = vars
            .iter()
            .map(|&i| {
                let mut r = vec![0u32; ambient + 1];
                r[i] = 1;
                r
            })
            .collect();
        Self::from_equations(field, ambient, rows).unwrap()
    }
}

/// The fiber of a determinantal map over a target point together with its
/// intersection with the base locus, written in internal coordinates of the
/// fiber.
#[derive(Clone, Debug)]
pub struct FiberReport {
    pub target: Vec<u32>,
    pub rank: usize,
    pub subspace: LinearSubspace,
    /// Minors restricted to the fiber, in `dim + 1` variables.
    pub intersection: Ideal<Fp>,
    pub hilbert: Option<HilbertData>,
}

impl FiberReport {
    pub fn dim(&self) -> i64 {
        self.subspace.projective_dim()
    }

    /// The base locus meets the fiber in a hypersurface of the fiber of the
    /// given degree.
    pub fn is_hypersurface_of_degree(&self, d: u64) -> bool {
        match &self.hilbert {
            Some(h) => self.dim() >= 1 && h.projective_dimension == self.dim() - 1 && h.degree == d,
            None => false,
        }
    }

    pub fn to_json(&self, field: &Fp) -> Value {
        json!({
            "target": self.target.iter().map(|&c| field.lift(c)).collect::<Vec<_>>(),
            "rank": self.rank,
            "fiber_dim": self.dim(),
            "equations": self.subspace.equation_strings(),
            "intersection": self.intersection.gens().iter().map(|g| g.display_vars("t")).collect::<Vec<_>>(),
            "intersection_hilbert": self.hilbert.as_ref().map(|h| h.to_json()),
        })
    }
}

pub fn fiber(map: &DetMap, y: &ProjPoint<Fp>, limits: GbLimits) -> Result<FiberReport> {
    let f = *map.field();
    let by = map.b_at(y.coords())?;
    let (r, pivots) = by.rref();
    let rank = pivots.len();
    let equations = r.to_rows().into_iter().take(rank).collect();
    let subspace = LinearSubspace::from_equations(&f, map.source_dim(), equations)?;
    let param = subspace.parametrization();
    let k = subspace.basis().len();
    let gens = map.minors().iter().map(|g| g.substitute(&param)).collect::<Result<Vec<_>>>()?;
    let intersection = Ideal::new(&f, k, gens)?;
    let hilbert = if k == 0 {
        None
    } else {
        match intersection.groebner(limits) {
            Ok(gb) => Some(gb.hilbert_data()?),
            Err(e) if e.is_budget() => None,
            Err(e) => return Err(e),
        }
    };
    Ok(FiberReport { target: y.coords().to_vec(), rank, subspace, intersection, hilbert })
}
