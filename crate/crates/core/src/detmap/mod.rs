//! Rational maps given by the maximal minors of a matrix of linear forms, and
//! maps given by an explicit list of forms.

mod fiber;
mod linsys;
mod probe;
mod sample;
mod smooth;
mod stratum;

pub use fiber::{fiber, FiberReport, LinearSubspace};
pub use linsys::{
    degree_monomials, linear_system_dim, linear_system_dim_gb, linear_system_dim_points, LinearSystemDim,
};
pub use probe::{
    birationality_probe, exceptional_membership, fiber_dim_at, image_dim_estimate, system_birationality_probe,
    ProbeVerdict,
};
pub use sample::{random_linear_subspace, sample_points, sample_points_off};
pub use smooth::{jacobian_matrix, singular_ideal, singular_points, smoothness_certificate, SmoothnessVerdict};
pub use stratum::{rank_stratum, RankStratum, StratumPoint};

use crate::error::{Error, Result};
use crate::field::{Field, Fp, Fq};
use crate::groebner::Ideal;
use crate::matrix::{Matrix, PolyMatrix};
use crate::monomial::MAX_VARS;
use crate::points::ProjPoint;
use crate::poly::Poly;

/// `phi = (F_0 : .. : F_n)` where `F_i` are the signed maximal minors of an
/// `(n+1) x n` matrix `A(x)` of linear forms on `P^m`, together with the
/// matrix `B(y)` satisfying `A(x)^T y = B(y) x`.
#[derive(Clone, Debug)]
pub struct DetMap {
    a: PolyMatrix<Fp>,
    minors: Vec<Poly<Fp>>,
    b: PolyMatrix<Fp>,
}

impl DetMap {
    pub fn build(a: PolyMatrix<Fp>) -> Result<Self> {
        let n = a.cols();
        let nx = a.nvars();
        if n == 0 || a.rows() != n + 1 {
            return Err(Error::Shape(format!("expected an (n+1) x n matrix, got {}x{}", a.rows(), n)));
        }
        if nx < n + 1 {
            return Err(Error::Shape(format!("{nx} variables cannot carry a map to P^{n}")));
        }
        if !a.is_linear() {
            return Err(Error::Shape("entries must be linear forms".into()));
        }
        let field = *a.field();
        let minors = a.max_minors()?;
        let ny = n + 1;
        let mut rows = Vec::with_capacity(n);
        for j in 0..n {
            let mut row = Vec::with_capacity(nx);
            for k in 0..nx {
                let coeffs: Vec<u32> = (0..ny).map(|i| a.get(i, j).linear_coefficients()[k]).collect();
                row.push(Poly::linear(&field, &coeffs));
            }
            rows.push(row);
        }
        let b = PolyMatrix::new(&field, ny, rows)?;
        let map = DetMap { a, minors, b };
        map.check_identity()?;
        Ok(map)
    }

    /// `A(x)^T y - B(y) x = 0`, symbolically in a joint ring when it fits,
    /// otherwise coefficient by coefficient.
    pub fn check_identity(&self) -> Result<()> {
        let f = *self.field();
        let (nx, ny, n) = (self.a.nvars(), self.b.nvars(), self.target_dim());
        if nx + ny <= MAX_VARS {
            let nt = nx + ny;
            let xmap: Vec<usize> = (0..nx).collect();
            let ymap: Vec<usize> = (nx..nt).collect();
            for j in 0..n {
                let mut lhs = Poly::zero(&f, nt);
                for i in 0..=n {
                    lhs = lhs.add(&self.a.get(i, j).rename(nt, &xmap).mul(&Poly::var(&f, nt, nx + i)));
                }
                let mut rhs = Poly::zero(&f, nt);
                for k in 0..nx {
                    rhs = rhs.add(&self.b.get(j, k).rename(nt, &ymap).mul(&Poly::var(&f, nt, k)));
                }
                if lhs != rhs {
                    return Err(Error::IdentityFailure(format!("column {j}")));
                }
            }
        } else {
            for j in 0..n {
                for i in 0..=n {
                    let ac = self.a.get(i, j).linear_coefficients();
                    for (k, c) in ac.iter().enumerate() {
                        if self.b.get(j, k).linear_coefficients()[i] != *c {
                            return Err(Error::IdentityFailure(format!("column {j}, y{i} x{k}")));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn field(&self) -> &Fp {
        self.a.field()
    }

    pub fn a(&self) -> &PolyMatrix<Fp> {
        &self.a
    }

    pub fn b(&self) -> &PolyMatrix<Fp> {
        &self.b
    }

    pub fn minors(&self) -> &[Poly<Fp>] {
        &self.minors
    }

    pub fn source_dim(&self) -> usize {
        self.a.nvars() - 1
    }

    pub fn target_dim(&self) -> usize {
        self.a.cols()
    }

    /// The ideal of maximal minors, defining the base locus `X^1`.
    pub fn base_ideal(&self) -> Ideal<Fp> {
        Ideal::new(self.field(), self.a.nvars(), self.minors.clone()).unwrap()
    }

    pub fn system(&self) -> Result<SystemMap> {
        SystemMap::new(self.field(), self.a.nvars(), self.minors.clone())
    }

    pub fn eval(&self, p: &ProjPoint<Fp>) -> Result<ProjPoint<Fp>> {
        eval_forms(self.field(), &self.minors, p.coords())
    }

    /// `B(y)` as a numeric `n x (m+1)` matrix.
    pub fn b_at(&self, y: &[u32]) -> Result<Matrix<Fp>> {
        if y.len() != self.b.nvars() {
            return Err(Error::Arity { expected: self.b.nvars(), got: y.len() });
        }
        self.b.eval(y)
    }

    /// `B(y)` over an extension field.
    pub fn b_at_ext(&self, fq: &Fq, y: &[[u32; 4]]) -> Result<Matrix<Fq>> {
        if y.len() != self.b.nvars() {
            return Err(Error::Arity { expected: self.b.nvars(), got: y.len() });
        }
        let rows = (0..self.b.rows())
            .map(|j| (0..self.b.cols()).map(|k| self.b.get(j, k).to_extension(fq).eval(y)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_rows(fq, rows)
    }

    /// Image of an extension-field point.
    pub fn eval_ext(&self, fq: &Fq, p: &[[u32; 4]]) -> Result<ProjPoint<Fq>> {
        let forms: Vec<Poly<Fq>> = self.minors.iter().map(|g| g.to_extension(fq)).collect();
        eval_forms(fq, &forms, p)
    }
}

pub(crate) fn eval_forms<F: Field>(field: &F, forms: &[Poly<F>], p: &[F::Elem]) -> Result<ProjPoint<F>> {
    if let Some(g) = forms.first() {
        if g.nvars() != p.len() {
            return Err(Error::Arity { expected: g.nvars(), got: p.len() });
        }
    }
    let vals = forms.iter().map(|g| g.eval(p)).collect::<Result<Vec<_>>>()?;
    ProjPoint::new(field, vals).map_err(|_| Error::BasePoint)
}

/// A rational map `P^m -> P^N` given by `N+1` forms of one common degree.
#[derive(Clone, Debug)]
pub struct SystemMap {
    field: Fp,
    nvars: usize,
    forms: Vec<Poly<Fp>>,
    degree: u32,
}

impl SystemMap {
    pub fn new(field: &Fp, nvars: usize, forms: Vec<Poly<Fp>>) -> Result<Self> {
        let Some(first) = forms.first() else {
            return Err(Error::Shape("a map needs at least one form".into()));
        };
        let degree = first.degree().ok_or_else(|| Error::Shape("zero form".into()))?;
        for g in &forms {
            if g.nvars() != nvars {
                return Err(Error::Shape("forms live in different rings".into()));
            }
            if g.is_zero() || !g.is_homogeneous() || g.degree() != Some(degree) {
                return Err(Error::Shape("forms must be nonzero and homogeneous of one degree".into()));
            }
        }
        Ok(SystemMap { field: *field, nvars, forms, degree })
    }

    pub fn field(&self) -> &Fp {
        &self.field
    }

    pub fn forms(&self) -> &[Poly<Fp>] {
        &self.forms
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn source_dim(&self) -> usize {
        self.nvars - 1
    }

    pub fn target_dim(&self) -> usize {
        self.forms.len() - 1
    }

    pub fn eval(&self, p: &ProjPoint<Fp>) -> Result<ProjPoint<Fp>> {
        eval_forms(&self.field, &self.forms, p.coords())
    }

    /// Jacobian of the forms at `p`: `(N+1) x (m+1)`.
    pub fn jacobian_at(&self, p: &[u32]) -> Result<Matrix<Fp>> {
        if p.len() != self.nvars {
            return Err(Error::Arity { expected: self.nvars, got: p.len() });
        }
        let rows = self
            .forms
            .iter()
            .map(|g| (0..self.nvars).map(|k| g.derivative(k).eval(p)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_rows(&self.field, rows)
    }
}

#[cfg(test)]
mod tests;
