//! Scalar matrices over a field and matrices of polynomials.

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::Poly;

/// Dense row-major scalar matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(field: &F, rows: usize, cols: usize) -> Self {
        Matrix { field: field.clone(), rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: &F, rows: Vec<Vec<F::Elem>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Ok(Matrix { field: field.clone(), rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_i64(field: &F, rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_rows(field, rows.iter().map(|r| r.iter().map(|&v| field.from_i64(v)).collect()).collect())
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: F::Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F::Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<F::Elem>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add(out.get(i, j), &f.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Result<Vec<F::Elem>> {
        if v.len() != self.cols {
            return Err(Error::Arity { expected: self.cols, got: v.len() });
        }
        let f = &self.field;
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b))))
            .collect())
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !f.is_zero(m.get(i, c))) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = f.inv(m.get(r, c)).unwrap();
            for j in c..m.cols {
                let v = f.mul(m.get(r, j), &inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || f.is_zero(m.get(i, c)) {
                    continue;
                }
                let factor = m.get(i, c).clone();
                for j in c..m.cols {
                    let v = f.sub(m.get(i, j), &f.mul(&factor, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Reduced-echelon basis of the null space: one vector per free column,
    /// with a one in that column and zeros in the other free columns.
    pub fn kernel(&self) -> Vec<Vec<F::Elem>> {
        let f = &self.field;
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![f.zero(); self.cols];
            v[free] = f.one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(r.get(row, free));
            }
            basis.push(v);
        }
        basis
    }

    pub fn determinant(&self) -> Result<F::Elem> {
        if self.rows != self.cols {
            return Err(Error::Shape("determinant of a non-square matrix".into()));
        }
        let f = &self.field;
        let n = self.rows;
        let mut m = self.clone();
        let mut det = f.one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !f.is_zero(m.get(i, c))) else {
                return Ok(f.zero());
            };
            if p != c {
                for j in 0..n {
                    m.data.swap(p * n + j, c * n + j);
                }
                det = f.neg(&det);
            }
            let pivot = m.get(c, c).clone();
            det = f.mul(&det, &pivot);
            let inv = f.inv(&pivot).unwrap();
            for i in c + 1..n {
                let factor = f.mul(m.get(i, c), &inv);
                if f.is_zero(&factor) {
                    continue;
                }
                for j in c..n {
                    let v = f.sub(m.get(i, j), &f.mul(&factor, m.get(c, j)));
                    m.set(i, j, v);
                }
            }
        }
        Ok(det)
    }
}

/// Matrix of polynomials sharing one ring.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyMatrix<F: Field> {
    field: F,
    nvars: usize,
    rows: usize,
    cols: usize,
    entries: Vec<Poly<F>>,
}

impl<F: Field> PolyMatrix<F> {
    pub fn new(field: &F, nvars: usize, rows: Vec<Vec<Poly<F>>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        let entries: Vec<Poly<F>> = rows.into_iter().flatten().collect();
        if entries.iter().any(|p| p.nvars() != nvars) {
            return Err(Error::Shape("entries live in different rings".into()));
        }
        Ok(PolyMatrix { field: field.clone(), nvars, rows: r, cols: c, entries })
    }

    /// Matrix of linear forms from integer coefficient vectors:
    /// `coeffs[i][j][k]` is the coefficient of `x_k` in entry `(i, j)`.
    pub fn from_linear_coeffs(field: &F, nvars: usize, coeffs: &[Vec<Vec<i64>>]) -> Result<Self> {
        let rows = coeffs
            .iter()
            .map(|row| {
                row.iter()
                    .map(|lf| {
                        if lf.len() != nvars {
                            return Err(Error::Shape(format!(
                                "linear form has {} coefficients, expected {nvars}",
                                lf.len()
                            )));
                        }
                        Ok(Poly::linear(field, &lf.iter().map(|&c| field.from_i64(c)).collect::<Vec<_>>()))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(field, nvars, rows)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly<F> {
        &self.entries[i * self.cols + j]
    }

    pub fn entries(&self) -> &[Poly<F>] {
        &self.entries
    }

    pub fn is_linear(&self) -> bool {
        self.entries.iter().all(|p| p.terms().iter().all(|(m, _)| m.degree() <= 1))
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j).clone());
            }
        }
        PolyMatrix { field: self.field.clone(), nvars: self.nvars, rows: self.cols, cols: self.rows, entries }
    }

    pub fn eval(&self, point: &[F::Elem]) -> Result<Matrix<F>> {
        let vals = self.entries.iter().map(|p| p.eval(point)).collect::<Result<Vec<_>>>()?;
        Ok(Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data: vals })
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut entries = Vec::with_capacity(rows.len() * cols.len());
        for &i in rows {
            for &j in cols {
                entries.push(self.get(i, j).clone());
            }
        }
        PolyMatrix { field: self.field.clone(), nvars: self.nvars, rows: rows.len(), cols: cols.len(), entries }
    }

    pub fn without_row(&self, r: usize) -> Self {
        let rows: Vec<usize> = (0..self.rows).filter(|&i| i != r).collect();
        let cols: Vec<usize> = (0..self.cols).collect();
        self.submatrix(&rows, &cols)
    }

    /// Substitutes polynomials for the variables in every entry.
    pub fn substitute(&self, images: &[Poly<F>]) -> Result<Self> {
        let nvars = images.first().map_or(0, |p| p.nvars());
        let entries = self.entries.iter().map(|p| p.substitute(images)).collect::<Result<Vec<_>>>()?;
        Ok(PolyMatrix { field: self.field.clone(), nvars, rows: self.rows, cols: self.cols, entries })
    }

    /// Fraction-free (Bareiss) determinant.
    pub fn det_bareiss(&self) -> Result<Poly<F>> {
        if self.rows != self.cols {
            return Err(Error::Shape("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        let zero = Poly::zero(&self.field, self.nvars);
        if n == 0 {
            return Ok(Poly::one(&self.field, self.nvars));
        }
        let mut m: Vec<Vec<Poly<F>>> = (0..n).map(|i| (0..n).map(|j| self.get(i, j).clone()).collect()).collect();
        let mut sign = false;
        let mut prev = Poly::one(&self.field, self.nvars);
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                    return Ok(zero);
                };
                m.swap(k, p);
                sign = !sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                    m[i][j] = num.div_exact(&prev).ok_or_else(|| Error::Shape("inexact Bareiss division".into()))?;
                }
                m[i][k] = zero.clone();
            }
            prev = m[k][k].clone();
        }
        let d = m[n - 1][n - 1].clone();
        Ok(if sign { d.neg() } else { d })
    }

    /// Laplace expansion along the first row with memoized minors.
    pub fn det_laplace(&self) -> Result<Poly<F>> {
        if self.rows != self.cols {
            return Err(Error::Shape("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        let rows: Vec<usize> = (0..n).collect();
        let mut memo = FxHashMap::default();
        Ok(self.minor_memo(&rows, (1u64 << n) - 1, &mut memo))
    }

    /// Determinant of the submatrix on `rows` (ascending) and the columns in
    /// `colmask`, expanding along the first listed row.
    fn minor_memo(&self, rows: &[usize], colmask: u64, memo: &mut FxHashMap<(u64, u64), Poly<F>>) -> Poly<F> {
        if rows.is_empty() {
            return Poly::one(&self.field, self.nvars);
        }
        let rowmask: u64 = rows.iter().fold(0, |acc, &r| acc | 1 << r);
        if let Some(p) = memo.get(&(rowmask, colmask)) {
            return p.clone();
        }
        let r0 = rows[0];
        let mut acc = Poly::zero(&self.field, self.nvars);
        let mut sign = false;
        for c in 0..self.cols {
            if colmask & (1 << c) == 0 {
                continue;
            }
            let e = self.get(r0, c);
            if !e.is_zero() {
                let sub = self.minor_memo(&rows[1..], colmask & !(1 << c), memo);
                let t = e.mul(&sub);
                acc = if sign { acc.sub(&t) } else { acc.add(&t) };
            }
            sign = !sign;
        }
        memo.insert((rowmask, colmask), acc.clone());
        acc
    }

    /// All `k x k` minors, indexed by ascending row and column subsets in
    /// lexicographic order.
    pub fn minors(&self, k: usize) -> Vec<Poly<F>> {
        assert!(self.rows <= 64 && self.cols <= 64);
        let row_sets = subsets(self.rows, k);
        let col_sets = subsets(self.cols, k);
        let mut memo = FxHashMap::default();
        let mut out = Vec::with_capacity(row_sets.len() * col_sets.len());
        for rs in &row_sets {
            for cs in &col_sets {
                let mask = cs.iter().fold(0u64, |acc, &c| acc | 1 << c);
                out.push(self.minor_memo(rs, mask, &mut memo));
            }
        }
        out
    }

    /// Entries given as strings understood by [`crate::poly::parse_poly`].
    pub fn parse<S: AsRef<str>>(field: &F, nvars: usize, rows: &[Vec<S>]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|s| crate::poly::parse_poly(field, nvars, s.as_ref())).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::new(field, nvars, rows)
    }

    /// `F_i = (-1)^i det(M with row i removed)` for an `(n+1) x n` matrix.
    pub fn max_minors(&self) -> Result<Vec<Poly<F>>> {
        if self.rows != self.cols + 1 {
            return Err(Error::Shape(format!("maximal minors need rows = cols + 1, got {}x{}", self.rows, self.cols)));
        }
        (0..self.rows)
            .map(|i| {
                let d = self.without_row(i).det_bareiss()?;
                Ok(if i % 2 == 1 { d.neg() } else { d })
            })
            .collect()
    }
}

/// Ascending `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FiniteField, Fp, Fq};
    use crate::poly::parse_poly;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn f101() -> Fp {
        Fp::new(101).unwrap()
    }

    fn pm(rows: &[&[&str]], n: usize) -> PolyMatrix<Fp> {
        let f = f101();
        PolyMatrix::new(&f, n, rows.iter().map(|r| r.iter().map(|s| parse_poly(&f, n, s).unwrap()).collect()).collect())
            .unwrap()
    }

    #[test]
    fn segre_minors_by_hand() {
        let m = pm(&[&["x0", "x3"], &["x1", "x4"], &["x2", "x5"]], 6);
        let f = m.max_minors().unwrap();
        let fp = f101();
        assert_eq!(f[0], parse_poly(&fp, 6, "x1*x5 - x2*x4").unwrap());
        assert_eq!(f[1], parse_poly(&fp, 6, "x2*x3 - x0*x5").unwrap());
        assert_eq!(f[2], parse_poly(&fp, 6, "x0*x4 - x1*x3").unwrap());
    }

    #[test]
    fn smallest_shape_and_shape_error() {
        let m = pm(&[&["x0"], &["x1"]], 2);
        let f = m.max_minors().unwrap();
        assert_eq!(f[0], parse_poly(&f101(), 2, "x1").unwrap());
        assert_eq!(f[1], parse_poly(&f101(), 2, "-x0").unwrap());
        let sq = pm(&[&["x0", "x1"], &["x1", "x0"]], 2);
        assert!(matches!(sq.max_minors(), Err(Error::Shape(_))));
    }

    #[test]
    fn repeated_rows_kill_other_minors() {
        let m = pm(&[&["x0", "x1"], &["x0", "x1"], &["x2", "x0"]], 3);
        let f = m.max_minors().unwrap();
        assert!(f[2].is_zero());
        assert!(!f[0].is_zero());
    }

    #[test]
    fn kernel_examples() {
        let fp = f101();
        assert!(Matrix::identity(&fp, 4).kernel().is_empty());
        assert_eq!(Matrix::zeros(&fp, 2, 6).kernel().len(), 6);
        let m = Matrix::from_i64(&fp, &[vec![1, 2, 3], vec![2, 4, 6]]).unwrap();
        let k = m.kernel();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(m.mul_vec(v).unwrap().iter().all(|x| *x == 0));
        }
    }

    #[test]
    fn determinant_of_scalar_matrices() {
        let fp = f101();
        let m = Matrix::from_i64(&fp, &[vec![2, 1], vec![7, 4]]).unwrap();
        assert_eq!(m.determinant().unwrap(), 1);
    }

    fn random_poly_matrix<F: FiniteField>(f: &F, rng: &mut ChaCha8Rng, n: usize, nvars: usize) -> PolyMatrix<F> {
        let rows = (0..n)
            .map(|_| {
                (0..n)
                    .map(|_| {
                        let terms: Vec<_> = (0..rng.gen_range(0..4))
                            .map(|_| {
                                let e: Vec<u32> = (0..nvars).map(|_| rng.gen_range(0..2)).collect();
                                (crate::monomial::Monomial::from_exponents(&e), f.element(rng.gen_range(0..f.size())))
                            })
                            .collect();
                        Poly::from_terms(f, nvars, terms)
                    })
                    .collect()
            })
            .collect();
        PolyMatrix::new(f, nvars, rows).unwrap()
    }

    #[test]
    fn bareiss_equals_laplace_on_random_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let fp = f101();
        for _ in 0..100 {
            let m = random_poly_matrix(&fp, &mut rng, 4, 3);
            assert_eq!(m.det_bareiss().unwrap(), m.det_laplace().unwrap());
        }
        let f4 = Fq::new(2, 2).unwrap();
        for _ in 0..100 {
            let m = random_poly_matrix(&f4, &mut rng, 4, 3);
            assert_eq!(m.det_bareiss().unwrap(), m.det_laplace().unwrap());
        }
        let f3 = Fp::new(3).unwrap();
        for _ in 0..100 {
            let m = random_poly_matrix(&f3, &mut rng, 4, 2);
            assert_eq!(m.det_bareiss().unwrap(), m.det_laplace().unwrap());
        }
    }

    #[test]
    fn kernel_rank_nullity_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let fp = Fp::new(5).unwrap();
        for _ in 0..200 {
            let r = rng.gen_range(1..6);
            let c = rng.gen_range(1..7);
            let rows: Vec<Vec<i64>> = (0..r).map(|_| (0..c).map(|_| rng.gen_range(0..5)).collect()).collect();
            let m = Matrix::from_i64(&fp, &rows).unwrap();
            let k = m.kernel();
            assert_eq!(k.len() + m.rank(), c);
            for v in &k {
                assert!(m.mul_vec(v).unwrap().iter().all(|x| *x == 0));
            }
        }
    }

    #[test]
    fn minors_count_and_values() {
        let m = pm(&[&["x0", "x1", "x2"], &["x3", "x4", "x5"]], 6);
        let two = m.minors(2);
        assert_eq!(two.len(), 3);
        assert_eq!(two[0], parse_poly(&f101(), 6, "x0*x4 - x1*x3").unwrap());
        assert_eq!(m.minors(1).len(), 6);
        assert_eq!(subsets(5, 2).len(), 10);
    }
}
