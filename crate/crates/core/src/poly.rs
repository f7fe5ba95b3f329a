//! Sparse multivariate polynomials.

use std::cmp::Ordering;
use std::fmt;

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::field::{Field, Fp, Fq};
use crate::monomial::{Monomial, MAX_VARS};

/// Terms are kept sorted by decreasing grevlex order with no zero coefficients.
#[derive(Clone, PartialEq)]
pub struct Poly<F: Field> {
    field: F,
    nvars: usize,
    terms: Vec<(Monomial, F::Elem)>,
}

impl<F: Field> Poly<F> {
    pub fn zero(field: &F, nvars: usize) -> Self {
        assert!(nvars <= MAX_VARS, "at most {MAX_VARS} variables");
        Poly { field: field.clone(), nvars, terms: Vec::new() }
    }

    pub fn constant(field: &F, nvars: usize, c: F::Elem) -> Self {
        Self::term(field, nvars, Monomial::one(), c)
    }

    pub fn one(field: &F, nvars: usize) -> Self {
        Self::constant(field, nvars, field.one())
    }

    pub fn var(field: &F, nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable x{i} outside a ring with {nvars} variables");
        Self::term(field, nvars, Monomial::var(i), field.one())
    }

    pub fn term(field: &F, nvars: usize, m: Monomial, c: F::Elem) -> Self {
        let mut p = Self::zero(field, nvars);
        if !field.is_zero(&c) {
            p.terms.push((m, c));
        }
        p
    }

    /// Collects arbitrary terms, merging duplicates and dropping zeros.
    pub fn from_terms(field: &F, nvars: usize, terms: impl IntoIterator<Item = (Monomial, F::Elem)>) -> Self {
        let mut acc: FxHashMap<Monomial, F::Elem> = FxHashMap::default();
        for (m, c) in terms {
            debug_assert!(m.support_max().is_none_or(|v| v < nvars));
            acc.entry(m).and_modify(|e| *e = field.add(e, &c)).or_insert(c);
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !field.is_zero(c)).collect();
        terms.sort_unstable_by(|a, b| b.0.grevlex_cmp(&a.0));
        Poly { field: field.clone(), nvars, terms }
    }

    /// Integer-coefficient constructor from exponent vectors.
    pub fn from_int_terms(field: &F, nvars: usize, terms: &[(Vec<u32>, i64)]) -> Self {
        Self::from_terms(
            field,
            nvars,
            terms.iter().map(|(e, c)| {
                assert!(e.len() <= nvars);
                (Monomial::from_exponents(e), field.from_i64(*c))
            }),
        )
    }

    /// Linear form `sum c_i x_i`.
    pub fn linear(field: &F, coeffs: &[F::Elem]) -> Self {
        Self::from_terms(field, coeffs.len(), coeffs.iter().enumerate().map(|(i, c)| (Monomial::var(i), c.clone())))
    }

    /// Builds from terms already sorted in decreasing grevlex order without zeros.
    pub(crate) fn from_sorted(field: &F, nvars: usize, terms: Vec<(Monomial, F::Elem)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0.grevlex_cmp(&w[1].0) == Ordering::Greater));
        Poly { field: field.clone(), nvars, terms }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Monomial, F::Elem)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, F::Elem)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m, _)) => self.terms.iter().all(|(t, _)| t.degree() == m.degree()),
        }
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn leading(&self) -> Option<&(Monomial, F::Elem)> {
        self.terms.first()
    }

    pub fn coefficient(&self, m: &Monomial) -> F::Elem {
        self.terms
            .binary_search_by(|(t, _)| m.grevlex_cmp(t))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| self.field.zero())
    }

    /// Coefficients of a form of degree at most one: `[c_0, .., c_{n-1}]` for
    /// the linear part.
    pub fn linear_coefficients(&self) -> Vec<F::Elem> {
        (0..self.nvars).map(|i| self.coefficient(&Monomial::var(i))).collect()
    }

    pub fn homogeneous_part(&self, d: u32) -> Self {
        let terms = self.terms.iter().filter(|(m, _)| m.degree() == d).cloned().collect();
        Poly { field: self.field.clone(), nvars: self.nvars, terms }
    }

    fn check_ring(&self, other: &Self) {
        assert_eq!(self.nvars, other.nvars, "polynomials live in different rings");
    }

    fn merge(&self, other: &Self, negate_other: bool) -> Self {
        self.check_ring(other);
        let f = &self.field;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let conv = |c: &F::Elem| if negate_other { f.neg(c) } else { c.clone() };
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &other.terms[j];
            match ma.grevlex_cmp(mb) {
                Ordering::Greater => {
                    out.push((*ma, ca.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((*mb, conv(cb)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate_other { f.sub(ca, cb) } else { f.add(ca, cb) };
                    if !f.is_zero(&c) {
                        out.push((*ma, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(other.terms[j..].iter().map(|(m, c)| (*m, conv(c))));
        Poly { field: f.clone(), nvars: self.nvars, terms: out }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.merge(other, true)
    }

    pub fn neg(&self) -> Self {
        let f = &self.field;
        Poly { field: f.clone(), nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (*m, f.neg(c))).collect() }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let f = &self.field;
        if f.is_zero(c) {
            return Self::zero(f, self.nvars);
        }
        Poly { field: f.clone(), nvars: self.nvars, terms: self.terms.iter().map(|(m, a)| (*m, f.mul(a, c))).collect() }
    }

    pub fn mul_term(&self, m: &Monomial, c: &F::Elem) -> Self {
        let f = &self.field;
        if f.is_zero(c) {
            return Self::zero(f, self.nvars);
        }
        Poly {
            field: f.clone(),
            nvars: self.nvars,
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), f.mul(a, c))).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_ring(other);
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.field, self.nvars);
        }
        let (small, big) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        if small.len() == 1 {
            let (m, c) = &small.terms[0];
            return big.mul_term(m, c);
        }
        let f = &self.field;
        let mut acc: FxHashMap<Monomial, F::Elem> =
            FxHashMap::with_capacity_and_hasher(small.len() * big.len(), Default::default());
        for (ma, ca) in &small.terms {
            for (mb, cb) in &big.terms {
                let c = f.mul(ca, cb);
                acc.entry(ma.mul(mb)).and_modify(|e| *e = f.add(e, &c)).or_insert(c);
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !f.is_zero(c)).collect();
        terms.sort_unstable_by(|a, b| b.0.grevlex_cmp(&a.0));
        Poly { field: f.clone(), nvars: self.nvars, terms }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.field, self.nvars);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Leading coefficient made one.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => self.scale(&self.field.inv(c).expect("nonzero leading coefficient")),
        }
    }

    pub fn eval(&self, point: &[F::Elem]) -> Result<F::Elem> {
        if point.len() != self.nvars {
            return Err(Error::Arity { expected: self.nvars, got: point.len() });
        }
        let f = &self.field;
        let maxdeg = self.degree().unwrap_or(0) as usize;
        // powers[i][k] = point[i]^k
        let powers: Vec<Vec<F::Elem>> = point
            .iter()
            .map(|v| {
                let mut row = Vec::with_capacity(maxdeg + 1);
                row.push(f.one());
                for k in 1..=maxdeg {
                    let next = f.mul(&row[k - 1], v);
                    row.push(next);
                }
                row
            })
            .collect();
        let mut acc = f.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for i in m.support() {
                t = f.mul(&t, &powers[i][m.exponent(i) as usize]);
            }
            acc = f.add(&acc, &t);
        }
        Ok(acc)
    }

    pub fn derivative(&self, i: usize) -> Self {
        let f = &self.field;
        let terms = self.terms.iter().filter_map(|(m, c)| {
            let e = m.exponent(i);
            if e == 0 {
                return None;
            }
            Some((m.with_exponent(i, e - 1), f.mul(c, &f.from_i64(e as i64))))
        });
        Self::from_terms(f, self.nvars, terms)
    }

    /// Substitutes `images[i]` for `x_i`; the images share a target ring.
    pub fn substitute(&self, images: &[Poly<F>]) -> Result<Self> {
        if images.len() != self.nvars {
            return Err(Error::Arity { expected: self.nvars, got: images.len() });
        }
        let f = &self.field;
        let target = images.first().map_or(0, |p| p.nvars);
        let maxdeg = self.degree().unwrap_or(0) as usize;
        let mut cache: Vec<Vec<Poly<F>>> = vec![Vec::new(); self.nvars];
        let mut acc: FxHashMap<Monomial, F::Elem> = FxHashMap::default();
        for (m, c) in &self.terms {
            let mut t = Poly::constant(f, target, c.clone());
            for i in m.support() {
                let e = m.exponent(i) as usize;
                let row = &mut cache[i];
                if row.is_empty() {
                    row.push(Poly::one(f, target));
                }
                while row.len() <= e.min(maxdeg) {
                    let next = row[row.len() - 1].mul(&images[i]);
                    row.push(next);
                }
                t = t.mul(&row[e]);
            }
            for (tm, tc) in t.terms {
                acc.entry(tm).and_modify(|x| *x = f.add(x, &tc)).or_insert(tc);
            }
        }
        Ok(Self::from_terms(f, target, acc))
    }

    /// Moves the polynomial into a ring with `nvars` variables, sending
    /// `x_i` to `x_{map[i]}`.
    pub fn rename(&self, nvars: usize, map: &[usize]) -> Self {
        assert_eq!(map.len(), self.nvars);
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = vec![0u32; nvars];
            for i in m.support() {
                e[map[i]] += m.exponent(i);
            }
            (Monomial::from_exponents(&e), c.clone())
        });
        Self::from_terms(&self.field, nvars, terms)
    }

    /// Same polynomial in a larger ring (new variables appended).
    pub fn extend_vars(&self, nvars: usize) -> Self {
        assert!(nvars >= self.nvars);
        Poly { field: self.field.clone(), nvars, terms: self.terms.clone() }
    }

    /// Exact quotient `self / d`, `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        self.check_ring(d);
        let f = &self.field;
        let (lm, lc) = d.leading()?.clone();
        let lc_inv = f.inv(&lc)?;
        let mut rem = self.clone();
        let mut quot: Vec<(Monomial, F::Elem)> = Vec::new();
        while let Some((m, c)) = rem.leading().cloned() {
            let q = m.div(&lm)?;
            let qc = f.mul(&c, &lc_inv);
            rem = rem.sub(&d.mul_term(&q, &qc));
            quot.push((q, qc));
        }
        Some(Poly::from_sorted(f, self.nvars, quot))
    }

    pub fn map_coefficients<G: Field>(&self, g: &G, conv: impl Fn(&F::Elem) -> G::Elem) -> Poly<G> {
        Poly::from_terms(g, self.nvars, self.terms.iter().map(|(m, c)| (*m, conv(c))))
    }

    pub fn display_with(&self, prefix: &str, coeff: impl Fn(&F::Elem) -> String) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let cs = coeff(c);
            let (neg, mag) = match cs.strip_prefix('-') {
                Some(r) => (true, r.to_string()),
                None => (false, cs),
            };
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if m.is_one() {
                s.push_str(&mag);
            } else {
                if mag != "1" {
                    s.push_str(&mag);
                    s.push('*');
                }
                s.push_str(&m.display(prefix));
            }
        }
        s
    }
}

impl<F: Field> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with("x", |c| format!("{c:?}")))
    }
}

impl fmt::Display for Poly<Fp> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fp = self.field;
        write!(f, "{}", self.display_with("x", |c| fp.lift(*c).to_string()))
    }
}

impl Poly<Fp> {
    /// The same polynomial over an extension of its coefficient field.
    pub fn to_extension(&self, fq: &Fq) -> Poly<Fq> {
        assert_eq!(fq.base(), self.field, "extension of a different prime field");
        Poly::from_sorted(fq, self.nvars, self.terms.iter().map(|(m, c)| (*m, fq.embed(*c))).collect())
    }

    /// Integer coefficients in the symmetric range.
    pub fn int_terms(&self) -> Vec<(Vec<u32>, i64)> {
        self.terms.iter().map(|(m, c)| (m.exponents(self.nvars), self.field.lift(*c))).collect()
    }

    pub fn display_vars(&self, prefix: &str) -> String {
        let fp = self.field;
        self.display_with(prefix, |c| fp.lift(*c).to_string())
    }
}

/// Parses polynomials such as `-2x1+x0`, `x0*x4 - x1*x3` or `3 x2^2 + 1`.
pub fn parse_poly<F: Field>(field: &F, nvars: usize, src: &str) -> Result<Poly<F>> {
    let err = |msg: &str| Error::Parse(format!("{msg} in `{src}`"));
    let chars: Vec<char> = src.chars().filter(|c| !c.is_whitespace()).collect();
    if chars.is_empty() {
        return Err(err("empty polynomial"));
    }
    let mut terms: Vec<(Monomial, F::Elem)> = Vec::new();
    let mut i = 0;
    let read_int = |i: &mut usize| -> Option<i64> {
        let start = *i;
        while *i < chars.len() && chars[*i].is_ascii_digit() {
            *i += 1;
        }
        if start == *i {
            None
        } else {
            chars[start..*i].iter().collect::<String>().parse().ok()
        }
    };
    while i < chars.len() {
        let mut sign = 1i64;
        while i < chars.len() && (chars[i] == '+' || chars[i] == '-') {
            if chars[i] == '-' {
                sign = -sign;
            }
            i += 1;
        }
        let mut coeff = sign;
        let mut exps = vec![0u32; nvars];
        let mut saw_factor = false;
        if let Some(c) = read_int(&mut i) {
            coeff *= c;
            saw_factor = true;
        }
        loop {
            if i < chars.len() && chars[i] == '*' {
                i += 1;
            }
            if i < chars.len() && chars[i].is_ascii_alphabetic() {
                i += 1;
                let v = read_int(&mut i).ok_or_else(|| err("variable without index"))? as usize;
                if v >= nvars {
                    return Err(err(&format!("variable index {v} out of range")));
                }
                let mut e = 1u32;
                if i < chars.len() && chars[i] == '^' {
                    i += 1;
                    e = read_int(&mut i).ok_or_else(|| err("missing exponent"))? as u32;
                }
                exps[v] += e;
                saw_factor = true;
            } else if i < chars.len() && chars[i].is_ascii_digit() {
                coeff *= read_int(&mut i).unwrap();
                saw_factor = true;
            } else {
                break;
            }
        }
        if !saw_factor {
            return Err(err("dangling sign"));
        }
        if i < chars.len() && chars[i] != '+' && chars[i] != '-' {
            return Err(err(&format!("unexpected character `{}`", chars[i])));
        }
        terms.push((Monomial::from_exponents(&exps), field.from_i64(coeff)));
    }
    Ok(Poly::from_terms(field, nvars, terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Q;
    use proptest::prelude::*;

    fn f101() -> Fp {
        Fp::new(101).unwrap()
    }

    fn p(s: &str, n: usize) -> Poly<Fp> {
        parse_poly(&f101(), n, s).unwrap()
    }

    #[test]
    fn parse_and_print() {
        let a = p("-2x1+x0", 5);
        assert_eq!(a.to_string(), "x0 - 2*x1");
        let b = p("x0*x4 - x1 x3 + 3x2^2", 5);
        assert_eq!(b.to_string(), "3*x2^2 - x1*x3 + x0*x4");
        assert!(parse_poly(&f101(), 2, "x5").is_err());
        assert!(parse_poly(&f101(), 2, "x0 +").is_err());
    }

    #[test]
    fn evaluation_matches_substitution_by_hand() {
        let f = p("x0*x4 - x1*x3", 6);
        assert_eq!(f.eval(&[1, 0, 0, 0, 1, 0]).unwrap(), 1);
        assert!(matches!(f.eval(&[1, 0]), Err(Error::Arity { expected: 6, got: 2 })));
        assert_eq!(Poly::zero(&f101(), 3).eval(&[4, 5, 6]).unwrap(), 0);
    }

    #[test]
    fn homogeneous_scaling() {
        let fp = f101();
        let f = p("x0^3 + 2x0*x1*x2 - x2^3", 3);
        let pt = [3u32, 7, 11];
        let lam = 5u32;
        let scaled: Vec<u32> = pt.iter().map(|c| fp.mul(c, &lam)).collect();
        let a = f.eval(&pt).unwrap();
        let b = f.eval(&scaled).unwrap();
        assert_eq!(b, fp.mul(&a, &fp.pow(&lam, 3)));
    }

    #[test]
    fn exact_division() {
        let a = p("x0 + x1", 3);
        let b = p("x0 - 2x2 + x1^2", 3);
        let prod = a.mul(&b);
        assert_eq!(prod.div_exact(&a).unwrap(), b);
        assert!(prod.add(&p("x2", 3)).div_exact(&a).is_none());
    }

    #[test]
    fn substitution_composes() {
        let f = p("x0^2 - x1", 2);
        let images = [p("x0 + x1", 2), p("x0*x1", 2)];
        let g = f.substitute(&images).unwrap();
        assert_eq!(g, p("x0^2 + x0*x1 + x1^2", 2));
    }

    #[test]
    fn derivative_of_power() {
        let f = p("x0^3*x1 + x1^2", 2);
        assert_eq!(f.derivative(0), p("3x0^2*x1", 2));
        assert_eq!(f.derivative(1), p("x0^3 + 2x1", 2));
    }

    #[test]
    fn rational_polynomials() {
        let q = Q;
        let f = parse_poly(&q, 2, "x0 - 3x1").unwrap();
        let g = f.mul(&f);
        assert_eq!(g.div_exact(&f).unwrap(), f);
    }

    fn arb_poly() -> impl Strategy<Value = Vec<(Vec<u32>, i64)>> {
        proptest::collection::vec((proptest::collection::vec(0u32..3, 3), -5i64..5), 0..6)
    }

    proptest! {
        #[test]
        fn ring_laws(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            let fp = f101();
            let (a, b, c) = (Poly::from_int_terms(&fp, 3, &a), Poly::from_int_terms(&fp, 3, &b), Poly::from_int_terms(&fp, 3, &c));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.add(&b).sub(&b), a.clone());
            let pt = [2u32, 9, 40];
            let lhs = a.mul(&b).eval(&pt).unwrap();
            prop_assert_eq!(lhs, fp.mul(&a.eval(&pt).unwrap(), &b.eval(&pt).unwrap()));
        }
    }
}
