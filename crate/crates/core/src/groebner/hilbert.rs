//! Hilbert series of monomial ideals and the data derived from them.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::monomial::Monomial;

/// `HS(t) = numerator(t) / (1 - t)^nvars` for a graded quotient `S/I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertSeries {
    pub nvars: usize,
    pub numerator: Vec<i64>,
}

/// Hilbert polynomial and the numbers read off from it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertData {
    /// Coefficients in increasing powers of `t`.
    pub hilbert_polynomial: Vec<BigRational>,
    pub projective_dimension: i64,
    pub degree: u64,
    /// `None` when the projective dimension is below one.
    pub sectional_genus: Option<i64>,
    /// Numerator after cancelling all factors `1 - t`.
    pub h_vector: Vec<i64>,
}

fn trim(mut v: Vec<i64>) -> Vec<i64> {
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
    v
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_add_shifted(a: &[i64], b: &[i64], shift: usize) -> Vec<i64> {
    let n = a.len().max(b.len() + shift);
    let mut out = vec![0i64; n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (j, y) in b.iter().enumerate() {
        out[j + shift] += y;
    }
    trim(out)
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| m.degree());
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
    for m in gens {
        if !out.iter().any(|g| g.divides(&m)) {
            out.push(m);
        }
    }
    out
}

/// Numerator of the Hilbert series of `S / (gens)` by pivot recursion.
fn numerator(gens: Vec<Monomial>) -> Vec<i64> {
    let gens = minimalize(gens);
    if gens.is_empty() {
        return vec![1];
    }
    if gens.iter().any(|m| m.is_one()) {
        return vec![0];
    }
    let coprime = gens.iter().enumerate().all(|(i, a)| gens[i + 1..].iter().all(|b| a.is_coprime(b)));
    if coprime {
        let mut acc = vec![1i64];
        for m in &gens {
            let mut f = vec![0i64; m.degree() as usize + 1];
            f[0] = 1;
            f[m.degree() as usize] = -1;
            acc = poly_mul(&acc, &f);
        }
        return acc;
    }
    // pivot on the variable occurring in the most non-linear generators
    let mut counts = [0usize; crate::monomial::MAX_VARS];
    for m in gens.iter().filter(|m| m.degree() > 1) {
        for v in m.support() {
            counts[v] += 1;
        }
    }
    let v = (0..counts.len()).max_by_key(|&i| (counts[i], std::cmp::Reverse(i))).unwrap();
    let mut exps: Vec<u32> = gens.iter().map(|m| m.exponent(v)).filter(|&e| e > 0).collect();
    exps.sort_unstable();
    let e = exps[(exps.len() - 1) / 2];
    let pivot = Monomial::var(v).with_exponent(v, e);
    let mut plus = gens.clone();
    plus.push(pivot);
    let colon: Vec<Monomial> = gens
        .iter()
        .map(|m| {
            let k = m.exponent(v);
            m.with_exponent(v, k.saturating_sub(e))
        })
        .collect();
    let a = numerator(plus);
    let b = numerator(colon);
    poly_add_shifted(&a, &b, e as usize)
}

fn binomial_poly(shift: i64, r: usize) -> Vec<BigRational> {
    // C(t + shift, r) as a polynomial in t
    let mut acc = vec![BigRational::one()];
    for i in 0..r {
        // multiply by (t + shift - i)
        let c = BigRational::from_integer(BigInt::from(shift - i as i64));
        let mut next = vec![BigRational::zero(); acc.len() + 1];
        for (k, a) in acc.iter().enumerate() {
            next[k] += a * &c;
            next[k + 1] += a;
        }
        acc = next;
    }
    let fact: BigInt = (1..=r as u64).map(BigInt::from).product();
    let fact = BigRational::from_integer(fact);
    acc.into_iter().map(|c| c / &fact).collect()
}

fn binomial(n: i64, k: i64) -> i128 {
    if k < 0 || n < k {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: i128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as i128 / (i + 1) as i128;
    }
    acc
}

impl HilbertSeries {
    pub fn from_leading_monomials(lms: &[Monomial], nvars: usize) -> Self {
        HilbertSeries { nvars, numerator: numerator(lms.to_vec()) }
    }

    /// Series of `S/I` from the twists of a free resolution of `I`:
    /// `positions[i]` lists `(twist, rank)` of the `i`-th module, twists `<= 0`.
    pub fn from_resolution(nvars: usize, positions: &[Vec<(i64, u64)>]) -> Result<Self> {
        let mut num = vec![1i64];
        for (i, pos) in positions.iter().enumerate() {
            let sign = if i % 2 == 0 { -1 } else { 1 };
            for &(twist, rank) in pos {
                if twist > 0 {
                    return Err(Error::MalformedSpec(format!("positive twist {twist}")));
                }
                let d = (-twist) as usize;
                if num.len() <= d {
                    num.resize(d + 1, 0);
                }
                num[d] += sign * rank as i64;
            }
        }
        Ok(HilbertSeries { nvars, numerator: trim(num) })
    }

    /// `dim_k (S/I)_d`.
    pub fn hilbert_function(&self, d: i64) -> i128 {
        let n = self.nvars as i64;
        self.numerator.iter().enumerate().map(|(k, &h)| h as i128 * binomial(d - k as i64 + n - 1, n - 1)).sum()
    }

    /// `dim_k I_d = C(d + n - 1, n - 1) - HF(d)`.
    pub fn ideal_dimension(&self, d: i64) -> i128 {
        binomial(d + self.nvars as i64 - 1, self.nvars as i64 - 1) - self.hilbert_function(d)
    }

    /// Cancels factors `1 - t`; returns the h-vector and the Krull dimension.
    pub fn reduced(&self) -> (Vec<i64>, usize) {
        let mut h = self.numerator.clone();
        let mut dim = self.nvars;
        if h.iter().all(|&c| c == 0) {
            return (vec![0], 0);
        }
        while dim > 0 && h.iter().sum::<i64>() == 0 {
            // synthetic division by (1 - t): q_k = sum_{j<=k} h_j
            let mut q = Vec::with_capacity(h.len() - 1);
            let mut run = 0;
            for &c in &h[..h.len() - 1] {
                run += c;
                q.push(run);
            }
            h = trim(q);
            dim -= 1;
        }
        (h, dim)
    }

    pub fn data(&self) -> HilbertData {
        let (h, krull) = self.reduced();
        if krull == 0 || h.iter().all(|&c| c == 0) {
            return HilbertData {
                hilbert_polynomial: vec![BigRational::zero()],
                projective_dimension: -1,
                degree: 0,
                sectional_genus: None,
                h_vector: h,
            };
        }
        let r = krull - 1;
        let mut hp = vec![BigRational::zero(); r + 1];
        for (k, &hk) in h.iter().enumerate() {
            let b = binomial_poly(r as i64 - k as i64, r);
            for (i, c) in b.into_iter().enumerate() {
                hp[i] += c * BigRational::from_integer(BigInt::from(hk));
            }
        }
        let degree: i64 = h.iter().sum();
        let weighted: i64 = h.iter().enumerate().map(|(k, &c)| k as i64 * c).sum();
        let sectional_genus = if r >= 1 { Some(1 - degree + weighted) } else { None };
        HilbertData {
            hilbert_polynomial: hp,
            projective_dimension: r as i64,
            degree: degree as u64,
            sectional_genus,
            h_vector: h,
        }
    }
}

impl HilbertData {
    pub fn genus(&self) -> Result<i64> {
        self.sectional_genus.ok_or(Error::DimensionTooLow(self.projective_dimension))
    }

    /// Evaluates the Hilbert polynomial at an integer.
    pub fn eval(&self, t: i64) -> BigRational {
        let t = BigRational::from_integer(BigInt::from(t));
        self.hilbert_polynomial.iter().rev().fold(BigRational::zero(), |acc, c| acc * &t + c)
    }

    /// Coefficients rendered as exact fractions.
    pub fn hp_strings(&self) -> Vec<String> {
        self.hilbert_polynomial.iter().map(|c| c.to_string()).collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "hilbert_polynomial": self.hp_strings(),
            "projective_dimension": self.projective_dimension,
            "degree": self.degree,
            "sectional_genus": self.sectional_genus,
        })
    }

    /// Applies the difference operator `P(t) - P(t-1)` `times` times.
    pub fn difference(&self, times: usize) -> Vec<BigRational> {
        let mut p = self.hilbert_polynomial.clone();
        for _ in 0..times {
            // p(t) - p(t - 1) computed coefficientwise via binomial expansion
            let n = p.len();
            let mut shifted = vec![BigRational::zero(); n];
            for (k, c) in p.iter().enumerate() {
                // c * (t-1)^k
                for j in 0..=k {
                    let b = binomial(k as i64, j as i64);
                    let sign = if (k - j) % 2 == 0 { 1 } else { -1 };
                    shifted[j] += c * BigRational::from_integer(BigInt::from(sign * b));
                }
            }
            let mut diff: Vec<BigRational> = p.iter().zip(&shifted).map(|(a, b)| a - b).collect();
            while diff.len() > 1 && diff.last().unwrap().is_zero() {
                diff.pop();
            }
            p = diff;
        }
        p
    }

    /// `degree == leading coefficient * dim!`.
    pub fn degree_consistent(&self) -> bool {
        if self.projective_dimension < 0 {
            return self.degree == 0;
        }
        let r = self.projective_dimension as usize;
        let fact: BigInt = (1..=r as u64).map(BigInt::from).product();
        let lead = self.hilbert_polynomial.get(r).cloned().unwrap_or_else(BigRational::zero);
        let d = lead * BigRational::from_integer(fact);
        d.is_integer() && !d.is_negative() && d.to_integer().to_u64() == Some(self.degree)
    }
}
