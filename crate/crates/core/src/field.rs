//! Prime fields, small extension fields and the rationals.
//!
//! Every field is a small runtime context value; elements are plain data and
//! all arithmetic goes through the context (`field.mul(&a, &b)`).

use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::upoly;

pub trait Field: Clone + Debug + PartialEq + Send + Sync {
    type Elem: Clone + PartialEq + Eq + Hash + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn from_i64(&self, v: i64) -> Self::Elem;
    /// 0 for the rationals.
    fn characteristic(&self) -> u64;
    /// Number of elements, `None` when infinite.
    fn order(&self) -> Option<u64>;
    fn cfg(&self) -> FieldCfg;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

/// Finite fields can be enumerated; element `i` has base-`p` digits as its
/// coordinates in the power basis, so index 0 is zero and index 1 is one.
pub trait FiniteField: Field {
    fn element(&self, index: u64) -> Self::Elem;
    fn index_of(&self, a: &Self::Elem) -> u64;
    fn size(&self) -> u64 {
        self.order().expect("finite field")
    }
    fn elements(&self) -> Box<dyn Iterator<Item = Self::Elem> + '_> {
        Box::new((0..self.size()).map(move |i| self.element(i)))
    }
}

/// Serializable description of a coefficient field.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldCfg {
    pub characteristic: u64,
    pub extension_degree: u32,
    /// Low-order coefficients of the monic defining polynomial; empty for degree 1.
    pub modulus: Vec<u32>,
}

impl FieldCfg {
    pub fn prime(p: u64) -> Result<Self> {
        Fp::new(p).map(|f| f.cfg())
    }

    pub fn extension(p: u64, degree: u32) -> Result<Self> {
        Fq::new(p, degree).map(|f| f.cfg())
    }

    pub fn rationals() -> Self {
        FieldCfg { characteristic: 0, extension_degree: 1, modulus: Vec::new() }
    }

    pub fn is_finite(&self) -> bool {
        self.characteristic != 0
    }

    pub fn order(&self) -> Option<u64> {
        if self.characteristic == 0 {
            None
        } else {
            Some(self.characteristic.pow(self.extension_degree))
        }
    }

    pub fn prime_field(&self) -> Result<Fp> {
        if self.characteristic == 0 {
            return Err(Error::CharZeroUnsupported);
        }
        if self.extension_degree != 1 {
            return Err(Error::UnsupportedField(format!(
                "F_{}^{} is not a prime field",
                self.characteristic, self.extension_degree
            )));
        }
        Fp::new(self.characteristic)
    }

    pub fn extension_field(&self) -> Result<Fq> {
        if self.characteristic == 0 {
            return Err(Error::CharZeroUnsupported);
        }
        let f = Fq::with_modulus(self.characteristic, self.extension_degree, &self.modulus)?;
        Ok(f)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Smallest prime strictly greater than `n`.
pub fn next_prime(n: u64) -> u64 {
    let mut c = n + 1;
    while !is_prime(c) {
        c += 1;
    }
    c
}

/// The prime field `F_p`, `p < 2^31`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    p: u32,
}

impl Fp {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) || p >= (1 << 31) {
            return Err(Error::InvalidField(format!("{p} is not a prime below 2^31")));
        }
        Ok(Fp { p: p as u32 })
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn reduce_i64(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    /// Symmetric lift into `(-p/2, p/2]`.
    pub fn lift(&self, a: u32) -> i64 {
        let a = a as i64;
        let p = self.p as i64;
        if a > p / 2 {
            a - p
        } else {
            a
        }
    }
}

impl Field for Fp {
    type Elem = u32;

    #[inline]
    fn zero(&self) -> u32 {
        0
    }
    #[inline]
    fn one(&self) -> u32 {
        1
    }
    #[inline]
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    #[inline]
    fn add(&self, a: &u32, b: &u32) -> u32 {
        let s = *a + *b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    #[inline]
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    #[inline]
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 * *b as u64) % self.p as u64) as u32
    }
    #[inline]
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u32) -> Option<u32> {
        if *a == 0 {
            return None;
        }
        let (mut r0, mut r1) = (self.p as i64, *a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        Some(self.reduce_i64(t0))
    }
    fn from_i64(&self, v: i64) -> u32 {
        self.reduce_i64(v)
    }
    fn characteristic(&self) -> u64 {
        self.p as u64
    }
    fn order(&self) -> Option<u64> {
        Some(self.p as u64)
    }
    fn cfg(&self) -> FieldCfg {
        FieldCfg { characteristic: self.p as u64, extension_degree: 1, modulus: Vec::new() }
    }
}

impl FiniteField for Fp {
    fn element(&self, index: u64) -> u32 {
        index as u32
    }
    fn index_of(&self, a: &u32) -> u64 {
        *a as u64
    }
}

pub const MAX_EXTENSION_DEGREE: u32 = 4;

/// `F_{p^e}` for `1 <= e <= 4`, elements in the power basis of `F_p[t]/(m(t))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fq {
    base: Fp,
    degree: usize,
    /// Low-order coefficients `m_0..m_{e-1}` of the monic modulus.
    modulus: [u32; 4],
}

pub type FqElem = [u32; 4];

impl Fq {
    /// Builds `F_{p^e}` from the lexicographically smallest monic irreducible
    /// polynomial of degree `e` (coefficients compared from `t^{e-1}` down).
    pub fn new(p: u64, degree: u32) -> Result<Self> {
        let base = Fp::new(p)?;
        if degree == 0 || degree > MAX_EXTENSION_DEGREE {
            return Err(Error::InvalidField(format!("extension degree {degree} outside 1..=4")));
        }
        let modulus = smallest_irreducible(base, degree as usize)?;
        Self::with_modulus(p, degree, &modulus)
    }

    pub fn with_modulus(p: u64, degree: u32, modulus: &[u32]) -> Result<Self> {
        let base = Fp::new(p)?;
        if degree == 0 || degree > MAX_EXTENSION_DEGREE {
            return Err(Error::InvalidField(format!("extension degree {degree} outside 1..=4")));
        }
        let e = degree as usize;
        if (e == 1 && !modulus.is_empty()) || (e > 1 && modulus.len() != e) {
            return Err(Error::InvalidField("modulus length does not match degree".into()));
        }
        let mut m = [0u32; 4];
        for (i, c) in modulus.iter().enumerate() {
            if *c >= base.p {
                return Err(Error::InvalidField("modulus coefficient not reduced".into()));
            }
            m[i] = *c;
        }
        if e > 1 {
            let mut dense: Vec<u32> = m[..e].to_vec();
            dense.push(1);
            if !upoly::is_irreducible(&base, &dense) {
                return Err(Error::InvalidField("modulus is reducible".into()));
            }
        }
        Ok(Fq { base, degree: e, modulus: m })
    }

    pub fn base(&self) -> Fp {
        self.base
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    #[inline]
    pub fn embed(&self, c: u32) -> FqElem {
        [c, 0, 0, 0]
    }

    /// The element `t` generating the power basis.
    pub fn generator(&self) -> FqElem {
        if self.degree == 1 {
            [1, 0, 0, 0]
        } else {
            [0, 1, 0, 0]
        }
    }

    /// `Some(c)` when the element lies in the prime subfield.
    pub fn as_base(&self, a: &FqElem) -> Option<u32> {
        if a[1..].iter().all(|&c| c == 0) {
            Some(a[0])
        } else {
            None
        }
    }

    /// Frobenius `a -> a^p`.
    pub fn frobenius(&self, a: &FqElem) -> FqElem {
        self.pow(a, self.base.p as u64)
    }

    /// Element written in the generator `a`, coefficients lifted to
    /// `(-p/2, p/2]`, e.g. `3 - 2*a^2`.
    pub fn display(&self, x: &FqElem) -> String {
        if let Some(c) = self.as_base(x) {
            return self.base.lift(c).to_string();
        }
        let mut s = String::new();
        for (i, &c) in x[..self.degree].iter().enumerate() {
            let v = self.base.lift(c);
            if v == 0 {
                continue;
            }
            let mag = v.unsigned_abs();
            let body = match (i, mag) {
                (0, _) => mag.to_string(),
                (1, 1) => "a".to_string(),
                (1, _) => format!("{mag}*a"),
                (_, 1) => format!("a^{i}"),
                _ => format!("{mag}*a^{i}"),
            };
            if s.is_empty() {
                s = if v < 0 { format!("-{body}") } else { body };
            } else {
                s.push_str(if v < 0 { " - " } else { " + " });
                s.push_str(&body);
            }
        }
        s
    }
}

impl Field for Fq {
    type Elem = FqElem;

    fn zero(&self) -> FqElem {
        [0; 4]
    }
    fn one(&self) -> FqElem {
        [1, 0, 0, 0]
    }
    fn is_zero(&self, a: &FqElem) -> bool {
        a.iter().all(|&c| c == 0)
    }
    fn add(&self, a: &FqElem, b: &FqElem) -> FqElem {
        let mut r = [0; 4];
        for i in 0..self.degree {
            r[i] = self.base.add(&a[i], &b[i]);
        }
        r
    }
    fn sub(&self, a: &FqElem, b: &FqElem) -> FqElem {
        let mut r = [0; 4];
        for i in 0..self.degree {
            r[i] = self.base.sub(&a[i], &b[i]);
        }
        r
    }
    fn mul(&self, a: &FqElem, b: &FqElem) -> FqElem {
        let e = self.degree;
        if e == 1 {
            return [self.base.mul(&a[0], &b[0]), 0, 0, 0];
        }
        let p = self.base.p as u64;
        let mut prod = [0u64; 7];
        for i in 0..e {
            if a[i] == 0 {
                continue;
            }
            for j in 0..e {
                prod[i + j] = (prod[i + j] + a[i] as u64 * b[j] as u64) % p;
            }
        }
        // t^e = -(m_0 + ... + m_{e-1} t^{e-1})
        for k in (e..2 * e - 1).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for i in 0..e {
                let sub = c * self.modulus[i] as u64 % p;
                prod[k - e + i] = (prod[k - e + i] + p - sub) % p;
            }
        }
        let mut r = [0u32; 4];
        for i in 0..e {
            r[i] = prod[i] as u32;
        }
        r
    }
    fn neg(&self, a: &FqElem) -> FqElem {
        let mut r = [0; 4];
        for i in 0..self.degree {
            r[i] = self.base.neg(&a[i]);
        }
        r
    }
    fn inv(&self, a: &FqElem) -> Option<FqElem> {
        if self.is_zero(a) {
            return None;
        }
        let q = self.size();
        Some(self.pow(a, q - 2))
    }
    fn from_i64(&self, v: i64) -> FqElem {
        self.embed(self.base.reduce_i64(v))
    }
    fn characteristic(&self) -> u64 {
        self.base.p as u64
    }
    fn order(&self) -> Option<u64> {
        Some((self.base.p as u64).pow(self.degree as u32))
    }
    fn cfg(&self) -> FieldCfg {
        FieldCfg {
            characteristic: self.base.p as u64,
            extension_degree: self.degree as u32,
            modulus: if self.degree == 1 { Vec::new() } else { self.modulus[..self.degree].to_vec() },
        }
    }
}

impl FiniteField for Fq {
    fn element(&self, mut index: u64) -> FqElem {
        let p = self.base.p as u64;
        let mut r = [0u32; 4];
        for slot in r.iter_mut().take(self.degree) {
            *slot = (index % p) as u32;
            index /= p;
        }
        r
    }
    fn index_of(&self, a: &FqElem) -> u64 {
        let p = self.base.p as u64;
        a[..self.degree].iter().rev().fold(0u64, |acc, &c| acc * p + c as u64)
    }
}

fn smallest_irreducible(base: Fp, degree: usize) -> Result<Vec<u32>> {
    if degree == 1 {
        return Ok(Vec::new());
    }
    let p = base.p() as u64;
    let total = p.checked_pow(degree as u32).ok_or_else(|| Error::InvalidField("field too large".into()))?;
    for idx in 0..total {
        // idx digits: most significant digit is the t^{e-1} coefficient, so
        // increasing idx walks the lexicographic order from the top coefficient.
        let mut coeffs = vec![0u32; degree];
        let mut rest = idx;
        for c in coeffs.iter_mut() {
            *c = (rest % p) as u32;
            rest /= p;
        }
        let mut dense = coeffs.clone();
        dense.push(1);
        if upoly::is_irreducible(&base, &dense) {
            return Ok(coeffs);
        }
    }
    Err(Error::InvalidField(format!("no irreducible polynomial of degree {degree} over F_{p}")))
}

/// The field of rationals with reduced big-integer fractions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Q;

impl Field for Q {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn order(&self) -> Option<u64> {
        None
    }
    fn cfg(&self) -> FieldCfg {
        FieldCfg::rationals()
    }
}

/// Reduces a rational into `F_p`; `None` when `p` divides the denominator.
pub fn rational_mod(r: &BigRational, fp: &Fp) -> Option<u32> {
    let p = BigInt::from(fp.p());
    let num = ((r.numer() % &p) + &p) % &p;
    let den = ((r.denom() % &p) + &p) % &p;
    let n: u32 = num.abs().try_into().ok()?;
    let d: u32 = den.abs().try_into().ok()?;
    fp.div(&n, &d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn check_axioms<F: FiniteField>(f: &F, seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = f.size();
        for _ in 0..1000 {
            let a = f.element(rng.gen_range(0..n));
            let b = f.element(rng.gen_range(0..n));
            let c = f.element(rng.gen_range(0..n));
            assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
            assert_eq!(f.add(&f.add(&a, &b), &c), f.add(&a, &f.add(&b, &c)));
            assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
            assert_eq!(f.sub(&f.add(&a, &b), &b), a);
            if !f.is_zero(&a) {
                let ai = f.inv(&a).unwrap();
                assert_eq!(f.mul(&a, &ai), f.one());
            }
        }
    }

    #[test]
    fn prime_field_axioms() {
        for p in [2u64, 3, 101, 32003, 65537] {
            check_axioms(&Fp::new(p).unwrap(), p);
        }
    }

    #[test]
    fn extension_field_axioms() {
        for (p, e) in [(2u64, 2u32), (2, 3), (3, 2), (5, 3), (101, 2), (101, 3), (7, 4)] {
            let f = Fq::new(p, e).unwrap();
            assert_eq!(f.size(), p.pow(e));
            check_axioms(&f, p * 10 + e as u64);
        }
    }

    #[test]
    fn every_nonzero_element_of_small_fields_inverts() {
        let f = Fq::new(3, 3).unwrap();
        for a in f.elements().skip(1) {
            assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), f.one());
        }
    }

    #[test]
    fn smallest_irreducible_over_f2() {
        // x^2 + x + 1 and x^3 + x + 1
        assert_eq!(Fq::new(2, 2).unwrap().cfg().modulus, vec![1, 1]);
        assert_eq!(Fq::new(2, 3).unwrap().cfg().modulus, vec![1, 1, 0]);
    }

    #[test]
    fn rejects_composites_and_reducible_moduli() {
        assert!(Fp::new(1).is_err());
        assert!(Fp::new(91).is_err());
        assert!(Fq::with_modulus(5, 2, &[4, 0]).is_err()); // x^2 - 1
        assert!(Fq::new(5, 5).is_err());
    }

    #[test]
    fn element_indexing_round_trips() {
        let f = Fq::new(5, 2).unwrap();
        for i in 0..f.size() {
            assert_eq!(f.index_of(&f.element(i)), i);
        }
        assert_eq!(f.element(1), f.one());
    }

    #[test]
    fn rational_reduction() {
        let fp = Fp::new(7).unwrap();
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        assert_eq!(rational_mod(&half, &fp), Some(4));
        let bad = BigRational::new(BigInt::from(1), BigInt::from(7));
        assert_eq!(rational_mod(&bad, &fp), None);
        let q = Q;
        assert_eq!(q.mul(&half, &q.from_i64(2)), q.one());
    }
}
