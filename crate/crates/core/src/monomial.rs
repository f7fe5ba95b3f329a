//! Packed monomials: up to 16 variables, one byte per exponent.

use std::cmp::Ordering;
use std::fmt;

pub const MAX_VARS: usize = 16;
pub const MAX_EXPONENT: u32 = 127;

const HIGH_BITS: u128 = 0x8080_8080_8080_8080_8080_8080_8080_8080;

/// Exponent of variable `i` lives in byte `i` of `packed`. The derived
/// `Ord` is an arbitrary total order used only for tie-breaking in containers.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Monomial {
    packed: u128,
    degree: u32,
}

#[inline]
fn byte_sum(x: u128) -> u32 {
    let lo = x as u64;
    let hi = (x >> 64) as u64;
    let f = |v: u64| -> u32 {
        let pairs = (v & 0x00ff_00ff_00ff_00ff) + ((v >> 8) & 0x00ff_00ff_00ff_00ff);
        let quads = (pairs & 0x0000_ffff_0000_ffff) + ((pairs >> 16) & 0x0000_ffff_0000_ffff);
        ((quads & 0xffff_ffff) + (quads >> 32)) as u32
    };
    f(lo) + f(hi)
}

impl Monomial {
    pub const ONE: Monomial = Monomial { packed: 0, degree: 0 };

    pub fn one() -> Self {
        Self::ONE
    }

    pub fn var(i: usize) -> Self {
        assert!(i < MAX_VARS, "variable index {i} out of range");
        Monomial { packed: 1u128 << (8 * i), degree: 1 }
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        assert!(exps.len() <= MAX_VARS, "too many variables");
        let mut packed = 0u128;
        let mut degree = 0;
        for (i, &e) in exps.iter().enumerate() {
            assert!(e <= MAX_EXPONENT, "exponent {e} too large");
            packed |= (e as u128) << (8 * i);
            degree += e;
        }
        Monomial { packed, degree }
    }

    #[inline]
    pub fn packed(&self) -> u128 {
        self.packed
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.degree
    }

    #[inline]
    pub fn exponent(&self, i: usize) -> u32 {
        ((self.packed >> (8 * i)) & 0xff) as u32
    }

    pub fn exponents(&self, nvars: usize) -> Vec<u32> {
        (0..nvars).map(|i| self.exponent(i)).collect()
    }

    pub fn is_one(&self) -> bool {
        self.packed == 0
    }

    /// Index of the largest variable present.
    pub fn support_max(&self) -> Option<usize> {
        if self.packed == 0 {
            None
        } else {
            Some((127 - self.packed.leading_zeros() as usize) / 8)
        }
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        (0..MAX_VARS).filter(move |&i| self.exponent(i) > 0)
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let packed = self.packed + other.packed;
        debug_assert!(packed & HIGH_BITS == 0, "exponent overflow");
        Monomial { packed, degree: self.degree + other.degree }
    }

    /// `self | other`.
    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && ((other.packed | HIGH_BITS) - self.packed) & HIGH_BITS == HIGH_BITS
    }

    /// `self / other` when `other` divides `self`.
    #[inline]
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if other.divides(self) {
            Some(Monomial { packed: self.packed - other.packed, degree: self.degree - other.degree })
        } else {
            None
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut packed = 0u128;
        for i in 0..MAX_VARS {
            packed |= (self.exponent(i).max(other.exponent(i)) as u128) << (8 * i);
        }
        Monomial { packed, degree: byte_sum(packed) }
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut packed = 0u128;
        for i in 0..MAX_VARS {
            packed |= (self.exponent(i).min(other.exponent(i)) as u128) << (8 * i);
        }
        Monomial { packed, degree: byte_sum(packed) }
    }

    #[inline]
    pub fn is_coprime(&self, other: &Monomial) -> bool {
        for i in 0..MAX_VARS {
            if self.exponent(i) > 0 && other.exponent(i) > 0 {
                return false;
            }
        }
        true
    }

    /// Pure power `x_i^e` with `e >= 1`?
    pub fn pure_power_var(&self) -> Option<usize> {
        let v = self.support_max()?;
        if self.exponent(v) == self.degree {
            Some(v)
        } else {
            None
        }
    }

    /// Monomial with variable `i` deleted and higher variables shifted down.
    pub fn drop_var(&self, i: usize) -> Monomial {
        let low_mask = if i == 0 { 0 } else { (1u128 << (8 * i)) - 1 };
        let low = self.packed & low_mask;
        let high = if i + 1 >= MAX_VARS { 0 } else { self.packed >> (8 * (i + 1)) };
        let packed = low | (high << (8 * i));
        Monomial { packed, degree: self.degree - self.exponent(i) }
    }

    pub fn with_exponent(&self, i: usize, e: u32) -> Monomial {
        assert!(e <= MAX_EXPONENT);
        let old = self.exponent(i);
        let packed = (self.packed & !(0xffu128 << (8 * i))) | ((e as u128) << (8 * i));
        Monomial { packed, degree: self.degree - old + e }
    }

    #[inline]
    pub fn grevlex_cmp(&self, other: &Monomial) -> Ordering {
        self.degree.cmp(&other.degree).then_with(|| other.packed.cmp(&self.packed))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display("x"))
    }
}

impl Monomial {
    pub fn display(&self, prefix: &str) -> String {
        if self.is_one() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        for i in 0..MAX_VARS {
            match self.exponent(i) {
                0 => {}
                1 => parts.push(format!("{prefix}{i}")),
                e => parts.push(format!("{prefix}{i}^{e}")),
            }
        }
        parts.join("*")
    }
}

/// Monomial orders used by the Gröbner engine.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    Grevlex,
    /// Variables with index `>= keep` are eliminated: they are compared first
    /// (degree, then grevlex), ties broken by grevlex on the kept block.
    Elimination {
        keep: usize,
    },
}

/// Sort key whose natural ordering agrees with a monomial order.
pub type OrderKey = (u32, u128, u32, u128);

impl MonomialOrder {
    #[inline]
    pub fn key(&self, m: &Monomial) -> OrderKey {
        match *self {
            MonomialOrder::Grevlex => (m.degree, !m.packed, 0, 0),
            MonomialOrder::Elimination { keep } => {
                let mask: u128 = if keep >= MAX_VARS { 0 } else { !0u128 << (8 * keep) };
                let e = m.packed & mask;
                let r = m.packed & !mask;
                let de = byte_sum(e);
                (de, !e, m.degree - de, !r)
            }
        }
    }

    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match *self {
            MonomialOrder::Grevlex => a.grevlex_cmp(b),
            MonomialOrder::Elimination { keep } => {
                let mask: u128 = if keep >= MAX_VARS { 0 } else { !0u128 << (8 * keep) };
                let (ea, eb) = (a.packed & mask, b.packed & mask);
                let (da, db) = (byte_sum(ea), byte_sum(eb));
                da.cmp(&db)
                    .then_with(|| eb.cmp(&ea))
                    .then_with(|| (a.degree - da).cmp(&(b.degree - db)))
                    .then_with(|| (b.packed & !mask).cmp(&(a.packed & !mask)))
            }
        }
    }
}
