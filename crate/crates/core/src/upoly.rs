//! Dense univariate polynomials, coefficients low degree first.

use crate::field::{Field, FiniteField};

pub fn trim<F: Field>(f: &F, mut a: Vec<F::Elem>) -> Vec<F::Elem> {
    while a.last().is_some_and(|c| f.is_zero(c)) {
        a.pop();
    }
    a
}

/// Degree, `None` for the zero polynomial.
pub fn degree<F: Field>(f: &F, a: &[F::Elem]) -> Option<usize> {
    a.iter().rposition(|c| !f.is_zero(c))
}

fn coeff<F: Field>(f: &F, a: &[F::Elem], i: usize) -> F::Elem {
    a.get(i).cloned().unwrap_or_else(|| f.zero())
}

pub fn add<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let n = a.len().max(b.len());
    trim(f, (0..n).map(|i| f.add(&coeff(f, a, i), &coeff(f, b, i))).collect())
}

pub fn sub<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let n = a.len().max(b.len());
    trim(f, (0..n).map(|i| f.sub(&coeff(f, a, i), &coeff(f, b, i))).collect())
}

pub fn mul<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut r = vec![f.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if f.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            r[i + j] = f.add(&r[i + j], &f.mul(x, y));
        }
    }
    trim(f, r)
}

pub fn scale<F: Field>(f: &F, a: &[F::Elem], c: &F::Elem) -> Vec<F::Elem> {
    trim(f, a.iter().map(|x| f.mul(x, c)).collect())
}

pub fn monic<F: Field>(f: &F, a: &[F::Elem]) -> Vec<F::Elem> {
    let a = trim(f, a.to_vec());
    match a.last() {
        None => a,
        Some(lc) => {
            let inv = f.inv(lc).unwrap();
            scale(f, &a, &inv)
        }
    }
}

/// Quotient and remainder; panics on division by zero.
pub fn divrem<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> (Vec<F::Elem>, Vec<F::Elem>) {
    let db = degree(f, b).expect("division by zero polynomial");
    let mut r = trim(f, a.to_vec());
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let inv = f.inv(&b[db]).unwrap();
    let mut q = vec![f.zero(); r.len() - db];
    while let Some(dr) = degree(f, &r) {
        if dr < db {
            break;
        }
        let c = f.mul(&r[dr], &inv);
        let shift = dr - db;
        for i in 0..=db {
            let t = f.mul(&c, &b[i]);
            r[shift + i] = f.sub(&r[shift + i], &t);
        }
        q[shift] = c;
        r.truncate(dr);
        r = trim(f, r);
    }
    (trim(f, q), r)
}

pub fn rem<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    divrem(f, a, b).1
}

/// Monic gcd; the gcd of two zero polynomials is zero.
pub fn gcd<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let mut x = trim(f, a.to_vec());
    let mut y = trim(f, b.to_vec());
    while !y.is_empty() {
        let r = rem(f, &x, &y);
        x = y;
        y = r;
    }
    monic(f, &x)
}

pub fn mulmod<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem], m: &[F::Elem]) -> Vec<F::Elem> {
    rem(f, &mul(f, a, b), m)
}

/// `a^e mod m`.
pub fn powmod<F: Field>(f: &F, a: &[F::Elem], mut e: u64, m: &[F::Elem]) -> Vec<F::Elem> {
    let mut base = rem(f, a, m);
    let mut acc = rem(f, &[f.one()], m);
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(f, &acc, &base, m);
        }
        base = mulmod(f, &base, &base, m);
        e >>= 1;
    }
    acc
}

pub fn eval<F: Field>(f: &F, a: &[F::Elem], x: &F::Elem) -> F::Elem {
    a.iter().rev().fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
}

pub fn derivative<F: Field>(f: &F, a: &[F::Elem]) -> Vec<F::Elem> {
    trim(f, a.iter().enumerate().skip(1).map(|(i, c)| f.mul(c, &f.from_i64(i as i64))).collect())
}

fn x_poly<F: Field>(f: &F) -> Vec<F::Elem> {
    vec![f.zero(), f.one()]
}

fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rabin's irreducibility test.
pub fn is_irreducible<F: FiniteField>(f: &F, a: &[F::Elem]) -> bool {
    let m = monic(f, a);
    let n = match degree(f, &m) {
        None | Some(0) => return false,
        Some(1) => return true,
        Some(n) => n,
    };
    let q = f.size();
    let x = x_poly(f);
    // frob[k] = x^{q^k} mod m
    let mut frob = vec![rem(f, &x, &m)];
    for k in 1..=n {
        let next = powmod(f, &frob[k - 1], q, &m);
        frob.push(next);
    }
    if !sub(f, &frob[n], &x).is_empty() {
        return false;
    }
    for r in prime_factors(n) {
        let h = sub(f, &frob[n / r], &x);
        if degree(f, &gcd(f, &h, &m)).unwrap_or(0) > 0 {
            return false;
        }
    }
    true
}

/// Distinct-degree factorization of a squarefree polynomial: pairs `(d, g_d)`
/// with `g_d` the product of all monic irreducible factors of degree `d`.
pub fn distinct_degree<F: FiniteField>(f: &F, a: &[F::Elem]) -> Vec<(usize, Vec<F::Elem>)> {
    let mut rest = monic(f, a);
    let mut out = Vec::new();
    let q = f.size();
    let x = x_poly(f);
    if degree(f, &rest).unwrap_or(0) == 0 {
        return out;
    }
    let mut h = rem(f, &x, &rest);
    let mut d = 0;
    while let Some(n) = degree(f, &rest) {
        if n == 0 {
            break;
        }
        d += 1;
        if 2 * d > n {
            out.push((n, rest.clone()));
            break;
        }
        h = powmod(f, &h, q, &rest);
        let g = gcd(f, &sub(f, &h, &x), &rest);
        if degree(f, &g).unwrap_or(0) > 0 {
            rest = divrem(f, &rest, &g).0;
            h = rem(f, &h, &rest);
            out.push((d, g));
        }
    }
    out
}

/// Squarefree part (exact when the degree is below the characteristic).
pub fn squarefree<F: Field>(f: &F, a: &[F::Elem]) -> Vec<F::Elem> {
    let a = monic(f, a);
    let d = derivative(f, &a);
    if d.is_empty() {
        return a;
    }
    let g = gcd(f, &a, &d);
    monic(f, &divrem(f, &a, &g).0)
}

/// Distinct roots in the field, sorted by element index.
pub fn roots<F: FiniteField>(f: &F, a: &[F::Elem]) -> Vec<F::Elem> {
    let a = trim(f, a.to_vec());
    if a.is_empty() {
        return Vec::new();
    }
    let x = x_poly(f);
    let xq = powmod(f, &x, f.size(), &a);
    let g = gcd(f, &sub(f, &xq, &x), &a);
    let mut out = Vec::new();
    split_linear(f, &g, &mut out, 1);
    out.sort_by_key(|r| f.index_of(r));
    out
}

fn split_linear<F: FiniteField>(f: &F, g: &[F::Elem], out: &mut Vec<F::Elem>, mut shift: u64) {
    match degree(f, g) {
        None | Some(0) => {}
        Some(1) => out.push(f.neg(&f.div(&g[0], &g[1]).unwrap())),
        Some(n) => {
            let q = f.size();
            if q.is_multiple_of(2) || q <= 4 * n as u64 + 16 {
                for i in 0..q {
                    let r = f.element(i);
                    if f.is_zero(&eval(f, g, &r)) {
                        out.push(r);
                    }
                }
                return;
            }
            loop {
                let lin = vec![f.element(shift % q), f.one()];
                let h = powmod(f, &lin, (q - 1) / 2, g);
                let d = gcd(f, &sub(f, &h, &[f.one()]), g);
                let dd = degree(f, &d).unwrap_or(0);
                shift += 1;
                if dd > 0 && dd < n {
                    let other = divrem(f, g, &d).0;
                    split_linear(f, &d, out, shift);
                    split_linear(f, &other, out, shift);
                    return;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Fp, Fq};

    fn fp(p: u64) -> Fp {
        Fp::new(p).unwrap()
    }

    #[test]
    fn division_identity() {
        let f = fp(101);
        let a = vec![3, 0, 5, 7, 1, 9];
        let b = vec![2, 1, 4];
        let (q, r) = divrem(&f, &a, &b);
        assert_eq!(add(&f, &mul(&f, &q, &b), &r), a);
        assert!(degree(&f, &r).unwrap_or(0) < 2);
    }

    #[test]
    fn irreducibility_matches_root_count_for_quadratics() {
        let f = fp(7);
        for c0 in 0..7u32 {
            for c1 in 0..7u32 {
                let q = vec![c0, c1, 1];
                let has_root = (0..7).any(|x| eval(&f, &q, &x) == 0);
                assert_eq!(is_irreducible(&f, &q), !has_root);
            }
        }
    }

    #[test]
    fn quartic_with_two_quadratic_factors_is_reducible() {
        let f = fp(5);
        // (x^2 + 2)(x^2 + 3) has no roots mod 5
        let q = mul(&f, &[2, 0, 1], &[3, 0, 1]);
        assert!((0..5).all(|x| eval(&f, &q, &x) != 0));
        assert!(!is_irreducible(&f, &q));
    }

    #[test]
    fn roots_of_product_of_linears() {
        let f = fp(32003);
        let mut g = vec![1];
        for r in [5u32, 17, 31999, 1000] {
            g = mul(&f, &g, &[f.neg(&r), 1]);
        }
        g = mul(&f, &g, &[2, 0, 1]);
        let rs = roots(&f, &g);
        for r in [5u32, 17, 31999, 1000] {
            assert!(rs.contains(&r));
        }
        for r in &rs {
            assert_eq!(eval(&f, &g, r), 0);
        }
    }

    #[test]
    fn irreducible_quadratic_splits_in_quadratic_extension() {
        let base = fp(101);
        let fq = Fq::new(101, 2).unwrap();
        // x^2 - 2 is irreducible mod 101 (2 is a non-residue since 101 = 5 mod 8)
        let g = vec![99u32, 0, 1];
        assert!(is_irreducible(&base, &g));
        assert!(roots(&base, &g).is_empty());
        let lifted: Vec<_> = g.iter().map(|&c| fq.embed(c)).collect();
        let rs = roots(&fq, &lifted);
        assert_eq!(rs.len(), 2);
        for r in &rs {
            assert_eq!(fq.mul(r, r), fq.from_i64(2));
        }
    }

    #[test]
    fn distinct_degree_splits_by_degree() {
        let f = fp(3);
        let parts = [vec![0, 1], vec![1, 1], vec![1, 0, 1], vec![1, 2, 0, 1]];
        let mut g = vec![1];
        for p in &parts {
            g = mul(&f, &g, p);
        }
        let dd = distinct_degree(&f, &g);
        let degs: Vec<(usize, usize)> = dd.iter().map(|(d, h)| (*d, degree(&f, h).unwrap())).collect();
        assert_eq!(degs, vec![(1, 2), (2, 2), (3, 3)]);
    }
}
