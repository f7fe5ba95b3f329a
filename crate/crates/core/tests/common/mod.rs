#![allow(dead_code)]

use cremona::detmap::fiber;
use cremona::gallery::{build_example, Payload, DEFAULT_SEED, EXAMPLE_IDS};
use cremona::*;
use rand::Rng;

pub fn fp(p: u64) -> Fp {
    Fp::new(p).unwrap()
}

pub fn random_matrix<R: Rng>(f: &Fp, m: usize, n: usize, rng: &mut R) -> PolyMatrix<Fp> {
    let coeffs: Vec<Vec<Vec<i64>>> =
        (0..=n).map(|_| (0..n).map(|_| (0..=m).map(|_| rng.gen_range(-3..=3)).collect()).collect()).collect();
    PolyMatrix::from_linear_coeffs(f, m + 1, &coeffs).unwrap()
}

pub fn random_vec<R: Rng>(f: &Fp, len: usize, rng: &mut R) -> Vec<u32> {
    (0..len).map(|_| rng.gen_range(0..f.p())).collect()
}

/// `A(x)^T y` against `B(y) x` at random points.
pub fn bilinear_holds<R: Rng>(a: &PolyMatrix<Fp>, rng: &mut R) -> bool {
    let f = *a.field();
    let Ok(map) = DetMap::build(a.clone()) else { return false };
    (0..3).all(|_| {
        let x = random_vec(&f, map.source_dim() + 1, rng);
        let y = random_vec(&f, map.target_dim() + 1, rng);
        a.eval(&x).unwrap().transpose().mul_vec(&y).unwrap() == map.b().eval(&y).unwrap().mul_vec(&x).unwrap()
    })
}

/// Points of the fiber over every target, counted directly against
/// `(q^k - 1)/(q - 1)` for `k` the kernel dimension of `B(y)`.
pub fn fiber_rank_duality(a: &PolyMatrix<Fp>) -> Result<(), String> {
    let f = *a.field();
    let q = f.p() as u64;
    let map = DetMap::build(a.clone()).unwrap();
    let (m, n) = (map.source_dim(), map.target_dim());
    let at: Vec<Matrix<Fp>> = enumerate_projective_points(&f, m, u64::MAX)
        .unwrap()
        .map(|x| a.eval(x.coords()).unwrap().transpose())
        .collect();
    for y in enumerate_projective_points(&f, n, u64::MAX).unwrap() {
        let direct = at.iter().filter(|ax| ax.mul_vec(y.coords()).unwrap().iter().all(|c| *c == 0)).count() as u64;
        let k = (m + 1 - map.b_at(y.coords()).unwrap().rank()) as u32;
        if direct != (q.pow(k) - 1) / (q - 1) {
            return Err(format!("target {:?}: {direct} points, kernel dimension {k}", y.coords()));
        }
        let fib = fiber(&map, &y, GbLimits::default()).unwrap();
        if fib.dim() != k as i64 - 1 {
            return Err(format!("target {:?}: fiber dimension {}", y.coords(), fib.dim()));
        }
    }
    Ok(())
}

/// Base loci and auxiliary loci of the gallery over `F_101`.
pub fn regression_ideals() -> Vec<(String, Ideal<Fp>)> {
    let cfg = FieldCfg::prime(101).unwrap();
    let mut out = Vec::new();
    for id in EXAMPLE_IDS {
        let inst = build_example(id, &cfg, DEFAULT_SEED, &Budget::default()).unwrap();
        out.push((format!("{id}/X"), inst.locus("X").unwrap()));
        if let Payload::FormSystem(_) = inst.payload {
            for (k, v) in &inst.loci {
                if k != "X" {
                    out.push((format!("{id}/{k}"), v.clone()));
                }
            }
        }
    }
    out
}

pub fn random_coordinates<R: Rng>(f: &Fp, n: usize, rng: &mut R) -> Vec<Poly<Fp>> {
    loop {
        let rows: Vec<Vec<u32>> = (0..n).map(|_| random_vec(f, n, rng)).collect();
        if Matrix::from_rows(f, rows.clone()).unwrap().rank() == n {
            return rows.iter().map(|r| Poly::linear(f, r)).collect();
        }
    }
}
