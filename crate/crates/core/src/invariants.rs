//! Numerical relations between the degrees and base-locus dimensions of a
//! special Cremona transformation, divisor classes on the blow-up, and
//! Hilbert polynomials of resolutions.

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::groebner::{HilbertData, HilbertSeries};
use crate::report::{CheckResult, Provenance};

/// `a / b` when it is a positive integer.
fn positive_quotient(a: i64, b: i64) -> Option<u64> {
    if b <= 0 || a <= 0 || a % b != 0 {
        None
    } else {
        Some((a / b) as u64)
    }
}

/// Solves `2 + r1 = d2 [(n+1) - d1 (n - r1 - 1)]` for `d2`.
pub fn esb_cremona_d2(n: u64, d1: u64, r1: u64) -> Option<u64> {
    let (n, d1, r1) = (n as i64, d1 as i64, r1 as i64);
    positive_quotient(2 + r1, (n + 1) - d1 * (n - r1 - 1))
}

/// Solves `2 + r2 = d1 [(n+1) - d2 (n - r2 - 1)]` for `r2`, which is linear
/// in `r2`: `r2 = [d1 d2 (n-1) - d1 (n+1) + 2] / (d1 d2 - 1)`.
pub fn esb_cremona_r2(n: u64, d1: u64, d2: u64) -> Option<u64> {
    let (n, d1, d2) = (n as i64, d1 as i64, d2 as i64);
    let num = d1 * d2 * (n - 1) - d1 * (n + 1) + 2;
    let den = d1 * d2 - 1;
    if den <= 0 || num < 0 || num % den != 0 {
        return None;
    }
    Some((num / den) as u64)
}

/// Solves `2 + r1 = d2 [2n - 1 + d1 (r1 + 1 - 2n)]` for `d2` (source a
/// hypersurface of `P^{2n+1}`).
pub fn esb_hypersurface_d2(n: u64, d1: u64, r1: u64) -> Option<u64> {
    let (n, d1, r1) = (n as i64, d1 as i64, r1 as i64);
    positive_quotient(2 + r1, 2 * n - 1 + d1 * (r1 + 1 - 2 * n))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContractionProfile {
    pub n: u64,
    pub m: u64,
    pub d1: u64,
    pub d2: u64,
    pub r1: u64,
    pub r2: u64,
}

impl ContractionProfile {
    fn relation(n: i64, da: i64, db: i64, ra: i64) -> bool {
        2 + ra == db * ((n + 1) - da * (n - ra - 1))
    }

    /// Both dimension relations hold exactly (source and target equal).
    pub fn satisfies_cremona_relations(&self) -> bool {
        let (n, d1, d2, r1, r2) = (self.n as i64, self.d1 as i64, self.d2 as i64, self.r1 as i64, self.r2 as i64);
        self.m == self.n && Self::relation(n, d1, d2, r1) && Self::relation(n, d2, d1, r2)
    }

    /// The profile of the inverse map.
    pub fn swapped(&self) -> Self {
        ContractionProfile { d1: self.d2, d2: self.d1, r1: self.r2, r2: self.r1, ..*self }
    }
}

/// `a H_1 + b E_1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DivisorClass {
    pub a: i64,
    pub b: i64,
}

impl DivisorClass {
    pub const H1: DivisorClass = DivisorClass { a: 1, b: 0 };
    pub const E1: DivisorClass = DivisorClass { a: 0, b: 1 };

    pub fn new(a: i64, b: i64) -> Self {
        DivisorClass { a, b }
    }
}

impl Add for DivisorClass {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        DivisorClass::new(self.a + o.a, self.b + o.b)
    }
}

impl Sub for DivisorClass {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        DivisorClass::new(self.a - o.a, self.b - o.b)
    }
}

impl Neg for DivisorClass {
    type Output = Self;
    fn neg(self) -> Self {
        DivisorClass::new(-self.a, -self.b)
    }
}

impl Mul<DivisorClass> for i64 {
    type Output = DivisorClass;
    fn mul(self, c: DivisorClass) -> DivisorClass {
        DivisorClass::new(self * c.a, self * c.b)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassFlip {
    pub h2: DivisorClass,
    pub e2: DivisorClass,
}

/// `H_2 = d1 H_1 - E_1` and `E_2 = d2 H_2 - H_1`.
pub fn class_flip(d1: u64, d2: u64) -> ClassFlip {
    let h2 = DivisorClass::new(d1 as i64, -1);
    let e2 = d2 as i64 * h2 - DivisorClass::H1;
    ClassFlip { h2, e2 }
}

pub fn secant_hypersurface_degree(d1: u64, d2: u64) -> u64 {
    d1 * d2 - 1
}

/// Twists and ranks of a graded free resolution of an ideal in `P^ambient`;
/// `positions[0]` holds the generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionSpec {
    pub ambient: usize,
    pub positions: Vec<Vec<(i64, u64)>>,
}

impl ResolutionSpec {
    /// `0 -> O(-n-1)^n -> O(-n)^{n+1} -> I -> 0` in `P^m`.
    pub fn hilbert_burch(m: usize, n: usize) -> Self {
        ResolutionSpec {
            ambient: m,
            positions: vec![vec![(-(n as i64), n as u64 + 1)], vec![(-(n as i64) - 1, n as u64)]],
        }
    }
}

pub fn resolution_hp(spec: &ResolutionSpec) -> Result<HilbertData> {
    if spec.positions.iter().flatten().any(|&(t, r)| t >= 0 || r == 0) {
        return Err(Error::MalformedSpec("twists must be negative and ranks positive".into()));
    }
    let data = HilbertSeries::from_resolution(spec.ambient + 1, &spec.positions)?.data();
    if !data.degree_consistent() {
        return Err(Error::MalformedSpec("alternating sum does not give a Hilbert polynomial".into()));
    }
    Ok(data)
}

pub fn hilbert_burch_hp(m: usize, n: usize) -> Result<HilbertData> {
    if n < 2 || m < n {
        return Err(Error::Range(format!("need m >= n >= 2, got m={m}, n={n}")));
    }
    resolution_hp(&ResolutionSpec::hilbert_burch(m, n))
}

/// Degree of the residual in a complete intersection of degrees `d` and `e`.
pub fn liaison_degree(d: u64, e: u64, deg_known: u64) -> Result<u64> {
    if deg_known >= d * e {
        return Err(Error::Range(format!("known degree {deg_known} is not below {d}*{e}")));
    }
    Ok(d * e - deg_known)
}

/// All `(h, t)` with `b = h^2 + t`, `h >= 2`, `t >= 0`, in increasing `h`.
pub fn square_plus_t(b: u64) -> Vec<(u64, u64)> {
    (2..).take_while(|h| h * h <= b).map(|h| (h, b - h * h)).collect()
}

/// `(2H' - E')^4` on the blow-up of a fourfold `Y` along a curve `C`:
/// `16 deg Y - 8 deg C + (3 deg C + 2 g(C) - 2)`, or `16 deg Y` when there
/// is no curve.
pub fn blowup_quartic_selfint(deg_y: u64, deg_c: u64, genus_c: u64) -> i64 {
    let (y, c, g) = (deg_y as i64, deg_c as i64, genus_c as i64);
    if c == 0 {
        16 * y
    } else {
        16 * y - 8 * c + (3 * c + 2 * g - 2)
    }
}

fn solution(v: Option<u64>) -> Value {
    v.map_or(json!("NoSolution"), |x| json!(x))
}

fn row(name: &str, expected: Value, actual: Value, provenance: Provenance, anchor: &str) -> CheckResult {
    CheckResult {
        name: name.to_string(),
        pass: expected == actual,
        expected,
        actual,
        provenance,
        anchor: anchor.to_string(),
        millis: 0,
    }
}

/// Every relation instance, with its expected value.
pub fn relation_table() -> Vec<CheckResult> {
    use Provenance::*;
    let flip = |d1, d2| {
        let e2 = class_flip(d1, d2).e2;
        json!([e2.a, e2.b])
    };
    let sq = |b: u64, want: (u64, u64)| json!(square_plus_t(b).contains(&want));
    vec![
        row(
            "esb_d2 n=4 d1=4 r1=2",
            json!(4),
            solution(esb_cremona_d2(4, 4, 2)),
            Paper,
            "special Cremona transformation of type (4,4)",
        ),
        row(
            "esb_r2 n=4 d1=4 d2=4",
            json!(2),
            solution(esb_cremona_r2(4, 4, 4)),
            Derived,
            "base locus of the inverse is a surface",
        ),
        row(
            "esb_d2 n=5 d1=5 r1=3",
            json!(5),
            solution(esb_cremona_d2(5, 5, 3)),
            Paper,
            "special Cremona transformation of type (5,5)",
        ),
        row(
            "esb_r2 n=5 d1=5 d2=5",
            json!(3),
            solution(esb_cremona_r2(5, 5, 5)),
            Derived,
            "base locus of the inverse is a threefold",
        ),
        row(
            "esb_d2 n=6 d1=2 r1=2",
            json!(4),
            solution(esb_cremona_d2(6, 2, 2)),
            Paper,
            "special Cremona transformation of type (2,4)",
        ),
        row(
            "esb_d2 n=4 d1=5 r1=0",
            json!("NoSolution"),
            solution(esb_cremona_d2(4, 5, 0)),
            Trivial,
            "negative bracket",
        ),
        row(
            "esb_hypersurface_d2 n=2 d1=2 r1=2",
            json!(4),
            solution(esb_hypersurface_d2(2, 2, 2)),
            Paper,
            "quartics vanishing on Z, i.e. d2=4",
        ),
        row(
            "esb_hypersurface_d2 n=2 d1=1 r1=0",
            json!("NoSolution"),
            solution(esb_hypersurface_d2(2, 1, 0)),
            Trivial,
            "zero bracket",
        ),
        row(
            "esb_hypersurface_d2 n=2 d1=2 r1=1",
            json!("NoSolution"),
            solution(esb_hypersurface_d2(2, 2, 1)),
            Trivial,
            "negative bracket",
        ),
        row("class_flip E2 (4,4)", json!([15, -4]), flip(4, 4), Paper, "E2 ~ (d1 d2 - 1) H1 - d2 E1"),
        row("class_flip E2 (2,4)", json!([7, -4]), flip(2, 4), Paper, "hypersurface of degree d1 d2 - 1"),
        row("class_flip E2 (2,2)", json!([3, -2]), flip(2, 2), Derived, "formula arithmetic"),
        row(
            "secant_degree (4,4)",
            json!(15),
            json!(secant_hypersurface_degree(4, 4)),
            Paper,
            "is a hypersurface of degree d1 d2 - 1",
        ),
        row(
            "secant_degree (5,5)",
            json!(24),
            json!(secant_hypersurface_degree(5, 5)),
            Paper,
            "hypersurface (of degree 24)",
        ),
        row("secant_degree (1,1)", json!(0), json!(secant_hypersurface_degree(1, 1)), Trivial, "isomorphism"),
        row("liaison (4,4,7)", json!(9), json!(liaison_degree(4, 4, 7).ok()), Paper, "deg(Z) = 4*4 - 7 = 9"),
        row("liaison (5,5,12)", json!(13), json!(liaison_degree(5, 5, 12).ok()), Paper, "4-fold of degree 13"),
        row("liaison (4,4,11)", json!(5), json!(liaison_degree(4, 4, 11).ok()), Paper, "so that it has degree 5"),
        row("blowup_selfint (3,8,3)", json!(12), json!(blowup_quartic_selfint(3, 8, 3)), Paper, "= 48 - 64 + 28 = 12"),
        row("blowup_selfint (3,0,0)", json!(48), json!(blowup_quartic_selfint(3, 0, 0)), Trivial, "no blow-up"),
        row("square_plus_t 11 has (2,7)", json!(true), sq(11, (2, 7)), Paper, "such that 11 = h^2 + t, h=2 and t=7"),
        row("square_plus_t 10 has (2,6)", json!(true), sq(10, (2, 6)), Paper, "h=2 and t=6"),
        row("square_plus_t 4", json!([[2, 0]]), json!(square_plus_t(4)), Trivial, "smallest case"),
    ]
}
