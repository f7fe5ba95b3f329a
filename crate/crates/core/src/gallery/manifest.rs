//! Checks attached to gallery examples, and their evaluation.

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::construct::{binary_common_roots, count_ruling_planes};
use super::{ExampleInstance, Payload};
use crate::budget::Budget;
use crate::detmap::{
    birationality_probe, fiber, fiber_dim_at, image_dim_estimate, linear_system_dim, rank_stratum, sample_points_off,
    singular_points, smoothness_certificate, system_birationality_probe, DetMap, SystemMap,
};
use crate::error::{Error, Result};
use crate::field::Fp;
use crate::groebner::{HilbertData, Ideal};
use crate::invariants::{
    blowup_quartic_selfint, esb_cremona_d2, esb_cremona_r2, hilbert_burch_hp, liaison_degree, resolution_hp,
    secant_hypersurface_degree, ResolutionSpec,
};
use crate::matrix::PolyMatrix;
use crate::points::{enumerate_projective_points, random_point, ProjPoint};
use crate::poly::Poly;
use crate::report::{CheckResult, Provenance};

/// What a check computes. Loci are named ideals of the instance; `X` is the
/// base locus.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum Op {
    /// `A(x)^T y = B(y) x` as a polynomial identity.
    BilinearIdentity,
    /// `B(y)` against a printed matrix. With `x0_last` the printed columns
    /// list `x1, .., xm, x0`.
    FlipMatrix {
        printed: Vec<Vec<String>>,
        x0_last: bool,
    },
    Smoothness {
        locus: String,
        codim: usize,
    },
    /// `{"dim", "degree", "genus"}` of a locus.
    Hilbert {
        locus: String,
    },
    /// Degrees of a minimal generating set.
    Generators {
        locus: String,
    },
    /// `h^0(I(d))`, by interpolation cross-checked against a Gröbner basis.
    LinearSystem {
        locus: String,
        degree: u32,
    },
    /// `V(sub)` lies in `V(sup)`.
    Contains {
        sub: String,
        sup: String,
    },
    Fiber {
        point: Vec<i64>,
    },
    /// Smoothness of the fiber's intersection with `X` inside the fiber.
    FiberSmooth {
        point: Vec<i64>,
    },
    /// Fiber intersection with `X`, cut by a random hyperplane.
    FiberSlice {
        point: Vec<i64>,
    },
    /// Every rational target point: fiber dimensions and intersection degrees.
    AllFibers,
    /// Stratum points over `F_{p^e}`, `e <= extension`.
    StratumPoints {
        rank: usize,
        extension: u32,
    },
    StratumHilbert {
        rank: usize,
    },
    /// Singular points of the stratum over `F_{p^e}`, `e <= extension`.
    StratumSingular {
        rank: usize,
        extension: u32,
    },
    /// Fibers through random points: dimension and length of the intersection with `X`.
    GenericFiber {
        trials: usize,
    },
    Birationality {
        trials: usize,
    },
    /// Distinct `fiber_dim_at` values at sampled points of a locus off `X`.
    FiberDimOn {
        locus: String,
        samples: usize,
    },
    ImageDim {
        locus: Option<String>,
        samples: usize,
    },
    /// `d2` and `r2` from the numerical relations, given `n`, `d1`, `r1`.
    Esb,
    /// Hilbert data from the Hilbert-Burch resolution of the matrix shape.
    HilbertBurch,
    Resolution {
        spec: ResolutionSpec,
    },
    SecantDegree,
    /// Ruling planes of the Segre threefold on the cubic locus `Y`.
    RulingPlanes,
    /// Degree of the residual in two quintics through the image of a
    /// codimension-two linear section of the cubic through `X`.
    ResidualDegree,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckSpec {
    pub name: String,
    #[serde(flatten)]
    pub op: Op,
    pub expected: Value,
    pub provenance: Provenance,
    pub anchor: String,
}

impl CheckSpec {
    pub fn new(name: &str, op: Op, expected: Value, provenance: Provenance, anchor: &str) -> Self {
        CheckSpec { name: name.into(), op, expected, provenance, anchor: anchor.into() }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Manifest(pub Vec<CheckSpec>);

/// `expected` either equals `actual`, or is `{"between": [lo, hi]}`.
pub fn matches(expected: &Value, actual: &Value) -> bool {
    if let Some(range) = expected.get("between").and_then(|r| r.as_array()) {
        if let (Some(lo), Some(hi), Some(a)) =
            (range.first().and_then(Value::as_i64), range.get(1).and_then(Value::as_i64), actual.as_i64())
        {
            return lo <= a && a <= hi;
        }
        return false;
    }
    expected == actual
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub example: String,
    pub prime: u64,
    pub seed: u64,
    pub checks: Vec<CheckResult>,
    pub pass: bool,
}

impl Report {
    pub fn has_unknown(&self) -> bool {
        self.checks.iter().any(|c| c.is_unknown())
    }

    /// 0 all pass, 1 some check failed, 2 only budget exhaustion.
    pub fn exit_code(&self) -> i32 {
        if self.pass {
            0
        } else if self.checks.iter().any(|c| !c.pass && !c.is_unknown()) {
            1
        } else {
            2
        }
    }

    /// Appends the PAPER checks of the same example verified at another
    /// prime, renamed `name@p`.
    pub fn append_recheck(&mut self, other: Report) {
        let p = other.prime;
        self.checks.extend(other.checks.into_iter().filter(|c| c.provenance == Provenance::Paper).map(|mut c| {
            c.name = format!("{}@{p}", c.name);
            c
        }));
        self.pass = self.checks.iter().all(|c| c.pass);
    }

    pub fn without_timings(mut self) -> Self {
        for c in &mut self.checks {
            c.millis = 0;
        }
        self
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct VerifyOptions {
    pub budget: Budget,
    /// Replaces the trial and sample counts of probabilistic checks.
    pub trials: Option<usize>,
}

/// Runs every check; budget exhaustion becomes an `{"unknown": ..}` result.
pub fn verify_manifest(inst: &ExampleInstance, opts: &VerifyOptions) -> Report {
    let checks: Vec<CheckResult> = inst
        .manifest
        .0
        .par_iter()
        .enumerate()
        .map(|(i, spec)| {
            let mut rng = ChaCha8Rng::seed_from_u64(inst.seed ^ (i as u64 + 1).wrapping_mul(0x9e37_79b9_7f4a_7c15));
            let start = Instant::now();
            let out = run_check(inst, &spec.op, opts, &mut rng);
            let millis = start.elapsed().as_millis() as u64;
            let (actual, pass) = match out {
                Ok(v) => {
                    let pass = matches(&spec.expected, &v);
                    (v, pass)
                }
                Err(e) if e.is_budget() => (CheckResult::unknown_value(&e.to_string()), false),
                Err(e) => (json!({ "error": e.to_string() }), false),
            };
            CheckResult {
                name: spec.name.clone(),
                expected: spec.expected.clone(),
                actual,
                pass,
                provenance: spec.provenance,
                anchor: spec.anchor.clone(),
                millis,
            }
        })
        .collect();
    let pass = checks.iter().all(|c| c.pass);
    Report { example: inst.id.clone(), prime: inst.field.characteristic, seed: inst.seed, checks, pass }
}

fn hilbert_json(h: &HilbertData) -> Value {
    json!({ "dim": h.projective_dimension, "degree": h.degree, "genus": h.sectional_genus })
}

fn point(f: &Fp, c: &[i64]) -> Result<ProjPoint<Fp>> {
    ProjPoint::from_i64(f, c)
}

fn det_map(inst: &ExampleInstance) -> Result<DetMap> {
    match &inst.payload {
        Payload::DetMatrix(a) => DetMap::build(a.clone()),
        Payload::FormSystem(_) => Err(Error::Shape("check needs a determinantal map".into())),
    }
}

fn system(inst: &ExampleInstance) -> Result<SystemMap> {
    match &inst.payload {
        Payload::DetMatrix(a) => DetMap::build(a.clone())?.system(),
        Payload::FormSystem(s) => Ok(s.clone()),
    }
}

fn run_check(inst: &ExampleInstance, op: &Op, opts: &VerifyOptions, rng: &mut ChaCha8Rng) -> Result<Value> {
    let budget = &opts.budget;
    let limits = budget.gb;
    let f = inst.prime_field()?;
    let trials = |t: usize| opts.trials.unwrap_or(t);
    match op {
        Op::BilinearIdentity => Ok(json!(det_map(inst)?.check_identity().is_ok())),
        Op::FlipMatrix { printed, x0_last } => {
            let map = det_map(inst)?;
            let b = map.b();
            let p = PolyMatrix::parse(&f, b.nvars(), printed)?;
            if (p.rows(), p.cols()) != (b.rows(), b.cols()) {
                return Ok(json!(false));
            }
            let m = b.cols();
            let shift = usize::from(*x0_last);
            Ok(json!((0..b.rows()).all(|j| (0..m).all(|k| b.get(j, (k + shift) % m) == p.get(j, k)))))
        }
        Op::Smoothness { locus, codim } => {
            let ideal = inst.locus(locus)?;
            let v = smoothness_certificate(&ideal, *codim, rng, budget);
            if let crate::detmap::SmoothnessVerdict::Unknown(why) = &v {
                return Err(Error::BudgetExceeded(why.clone()));
            }
            Ok(json!(v.label()))
        }
        Op::Hilbert { locus } => Ok(hilbert_json(&inst.locus(locus)?.groebner(limits)?.hilbert_data()?)),
        Op::Generators { locus } => {
            let gens = inst.locus(locus)?.minimal_generators(limits)?;
            Ok(json!(gens.iter().map(|g| g.degree().unwrap_or(0)).collect::<Vec<_>>()))
        }
        Op::LinearSystem { locus, degree } => {
            let ideal = inst.locus(locus)?;
            let dim = ideal.groebner(limits)?.hilbert_data()?.projective_dimension;
            if dim < 0 {
                return Err(Error::DimensionTooLow(dim));
            }
            let r = linear_system_dim(&ideal, dim as usize, *degree, rng, budget)?;
            if !r.agree() {
                return Ok(json!({ "interpolation": r.interpolation, "groebner": r.groebner }));
            }
            Ok(json!(r.interpolation))
        }
        Op::Contains { sub, sup } => {
            let gb = inst.locus(sub)?.groebner(limits)?;
            Ok(json!(inst.locus(sup)?.gens().iter().all(|g| gb.contains(g))))
        }
        Op::Fiber { point: c } => {
            let map = det_map(inst)?;
            let rep = fiber(&map, &point(&f, c)?, limits)?;
            Ok(json!({
                "dim": rep.dim(),
                "equations": rep.subspace.equation_strings(),
                "intersection": rep.hilbert.as_ref().map(|h| json!({"dim": h.projective_dimension, "degree": h.degree})),
            }))
        }
        Op::FiberSmooth { point: c } => {
            let map = det_map(inst)?;
            let rep = fiber(&map, &point(&f, c)?, limits)?;
            let v = smoothness_certificate(&rep.intersection, 1, rng, budget);
            if let crate::detmap::SmoothnessVerdict::Unknown(why) = &v {
                return Err(Error::BudgetExceeded(why.clone()));
            }
            Ok(json!(v.label()))
        }
        Op::FiberSlice { point: c } => {
            let map = det_map(inst)?;
            let rep = fiber(&map, &point(&f, c)?, limits)?;
            let k = rep.intersection.nvars();
            let h = random_point(&f, k - 1, rng);
            let slice = rep.intersection.with_gens([Poly::linear(&f, h.coords())]);
            Ok(hilbert_json(&slice.groebner(limits)?.hilbert_data()?))
        }
        Op::AllFibers => {
            let map = det_map(inst)?;
            let mut dims = Vec::new();
            let mut degrees = Vec::new();
            let mut targets = 0u64;
            for y in enumerate_projective_points(&f, map.target_dim(), budget.enumeration)? {
                let rep = fiber(&map, &y, limits)?;
                targets += 1;
                let d = rep.dim();
                if !dims.contains(&d) {
                    dims.push(d);
                }
                let deg = rep.hilbert.as_ref().filter(|_| rep.is_hypersurface_of_degree(map.target_dim() as u64));
                let deg = deg.map(|h| h.degree as i64).unwrap_or(-1);
                if !degrees.contains(&deg) {
                    degrees.push(deg);
                }
            }
            dims.sort();
            degrees.sort();
            Ok(json!({ "targets": targets, "dims": dims, "hypersurface_degrees": degrees }))
        }
        Op::StratumPoints { rank, extension } => {
            let b = Budget { extension_bound: *extension, ..*budget };
            let s = rank_stratum(&det_map(inst)?, *rank, &b)?;
            let pts = s.points.ok_or_else(|| Error::BudgetExceeded("stratum too large to enumerate".into()))?;
            Ok(json!(pts.iter().map(|p| p.coords_display().join(":")).collect::<Vec<_>>()))
        }
        Op::StratumHilbert { rank } => {
            let b = Budget { extension_bound: 0, ..*budget };
            let s = rank_stratum(&det_map(inst)?, *rank, &b)?;
            let h = s.hilbert.ok_or_else(|| Error::BudgetExceeded("no Hilbert data".into()))?;
            Ok(hilbert_json(&h))
        }
        Op::StratumSingular { rank, extension } => {
            let b = Budget { extension_bound: 0, ..*budget };
            let s = rank_stratum(&det_map(inst)?, *rank, &b)?;
            let h = s.hilbert.ok_or_else(|| Error::BudgetExceeded("no Hilbert data".into()))?;
            let codim = s.ideal.nvars() as i64 - 1 - h.projective_dimension;
            let b = Budget { extension_bound: *extension, ..*budget };
            match singular_points(&s.ideal, codim as usize, rng, &b)? {
                Some(pts) => Ok(json!(pts.iter().map(|p| p.coords_display().join(":")).collect::<Vec<_>>())),
                None => Ok(json!({ "positive_dimensional": true })),
            }
        }
        Op::GenericFiber { trials: t } => generic_fibers(inst, trials(*t), rng, budget),
        Op::Birationality { trials: t } => match &inst.payload {
            Payload::DetMatrix(_) => Ok(json!(birationality_probe(&det_map(inst)?, trials(*t), rng)?.label())),
            Payload::FormSystem(s) => Ok(json!(system_birationality_probe(s, trials(*t), rng)?.label())),
        },
        Op::FiberDimOn { locus, samples } => {
            let map = system(inst)?;
            let ideal = inst.locus(locus)?;
            let dim = ideal.groebner(limits)?.hilbert_data()?.projective_dimension;
            if dim < 0 {
                return Err(Error::DimensionTooLow(dim));
            }
            let pts =
                sample_points_off(&ideal, dim as usize, trials(*samples), rng, budget, 50 * trials(*samples), |p| {
                    map.eval(p).is_ok()
                })?;
            let mut vals = pts.iter().map(|p| fiber_dim_at(&map, p)).collect::<Result<Vec<_>>>()?;
            vals.sort();
            vals.dedup();
            Ok(json!(vals))
        }
        Op::ImageDim { locus, samples } => {
            let map = system(inst)?;
            let n = trials(*samples);
            match locus {
                None => {
                    let pts: Vec<_> = (0..n).map(|_| random_point(&f, map.source_dim(), rng)).collect();
                    Ok(json!(image_dim_estimate(&map, None, &pts)?))
                }
                Some(name) => {
                    let ideal = inst.locus(name)?;
                    let dim = ideal.groebner(limits)?.hilbert_data()?.projective_dimension;
                    if dim < 0 {
                        return Err(Error::DimensionTooLow(dim));
                    }
                    let pts = sample_points_off(&ideal, dim as usize, n, rng, budget, 50 * n, |p| map.eval(p).is_ok())?;
                    Ok(json!(image_dim_estimate(&map, Some(&ideal), &pts)?))
                }
            }
        }
        Op::Esb => {
            let map = system(inst)?;
            let n = map.target_dim() as u64;
            let d1 = map.degree() as u64;
            let r1 = inst.locus("X")?.groebner(limits)?.hilbert_data()?.projective_dimension;
            if map.source_dim() as u64 != n || r1 < 0 {
                return Err(Error::Shape("relations need a map P^n -> P^n with nonempty base locus".into()));
            }
            let d2 = esb_cremona_d2(n, d1, r1 as u64);
            let r2 = d2.and_then(|d2| esb_cremona_r2(n, d1, d2));
            Ok(json!({ "d2": d2, "r2": r2 }))
        }
        Op::HilbertBurch => {
            let map = det_map(inst)?;
            Ok(hilbert_json(&hilbert_burch_hp(map.source_dim(), map.target_dim())?))
        }
        Op::Resolution { spec } => Ok(hilbert_json(&resolution_hp(spec)?)),
        Op::SecantDegree => {
            let map = det_map(inst)?;
            let n = map.target_dim() as u64;
            Ok(json!(secant_hypersurface_degree(n, n)))
        }
        Op::RulingPlanes => {
            let y = inst.locus("Y")?;
            let [cubic] = y.gens() else {
                return Err(Error::Shape("Y must be a single cubic form".into()));
            };
            let r = count_ruling_planes(cubic)?;
            if r.degenerate {
                return Ok(json!({ "degenerate": r.count }));
            }
            Ok(json!(r.count))
        }
        Op::ResidualDegree => {
            let h = inst.locus("X")?.groebner(limits)?.hilbert_data()?;
            let g = h.genus()?;
            let cubic_section = blowup_quartic_selfint(3, h.degree, g.max(0) as u64);
            if cubic_section < 0 {
                return Err(Error::Range(format!("negative self-intersection {cubic_section}")));
            }
            Ok(json!(liaison_degree(5, 5, cubic_section as u64)?))
        }
    }
}

/// Fibers through random source points. For determinantal maps the fiber is
/// solved exactly; for form systems it is the line through `p` along the
/// Jacobian kernel, checked to lie in the fiber.
fn generic_fibers(inst: &ExampleInstance, trials: usize, rng: &mut ChaCha8Rng, budget: &Budget) -> Result<Value> {
    let f = inst.prime_field()?;
    let mut seen: Vec<Value> = Vec::new();
    let mut push = |v: Value| {
        if !seen.contains(&v) {
            seen.push(v);
        }
    };
    match &inst.payload {
        Payload::DetMatrix(_) => {
            let map = det_map(inst)?;
            for _ in 0..trials {
                let p = random_point(&f, map.source_dim(), rng);
                let Ok(y) = map.eval(&p) else { continue };
                let rep = fiber(&map, &y, budget.gb)?;
                let length = rep.hilbert.as_ref().map(|h| h.degree);
                push(json!({ "dim": rep.dim(), "length": length }));
            }
        }
        Payload::FormSystem(map) => {
            let x = inst.locus("X")?;
            for _ in 0..trials {
                let p = random_point(&f, map.source_dim(), rng);
                let Ok(d) = fiber_dim_at(map, &p) else { continue };
                if d != 1 {
                    push(json!({ "dim": d }));
                    continue;
                }
                let j = map.jacobian_at(p.coords())?;
                let v = j.kernel().into_iter().next().ok_or_else(|| Error::Shape("empty kernel".into()))?;
                let line = [p.coords().to_vec(), v];
                let images: Vec<Poly<Fp>> =
                    (0..map.source_dim() + 1).map(|k| Poly::linear(&f, &[line[0][k], line[1][k]])).collect();
                let on_line = map.forms().iter().map(|g| g.substitute(&images)).collect::<Result<Vec<_>>>()?;
                let at_p = map.eval(&p)?;
                let in_fiber = proportional(&on_line, at_p.coords());
                let restricted = x.gens().iter().map(|g| g.substitute(&images)).collect::<Result<Vec<_>>>()?;
                let length = binary_common_roots(&restricted);
                if in_fiber {
                    push(json!({ "dim": 1, "length": length }));
                } else {
                    push(json!({ "dim": 1, "length": length, "in_fiber": false }));
                }
            }
        }
    }
    Ok(Value::Array(seen))
}

/// `forms` restricted to a line are proportional to the constant vector `y`.
fn proportional(forms: &[Poly<Fp>], y: &[u32]) -> bool {
    let i = y.iter().position(|c| *c != 0).unwrap();
    forms.iter().zip(y).all(|(g, yj)| g.scale(&y[i]).sub(&forms[i].scale(yj)).is_zero())
}

impl ExampleInstance {
    /// A named ideal; `X` is the base locus of the map.
    pub fn locus(&self, name: &str) -> Result<Ideal<Fp>> {
        if let Some(i) = self.loci.get(name) {
            return Ok(i.clone());
        }
        match (name, &self.payload) {
            ("X", Payload::DetMatrix(a)) => Ok(DetMap::build(a.clone())?.base_ideal()),
            ("X", Payload::FormSystem(s)) => Ideal::new(s.field(), s.source_dim() + 1, s.forms().to_vec()),
            _ => Err(Error::Shape(format!("instance has no locus `{name}`"))),
        }
    }
}
