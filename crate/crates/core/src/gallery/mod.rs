//! Named examples with manifests of the facts they are expected to satisfy.

pub mod construct;
pub mod data;
mod manifest;
#[cfg(test)]
mod tests;

use std::collections::BTreeMap;

use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

pub use construct::{
    count_ruling_planes, degree_basis, del_pezzo_quintic, divisor12_complete_intersection, fano_cubic, segre_cone,
    DelPezzo, RulingCount, MAX_RESEEDS,
};
pub use manifest::{matches, verify_manifest, CheckSpec, Manifest, Op, Report, VerifyOptions};

use crate::budget::Budget;
use crate::detmap::{smoothness_certificate, DetMap, SmoothnessVerdict, SystemMap};
use crate::error::{Error, Result};
use crate::field::{next_prime, Field, FieldCfg, Fp, Q};
use crate::groebner::Ideal;
use crate::invariants::ResolutionSpec;
use crate::matrix::PolyMatrix;
use crate::poly::{parse_poly, Poly};
use crate::report::Provenance::{self, Derived, Paper, Trivial};
use data::Rows;

pub const EXAMPLE_IDS: [&str; 10] = [
    "segre_p5",
    "todd_room",
    "bordiga_random",
    "quinto_p5_plane",
    "quinto_p5_solid",
    "conic_p5_general",
    "conic_p5_special",
    "del_pezzo_cubic",
    "semple_tyrrell",
    "p7_threefold",
];

pub const DEFAULT_SEED: u64 = 1;

#[derive(Clone, Debug)]
pub enum Payload {
    DetMatrix(PolyMatrix<Fp>),
    FormSystem(SystemMap),
}

#[derive(Clone, Debug)]
pub struct ExampleInstance {
    pub id: String,
    pub field: FieldCfg,
    pub seed: u64,
    pub payload: Payload,
    /// Auxiliary loci by name (`W`, `M`, `Y`, `Pi`, ...).
    pub loci: BTreeMap<String, Ideal<Fp>>,
    pub manifest: Manifest,
    pub warnings: Vec<String>,
}

fn poly_strings(ps: &[Poly<Fp>]) -> Vec<String> {
    ps.iter().map(|p| p.to_string()).collect()
}

fn parse_strings(f: &Fp, nvars: usize, v: &Value) -> Result<Vec<Poly<Fp>>> {
    let arr = v.as_array().ok_or_else(|| Error::Parse("expected a list of polynomials".into()))?;
    arr.iter()
        .map(|s| parse_poly(f, nvars, s.as_str().ok_or_else(|| Error::Parse("expected a string".into()))?))
        .collect()
}

impl ExampleInstance {
    pub fn prime_field(&self) -> Result<Fp> {
        self.field.prime_field()
    }

    pub fn nvars(&self) -> usize {
        match &self.payload {
            Payload::DetMatrix(a) => a.nvars(),
            Payload::FormSystem(s) => s.source_dim() + 1,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self.payload {
            Payload::DetMatrix(_) => "DetMatrix",
            Payload::FormSystem(_) => "FormSystem",
        }
    }

    pub fn det_map(&self) -> Result<DetMap> {
        match &self.payload {
            Payload::DetMatrix(a) => DetMap::build(a.clone()),
            Payload::FormSystem(_) => Err(Error::Shape(format!("`{}` is not given by a matrix", self.id))),
        }
    }

    pub fn to_json(&self) -> Value {
        let payload = match &self.payload {
            Payload::DetMatrix(a) => json!((0..a.rows())
                .map(|i| (0..a.cols()).map(|j| a.get(i, j).to_string()).collect::<Vec<_>>())
                .collect::<Vec<_>>()),
            Payload::FormSystem(s) => json!(poly_strings(s.forms())),
        };
        let loci: serde_json::Map<String, Value> =
            self.loci.iter().map(|(k, v)| (k.clone(), json!(poly_strings(v.gens())))).collect();
        json!({
            "id": self.id,
            "kind": self.kind(),
            "field": self.field,
            "seed": self.seed,
            "nvars": self.nvars(),
            "payload": payload,
            "loci": loci,
            "manifest": self.manifest,
            "warnings": self.warnings,
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let err = |what: &str| Error::Parse(format!("instance JSON: {what}"));
        let field: FieldCfg = serde_json::from_value(v["field"].clone()).map_err(|e| err(&e.to_string()))?;
        let f = field.prime_field()?;
        let nvars = v["nvars"].as_u64().ok_or_else(|| err("missing nvars"))? as usize;
        let payload = match v["kind"].as_str() {
            Some("DetMatrix") => {
                let rows = v["payload"].as_array().ok_or_else(|| err("payload rows"))?;
                let rows = rows.iter().map(|r| parse_strings(&f, nvars, r)).collect::<Result<Vec<_>>>()?;
                Payload::DetMatrix(PolyMatrix::new(&f, nvars, rows)?)
            }
            Some("FormSystem") => {
                Payload::FormSystem(SystemMap::new(&f, nvars, parse_strings(&f, nvars, &v["payload"])?)?)
            }
            _ => return Err(err("unknown kind")),
        };
        let mut loci = BTreeMap::new();
        for (k, gens) in v["loci"].as_object().ok_or_else(|| err("loci"))? {
            loci.insert(k.clone(), Ideal::new(&f, nvars, parse_strings(&f, nvars, gens)?)?);
        }
        let manifest = serde_json::from_value(v["manifest"].clone()).map_err(|e| err(&e.to_string()))?;
        let warnings = serde_json::from_value(v["warnings"].clone()).map_err(|e| err(&e.to_string()))?;
        Ok(ExampleInstance {
            id: v["id"].as_str().ok_or_else(|| err("id"))?.to_string(),
            field,
            seed: v["seed"].as_u64().ok_or_else(|| err("seed"))?,
            payload,
            loci,
            manifest,
            warnings,
        })
    }

    /// An ad hoc matrix with the default checks: bilinear identity,
    /// smoothness, Hilbert data against Hilbert-Burch, numerical relations.
    pub fn from_matrix(a: PolyMatrix<Fp>, seed: u64) -> Result<Self> {
        let map = DetMap::build(a)?;
        let (m, n) = (map.source_dim(), map.target_dim());
        let mut checks = vec![
            check("bilinear_identity", Op::BilinearIdentity, json!(true), Trivial, "construction guard"),
            check("smoothness", smooth("X", 2), json!("Smooth"), Derived, "smooth determinantal base locus"),
        ];
        if n >= 2 {
            let hb = crate::invariants::hilbert_burch_hp(m, n)?;
            checks.push(check(
                "hilbert_X",
                hilbert("X"),
                json!({"dim": hb.projective_dimension, "degree": hb.degree, "genus": hb.sectional_genus}),
                Derived,
                "Hilbert-Burch resolution of the maximal minors",
            ));
        }
        if m == n && n >= 2 {
            checks.push(check("esb_relation", Op::Esb, json!({"d2": n, "r2": n - 2}), Derived, "type (n,n)"));
        }
        Ok(ExampleInstance {
            id: "matrix".into(),
            field: map.field().cfg(),
            seed,
            payload: Payload::DetMatrix(map.a().clone()),
            loci: BTreeMap::new(),
            manifest: Manifest(checks),
            warnings: Vec::new(),
        })
    }
}

fn check(name: &str, op: Op, expected: Value, prov: Provenance, anchor: &str) -> CheckSpec {
    CheckSpec::new(name, op, expected, prov, anchor)
}

fn smooth(locus: &str, codim: usize) -> Op {
    Op::Smoothness { locus: locus.into(), codim }
}

fn hilbert(locus: &str) -> Op {
    Op::Hilbert { locus: locus.into() }
}

fn strings(rows: Rows) -> Vec<Vec<String>> {
    rows.iter().map(|r| r.iter().map(|s| s.to_string()).collect()).collect()
}

/// Whether `p` divides a nonzero printed coefficient.
fn divides_printed(rows: Rows, nvars: usize, p: u64) -> Result<bool> {
    for s in rows.iter().flat_map(|r| r.iter()) {
        for (_, c) in parse_poly(&Q, nvars, s)?.terms() {
            let c = c.to_integer().to_i64().ok_or_else(|| Error::Parse(format!("coefficient in `{s}`")))?;
            if c != 0 && c.unsigned_abs() % p == 0 {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// The printed matrix mod `p`, moving to the next prime while `p` divides a
/// printed coefficient.
fn printed(rows: Rows, nvars: usize, p: u64, warnings: &mut Vec<String>) -> Result<PolyMatrix<Fp>> {
    let mut q = p;
    while divides_printed(rows, nvars, q)? {
        let next = next_prime(q);
        warnings.push(format!("BadPrime: {q} divides a printed coefficient, using {next}"));
        q = next;
    }
    let f = Fp::new(q)?;
    PolyMatrix::parse(&f, nvars, &strings(rows))
}

fn det_instance(
    id: &str,
    a: PolyMatrix<Fp>,
    seed: u64,
    checks: Vec<CheckSpec>,
    warnings: Vec<String>,
) -> ExampleInstance {
    ExampleInstance {
        id: id.into(),
        field: a.field().cfg(),
        seed,
        payload: Payload::DetMatrix(a),
        loci: BTreeMap::new(),
        manifest: Manifest(checks),
        warnings,
    }
}

/// Builds a gallery example over `F_p`, running its randomized construction
/// (if any) from `seed`.
pub fn build_example(id: &str, cfg: &FieldCfg, seed: u64, budget: &Budget) -> Result<ExampleInstance> {
    let f = cfg.prime_field()?;
    let p = f.p() as u64;
    let mut warnings = Vec::new();
    let identity = || check("bilinear_identity", Op::BilinearIdentity, json!(true), Trivial, "construction guard");
    match id {
        "segre_p5" => {
            let a = printed(data::SEGRE, 6, p, &mut warnings)?;
            let q = a.field().p() as u64;
            let checks = vec![
                identity(),
                check(
                    "flip_matrix",
                    Op::FlipMatrix { printed: strings(data::SEGRE_B), x0_last: false },
                    json!(true),
                    Paper,
                    "The 2x6 matrix B(y) is",
                ),
                check(
                    "fiber_1:0:0",
                    Op::Fiber { point: vec![1, 0, 0] },
                    json!({"dim": 3, "equations": ["x0", "x3"], "intersection": {"dim": 2, "degree": 2}}),
                    Derived,
                    "kernel of B(y) at (1:0:0)",
                ),
                check(
                    "all_fibers",
                    Op::AllFibers,
                    json!({"targets": q * q + q + 1, "dims": [3], "hypersurface_degrees": [2]}),
                    Paper,
                    "every fiber is a P^3 cutting X^1 along a quadric surface",
                ),
                check("smooth_X", smooth("X", 2), json!("Smooth"), Derived, "Segre threefold"),
                check(
                    "hilbert_X",
                    hilbert("X"),
                    json!({"dim": 3, "degree": 3, "genus": 0}),
                    Derived,
                    "Segre threefold",
                ),
                check(
                    "stratum_rank_1",
                    Op::StratumPoints { rank: 1, extension: 1 },
                    json!([]),
                    Derived,
                    "B(y) has rank 2 at every y",
                ),
                check(
                    "birationality",
                    Op::Birationality { trials: 10 },
                    json!("FiberDim(3)"),
                    Paper,
                    "every fiber is a P^3",
                ),
            ];
            Ok(det_instance(id, a, seed, checks, warnings))
        }
        "todd_room" => {
            let a = printed(data::TODD_ROOM, 5, p, &mut warnings)?;
            let plane = json!({"dim": 2, "equations": ["x3", "x4"], "intersection": {"dim": 1, "degree": 4}});
            let checks = vec![
                identity(),
                check(
                    "flip_matrix",
                    Op::FlipMatrix { printed: strings(data::TODD_ROOM_B), x0_last: true },
                    json!(true),
                    Paper,
                    "the matrix B(y) is",
                ),
                check("smooth_X", smooth("X", 2), json!("Smooth"), Paper, "One verifies that X^1 is smooth"),
                check(
                    "hilbert_X",
                    hilbert("X"),
                    json!({"dim": 2, "degree": 10, "genus": 11}),
                    Paper,
                    "a smooth degree 10 and genus 11 surface",
                ),
                check(
                    "hilbert_burch",
                    Op::HilbertBurch,
                    json!({"dim": 2, "degree": 10, "genus": 11}),
                    Derived,
                    "Hilbert-Burch resolution of the 4x4 minors",
                ),
                check(
                    "sing_X2",
                    Op::StratumPoints { rank: 2, extension: 3 },
                    json!(["0:0:0:0:1"]),
                    Paper,
                    "Sing(X^2)=(0:0:0:0:1)",
                ),
                check(
                    "fiber_0:0:0:0:1",
                    Op::Fiber { point: vec![0, 0, 0, 0, 1] },
                    plane,
                    Paper,
                    "is the plane x_3=x_4=0",
                ),
                check(
                    "fiber_quartic_smooth",
                    Op::FiberSmooth { point: vec![0, 0, 0, 0, 1] },
                    json!("Smooth"),
                    Paper,
                    "cuts X^1 along a smooth quartic plane curve",
                ),
                check(
                    "h0_I4",
                    Op::LinearSystem { locus: "X".into(), degree: 4 },
                    json!(5),
                    Paper,
                    "h^0(I_{X^1}(d_1))=n+1",
                ),
                check(
                    "h0_I3",
                    Op::LinearSystem { locus: "X".into(), degree: 3 },
                    json!(0),
                    Paper,
                    "h^0(I_{X^1}(d_1-1))=0",
                ),
                check("esb_relation", Op::Esb, json!({"d2": 4, "r2": 2}), Paper, "of type (4,4)"),
                check(
                    "birationality",
                    Op::Birationality { trials: 10 },
                    json!("BirationalEvidence"),
                    Paper,
                    "special Cremona transformation",
                ),
            ];
            Ok(det_instance(id, a, seed, checks, warnings))
        }
        "bordiga_random" => {
            let a = bordiga_matrix(&f, seed, budget)?;
            let checks = vec![
                identity(),
                check("smooth_X", smooth("X", 2), json!("Smooth"), Derived, "retry until smooth"),
                check(
                    "hilbert_X",
                    hilbert("X"),
                    json!({"dim": 2, "degree": 6, "genus": 3}),
                    Paper,
                    "a degree 6 and genus 3 Bordiga surface",
                ),
                check(
                    "generic_fiber",
                    Op::GenericFiber { trials: 10 },
                    json!([{"dim": 1, "length": 3}]),
                    Paper,
                    "there passes a unique trisecant line to X^1",
                ),
                check(
                    "stratum_rank_2",
                    Op::StratumHilbert { rank: 2 },
                    json!({"dim": 0, "degree": 10, "genus": null}),
                    Paper,
                    "the above locus consists of exactly 10 points",
                ),
                check(
                    "birationality",
                    Op::Birationality { trials: 10 },
                    json!("FiberDim(1)"),
                    Paper,
                    "one apparent triple point",
                ),
                check(
                    "h0_I3",
                    Op::LinearSystem { locus: "X".into(), degree: 3 },
                    json!(4),
                    Derived,
                    "h^0(I_{X^1}(d_1))=n+1",
                ),
            ];
            Ok(det_instance(id, a, seed, checks, warnings))
        }
        "quinto_p5_plane" | "quinto_p5_solid" => {
            let solid = id == "quinto_p5_solid";
            let a = printed(if solid { data::QUINTO_SOLID } else { data::QUINTO_PLANE }, 6, p, &mut warnings)?;
            let (fib, anchor) = if solid {
                (
                    json!({"dim": 3, "equations": ["x4", "x5"], "intersection": {"dim": 2, "degree": 5}}),
                    "the 3-plane of equation x_4=x_5=0",
                )
            } else {
                (
                    json!({"dim": 2, "equations": ["x3", "x4", "x5"], "intersection": {"dim": 1, "degree": 5}}),
                    "the plane x_3=x_4=x_5=0",
                )
            };
            let hb = json!({"dim": 3, "degree": 15, "genus": 26});
            let checks = vec![
                identity(),
                check("fiber_0:0:0:0:0:1", Op::Fiber { point: vec![0, 0, 0, 0, 0, 1] }, fib, Paper, anchor),
                check(
                    "sing_X2",
                    Op::StratumPoints { rank: 3, extension: 2 },
                    json!(["0:0:0:0:0:1"]),
                    Paper,
                    "this is the only singular point of X_2",
                ),
                check("hilbert_burch", Op::HilbertBurch, hb.clone(), Paper, "a degree 15 and genus 26 smooth 3-fold"),
                check("hilbert_X", hilbert("X"), hb, Derived, "Groebner basis of the 5x5 minors"),
                check("secant_degree", Op::SecantDegree, json!(24), Paper, "hypersurface (of degree 24)"),
                check("esb_relation", Op::Esb, json!({"d2": 5, "r2": 3}), Paper, "special Cremona transformation"),
            ];
            Ok(det_instance(id, a, seed, checks, warnings))
        }
        "conic_p5_general" | "conic_p5_special" => {
            let special = id == "conic_p5_special";
            let a = printed(if special { data::CONIC_SPECIAL } else { data::CONIC_GENERAL }, 6, p, &mut warnings)?;
            let x = json!({"dim": 3, "degree": 10, "genus": 11});
            let mut checks = vec![
                identity(),
                check("hilbert_X", hilbert("X"), x.clone(), Paper, "a smooth 3-fold X^1 of degree 10 and genus 11"),
                check("hilbert_burch", Op::HilbertBurch, x, Derived, "Hilbert-Burch resolution of the 4x4 minors"),
                check(
                    "stratum_rank_3",
                    Op::StratumHilbert { rank: 3 },
                    json!({"dim": 1, "degree": 20, "genus": 26}),
                    Paper,
                    "a smooth curve C of degree 20 and genus 26",
                ),
                check(
                    "generic_fiber",
                    Op::GenericFiber { trials: 10 },
                    json!([{"dim": 1, "length": 4}]),
                    Paper,
                    "the general fiber is a 4-secant line to X^1",
                ),
            ];
            if special {
                checks.push(check(
                    "sing_C",
                    Op::StratumSingular { rank: 3, extension: 2 },
                    json!(["0:0:0:0:1"]),
                    Paper,
                    "exactly one singular point at (0:0:0:0:1)",
                ));
                checks.push(check(
                    "fiber_0:0:0:0:1",
                    Op::Fiber { point: vec![0, 0, 0, 0, 1] },
                    json!({"dim": 3, "equations": ["x4", "x5"], "intersection": {"dim": 2, "degree": 4}}),
                    Paper,
                    "the fibre over (0:0:0:0:1) is isomorphic to P^3",
                ));
                checks.push(check(
                    "hyperplane_slice",
                    Op::FiberSlice { point: vec![0, 0, 0, 0, 1] },
                    json!({"dim": 1, "degree": 4, "genus": 3}),
                    Paper,
                    "all these surfaces will contain a plane quartic curve",
                ));
            } else {
                checks.insert(
                    1,
                    check(
                        "flip_matrix",
                        Op::FlipMatrix { printed: strings(data::CONIC_GENERAL_B), x0_last: true },
                        json!(true),
                        Paper,
                        "The corresponding matrix B(y) is equal to",
                    ),
                );
                checks.push(check(
                    "sing_C",
                    Op::StratumSingular { rank: 3, extension: 2 },
                    json!([]),
                    Paper,
                    "is a smooth curve C",
                ));
            }
            Ok(det_instance(id, a, seed, checks, warnings))
        }
        "del_pezzo_cubic" => del_pezzo_cubic(&f, seed, budget),
        "semple_tyrrell" | "p7_threefold" => cone_example(id, &f, seed, budget),
        _ => Err(Error::UnknownId(id.into())),
    }
}

/// A 4x3 matrix of linear forms on `P^4` with coefficients in `[-2, 2]`,
/// redrawn until its maximal minors define a smooth surface.
fn bordiga_matrix(f: &Fp, seed: u64, budget: &Budget) -> Result<PolyMatrix<Fp>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_RESEEDS {
        let coeffs: Vec<Vec<Vec<i64>>> =
            (0..4).map(|_| (0..3).map(|_| (0..5).map(|_| rng.gen_range(-2..=2)).collect()).collect()).collect();
        let a = PolyMatrix::from_linear_coeffs(f, 5, &coeffs)?;
        let Ok(map) = DetMap::build(a) else { continue };
        match smoothness_certificate(&map.base_ideal(), 2, &mut rng, budget) {
            SmoothnessVerdict::Smooth => return Ok(map.a().clone()),
            SmoothnessVerdict::Unknown(why) => return Err(Error::BudgetExceeded(why)),
            SmoothnessVerdict::SingularAt { .. } => {}
        }
    }
    Err(Error::ConstructionFailed(format!("no smooth Bordiga surface in {MAX_RESEEDS} draws")))
}

fn del_pezzo_cubic(f: &Fp, seed: u64, budget: &Budget) -> Result<ExampleInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut dp = None;
    for _ in 0..MAX_RESEEDS {
        let Ok(d) = del_pezzo_quintic(f, &mut rng, budget.gb) else { continue };
        match smoothness_certificate(&d.ideal, 3, &mut rng, budget) {
            SmoothnessVerdict::Smooth => {
                dp = Some(d);
                break;
            }
            SmoothnessVerdict::Unknown(why) => return Err(Error::BudgetExceeded(why)),
            SmoothnessVerdict::SingularAt { .. } => {}
        }
    }
    let dp = dp.ok_or_else(|| Error::ConstructionFailed(format!("no smooth del Pezzo in {MAX_RESEEDS} draws")))?;
    let (y, _) = construct::smooth_fano_cubic(&dp, &mut rng, budget)?;
    let mut loci = BTreeMap::new();
    loci.insert("X".to_string(), dp.ideal.clone());
    loci.insert("Y".to_string(), Ideal::new(f, 6, vec![y])?);
    loci.insert("Pi".to_string(), dp.plane.clone());
    loci.insert("M".to_string(), segre_cone(f, 5)?);
    let z = ResolutionSpec { ambient: 4, positions: vec![vec![(-4, 6)], vec![(-5, 6)], vec![(-6, 1)]] };
    let checks = vec![
        check(
            "generators_X",
            Op::Generators { locus: "X".into() },
            json!([2, 2, 2, 2, 2]),
            Paper,
            "the ideal of X is generated by 5 quadratic forms",
        ),
        check(
            "hilbert_X",
            hilbert("X"),
            json!({"dim": 2, "degree": 5, "genus": 1}),
            Paper,
            "a smooth del Pezzo surface of degree 5",
        ),
        check("smooth_X", smooth("X", 3), json!("Smooth"), Paper, "a smooth del Pezzo surface of degree 5"),
        check("smooth_Y", smooth("Y", 1), json!("Smooth"), Paper, "it is also non-singular along"),
        check(
            "Y_contains_X",
            Op::Contains { sub: "X".into(), sup: "Y".into() },
            json!(true),
            Trivial,
            "by construction",
        ),
        check(
            "Y_contains_Pi",
            Op::Contains { sub: "Pi".into(), sup: "Y".into() },
            json!(true),
            Derived,
            "Q_3 contains the plane",
        ),
        check(
            "ruling_planes",
            Op::RulingPlanes,
            json!({"between": [1, 2]}),
            Paper,
            "such divisors contain at most two planes of type (1,0)",
        ),
        check(
            "image_of_M",
            Op::ImageDim { locus: Some("M".into()), samples: 5 },
            json!(1),
            Paper,
            "contracts the variety M onto a line",
        ),
        check(
            "image_of_Y",
            Op::ImageDim { locus: Some("Y".into()), samples: 5 },
            json!(4),
            Paper,
            "an elementary extremal birational contraction",
        ),
        check(
            "resolution_Z",
            Op::Resolution { spec: z },
            json!({"dim": 2, "degree": 9, "genus": 8}),
            Paper,
            "a normal surface Z of degree 9 and genus 8",
        ),
    ];
    Ok(ExampleInstance {
        id: "del_pezzo_cubic".into(),
        field: f.cfg(),
        seed,
        payload: Payload::FormSystem(SystemMap::new(f, 6, dp.quadrics)?),
        loci,
        manifest: Manifest(checks),
        warnings: Vec::new(),
    })
}

fn cone_example(id: &str, f: &Fp, seed: u64, budget: &Budget) -> Result<ExampleInstance> {
    let threefold = id == "p7_threefold";
    let ambient = if threefold { 7 } else { 6 };
    let cone_name = if threefold { "M" } else { "W" };
    let cone = segre_cone(f, ambient)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut x = None;
    for _ in 0..MAX_RESEEDS {
        match divisor12_complete_intersection(&cone, &mut rng, budget.gb) {
            Ok(i) => {
                x = Some(i);
                break;
            }
            Err(e) if e.is_budget() => return Err(e),
            Err(_) => {}
        }
    }
    let x = x.ok_or_else(|| Error::ConstructionFailed(format!("no residual intersection in {MAX_RESEEDS} draws")))?;
    let quadrics = degree_basis(&x, 2, budget.gb)?;
    let map = SystemMap::new(f, ambient + 1, quadrics)?;
    let mut loci = BTreeMap::new();
    loci.insert("X".to_string(), x);
    loci.insert(cone_name.to_string(), cone);
    let h2 = Op::LinearSystem { locus: "X".into(), degree: 2 };
    let cone_hilbert = json!({"dim": ambient - 2, "degree": 3, "genus": 0});
    let checks = if threefold {
        vec![
            check("h0_I2", h2, json!(7), Paper, "its ideal is generated by 7 degree 2 forms"),
            check(
                "hilbert_X",
                hilbert("X"),
                json!({"dim": 3, "degree": 8, "genus": 3}),
                Paper,
                "a smooth 3-fold X of degree 8",
            ),
            check("hilbert_M", hilbert("M"), cone_hilbert, Derived, "cone over a Segre 3-fold"),
            check(
                "generic_fiber",
                Op::GenericFiber { trials: 20 },
                json!([{"dim": 1, "length": 2}]),
                Paper,
                "the general fiber of phi is a line, necessarily a secant line",
            ),
            check(
                "fiber_dim_on_M",
                Op::FiberDimOn { locus: "M".into(), samples: 10 },
                json!([3]),
                Paper,
                "the fiber consists of a three dimensional quadric hypersurface",
            ),
            check("residual_degree", Op::ResidualDegree, json!(13), Paper, "is a 4-fold of degree 13"),
        ]
    } else {
        vec![
            check("h0_I2", h2, json!(7), Paper, "it is cut out by 7 quadrics"),
            check("hilbert_X", hilbert("X"), json!({"dim": 2, "degree": 8, "genus": 3}), Paper, "it has degree 8"),
            check("hilbert_W", hilbert("W"), cone_hilbert, Derived, "cone over a Segre 3-fold"),
            check(
                "esb_relation",
                Op::Esb,
                json!({"d2": 4, "r2": 4}),
                Paper,
                "a special Cremona transformation of type (2,4)",
            ),
            check(
                "fiber_dim_on_W",
                Op::FiberDimOn { locus: "W".into(), samples: 10 },
                json!([2]),
                Paper,
                "quadric surfaces mapping to the points of a smooth quadric",
            ),
            check(
                "image_of_W",
                Op::ImageDim { locus: Some("W".into()), samples: 10 },
                json!(2),
                Paper,
                "the cone W is contracted by phi onto a smooth quadric surface",
            ),
            check("dominant", Op::ImageDim { locus: None, samples: 5 }, json!(6), Derived, "Cremona transformation"),
        ]
    };
    Ok(ExampleInstance {
        id: id.into(),
        field: f.cfg(),
        seed,
        payload: Payload::FormSystem(map),
        loci,
        manifest: Manifest(checks),
        warnings: Vec::new(),
    })
}
