use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use cremona::detmap::{fiber, rank_stratum, singular_points};
use cremona::field::is_prime;
use cremona::gallery::{
    build_example, verify_manifest, ExampleInstance, Report, VerifyOptions, DEFAULT_SEED, EXAMPLE_IDS,
};
use cremona::invariants::relation_table;
use cremona::{Budget, DetMap, Error, FieldCfg, Fp, PolyMatrix, ProjPoint};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

const USAGE: u8 = 3;
const BUDGET: u8 = 2;
const FAIL: u8 = 1;

/// Verify determinantal Cremona transformations and their fibers over finite fields.
#[derive(Parser, Debug)]
#[command(name = "cremona", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    config: RunConfig,
}

#[derive(Args, Debug)]
struct RunConfig {
    /// Working prime.
    #[arg(long, global = true, default_value_t = 101)]
    prime: u64,
    /// Largest extension degree searched for points.
    #[arg(long, global = true, default_value_t = 3)]
    extension_bound: u32,
    /// Critical pairs allowed per Groebner basis.
    #[arg(long, global = true, env = "CREMONA_GB_PAIRS", default_value_t = 200_000)]
    gb_pairs: u64,
    /// Points allowed per enumeration.
    #[arg(long, global = true, env = "CREMONA_ENUM_BUDGET", default_value_t = 2_000_000)]
    enum_budget: u64,
    /// Overrides trial and sample counts of probabilistic checks.
    #[arg(long, global = true)]
    trials: Option<usize>,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Write the JSON to this file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Zero all timings so reports compare byte for byte.
    #[arg(long, global = true)]
    no_timings: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the checks of a gallery example, or the default checks of a matrix file.
    Verify {
        #[arg(required_unless_present = "matrix", conflicts_with = "matrix")]
        id: Option<String>,
        /// JSON file {"m", "n", "rows"} of integer linear forms.
        #[arg(long)]
        matrix: Option<PathBuf>,
        /// Also rerun the PAPER checks of a gallery example at this prime.
        #[arg(long, conflicts_with = "matrix")]
        recheck_prime: Option<u64>,
    },
    /// Numerical relations with expected values.
    Relations {
        /// Aligned text instead of JSON.
        #[arg(long)]
        table: bool,
    },
    /// Fiber of the graph over a target point.
    Fiber {
        id: String,
        /// Colon separated integers, e.g. 0:0:0:0:1.
        #[arg(long)]
        point: String,
    },
    /// Locus where B(y) has rank at most `rank`.
    Stratify {
        id: String,
        #[arg(long)]
        rank: usize,
    },
    /// List the gallery examples.
    List,
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            _ if e.is_budget() => BUDGET,
            Error::UnknownId(_) | Error::Parse(_) | Error::Arity { .. } | Error::Shape(_) | Error::InvalidField(_) => {
                USAGE
            }
            _ => FAIL,
        };
        Failure { code, message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: USAGE, message: message.into() }
}

impl RunConfig {
    fn budget(&self) -> Budget {
        let mut b = Budget::default();
        b.gb.max_pairs = self.gb_pairs;
        b.enumeration = self.enum_budget;
        b.extension_bound = self.extension_bound;
        b
    }

    fn validate(&self) -> Result<FieldCfg, Failure> {
        if !is_prime(self.prime) || self.prime > u32::MAX as u64 {
            return Err(usage(format!("{} is not a supported prime", self.prime)));
        }
        if self.gb_pairs == 0 || self.enum_budget == 0 || self.extension_bound == 0 || self.trials == Some(0) {
            return Err(usage("budgets must be positive"));
        }
        Ok(FieldCfg::prime(self.prime)?)
    }

    fn emit(&self, v: &Value) -> Result<(), Failure> {
        let text = serde_json::to_string_pretty(v).expect("serializable") + "\n";
        match &self.output {
            Some(path) => std::fs::write(path, text).map_err(|e| usage(format!("{}: {e}", path.display()))),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }
}

/// `{"m", "n", "rows"}` with `rows[i][j]` the coefficients of a linear form in `x0..xm`.
fn load_matrix(path: &PathBuf, f: &Fp) -> Result<PolyMatrix<Fp>, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let v: Value = serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let dim =
        |k: &str| v[k].as_u64().map(|x| x as usize).ok_or_else(|| usage(format!("matrix JSON needs integer `{k}`")));
    let (m, n) = (dim("m")?, dim("n")?);
    let rows: Vec<Vec<Vec<i64>>> =
        serde_json::from_value(v["rows"].clone()).map_err(|e| usage(format!("matrix rows: {e}")))?;
    let shape_ok = rows.len() == n + 1 && rows.iter().all(|r| r.len() == n && r.iter().all(|c| c.len() == m + 1));
    if !shape_ok {
        return Err(usage(format!("rows must be {} x {n} linear forms in {} variables", n + 1, m + 1)));
    }
    Ok(PolyMatrix::from_linear_coeffs(f, m + 1, &rows)?)
}

fn det_map(inst: &ExampleInstance) -> Result<DetMap, Failure> {
    inst.det_map().map_err(|_| usage(format!("`{}` is not given by a matrix", inst.id)))
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    let cfg = &cli.config;
    let field = cfg.validate()?;
    let budget = cfg.budget();
    let build = |id: &str| -> Result<ExampleInstance, Failure> {
        let inst = build_example(id, &field, cfg.seed, &budget)?;
        for w in &inst.warnings {
            eprintln!("warning: {w}");
        }
        Ok(inst)
    };
    match &cli.command {
        Command::Verify { id, matrix, recheck_prime } => {
            let inst = match (id, matrix) {
                (Some(id), _) => build(id)?,
                (None, Some(path)) => {
                    let a = load_matrix(path, &field.prime_field()?)?;
                    ExampleInstance::from_matrix(a, cfg.seed)?
                }
                (None, None) => return Err(usage("give an example id or --matrix")),
            };
            let opts = VerifyOptions { budget, trials: cfg.trials };
            let mut report: Report = verify_manifest(&inst, &opts);
            if let Some(q) = recheck_prime {
                if !is_prime(*q) || *q > u32::MAX as u64 {
                    return Err(usage(format!("{q} is not a supported prime")));
                }
                let other = build_example(&inst.id, &FieldCfg::prime(*q)?, cfg.seed, &budget)?;
                report.append_recheck(verify_manifest(&other, &opts));
            }
            if cfg.no_timings {
                report = report.without_timings();
            }
            cfg.emit(&serde_json::to_value(&report).expect("serializable"))?;
            Ok(report.exit_code() as u8)
        }
        Command::Relations { table } => {
            let rows = relation_table();
            if *table {
                let width = rows.iter().map(|r| r.name.len()).max().unwrap_or(0);
                let mut text = String::new();
                for r in &rows {
                    text += &format!(
                        "{:<width$}  {:<12} {:<12} {:<4} {:<8} {}\n",
                        r.name,
                        r.expected.to_string(),
                        r.actual.to_string(),
                        if r.pass { "ok" } else { "FAIL" },
                        serde_json::to_value(r.provenance).expect("serializable").as_str().unwrap_or(""),
                        r.anchor
                    );
                }
                match &cfg.output {
                    Some(path) => std::fs::write(path, text).map_err(|e| usage(format!("{}: {e}", path.display())))?,
                    None => print!("{text}"),
                }
            } else {
                cfg.emit(&serde_json::to_value(&rows).expect("serializable"))?;
            }
            Ok(if rows.iter().all(|r| r.pass) { 0 } else { FAIL })
        }
        Command::Fiber { id, point } => {
            let inst = build(id)?;
            let map = det_map(&inst)?;
            let f = *map.field();
            let coords: Vec<i64> = point
                .split(':')
                .map(|s| s.trim().parse::<i64>().map_err(|_| usage(format!("bad coordinate `{s}` in `{point}`"))))
                .collect::<Result<_, _>>()?;
            let n = map.target_dim();
            if coords.len() != n + 1 {
                return Err(Error::Arity { expected: n + 1, got: coords.len() }.into());
            }
            let y = ProjPoint::from_i64(&f, &coords)
                .map_err(|_| usage(format!("`{point}` is the zero vector mod {}", f.p())))?;
            let report = fiber(&map, &y, budget.gb)?;
            cfg.emit(&json!({"example": inst.id, "prime": f.p(), "fiber": report.to_json(&f)}))?;
            Ok(0)
        }
        Command::Stratify { id, rank } => {
            let inst = build(id)?;
            let map = det_map(&inst)?;
            let n = map.target_dim();
            if *rank >= n {
                return Err(usage(format!("rank must be below {n}, the generic rank of B(y)")));
            }
            let s = rank_stratum(&map, *rank, &budget)?;
            let mut out = s.to_json();
            if let Some(h) = s.hilbert.as_ref().filter(|h| h.projective_dimension >= 1) {
                let codim = n - h.projective_dimension as usize;
                let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
                out["singular_points"] = match singular_points(&s.ideal, codim, &mut rng, &budget) {
                    Ok(Some(pts)) => json!(pts.iter().map(|p| p.to_json()).collect::<Vec<_>>()),
                    Ok(None) => json!({"unknown": "singular locus is positive dimensional"}),
                    Err(e) if e.is_budget() => json!({"unknown": e.to_string()}),
                    Err(e) => return Err(e.into()),
                };
            }
            cfg.emit(&json!({"example": inst.id, "prime": map.field().p(), "stratum": out}))?;
            Ok(0)
        }
        Command::List => {
            cfg.emit(&json!(EXAMPLE_IDS))?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { USAGE } else { 0 });
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
