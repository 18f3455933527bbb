//! Command-line driver: operator database ingestion, `A_p` caching, parallel
//! batch verification and report rendering.

pub mod cache;
pub mod db;
mod render;

use std::io::Write;
use std::path::PathBuf;
use std::sync::OnceLock;

use anyhow::{anyhow, bail, Context, Result};
use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use hwcy_core::arith::{first_primes, inert_in_q_sqrt_m5, primes_up_to, Family};
use hwcy_core::catalog::{Flags, HwSign, OperatorSpec};
use hwcy_core::diffop::{holomorphic_solution, log_companion, mirror_map, parse_weyl};
use hwcy_core::hassewitt::{factor_hw, factor_monic, hw_dwork, hw_formal, hw_legendre, hw_weighted, FpPoly, HWPolynomial};
use hwcy_core::verify::{
    ap_from_period, classify_pth_power, crt_reconstruct_series, dual_mum_check, sqrt_target, PreparedOperator, VerifyConfig,
};
use hwcy_core::{FpSeries, Poly, PrimeField, QSeries, Rational};
use rayon::prelude::*;
use serde::Serialize;

use cache::Cache;
use db::OperatorRecord;
pub use render::{Row, RunSummary, Verdict};

#[derive(Parser, Debug)]
#[command(name = "hwcy", version, about = "Hasse-Witt invariants, periods and mirror maps of Calabi-Yau operators")]
pub struct Cli {
    /// Operator database (TOML). Defaults to the bundled one.
    #[arg(long, global = true)]
    pub db: Option<PathBuf>,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,

    /// Seed for randomized polynomial factorization (results do not depend on it).
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Table,
    Json,
}

#[derive(Args, Debug, Clone)]
#[command(group(ArgGroup::new("operator").required(true).args(["op", "expr"])))]
pub struct OpArg {
    /// Operator id in the database.
    #[arg(long)]
    pub op: Option<String>,
    /// Inline operator, e.g. `theta^2 - 4*z*(2*theta+1)^2`.
    #[arg(long)]
    pub expr: Option<String>,
    /// Mirror scale for an inline operator.
    #[arg(long, requires = "expr", default_value = "1")]
    pub kappa: String,
}

#[derive(Args, Debug, Clone)]
pub struct RunArgs {
    /// Use the first N primes (minus per-operator exclusions).
    #[arg(long, default_value_t = 30)]
    pub primes: usize,
    /// Explicit comma-separated prime list instead of `--primes`.
    #[arg(long, value_delimiter = ',', conflicts_with = "primes")]
    pub prime_list: Vec<u64>,
    /// Precision of `A_p(z)`.
    #[arg(long, default_value_t = 200)]
    pub z_order: usize,
    /// Precision of `A_p(z(q))`; 0 skips the mirror check.
    #[arg(long, default_value_t = 100)]
    pub q_order: usize,
    /// Cache directory for `A_p(z)`.
    #[arg(long, env = cache::ENV_VAR, default_value = cache::DEFAULT_DIR)]
    pub cache_dir: PathBuf,
    /// Neither read nor write the cache.
    #[arg(long)]
    pub no_cache: bool,
    /// Worker threads (default: one per core).
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Exit status: `strong` fails unless every row passes, `weak` only on
    /// outright failures, `none` never.
    #[arg(long, value_enum, default_value_t = Assert::Strong)]
    pub assert: Assert,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Assert {
    Strong,
    Weak,
    None,
}

impl Assert {
    fn holds(self, s: &RunSummary) -> bool {
        match self {
            Assert::Strong => s.reaches(Verdict::Pass),
            Assert::Weak => s.reaches(Verdict::Weak),
            Assert::None => true,
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Holomorphic period at 0 (and its log companion with --log).
    Solve {
        #[command(flatten)]
        op: OpArg,
        #[arg(long, default_value_t = 200)]
        order: usize,
        #[arg(long)]
        log: bool,
    },
    /// Mirror map q(z) and its inverse z(q).
    Mirror {
        #[command(flatten)]
        op: OpArg,
        #[arg(long, default_value_t = 100)]
        order: usize,
    },
    /// Hasse-Witt polynomials of a family, or A_p(z) of an operator.
    #[command(group(ArgGroup::new("source").required(true).args(["family", "op"])))]
    #[command(group(ArgGroup::new("primes").required(true).args(["prime", "max_prime"])))]
    HasseWitt {
        /// dwork<n>, wp10, wp8, wp6 or legendre.
        #[arg(long)]
        family: Option<String>,
        /// Operator id; prints A_p(z) to --z-order.
        #[arg(long)]
        op: Option<String>,
        #[arg(long)]
        prime: Option<u64>,
        /// One tab-separated row per prime up to this bound.
        #[arg(long)]
        max_prime: Option<u64>,
        /// Factor into irreducibles (families only).
        #[arg(long)]
        factored: bool,
        /// Keep the (n+2)^(...) weights of the Dwork polynomials.
        #[arg(long)]
        raw: bool,
        #[arg(long, default_value_t = 200)]
        z_order: usize,
    },
    /// Factor a polynomial over F_p.
    Factor {
        #[arg(long)]
        prime: u64,
        /// Coefficients from the constant term up, comma-separated.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        coeffs: Vec<i64>,
        #[arg(long, default_value = "y")]
        var: String,
    },
    /// Named q-series: theta3, theta4, theta2_4th, theta_d4, lambda, e<k>,
    /// eta:<m>^<e>,..., t1_<n>, tn_<n>.
    Qexp {
        #[arg(long)]
        name: String,
        #[arg(long, default_value_t = 100)]
        order: usize,
    },
    /// Congruence report for one operator over a range of primes.
    Verify {
        #[command(flatten)]
        op: OpArg,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Verify every operator of the database, in parallel and cached.
    VerifyBatch {
        #[command(flatten)]
        run: RunArgs,
    },
    /// CRT and rational reconstruction of the p-th roots of cached A_p(z).
    Reconstruct {
        #[arg(long)]
        op: String,
        /// Candidate primes: the first N (minus exclusions).
        #[arg(long, default_value_t = 40)]
        primes: usize,
        /// Coefficients to reconstruct.
        #[arg(long, default_value_t = 10)]
        terms: usize,
        /// Keep only primes inert in Q(sqrt(-5)) (implied by the sqrt_conjecture flag).
        #[arg(long)]
        inert_only: bool,
        /// Fail instead of computing missing cache entries.
        #[arg(long)]
        cached_only: bool,
        #[arg(long, env = cache::ENV_VAR, default_value = cache::DEFAULT_DIR)]
        cache_dir: PathBuf,
    },
}

struct Ctx {
    db: Option<PathBuf>,
    records: OnceLock<Vec<OperatorRecord>>,
}

impl Ctx {
    fn records(&self) -> Result<&[OperatorRecord]> {
        if let Some(r) = self.records.get() {
            return Ok(r);
        }
        let loaded = match &self.db {
            Some(path) => db::load(path)?,
            None => db::bundled(),
        };
        Ok(self.records.get_or_init(|| loaded))
    }

    fn record(&self, id: &str) -> Result<&OperatorRecord> {
        self.records()?.iter().find(|r| r.id() == id).ok_or_else(|| anyhow!("no operator `{id}` in the database"))
    }

    fn spec(&self, arg: &OpArg) -> Result<OperatorSpec> {
        match (&arg.op, &arg.expr) {
            (Some(id), _) => Ok(self.record(id)?.spec.clone()),
            (None, Some(e)) => {
                let kappa: Rational = arg.kappa.parse().map_err(|_| anyhow!("bad --kappa `{}`", arg.kappa))?;
                Ok(OperatorSpec::new("expr", e.clone(), parse_weyl(e)?, kappa, Vec::new(), HwSign::Plus, Flags::default())?)
            }
            (None, None) => bail!("one of --op and --expr is required"),
        }
    }
}

/// Run a parsed command line. `Ok(false)` signals a failed check.
pub fn run(cli: Cli, out: &mut dyn Write) -> Result<bool> {
    let ctx = Ctx { db: cli.db.clone(), records: OnceLock::new() };
    let json = cli.format == Format::Json;
    match cli.command {
        Command::Solve { op, order, log } => {
            check_order("--order", order)?;
            let spec = ctx.spec(&op)?;
            let hol = holomorphic_solution(&spec.op, order)?;
            let g = if log { Some(log_companion(&spec.op, order)?) } else { None };
            if json {
                let v =
                    serde_json::json!({ "operator": spec.id, "hol": hol.format_with("z"), "log": g.map(|g| g.format_with("z")) });
                writeln!(out, "{}", serde_json::to_string_pretty(&v)?)?;
            } else {
                writeln!(out, "{}", hol.format_with("z"))?;
                if let Some(g) = g {
                    writeln!(out, "{}", g.format_with("z"))?;
                }
            }
            Ok(true)
        }
        Command::Mirror { op, order } => {
            check_order("--order", order)?;
            let spec = ctx.spec(&op)?;
            let m = mirror_map(&spec.op, order, &spec.kappa)?;
            let (q, z) = (m.q_of_z.format_with("z"), m.z_of_q.format_with("q"));
            if json {
                let v = serde_json::json!({ "operator": spec.id, "kappa": spec.kappa.to_string(), "q_of_z": q, "z_of_q": z });
                writeln!(out, "{}", serde_json::to_string_pretty(&v)?)?;
            } else {
                writeln!(out, "q(z) = {q}")?;
                writeln!(out, "z(q) = {z}")?;
            }
            Ok(true)
        }
        Command::HasseWitt { family, op, prime, max_prime, factored, raw, z_order } => {
            let primes = match (prime, max_prime) {
                (Some(p), _) => vec![p],
                (None, Some(m)) => primes_up_to(m),
                _ => unreachable!("clap enforces one of --prime/--max-prime"),
            };
            let table = max_prime.is_some();
            let rows: Vec<(u64, String)> = match (family, op) {
                (Some(f), _) => primes
                    .into_iter()
                    .map(|p| Ok((p, family_row(&f, p, factored, raw, table, cli.seed)?)))
                    .collect::<Result<_>>()?,
                (None, Some(id)) => {
                    if factored || raw {
                        bail!("--factored and --raw apply to families only");
                    }
                    check_order("--z-order", z_order)?;
                    let spec = &ctx.record(&id)?.spec;
                    let primes: Vec<u64> = primes.into_iter().filter(|&p| !table || spec.admits(p)).collect();
                    let need = primes.iter().map(|&p| p as usize).max().unwrap_or(0).max(z_order);
                    let hol = holomorphic_solution(&spec.op, need)?;
                    primes
                        .into_iter()
                        .map(|p| Ok((p, ap_from_period(&hol, p, z_order)?.format_with("z"))))
                        .collect::<Result<_>>()?
                }
                _ => unreachable!("clap enforces one of --family/--op"),
            };
            if json {
                let v: Vec<_> = rows.iter().map(|(p, s)| serde_json::json!({ "p": p, "value": s })).collect();
                writeln!(out, "{}", serde_json::to_string_pretty(&v)?)?;
            } else if table {
                for (p, s) in rows {
                    writeln!(out, "{p}\t{s}")?;
                }
            } else {
                writeln!(out, "{}", rows[0].1)?;
            }
            Ok(true)
        }
        Command::Factor { prime, coeffs, var } => {
            let field = PrimeField::new(prime)?;
            let c: Vec<u64> = coeffs.iter().map(|&c| c.rem_euclid(prime as i64) as u64).collect();
            let f: FpPoly = Poly::new(field, c);
            if f.is_zero() {
                bail!("cannot factor the zero polynomial");
            }
            let (unit, factors) = factor_monic(&f, cli.seed);
            if json {
                let fs: Vec<_> = factors
                    .iter()
                    .map(|(g, e)| serde_json::json!({ "factor": g.format_with(&var), "multiplicity": e }))
                    .collect();
                let v = serde_json::json!({ "p": prime, "unit": unit, "factors": fs });
                writeln!(out, "{}", serde_json::to_string_pretty(&v)?)?;
            } else {
                writeln!(out, "{}", render::factored(unit, &factors, &var))?;
            }
            Ok(true)
        }
        Command::Qexp { name, order } => {
            check_order("--order", order)?;
            let s = hwcy_core::qexp::by_name(&name, order)?;
            if json {
                writeln!(out, "{}", serde_json::to_string_pretty(&serde_json::json!({ "name": name, "series": s }))?)?;
            } else {
                writeln!(out, "{s}")?;
            }
            Ok(true)
        }
        Command::Verify { op, run } => {
            let spec = ctx.spec(&op)?;
            let summary = verify_batch(std::slice::from_ref(&spec), &run)?;
            summary.write(out, json)?;
            Ok(run.assert.holds(&summary))
        }
        Command::VerifyBatch { run } => {
            let specs: Vec<OperatorSpec> = ctx.records()?.iter().map(|r| r.spec.clone()).collect();
            let summary = verify_batch(&specs, &run)?;
            summary.write(out, json)?;
            Ok(run.assert.holds(&summary))
        }
        Command::Reconstruct { op, primes, terms, inert_only, cached_only, cache_dir } => {
            let spec = &ctx.record(&op)?.spec;
            let r = reconstruct(spec, primes, terms, inert_only, cached_only, &Cache::new(cache_dir))?;
            r.write(out, json)?;
            Ok(r.passed())
        }
    }
}

fn check_order(flag: &str, n: usize) -> Result<()> {
    if n < 2 {
        bail!("{flag} must be at least 2");
    }
    Ok(())
}

/// One Hasse-Witt polynomial. Table rows at excluded primes fall back to the
/// formal coefficient polynomial, as printed in the classical tables.
fn family_row(family: &str, p: u64, factored: bool, raw: bool, table: bool, seed: u64) -> Result<String> {
    if family == "legendre" {
        if factored || raw {
            bail!("--factored and --raw apply to Dwork and weighted families");
        }
        return Ok(hw_legendre(p)?.format_with("z"));
    }
    let h: HWPolynomial = match family.parse::<Family>()? {
        f if table && !raw && f.is_excluded(p) => hw_formal(f, p)?,
        Family::Dwork(n) => hw_dwork(n, p, raw)?,
        _ if raw => bail!("--raw applies to Dwork families only"),
        f => hw_weighted(f, p)?,
    };
    Ok(if factored { factor_hw(&h, seed).render() } else { h.render() })
}

fn pool(jobs: Option<usize>) -> Result<rayon::ThreadPool> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(n) = jobs {
        if n == 0 {
            bail!("--jobs must be positive");
        }
        b = b.num_threads(n);
    }
    Ok(b.build()?)
}

/// Every (operator, admissible prime) job, fanned out over a bounded pool and
/// reassembled in input order.
pub fn verify_batch(specs: &[OperatorSpec], run: &RunArgs) -> Result<RunSummary> {
    check_order("--z-order", run.z_order)?;
    if run.q_order == 1 {
        bail!("--q-order must be 0 (off) or at least 2");
    }
    let candidates = if run.prime_list.is_empty() { first_primes(run.primes) } else { run.prime_list.clone() };
    if let Some(&p) = candidates.iter().find(|&&p| !hwcy_core::arith::is_prime(p)) {
        bail!("{p} is not prime");
    }
    let config = VerifyConfig { z_order: run.z_order, q_order: (run.q_order > 0).then_some(run.q_order) };
    let cache = (!run.no_cache).then(|| Cache::new(&run.cache_dir));
    let plan: Vec<(&OperatorSpec, Vec<u64>)> =
        specs.iter().map(|s| (s, candidates.iter().copied().filter(|&p| s.admits(p)).collect())).collect();

    pool(run.jobs)?.install(|| {
        let prepared: Vec<Result<PreparedOperator, String>> = plan
            .par_iter()
            .map(|(s, ps)| {
                let max_p = ps.iter().copied().max().unwrap_or(2);
                PreparedOperator::new((*s).clone(), config, max_p).map_err(|e| e.to_string())
            })
            .collect();
        let jobs: Vec<(usize, u64)> = plan.iter().enumerate().flat_map(|(i, (_, ps))| ps.iter().map(move |&p| (i, p))).collect();
        let rows: Vec<Row> = jobs
            .par_iter()
            .map(|&(i, p)| {
                let spec = plan[i].0;
                match &prepared[i] {
                    Ok(prep) => verify_one(prep, p, cache.as_ref()),
                    Err(e) => Row::error(&spec.id, p, e.clone()),
                }
            })
            .collect();
        Ok(RunSummary { z_order: run.z_order, q_order: run.q_order, candidates, rows })
    })
}

fn verify_one(prep: &PreparedOperator, p: u64, cache: Option<&Cache>) -> Row {
    let id = &prep.spec.id;
    let cached = cache.and_then(|c| c.load(id, p, prep.config.z_order).ok().flatten());
    let hit = cached.is_some();
    let (report, a) = match prep.verify_with(p, cached) {
        Ok(r) => r,
        Err(e) => return Row::error(id, p, e.to_string()),
    };
    if let (Some(c), Some(a), false) = (cache, &a, hit) {
        if let Err(e) = c.store(id, a) {
            eprintln!("warning: cache write for ({id}, {p}) failed: {e:#}");
        }
    }
    let dual_mum = prep
        .spec
        .flags
        .dual_mum
        .then(|| dual_mum_check(&prep.spec.op, p, prep.config.z_order.min(60)).map_err(|e| e.to_string()));
    let sqrt_pattern = match (&a, prep.spec.flags.sqrt_conjecture && inert_in_q_sqrt_m5(p)) {
        (Some(a), true) => match sqrt_power(p, a.precision()) {
            Ok(t) => Some(&t == a),
            Err(e) => return Row::error(id, p, e.to_string()),
        },
        _ => None,
    };
    Row::new(report, dual_mum, sqrt_pattern)
}

/// `sqrt(1 - 25000 z)^p` over `F_p`, i.e. the Frobenius twist of the reduction.
fn sqrt_power(p: u64, n: usize) -> hwcy_core::Result<FpSeries> {
    Ok(sqrt_target(n)?.reduce_mod_p(PrimeField::new(p)?)?.frobenius())
}

/// `A_p(z)` to `n` terms for each prime, from the cache where possible.
fn ap_with_cache(
    spec: &OperatorSpec,
    primes: &[u64],
    n_of: impl Fn(u64) -> usize + Sync,
    cached_only: bool,
    cache: &Cache,
) -> Result<Vec<FpSeries>> {
    let hol: OnceLock<Result<QSeries, String>> = OnceLock::new();
    let need = primes.iter().map(|&p| n_of(p).max(p as usize)).max().unwrap_or(0);
    primes
        .par_iter()
        .map(|&p| {
            let n = n_of(p);
            if let Some(a) = cache.load(&spec.id, p, n)? {
                return Ok(a);
            }
            if cached_only {
                bail!("no cached A_p(z) for ({}, {p}) with {n} terms in {}", spec.id, cache.dir().display());
            }
            let hol = hol.get_or_init(|| holomorphic_solution(&spec.op, need).map_err(|e| e.to_string()));
            let hol = hol.as_ref().map_err(|e| anyhow!("{e}"))?;
            let a = ap_from_period(hol, p, n)?;
            cache.store(&spec.id, &a).with_context(|| format!("caching ({}, {p})", spec.id))?;
            Ok(a)
        })
        .collect()
}

#[derive(Serialize)]
pub struct ReconstructionOutput {
    pub operator: String,
    pub primes: Vec<u64>,
    /// Reconstructed coefficient of `z^k`, or `None` when none fits the bound.
    pub coeffs: Vec<Option<String>>,
    pub stable: Vec<bool>,
    /// For operators flagged `sqrt_conjecture`: `sqrt(1 - 25000 z)` coefficients.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub target: Option<Vec<String>>,
    /// Stable coefficients that disagree with the target.
    pub mismatches: Vec<usize>,
}

impl ReconstructionOutput {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }

    fn write(&self, out: &mut dyn Write, json: bool) -> Result<()> {
        if json {
            writeln!(out, "{}", serde_json::to_string_pretty(self)?)?;
            return Ok(());
        }
        let list: Vec<String> = self.primes.iter().map(u64::to_string).collect();
        writeln!(out, "# {}: {} primes ({})", self.operator, self.primes.len(), list.join(","))?;
        writeln!(out, "k\tcoefficient\tstable{}", if self.target.is_some() { "\ttarget" } else { "" })?;
        for (k, c) in self.coeffs.iter().enumerate() {
            let c = c.as_deref().unwrap_or("?");
            let s = if self.stable[k] { "yes" } else { "no" };
            match &self.target {
                Some(t) => writeln!(out, "{k}\t{c}\t{s}\t{}", t[k])?,
                None => writeln!(out, "{k}\t{c}\t{s}")?,
            }
        }
        let stable = self.stable.iter().take_while(|&&s| s).count();
        writeln!(out, "# stable prefix {stable}, {} mismatches", self.mismatches.len())?;
        Ok(())
    }
}

fn reconstruct(
    spec: &OperatorSpec,
    primes: usize,
    terms: usize,
    inert_only: bool,
    cached_only: bool,
    cache: &Cache,
) -> Result<ReconstructionOutput> {
    if terms == 0 {
        bail!("--terms must be positive");
    }
    let inert = inert_only || spec.flags.sqrt_conjecture;
    let ps: Vec<u64> =
        first_primes(primes).into_iter().filter(|&p| spec.admits(p) && (!inert || inert_in_q_sqrt_m5(p))).collect();
    let aps = ap_with_cache(spec, &ps, |p| terms * p as usize, cached_only, cache)?;
    let samples: Vec<(u64, FpSeries)> = ps.iter().zip(&aps).filter_map(|(&p, a)| classify_pth_power(a).map(|f| (p, f))).collect();
    if samples.len() < 2 {
        bail!("{} of {} primes give a p-th power; at least 2 are needed", samples.len(), ps.len());
    }
    let r = crt_reconstruct_series(&samples, terms)?;
    let target = if spec.flags.sqrt_conjecture { Some(sqrt_target(terms)?) } else { None };
    let mismatches = match &target {
        Some(t) => (0..terms).filter(|&k| r.stable[k] && r.coeffs[k].as_ref() != Some(t.coeff(k))).collect(),
        None => Vec::new(),
    };
    Ok(ReconstructionOutput {
        operator: spec.id.clone(),
        primes: r.primes.clone(),
        coeffs: r.coeffs.iter().map(|c| c.as_ref().map(Rational::to_string)).collect(),
        stable: r.stable.clone(),
        target: target.map(|t| t.coeffs().iter().map(Rational::to_string).collect()),
        mismatches,
    })
}
