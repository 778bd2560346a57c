//! `cubesect`: section volumes, perimeters and verification suites.
//!
//! Every option can also come from the environment (`CUBESECT_<FLAG>`, dashes
//! as underscores) or from a `--config` file of `flag=value` lines. A flag
//! beats the environment, which beats the file, which beats the default.
//!
//! Exit codes: 0 success, 1 failed check, 2 usage error, 3 quadrature did not
//! converge.

mod config;
mod output;

use clap::{Args, Parser, Subcommand};
use config::Config;
use cubesect::ballfn::{ball_f, ball_f_complex, find_special_points, kos_asymptotic, sqrt_3_over_pi};
use cubesect::bpcheck::{bp_root, bp_table_for, first_counterexample};
use cubesect::extremal::{search_max_perimeter, SearchConfig};
use cubesect::oracle::{mc_complex_section, section_volume_oracle};
use cubesect::oscint::QuadratureSpec;
use cubesect::sections::{offset_section_bound, perimeter_a_max, section_volume, SectionProfile};
use cubesect::verify::{run, Suite, SuiteOptions};
use cubesect::{Direction, Error, Field};
use output::{list, num, opt, Format, Table};
use serde_json::Value;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "cubesect", version, about = "Central sections of the cube and the polydisc")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// File of `flag=value` lines.
    #[arg(long, global = true, env = "CUBESECT_CONFIG")]
    config: Option<PathBuf>,
    /// json (one object per line) or csv.
    #[arg(long, global = true, env = "CUBESECT_FORMAT")]
    format: Option<String>,
    /// Write rows here instead of stdout.
    #[arg(long, global = true, env = "CUBESECT_OUTPUT")]
    output: Option<PathBuf>,
    #[arg(long = "abs-tol", global = true, env = "CUBESECT_ABS_TOL")]
    abs_tol: Option<f64>,
    #[arg(long = "rel-tol", global = true, env = "CUBESECT_REL_TOL")]
    rel_tol: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// A(a,t), the D_k, the perimeter, the bounds and an independent check.
    Section(SectionArgs),
    /// Run an invariant suite.
    Verify(VerifyArgs),
    /// Ball's function f, its polydisc analogue and the large-p expansion.
    Ballfn(BallfnArgs),
    /// Busemann-Petty table and crossover roots.
    Bp(BpArgs),
    /// Search for the largest section perimeter.
    Extremal(ExtremalArgs),
}

#[derive(Args)]
struct SectionArgs {
    #[arg(long, env = "CUBESECT_FIELD")]
    field: Option<String>,
    /// Comma separated coordinates; normalised and sorted.
    #[arg(long, env = "CUBESECT_A", allow_hyphen_values = true)]
    a: Option<String>,
    #[arg(long, env = "CUBESECT_T")]
    t: Option<f64>,
    /// Monte Carlo points for the polydisc check.
    #[arg(long = "mc-samples", env = "CUBESECT_MC_SAMPLES")]
    mc_samples: Option<u64>,
    #[arg(long, env = "CUBESECT_SEED")]
    seed: Option<u64>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, env = "CUBESECT_SUITE")]
    suite: Option<String>,
    /// Dimension range `lo..hi` (inclusive) or a single dimension.
    #[arg(long, env = "CUBESECT_N")]
    n: Option<String>,
    #[arg(long, env = "CUBESECT_SAMPLES")]
    samples: Option<usize>,
    #[arg(long, env = "CUBESECT_SEED")]
    seed: Option<u64>,
    #[arg(long = "mc-samples", env = "CUBESECT_MC_SAMPLES")]
    mc_samples: Option<u64>,
}

#[derive(Args)]
struct BallfnArgs {
    /// Comma separated exponents.
    #[arg(long, env = "CUBESECT_P")]
    p: Option<String>,
    /// `start:stop:step`, inclusive.
    #[arg(long, env = "CUBESECT_RANGE")]
    range: Option<String>,
    /// `table` or `plot-data` (always CSV).
    #[arg(long, env = "CUBESECT_EMIT")]
    emit: Option<String>,
    /// Emit the special points with their brackets instead.
    #[arg(long, env = "CUBESECT_SPECIAL", num_args = 0..=1, default_missing_value = "true")]
    special: Option<bool>,
}

#[derive(Args)]
struct BpArgs {
    /// real, complex or both (the default).
    #[arg(long, env = "CUBESECT_FIELD")]
    field: Option<String>,
    /// Emit the crossover roots instead of the table.
    #[arg(long, env = "CUBESECT_ROOT", num_args = 0..=1, default_missing_value = "true")]
    root: Option<bool>,
    #[arg(long = "n-min", env = "CUBESECT_N_MIN")]
    n_min: Option<usize>,
    #[arg(long = "n-max", env = "CUBESECT_N_MAX")]
    n_max: Option<usize>,
}

#[derive(Args)]
struct ExtremalArgs {
    #[arg(long, env = "CUBESECT_N")]
    n: Option<usize>,
    #[arg(long, env = "CUBESECT_FIELD")]
    field: Option<String>,
    #[arg(long, env = "CUBESECT_SEED")]
    seed: Option<u64>,
    #[arg(long, env = "CUBESECT_GRID")]
    grid: Option<usize>,
    #[arg(long, env = "CUBESECT_MULTISTARTS")]
    multistarts: Option<usize>,
}

enum Failure {
    Usage(String),
    Numeric(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::InvalidArgument(_) | Error::InvalidDirection(_) => Failure::Usage(e.to_string()),
            Error::NonConvergence { .. } | Error::Divergent(_) => Failure::Numeric(e.to_string()),
            Error::Inconsistent(_) => Failure::Check(e.to_string()),
        }
    }
}

impl From<String> for Failure {
    fn from(s: String) -> Failure {
        Failure::Usage(s)
    }
}

struct Ctx {
    cfg: Config,
    spec: QuadratureSpec,
    format: Format,
}

/// Rows plus whether every check in them passed.
struct Outcome {
    table: Table,
    passed: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Check(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Numeric(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
    }
}

fn execute(cli: Cli) -> Result<bool, Failure> {
    let cfg = match &cli.global.config {
        Some(p) => Config::load(p)?,
        None => Config::default(),
    };
    let mut spec = QuadratureSpec::default();
    spec.abs_tol = cfg.pick(cli.global.abs_tol, "abs-tol", spec.abs_tol)?;
    spec.rel_tol = cfg.pick(cli.global.rel_tol, "rel-tol", spec.rel_tol)?;
    if !(spec.abs_tol > 0.0 && spec.rel_tol > 0.0) {
        return Err(Failure::Usage("tolerances must be positive".into()));
    }
    let format: Format = cfg.pick(cli.global.format.as_deref().map(str::parse).transpose()?, "format", Format::Json)?;
    let output = cfg.pick_opt(cli.global.output.clone(), "output")?;
    let ctx = Ctx { cfg, spec, format };

    let (outcome, format) = match cli.command {
        Command::Section(a) => (section(&ctx, a)?, ctx.format),
        Command::Verify(a) => (verify(&ctx, a)?, ctx.format),
        Command::Ballfn(a) => ballfn(&ctx, a)?,
        Command::Bp(a) => (bp(&ctx, a)?, ctx.format),
        Command::Extremal(a) => (extremal(&ctx, a)?, ctx.format),
    };

    let written = match output {
        Some(path) => std::fs::File::create(&path)
            .and_then(|mut f| outcome.table.write(format, &mut f).and_then(|_| f.flush())),
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            outcome.table.write(format, &mut lock).and_then(|_| lock.flush())
        }
    };
    written.map_err(|e| Failure::Usage(format!("cannot write output: {e}")))?;
    Ok(outcome.passed)
}

fn field(s: &str) -> Result<Field, Failure> {
    Ok(s.parse::<Field>()?)
}

fn parse_list(s: &str) -> Result<Vec<f64>, Failure> {
    s.split(',')
        .map(|x| x.trim().parse::<f64>().map_err(|e| Failure::Usage(format!("bad number '{x}': {e}"))))
        .collect()
}

fn section(ctx: &Ctx, args: SectionArgs) -> Result<Outcome, Failure> {
    let field = field(&ctx.cfg.pick(args.field, "field", "real".to_string())?)?;
    let coords = ctx.cfg.pick_opt(args.a, "a")?.ok_or_else(|| Failure::Usage("--a is required".into()))?;
    let t: f64 = ctx.cfg.pick(args.t, "t", 0.0)?;
    let mc_samples: u64 = ctx.cfg.pick(args.mc_samples, "mc-samples", 1_000_000)?;
    let seed: u64 = ctx.cfg.pick(args.seed, "seed", 0)?;
    let a = Direction::canonicalize(&parse_list(&coords)?, field)?;

    let profile = SectionProfile::compute(&a, &ctx.spec)?;
    let area_t = if t == 0.0 { profile.a } else { section_volume(&a, t, &ctx.spec)? };
    let (oracle, oracle_se) = match field {
        Field::Real => (Some(section_volume_oracle(&a, t)?), None),
        Field::Complex if t == 0.0 => {
            let mc = mc_complex_section(&a, mc_samples, 0.02, seed)?;
            (Some(mc.value), Some(mc.std_error))
        }
        Field::Complex => (None, None),
    };
    let n = a.n();
    let mut table = Table::new(&[
        "field",
        "n",
        "a",
        "t",
        "area_t",
        "area",
        "d",
        "perimeter",
        "perimeter_a_max",
        "holder_bound",
        "projection_bound",
        "offset_bound",
        "oracle",
        "oracle_std_error",
        "discrepancy",
    ]);
    table.push(vec![
        Value::from(field.to_string()),
        Value::from(n),
        list(a.coords()),
        num(t),
        num(area_t),
        num(profile.a),
        list(&profile.d),
        opt(profile.p),
        opt((n >= 3).then(|| perimeter_a_max(n, field))),
        opt(profile.holder_bound),
        opt(profile.projection_bound),
        num(offset_section_bound(t, field.l())),
        opt(oracle),
        opt(oracle_se),
        opt(oracle.map(|o| area_t - o)),
    ]);
    Ok(Outcome { table, passed: true })
}

fn parse_dims(s: &str) -> Result<(usize, usize), Failure> {
    let bad = || Failure::Usage(format!("bad dimension range '{s}', expected lo..hi or n"));
    let (lo, hi) = match s.split_once("..") {
        Some((lo, hi)) => (lo, hi.trim_start_matches('=')),
        None => (s, s),
    };
    Ok((lo.trim().parse().map_err(|_| bad())?, hi.trim().parse().map_err(|_| bad())?))
}

fn verify(ctx: &Ctx, args: VerifyArgs) -> Result<Outcome, Failure> {
    let name = ctx.cfg.pick(args.suite, "suite", "all".to_string())?;
    let suite: Suite = name.parse()?;
    let (n_min, n_max) = parse_dims(&ctx.cfg.pick(args.n, "n", "3..8".to_string())?)?;
    let defaults = SuiteOptions::default();
    let opts = SuiteOptions {
        n_min,
        n_max,
        samples: ctx.cfg.pick(args.samples, "samples", defaults.samples)?,
        seed: ctx.cfg.pick(args.seed, "seed", defaults.seed)?,
        spec: ctx.spec.clone(),
        mc_samples: ctx.cfg.pick(args.mc_samples, "mc-samples", defaults.mc_samples)?,
    };
    let reports = run(suite, &opts)?;
    let mut table =
        Table::new(&["suite", "check", "inputs", "value", "relation", "bound", "margin", "tolerance", "passed"]);
    let mut passed = true;
    for rep in &reports {
        let failed = rep.failures().count();
        eprintln!("{}: {} checks, {} failed", rep.suite, rep.checks.len(), failed);
        for c in rep.failures() {
            eprintln!("  FAIL {} [{}] value {} bound {} margin {:e}", c.name, c.inputs, c.value, c.bound, c.margin);
        }
        passed &= failed == 0;
        for c in &rep.checks {
            let relation = serde_json::to_value(c.relation).unwrap_or(Value::Null);
            table.push(vec![
                Value::from(rep.suite.clone()),
                Value::from(c.name.clone()),
                Value::from(c.inputs.clone()),
                num(c.value),
                relation,
                num(c.bound),
                num(c.margin),
                num(c.tolerance),
                Value::from(c.passed),
            ]);
        }
    }
    Ok(Outcome { table, passed })
}

fn parse_range(s: &str) -> Result<Vec<f64>, Failure> {
    let parts = parse_list(&s.replace(':', ","))?;
    let [start, stop, step] = parts[..] else {
        return Err(Failure::Usage(format!("bad range '{s}', expected start:stop:step")));
    };
    if !(step > 0.0) || stop < start {
        return Err(Failure::Usage(format!("bad range '{s}'")));
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize;
    Ok((0..=count).map(|k| ((start + k as f64 * step) * 1e12).round() / 1e12).collect())
}

fn ballfn(ctx: &Ctx, args: BallfnArgs) -> Result<(Outcome, Format), Failure> {
    if ctx.cfg.pick(args.special, "special", false)? {
        let sp = find_special_points(&ctx.spec)?;
        let mut table = Table::new(&["point", "value", "lower", "upper", "inside"]);
        for (name, v, lo, hi) in [
            ("p1", sp.p1, 2.165, 2.166),
            ("p2", sp.p2, 3.36, 3.37),
            ("p0", sp.p0, 4.46, 4.47),
            ("p0_witness", sp.p0_witness, 4.46, 4.47),
        ] {
            table.push(vec![Value::from(name), num(v), num(lo), num(hi), Value::from(lo < v && v < hi)]);
        }
        let passed = table.rows.iter().all(|r| r["inside"] == Value::Bool(true));
        return Ok((Outcome { table, passed }, ctx.format));
    }
    let emit = ctx.cfg.pick(args.emit, "emit", "table".to_string())?;
    let format = match emit.as_str() {
        "table" => ctx.format,
        "plot-data" => Format::Csv,
        _ => return Err(Failure::Usage(format!("unknown emit mode '{emit}'"))),
    };
    let ps = match (ctx.cfg.pick_opt(args.p, "p")?, ctx.cfg.pick_opt(args.range, "range")?) {
        (Some(p), None) => parse_list(&p)?,
        (None, Some(r)) => parse_range(&r)?,
        (None, None) => vec![2.0],
        (Some(_), Some(_)) => return Err(Failure::Usage("give either --p or --range".into())),
    };
    let mut table = Table::new(&["p", "f", "f_complex", "kos", "limit"]);
    for p in ps {
        if !(p > 1.0) || !p.is_finite() {
            return Err(Failure::Usage(format!("the exponent must exceed 1, got {p}")));
        }
        let fc = if p > 4.0 / 3.0 { Some(ball_f_complex(p, &ctx.spec)?) } else { None };
        table.push(vec![num(p), num(ball_f(p, &ctx.spec)?), opt(fc), num(kos_asymptotic(p)), num(sqrt_3_over_pi())]);
    }
    Ok((Outcome { table, passed: true }, format))
}

fn bp(ctx: &Ctx, args: BpArgs) -> Result<Outcome, Failure> {
    let fields = match ctx.cfg.pick_opt(args.field, "field")?.as_deref() {
        None | Some("both") => vec![Field::Real, Field::Complex],
        Some(f) => vec![field(f)?],
    };
    if ctx.cfg.pick(args.root, "root", false)? {
        let mut table = Table::new(&["field", "root", "first_counterexample"]);
        for f in fields {
            let first = first_counterexample(f).map(Value::from).unwrap_or(Value::Null);
            table.push(vec![Value::from(f.to_string()), num(bp_root(f)?), first]);
        }
        return Ok(Outcome { table, passed: true });
    }
    let n_min = ctx.cfg.pick(args.n_min, "n-min", 3)?;
    let n_max = ctx.cfg.pick(args.n_max, "n-max", 20)?;
    let mut table = Table::new(&["field", "n", "radius", "bp", "counterexample"]);
    for f in fields {
        let rows = bp_table_for(f, n_min, n_max)?;
        if let Some(first) = rows.iter().find(|r| r.counterexample) {
            eprintln!("{f}: first counterexample at n={}", first.n);
        }
        for r in rows {
            table.push(vec![
                Value::from(f.to_string()),
                Value::from(r.n),
                num(r.radius),
                num(r.bp),
                Value::from(r.counterexample),
            ]);
        }
    }
    Ok(Outcome { table, passed: true })
}

fn extremal(ctx: &Ctx, args: ExtremalArgs) -> Result<Outcome, Failure> {
    let n = ctx.cfg.pick(args.n, "n", 4)?;
    let field = field(&ctx.cfg.pick(args.field, "field", "real".to_string())?)?;
    let base = SearchConfig::new(n, field);
    let cfg = SearchConfig {
        seed: ctx.cfg.pick(args.seed, "seed", base.seed)?,
        grid_resolution: ctx.cfg.pick(args.grid, "grid", base.grid_resolution)?,
        multistarts: ctx.cfg.pick(args.multistarts, "multistarts", base.multistarts)?,
        ..base
    };
    let rep = search_max_perimeter(&cfg, &ctx.spec)?;
    let mut table =
        Table::new(&["field", "n", "best_direction", "best_value", "target_value", "margin", "evaluations"]);
    table.push(vec![
        Value::from(field.to_string()),
        Value::from(n),
        list(rep.best_direction.coords()),
        num(rep.best_value),
        num(rep.target_value),
        num(rep.margin),
        Value::from(rep.evaluations),
    ]);
    Ok(Outcome { table, passed: rep.margin >= -1e-6 })
}
