//! Invariant suites shared by the command line and the test targets.

use crate::ballfn::{
    bound_at_9_4, bound_at_sqrt2_half, ball_f, ball_f_complex, convexity_witness, crossing_point,
    find_special_points, kos_asymptotic, np_compare, np_crossing, sqrt_3_over_pi,
};
use crate::extremal::{
    check_lower_bound, concavity_bound, concavity_gap, describe, interp, interpolation_sweep, two_weight_grid,
    search_max_perimeter, SearchConfig,
};
use crate::oracle::{mc_complex_section, perimeter_oracle, section_volume_oracle};
use crate::oscint::QuadratureSpec;
use crate::report::{Check, VerificationReport};
use crate::sample::{random_directions, random_with_leading};
use crate::sections::{
    offset_section_bound, perimeter, perimeter_a_max, perimeter_from_family, perimeter_a_min, perimeter_n3_closed, perimeter_n4_closed,
    section_family, section_volume, SectionProfile,
};
use crate::specfun::sinc;
use crate::{Direction, Error, Field, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::{FRAC_1_SQRT_2, PI, SQRT_2};
use std::fmt;
use std::str::FromStr;

/// A named group of checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    /// `sum_k D_k = (n-1) A`.
    SumIdentity,
    /// `D_k <= A` and the envelope `1 <= A <= sqrt(2)` (`2` for the polydisc).
    FacetBound,
    /// `A(a, t) <= (2/(1+t^2))^(l/2)`.
    OffsetBound,
    /// The perimeter is largest at `a_max`.
    Maximiser,
    BallFunction,
    /// Distribution functions of `|sinc|` and `exp(-x^2/6)` cross once.
    DistributionComparison,
    /// The two-weight integral near `a_1 = 1/sqrt(2)`.
    TwoWeight,
    /// Closed-form interpolation bounds.
    Interpolation,
    /// `P >= 2 pi^(l-1) (n-2)`.
    LowerBound,
    /// Quadrature against Irwin-Hall densities and the closed forms.
    OracleEquivalence,
    /// Quadrature against sampling in the polydisc; not part of `All`.
    MonteCarlo,
    All,
}

impl Suite {
    pub const NAMES: [(&'static str, Suite); 12] = [
        ("prop3", Suite::SumIdentity),
        ("prop4", Suite::FacetBound),
        ("cor5", Suite::OffsetBound),
        ("thm1", Suite::Maximiser),
        ("ballfn", Suite::BallFunction),
        ("np", Suite::DistributionComparison),
        ("lemma10", Suite::TwoWeight),
        ("lemmas89", Suite::Interpolation),
        ("prop11", Suite::LowerBound),
        ("oracle-equiv", Suite::OracleEquivalence),
        ("mc", Suite::MonteCarlo),
        ("all", Suite::All),
    ];

    pub fn name(self) -> &'static str {
        Suite::NAMES.iter().find(|(_, s)| *s == self).map(|(n, _)| *n).unwrap_or("?")
    }

    /// Suites run by `All`, in order.
    pub fn members() -> [Suite; 10] {
        [
            Suite::SumIdentity,
            Suite::FacetBound,
            Suite::OffsetBound,
            Suite::Maximiser,
            Suite::BallFunction,
            Suite::DistributionComparison,
            Suite::TwoWeight,
            Suite::Interpolation,
            Suite::LowerBound,
            Suite::OracleEquivalence,
        ]
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Suite> {
        Suite::NAMES
            .iter()
            .find(|(n, _)| *n == s)
            .map(|(_, v)| *v)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown suite '{s}'")))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Dimensions, sample size and seed shared by the suites.
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteOptions {
    pub n_min: usize,
    pub n_max: usize,
    pub samples: usize,
    pub seed: u64,
    pub spec: QuadratureSpec,
    /// Points per polydisc direction for the Monte Carlo suite.
    pub mc_samples: u64,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { n_min: 3, n_max: 8, samples: 50, seed: 7, spec: QuadratureSpec::default(), mc_samples: 10_000_000 }
    }
}

impl SuiteOptions {
    pub fn validate(&self) -> Result<()> {
        if self.n_min < 3 || self.n_min > self.n_max || self.n_max > 8 {
            return Err(Error::InvalidArgument(format!(
                "dimension range {}..{} must lie in 3..8",
                self.n_min, self.n_max
            )));
        }
        Ok(())
    }

    fn dims(&self) -> std::ops::RangeInclusive<usize> {
        self.n_min..=self.n_max
    }

    fn sample(&self, n: usize, field: Field) -> Vec<Direction> {
        random_directions(self.seed, n, field, self.samples)
    }
}

/// Runs one suite, or every member of [`Suite::All`].
pub fn run(suite: Suite, opts: &SuiteOptions) -> Result<Vec<VerificationReport>> {
    opts.validate()?;
    if suite == Suite::All {
        return Suite::members().iter().map(|&s| run_one(s, opts)).collect();
    }
    Ok(vec![run_one(suite, opts)?])
}

fn run_one(suite: Suite, opts: &SuiteOptions) -> Result<VerificationReport> {
    let mut r = match suite {
        Suite::SumIdentity => sum_identity(opts)?,
        Suite::FacetBound => facet_bound(opts)?,
        Suite::OffsetBound => offset_bound(opts)?,
        Suite::Maximiser => maximiser(opts)?,
        Suite::BallFunction => ball_function(&opts.spec)?,
        Suite::DistributionComparison => distribution_comparison()?,
        Suite::TwoWeight => two_weight(),
        Suite::Interpolation => interpolation(opts)?,
        Suite::LowerBound => lower_bound(opts)?,
        Suite::OracleEquivalence => oracle_equivalence(opts)?,
        Suite::MonteCarlo => monte_carlo(opts, 10)?,
        Suite::All => unreachable!("expanded by run"),
    };
    r.suite = suite.name().to_string();
    Ok(r)
}

const FIELDS: [Field; 2] = [Field::Real, Field::Complex];

pub fn sum_identity(opts: &SuiteOptions) -> Result<VerificationReport> {
    let mut r = VerificationReport::new("sum_identity");
    for field in FIELDS {
        for n in opts.dims() {
            for a in opts.sample(n, field) {
                let (area, d) = section_family(&a, &opts.spec)?;
                let gap = d.iter().sum::<f64>() - (n as f64 - 1.0) * area;
                r.push(Check::equal("sum_d_minus_n_minus_1_a", describe(&a), gap, 0.0, 1e-7));
            }
        }
    }
    Ok(r)
}

pub fn facet_bound(opts: &SuiteOptions) -> Result<VerificationReport> {
    let mut r = VerificationReport::new("facet_bound");
    for field in FIELDS {
        let top = match field {
            Field::Real => SQRT_2,
            Field::Complex => 2.0,
        };
        for n in opts.dims() {
            for a in opts.sample(n, field) {
                let (area, d) = section_family(&a, &opts.spec)?;
                let dmax = d.iter().copied().fold(f64::NEG_INFINITY, f64::max);
                r.push(Check::at_most("max_d_at_most_a", describe(&a), dmax, area, 1e-7));
                r.push(Check::at_least("a_at_least_1", describe(&a), area, 1.0, 1e-7));
                r.push(Check::at_most("a_at_most_a_max_value", describe(&a), area, top, 1e-7));
            }
        }
    }
    Ok(r)
}

/// Offsets `0.1, 0.2, ..., 2.0`.
pub fn offsets() -> Vec<f64> {
    (1..=20).map(|k| k as f64 / 10.0).collect()
}

pub fn offset_bound(opts: &SuiteOptions) -> Result<VerificationReport> {
    let mut r = VerificationReport::new("offset_bound");
    for field in FIELDS {
        for n in opts.dims() {
            for a in opts.sample(n, field) {
                for t in offsets() {
                    let v = section_volume(&a, t, &opts.spec)?;
                    let inputs = format!("{} t={t:.1}", describe(&a));
                    r.push(Check::at_most("offset_section_bound", inputs, v, offset_section_bound(t, field.l()), 1e-7));
                }
            }
        }
    }
    Ok(r)
}

/// Window of `a_1` left open by the concavity estimate.
pub fn concavity_window() -> (f64, f64) {
    (interp::a1_window_start(), interp::a1_strip_end())
}

pub fn maximiser(opts: &SuiteOptions) -> Result<VerificationReport> {
    let mut r = VerificationReport::new("maximiser");
    for field in FIELDS {
        for n in opts.dims() {
            let cfg = SearchConfig { seed: opts.seed, ..SearchConfig::new(n, field) };
            let rep = search_max_perimeter(&cfg, &opts.spec)?;
            let inputs = format!("{field} n={n} best={}", describe(&rep.best_direction));
            r.push(Check::at_most("search_best_perimeter", inputs.clone(), rep.best_value, rep.target_value, 1e-6));
            let dist = rep.best_direction.distance(&Direction::a_max(n, field));
            r.push(Check::at_most("search_distance_to_a_max", inputs, dist, 0.0, 1e-3));

            let target = perimeter_a_max(n, field);
            for a in opts.sample(n, field) {
                let p = perimeter(&a, &opts.spec)?;
                r.push(Check::at_most("perimeter_at_most_a_max", describe(&a), p, target, 1e-7));
                if field == Field::Real && a.coords()[0] <= FRAC_1_SQRT_2 {
                    let (area, d) = section_family(&a, &opts.spec)?;
                    let half = 0.5 * perimeter_from_family(&a, &d);
                    r.push(Check::at_most("concavity_chain", describe(&a), half, concavity_bound(&a, area), 1e-7));
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for n in opts.dims() {
        let half_target = 0.5 * perimeter_a_max(n, Field::Real);
        for _ in 0..opts.samples {
            let a = random_with_leading(&mut rng, n, concavity_window());
            let (area, d) = section_family(&a, &opts.spec)?;
            let half = 0.5 * perimeter_from_family(&a, &d);
            r.push(Check::at_most("window_gap", describe(&a), half - half_target, 2.0 * concavity_gap(), 1e-6));
            let chain = concavity_bound(&a, area);
            r.push(Check::at_most("window_chain_gap", describe(&a), chain - half_target, concavity_gap(), 1e-7));
        }
    }
    Ok(r)
}

/// Step of the convexity grid on `[sqrt(2)+1/2, 9/4]`.
pub const CONVEXITY_STEP: f64 = 0.01;

pub fn convexity_grid() -> Vec<f64> {
    let lo = SQRT_2 + 0.5;
    let m = ((2.25 - lo) / CONVEXITY_STEP).floor() as usize;
    let mut g: Vec<f64> = (0..=m).map(|k| lo + k as f64 * CONVEXITY_STEP).collect();
    if 2.25 - g[m] > 1e-12 {
        g.push(2.25);
    }
    g
}

pub fn ball_function(spec: &QuadratureSpec) -> Result<VerificationReport> {
    let mut r = VerificationReport::new("ball_function");
    let f = |p: f64| ball_f(p, spec);
    let s3 = sqrt_3_over_pi();
    r.push(Check::equal("f_at_2", "p=2", f(2.0)?, 1.0, 1e-9));
    r.push(Check::equal("complex_f_at_2", "p=2", ball_f_complex(2.0, spec)?, 1.0, 1e-9));
    r.push(Check::at_most("f_at_9_4", "p=9/4", f(2.25)?, 0.977, 0.0));
    r.push(Check::at_most("f_at_sqrt2_half", "p=sqrt2+1/2", f(SQRT_2 + 0.5)?, 1.0199, 0.0));

    for k in 0..=191 {
        let p = 2.25 + 0.25 * k as f64;
        r.push(Check::at_most("f_below_limit", format!("p={p:.2}"), f(p)?, s3, 1e-9));
    }
    for k in 0..=48 {
        let p = 2.0 + k as f64;
        r.push(Check::at_most("f_at_most_1", format!("p={p:.0}"), f(p)?, 1.0, 1e-9));
    }
    for k in 1..16 {
        let p = 1.2 + 0.05 * k as f64;
        r.push(Check::at_least("f_above_1_below_2", format!("p={p:.2}"), f(p)?, 1.0, 0.0));
    }

    let grid = convexity_grid();
    let vals: Vec<f64> = grid.iter().map(|&p| f(p)).collect::<Result<_>>()?;
    for (w, p) in vals.windows(2).zip(&grid) {
        r.push(Check::at_most("f_decreasing", format!("p={p:.4}"), w[1] - w[0], 0.0, 0.0));
    }
    for (w, p) in vals.windows(3).zip(&grid[1..]) {
        r.push(Check::at_least("f_second_difference", format!("p={p:.4}"), w[0] - 2.0 * w[1] + w[2], 0.0, 1e-8));
    }
    for &p in &grid {
        r.push(Check::at_least("convexity_witness", format!("p={p:.4}"), convexity_witness(p, spec)?, 0.2, 0.0));
    }

    let b = bound_at_9_4();
    r.push(Check::at_most("bound_9_4_i0", "p=9/4", b.i[0], 0.91340, 0.0));
    r.push(Check::at_most("bound_9_4_i1", "p=9/4", b.i[1], 0.03414, 0.0));
    r.push(Check::at_most("bound_9_4_total", "p=9/4", b.total, 0.977, 0.0));
    r.push(Check::at_least("bound_9_4_above_f", "p=9/4", b.total, f(2.25)?, 0.0));
    let b = bound_at_sqrt2_half();
    r.push(Check::at_most("bound_sqrt2_half_total", "p=sqrt2+1/2", b.total, 1.0199, 0.0));
    r.push(Check::at_most("bound_sqrt2_half_sin_mass", "p=sqrt2+1/2", b.sin_mass, 1.6, 0.0));
    r.push(Check::at_least("bound_sqrt2_half_above_f", "p=sqrt2+1/2", b.total, f(SQRT_2 + 0.5)?, 0.0));

    let sp = find_special_points(spec)?;
    let bracket = |r: &mut VerificationReport, name: &str, v: f64, lo: f64, hi: f64| {
        let inputs = format!("{name}={v:.6}");
        r.push(Check::at_least(format!("{name}_lower"), inputs.clone(), v, lo, 0.0));
        r.push(Check::at_most(format!("{name}_upper"), inputs, v, hi, 0.0));
    };
    bracket(&mut r, "p1", sp.p1, 2.165, 2.166);
    bracket(&mut r, "p2", sp.p2, 3.36, 3.37);
    bracket(&mut r, "p0", sp.p0, 4.46, 4.47);
    bracket(&mut r, "p0_witness", sp.p0_witness, 4.46, 4.47);
    r.push(Check::equal("kos_expansion", "p=40", kos_asymptotic(40.0), f(40.0)?, 5e-5));
    Ok(r)
}

/// Documented `(x_p, y_p)` rows for `p = sqrt(2)+1/2, 2, 9/4`.
pub const CROSSING_TABLE: [(f64, f64, f64); 3] =
    [(SQRT_2 + 0.5, 1.8205, 0.5323), (2.0, 1.7863, 0.5469), (2.25, 1.6965, 0.5848)];

/// `m` log-spaced levels in `[1e-4, 1 - 1e-4]`.
pub fn log_levels(m: usize) -> Vec<f64> {
    let (lo, hi) = (1e-4f64.ln(), (1.0 - 1e-4f64).ln());
    (0..m).map(|i| (lo + (hi - lo) * i as f64 / (m - 1) as f64).exp()).collect()
}

pub fn distribution_comparison() -> Result<VerificationReport> {
    let mut r = VerificationReport::new("distribution_comparison");
    let worst = (1..100_000)
        .map(|i| {
            let x = PI * i as f64 / 100_000.0;
            sinc(x).abs() - (-x * x / 6.0).exp()
        })
        .fold(f64::NEG_INFINITY, f64::max);
    r.push(Check::at_most("sinc_below_gaussian", "x in (0,pi), 1e5 points", worst, 0.0, 0.0));

    let levels = log_levels(10_000);
    let signs: Vec<bool> = levels
        .iter()
        .map(|&y| {
            let c = np_compare(y);
            c.h - c.g > 0.0
        })
        .collect();
    let changes = signs.windows(2).filter(|w| w[0] != w[1]).count();
    r.push(Check::equal("h_minus_g_sign_changes", "1e4 log-spaced levels", changes as f64, 1.0, 0.0));
    r.push(Check::holds("h_below_g_at_low_levels", format!("y={:.1e}", levels[0]), !signs[0]));
    let idx = signs.iter().position(|&s| s).unwrap_or(0);
    let y0 = if idx > 0 { np_crossing(levels[idx - 1], levels[idx])? } else { f64::NAN };
    r.push(Check::at_least("crossing_level", format!("y0={y0:.6}"), y0, 0.0, 0.0));
    r.push(Check::at_most("crossing_level", format!("y0={y0:.6}"), y0, 1.0, 0.0));

    for (p, x, y) in CROSSING_TABLE {
        let (xp, yp) = crossing_point(p);
        r.push(Check::equal("crossing_x", format!("p={p:.4}"), xp, x, 5e-4));
        r.push(Check::equal("crossing_y", format!("p={p:.4}"), yp, y, 5e-4));
    }
    Ok(r)
}

/// Quadrature settings for the two-weight grid; the margin to the bound is
/// about 0.05 so a loose tolerance suffices.
pub fn two_weight_spec() -> QuadratureSpec {
    QuadratureSpec { abs_tol: 1e-6, rel_tol: 1e-6, ..QuadratureSpec::default() }
}

pub fn two_weight() -> VerificationReport {
    two_weight_grid(20, &two_weight_spec())
}

pub fn interpolation(opts: &SuiteOptions) -> Result<VerificationReport> {
    let mut r = VerificationReport::new("interpolation");
    for n in opts.dims().filter(|&n| n >= 4) {
        r.extend(interpolation_sweep(n)?);
    }
    Ok(r)
}

pub fn lower_bound(opts: &SuiteOptions) -> Result<VerificationReport> {
    let mut r = VerificationReport::new("lower_bound");
    for field in FIELDS {
        for n in opts.dims() {
            let a = Direction::a_min(n, field);
            let p = perimeter(&a, &opts.spec)?;
            r.push(Check::equal("perimeter_at_a_min", describe(&a), p, perimeter_a_min(n, field), 1e-7));
            r.extend(check_lower_bound(&a, &opts.spec)?);
            for a in opts.sample(n, field) {
                r.extend(check_lower_bound(&a, &opts.spec)?);
            }
        }
    }
    Ok(r)
}

/// Offsets compared with the exact density.
pub const ORACLE_OFFSETS: [f64; 3] = [0.0, 0.25, 0.5];

pub fn oracle_equivalence(opts: &SuiteOptions) -> Result<VerificationReport> {
    let mut r = VerificationReport::new("oracle_equivalence");
    for n in opts.dims() {
        for a in opts.sample(n, Field::Real) {
            for t in ORACLE_OFFSETS {
                let q = section_volume(&a, t, &opts.spec)?;
                let e = section_volume_oracle(&a, t)?;
                r.push(Check::equal("section_volume_vs_density", format!("{} t={t}", describe(&a)), q, e, 1e-8));
            }
            let p = perimeter(&a, &opts.spec)?;
            r.push(Check::equal("perimeter_vs_density", describe(&a), p, perimeter_oracle(&a)?, 1e-7));
        }
        if n == 3 || n == 4 {
            for a in random_directions(opts.seed ^ 0x5eed, n, Field::Real, 100) {
                let p = perimeter(&a, &opts.spec)?;
                let closed = if n == 3 { perimeter_n3_closed(&a)? } else { perimeter_n4_closed(&a)? };
                r.push(Check::equal("perimeter_vs_closed_form", describe(&a), p, closed, 1e-7));
            }
        }
    }
    Ok(r)
}

/// Polydisc sections against Monte Carlo for `count` directions with
/// `n <= 5`, within three standard errors.
pub fn monte_carlo(opts: &SuiteOptions, count: usize) -> Result<VerificationReport> {
    let mut r = VerificationReport::new("monte_carlo");
    let dims: Vec<usize> = opts.dims().filter(|&n| n <= 5).collect();
    if dims.is_empty() {
        return Ok(r);
    }
    for i in 0..count {
        let n = dims[i % dims.len()];
        let a = &random_directions(opts.seed.wrapping_add(i as u64), n, Field::Complex, 1)[0];
        let q = SectionProfile::compute(a, &opts.spec)?.a;
        let mc = mc_complex_section(a, opts.mc_samples, 0.02, opts.seed.wrapping_add(i as u64))?;
        let inputs = format!("{} samples={} se={:.2e}", describe(a), mc.samples, mc.std_error);
        r.push(Check::equal("monte_carlo_section", inputs, mc.value, q, 3.0 * mc.std_error));
    }
    Ok(r)
}
