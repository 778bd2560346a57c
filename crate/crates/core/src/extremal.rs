//! Search for the largest section perimeter and the interpolation estimates
//! that bound it near `a_1 = 1/sqrt(2)`.

use crate::oscint::{integrate_abs_power, QuadratureSpec};
use crate::report::{Check, VerificationReport};
use crate::sections::{perimeter, perimeter_a_max, perimeter_a_min};
use crate::{Direction, Error, Field, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::Serialize;
use std::f64::consts::{FRAC_1_SQRT_2, SQRT_2};

/// Coordinates below this fraction of the norm are set to zero while
/// searching. Tiny polydisc weights make the Bessel products decay slowly and
/// the maximiser has zeros there anyway.
pub const SNAP: f64 = 0.02;

const LOCAL_EVALS_PER_DIM: usize = 150;
const INITIAL_STEP: f64 = 0.05;
const JITTER: f64 = 0.05;

/// Parameters of [`search_max_perimeter`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchConfig {
    pub n: usize,
    pub field: Field,
    /// The grid uses squares `a_k^2 = m_k / grid_resolution`.
    pub grid_resolution: usize,
    pub multistarts: usize,
    pub local_tol: f64,
    pub seed: u64,
}

impl SearchConfig {
    pub fn new(n: usize, field: Field) -> SearchConfig {
        SearchConfig { n, field, grid_resolution: 12, multistarts: 50, local_tol: 1e-10, seed: 0 }
    }

    pub fn validate(&self) -> Result<()> {
        if !(3..=8).contains(&self.n) {
            return Err(Error::InvalidArgument(format!("search dimension {} outside 3..=8", self.n)));
        }
        if self.grid_resolution < 10 {
            return Err(Error::InvalidArgument(format!("grid resolution {} below 10", self.grid_resolution)));
        }
        if self.multistarts == 0 {
            return Err(Error::InvalidArgument("at least one local search is needed".into()));
        }
        if !(self.local_tol > 0.0) {
            return Err(Error::InvalidArgument(format!("local tolerance {} must be positive", self.local_tol)));
        }
        Ok(())
    }
}

/// Outcome of a perimeter search.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExtremalReport {
    pub best_direction: Direction,
    pub best_value: f64,
    /// Perimeter at `a_max`.
    pub target_value: f64,
    /// `target_value - best_value`.
    pub margin: f64,
    pub evaluations: usize,
}

struct Objective<'a> {
    field: Field,
    spec: &'a QuadratureSpec,
    evaluations: usize,
}

impl Objective<'_> {
    fn direction(&self, x: &[f64]) -> Option<Direction> {
        let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        if !(norm > 0.0) || !norm.is_finite() {
            return None;
        }
        let raw: Vec<f64> = x.iter().map(|v| if v.abs() < SNAP * norm { 0.0 } else { v.abs() }).collect();
        Direction::canonicalize(&raw, self.field).ok()
    }

    // Failed evaluations count as -inf so the simplex moves away from them.
    fn value(&mut self, x: &[f64]) -> f64 {
        self.evaluations += 1;
        match self.direction(x) {
            Some(d) => perimeter(&d, self.spec).unwrap_or(f64::NEG_INFINITY),
            None => f64::NEG_INFINITY,
        }
    }
}

/// Squares `m / res` for all partitions `m` of `res` into at most `n` parts.
fn partitions(res: usize, n: usize) -> Vec<Vec<usize>> {
    fn rec(left: usize, max: usize, slots: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            let mut v = cur.clone();
            v.resize(cur.len() + slots, 0);
            out.push(v);
            return;
        }
        if slots == 0 {
            return;
        }
        for m in (1..=max.min(left)).rev() {
            cur.push(m);
            rec(left - m, m, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(res, res, n, &mut Vec::new(), &mut out);
    out
}

/// Maximise the section perimeter over canonical directions by a grid pass
/// followed by Nelder-Mead polishing from the best grid points.
pub fn search_max_perimeter(cfg: &SearchConfig, spec: &QuadratureSpec) -> Result<ExtremalReport> {
    cfg.validate()?;
    let mut obj = Objective { field: cfg.field, spec, evaluations: 0 };

    let mut grid: Vec<(f64, Vec<f64>)> = partitions(cfg.grid_resolution, cfg.n)
        .into_iter()
        .map(|m| {
            let x: Vec<f64> = m.iter().map(|&k| (k as f64 / cfg.grid_resolution as f64).sqrt()).collect();
            (obj.value(&x), x)
        })
        .collect();
    grid.sort_by(|a, b| b.0.total_cmp(&a.0));

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let jitter = Normal::new(0.0, JITTER).expect("valid normal");
    let mut best = grid[0].clone();
    for i in 0..cfg.multistarts {
        let base = &grid[i % grid.len()].1;
        let start: Vec<f64> = if i < grid.len() {
            base.clone()
        } else {
            base.iter().map(|v| v + jitter.sample(&mut rng)).collect()
        };
        let budget = LOCAL_EVALS_PER_DIM * cfg.n;
        let (x, fx) = nelder_mead(|x| -obj.value(x), &start, INITIAL_STEP, cfg.local_tol, budget);
        if -fx > best.0 {
            best = (-fx, x);
        }
    }

    let best_direction = obj.direction(&best.1).ok_or_else(|| Error::NonConvergence {
        est_error: f64::NAN,
        periods: obj.evaluations,
    })?;
    let best_value = perimeter(&best_direction, spec)?;
    let target_value = perimeter_a_max(cfg.n, cfg.field);
    Ok(ExtremalReport {
        best_direction,
        best_value,
        target_value,
        margin: target_value - best_value,
        evaluations: obj.evaluations + 1,
    })
}

/// Minimise `f` from `x0`. Stops when the simplex values agree to `tol` and
/// its diameter is below `sqrt(tol)`, or after `budget` evaluations.
pub fn nelder_mead(mut f: impl FnMut(&[f64]) -> f64, x0: &[f64], step: f64, tol: f64, budget: usize) -> (Vec<f64>, f64) {
    let d = x0.len();
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(d + 1);
    simplex.push((x0.to_vec(), f(x0)));
    for i in 0..d {
        let mut x = x0.to_vec();
        x[i] += if x[i] >= 0.0 { step } else { -step };
        let fx = f(&x);
        simplex.push((x, fx));
    }
    let mut used = d + 1;
    let point = |c: &[f64], w: &[f64], t: f64| -> Vec<f64> { c.iter().zip(w).map(|(c, w)| c + t * (w - c)).collect() };
    while used < budget {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let spread = simplex[d].1 - simplex[0].1;
        let diam = simplex[1..]
            .iter()
            .map(|(x, _)| x.iter().zip(&simplex[0].0).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
            .fold(0.0, f64::max);
        if spread.abs() <= tol && diam <= tol.sqrt() {
            break;
        }
        let mut centroid = vec![0.0; d];
        for (x, _) in &simplex[..d] {
            for (c, v) in centroid.iter_mut().zip(x) {
                *c += v / d as f64;
            }
        }
        let worst = simplex[d].clone();
        let xr = point(&centroid, &worst.0, -1.0);
        let fr = f(&xr);
        used += 1;
        if fr < simplex[0].1 {
            let xe = point(&centroid, &worst.0, -2.0);
            let fe = f(&xe);
            used += 1;
            simplex[d] = if fe < fr { (xe, fe) } else { (xr, fr) };
        } else if fr < simplex[d - 1].1 {
            simplex[d] = (xr, fr);
        } else {
            let (xc, fc) = if fr < worst.1 {
                let xc = point(&centroid, &xr, 0.5);
                let fc = f(&xc);
                (xc, fc)
            } else {
                let xc = point(&centroid, &worst.0, 0.5);
                let fc = f(&xc);
                (xc, fc)
            };
            used += 1;
            if fc < worst.1.min(fr) {
                simplex[d] = (xc, fc);
            } else {
                let best = simplex[0].0.clone();
                for s in simplex.iter_mut().skip(1) {
                    s.0 = point(&best, &s.0, 0.5);
                    s.1 = f(&s.0);
                }
                used += d;
            }
        }
    }
    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    simplex.swap_remove(0)
}

/// Lower perimeter bound `2 pi^(l-1) (n-2)`; the a_min value `2 pi^(l-1) (n-1)`
/// is reported alongside as the conjectured sharp bound but not enforced.
pub fn check_lower_bound(a: &Direction, spec: &QuadratureSpec) -> Result<VerificationReport> {
    let n = a.n();
    if n < 3 {
        return Err(Error::InvalidArgument("perimeter needs n >= 3".into()));
    }
    let p = perimeter(a, spec)?;
    let bound = perimeter_a_min(n, a.field()) * (n as f64 - 2.0) / (n as f64 - 1.0);
    let mut r = VerificationReport::new("lower_bound");
    r.push(Check::at_least("perimeter_lower_bound", describe(a), p, bound, 1e-6));
    Ok(r)
}

pub(crate) fn describe(a: &Direction) -> String {
    let c: Vec<String> = a.coords().iter().map(|v| format!("{v:.6}")).collect();
    format!("{} a=({})", a.field(), c.join(","))
}

/// Box of the two-weight estimate.
pub const TWO_WEIGHT_A1: (f64, f64) = (0.7095, 0.7149);
/// Lower end is `1/sqrt(10)`.
pub const TWO_WEIGHT_A2: (f64, f64) = (0.316_227_766_016_837_94, 0.5803);
/// `0.985 sqrt(2)`.
pub const TWO_WEIGHT_BOUND: f64 = 0.985 * SQRT_2;

/// `(2/pi) int_0^inf |sinc(a_1 s) sinc(a_2 s)|^{1/(a_1^2+a_2^2)} ds` on the
/// box where it is claimed to be at most `0.985 sqrt(2)`.
pub fn two_weight_check(a1: f64, a2: f64, spec: &QuadratureSpec) -> Result<f64> {
    let inside = |v: f64, (lo, hi): (f64, f64)| v >= lo - 1e-12 && v <= hi + 1e-12;
    if !inside(a1, TWO_WEIGHT_A1) || !inside(a2, TWO_WEIGHT_A2) {
        return Err(Error::InvalidArgument(format!("({a1}, {a2}) outside the two-weight box")));
    }
    let r = integrate_abs_power(&[a1, a2], 1.0 / (a1 * a1 + a2 * a2), spec)?;
    r.checked()
}

/// The two-weight estimate on a `res x res` grid over the box.
pub fn two_weight_grid(res: usize, spec: &QuadratureSpec) -> VerificationReport {
    let mut r = VerificationReport::new("two_weight");
    let at = |(lo, hi): (f64, f64), i: usize| lo + (hi - lo) * i as f64 / (res.max(2) - 1) as f64;
    for i in 0..res {
        for j in 0..res {
            let (a1, a2) = (at(TWO_WEIGHT_A1, i), at(TWO_WEIGHT_A2, j));
            let inputs = format!("a1={a1:.6} a2={a2:.6}");
            r.push(match two_weight_check(a1, a2, spec) {
                Ok(v) => Check::at_most("two_weight_integral", inputs, v, TWO_WEIGHT_BOUND, 0.0),
                Err(e) => Check::error("two_weight_integral", inputs, &e),
            });
        }
    }
    r
}

/// Closed-form interpolation bounds for `a_1` near `1/sqrt(2)`. All values are
/// upper bounds for `P/2`; `target` is `P(a_max)/2 = (n-2)sqrt(2)+1`.
pub mod interp {
    use std::f64::consts::SQRT_2;

    pub fn s3() -> f64 {
        (3.0 / std::f64::consts::PI).sqrt()
    }

    pub fn target(n: usize) -> f64 {
        (n as f64 - 2.0) * SQRT_2 + 1.0
    }

    /// Upper end of the strip, `1/sqrt(sqrt(2)+1/2)`.
    pub fn a1_strip_end() -> f64 {
        1.0 / (SQRT_2 + 0.5).sqrt()
    }

    /// Lower end of the window, `sqrt(sqrt(2)-1)`.
    pub fn a1_window_start() -> f64 {
        (SQRT_2 - 1.0).sqrt()
    }

    /// `a^2 f(a^-2)` interpolated between `p = 2` and `p = 9/4`.
    pub fn phi2(a: f64) -> f64 {
        (9.0 * a * a - 4.0) + (4.0 - 8.0 * a * a) * s3()
    }

    /// `a^2 f(a^-2)` interpolated between `p = sqrt(2)+1/2` and `p = 2`.
    pub fn phi1(a: f64) -> f64 {
        (1.0 - (SQRT_2 + 0.5) * a * a + (2.0 * a * a - 1.0) * 51.0 / 50.0) / (1.5 - SQRT_2)
    }

    fn weight_two(n: usize, a1: f64, a2: f64) -> f64 {
        (n as f64 - 2.0) - 0.5 * (1.0 - a1 * a1 - a2 * a2) + (1.0 - a2 * a2).sqrt()
    }

    fn weight_one(n: usize, a1: f64) -> f64 {
        let m = n as f64 - 1.0;
        m * (1.0 - (1.0 - a1 * a1) / m).sqrt()
    }

    /// Both leading weights in `[2/3, 1/sqrt(2)]`.
    pub fn psi1_two(a1: f64, a2: f64) -> f64 {
        let r = 1.0 - a1 * a1 - a2 * a2;
        9.0 * (a1 * a1 + a2 * a2) - 8.0 + 9.0 * r * s3()
    }

    /// `gamma(a_1, a_2)`; the bound is `gamma sqrt(2)`.
    pub fn gamma_two(n: usize, a1: f64, a2: f64) -> f64 {
        weight_two(n, a1, a2) * psi1_two(a1, a2)
    }

    pub fn psi2_two(a1: f64, a2: f64) -> f64 {
        (1.0 - a1 * a1 - a2 * a2) * s3() + phi2(a2) + phi1(a1)
    }

    /// Interpolation branch for `a_1 > 1/sqrt(2)`.
    pub fn gamma1_two(n: usize, a1: f64, a2: f64) -> f64 {
        weight_two(n, a1, a2) * psi2_two(a1, a2) * SQRT_2
    }

    /// Projection branch `A <= 1/a_1`.
    pub fn gamma2_two(n: usize, a1: f64, a2: f64) -> f64 {
        weight_two(n, a1, a2) / a1
    }

    /// Only `a_1` in `[2/3, 1/sqrt(2)]`, `a_2 < 2/3`.
    pub fn psi1_one(a1: f64) -> f64 {
        (9.0 * a1 * a1 - 4.0) + (5.0 - 9.0 * a1 * a1) * s3()
    }

    pub fn gamma_one(n: usize, a1: f64) -> f64 {
        weight_one(n, a1) * psi1_one(a1) * SQRT_2
    }

    pub fn psi2_one(a1: f64) -> f64 {
        phi1(a1) + (1.0 - a1 * a1) * s3()
    }

    pub fn gamma1_one(n: usize, a1: f64) -> f64 {
        weight_one(n, a1) * psi2_one(a1) * SQRT_2
    }

    pub fn gamma2_one(n: usize, a1: f64) -> f64 {
        weight_one(n, a1) / a1
    }

    /// Bound for `a_2 < 2/3` as a function of `a_1` alone.
    pub fn one_weight_bound(n: usize, a1: f64) -> f64 {
        if a1 <= super::FRAC_1_SQRT_2 {
            gamma_one(n, a1)
        } else {
            gamma1_one(n, a1).min(gamma2_one(n, a1))
        }
    }

    /// The sharper estimate that also keeps `a_2`.
    pub fn refined_bound(n: usize, a1: f64, a2: f64) -> f64 {
        let m = n as f64 - 2.0;
        let w = m * (1.0 - (1.0 - a1 * a1 - a2 * a2) / m).sqrt() + (1.0 - a2 * a2).sqrt();
        w * (psi2_one(a1) * SQRT_2).min(1.0 / a1)
    }
}

fn bisect(mut lo: f64, mut hi: f64, f: impl Fn(f64) -> f64) -> f64 {
    let flo = f(lo) > 0.0;
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if (f(mid) > 0.0) == flo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Where the interpolation and projection branches meet for `a_2 < 2/3`;
/// independent of `n`.
pub fn one_weight_crossing() -> f64 {
    bisect(FRAC_1_SQRT_2, interp::a1_strip_end(), |a| interp::psi2_one(a) * SQRT_2 - 1.0 / a)
}

/// Interval of `a_1` where the one-weight bound exceeds the target, if any.
pub fn one_weight_window(n: usize) -> Option<(f64, f64)> {
    let excess = |a: f64| interp::one_weight_bound(n, a) - interp::target(n);
    let peak = one_weight_crossing();
    if excess(peak) <= 0.0 {
        return None;
    }
    let lo = bisect(2.0 / 3.0, peak, excess);
    let hi = bisect(peak, interp::a1_strip_end(), excess);
    Some((lo, hi))
}

/// Smallest `a_2` above which the refined estimate stays below the target for
/// every `a_1` in the strip.
pub fn refined_a2_threshold(n: usize) -> f64 {
    const STEPS: usize = 2000;
    let (lo, hi) = (FRAC_1_SQRT_2, interp::a1_strip_end());
    let worst = |a2: f64| {
        (0..=STEPS)
            .map(|i| lo + (hi - lo) * i as f64 / STEPS as f64)
            .map(|a1| interp::refined_bound(n, a1, a2) - interp::target(n))
            .fold(f64::NEG_INFINITY, f64::max)
    };
    if worst(0.0) <= 0.0 {
        return 0.0;
    }
    bisect(0.0, 2.0 / 3.0, worst)
}

/// Documented exception windows for `a_1` with `a_2 < 2/3`.
pub const EXCEPTION_WINDOWS: [(usize, f64, f64); 3] = [(4, 0.7069, 0.7177), (5, 0.7095, 0.7149), (6, 0.7115, 0.7133)];
/// Documented `a_2` thresholds of the refined estimate.
pub const REFINED_A2: [(usize, f64); 2] = [(5, 0.5803), (6, 0.4952)];
/// Documented crossing of the two one-weight branches.
pub const CROSSING: f64 = 0.71254;

const GRID_STEP: f64 = 1e-3;
const DIFF_TOL: f64 = 1e-9;

fn grid(lo: f64, hi: f64) -> Vec<f64> {
    let m = ((hi - lo) / GRID_STEP).ceil() as usize;
    (0..=m).map(|i| (lo + i as f64 * GRID_STEP).min(hi)).collect()
}

/// Worst discrete difference of `f` along consecutive points; `sign` is +1 for
/// increasing and -1 for decreasing.
fn monotone(points: &[(f64, f64)], sign: f64, f: impl Fn(f64, f64) -> f64) -> f64 {
    points
        .windows(2)
        .map(|w| sign * (f(w[1].0, w[1].1) - f(w[0].0, w[0].1)))
        .fold(f64::INFINITY, f64::min)
}

/// Grid checks of the interpolation bounds for dimension `n >= 4`.
pub fn interpolation_sweep(n: usize) -> Result<VerificationReport> {
    use interp::*;
    if n < 4 {
        return Err(Error::InvalidArgument(format!("interpolation sweep needs n >= 4, got {n}")));
    }
    let t = target(n);
    let mut r = VerificationReport::new("interpolation");
    let tag = |s: &str| format!("n={n} {s}");
    let mono = |r: &mut VerificationReport, name: &str, inputs: String, worst: f64| {
        r.push(Check::at_least(name, inputs, worst, 0.0, DIFF_TOL));
    };

    // both leading weights in [2/3, 1/sqrt(2)]
    r.push(Check::equal(
        "endpoint_identity",
        tag("a1=a2=1/sqrt2"),
        gamma_two(n, FRAC_1_SQRT_2, FRAC_1_SQRT_2) * SQRT_2,
        t,
        1e-9,
    ));
    let lower = grid(2.0 / 3.0, FRAC_1_SQRT_2);
    let (mut up1, mut up2, mut top) = (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for &a2 in &lower {
        let row: Vec<(f64, f64)> = lower.iter().filter(|&&a1| a1 >= a2).map(|&a1| (a1, a2)).collect();
        up1 = up1.min(monotone(&row, 1.0, |a1, a2| gamma_two(n, a1, a2)));
        let col: Vec<(f64, f64)> = lower.iter().filter(|&&b| b <= a2).map(|&b| (a2, b)).collect();
        up2 = up2.min(monotone(&col, 1.0, |a1, a2| gamma_two(n, a1, a2)));
        top = top.max(row.iter().map(|&(a1, a2)| gamma_two(n, a1, a2) * SQRT_2).fold(f64::NEG_INFINITY, f64::max));
    }
    mono(&mut r, "gamma_increasing_a1", tag("2/3<=a2<=a1<=1/sqrt2"), up1);
    mono(&mut r, "gamma_increasing_a2", tag("2/3<=a2<=a1<=1/sqrt2"), up2);
    r.push(Check::at_most("gamma_bound", tag("2/3<=a2<=a1<=1/sqrt2"), top, t, 1e-9));

    // a1 in the strip above 1/sqrt(2), a2 in [2/3, 1/sqrt(2)]
    let strip = grid(FRAC_1_SQRT_2, a1_strip_end());
    let feasible = |a1: f64, a2: f64| a1 * a1 + a2 * a2 <= 1.0;
    let mut worst = [f64::INFINITY; 4];
    let mut top = f64::NEG_INFINITY;
    for &a2 in &lower {
        let row: Vec<(f64, f64)> = strip.iter().filter(|&&a1| feasible(a1, a2)).map(|&a1| (a1, a2)).collect();
        worst[0] = worst[0].min(monotone(&row, 1.0, |a1, a2| gamma1_two(n, a1, a2)));
        worst[1] = worst[1].min(monotone(&row, -1.0, |a1, a2| gamma2_two(n, a1, a2)));
        for &(a1, a2) in &row {
            top = top.max(gamma1_two(n, a1, a2).min(gamma2_two(n, a1, a2)));
        }
    }
    for &a1 in &strip {
        let col: Vec<(f64, f64)> = lower.iter().filter(|&&a2| feasible(a1, a2)).map(|&a2| (a1, a2)).collect();
        worst[2] = worst[2].min(monotone(&col, 1.0, |a1, a2| gamma1_two(n, a1, a2)));
        worst[3] = worst[3].min(monotone(&col, -1.0, |a1, a2| gamma2_two(n, a1, a2)));
    }
    let region = tag("1/sqrt2<=a1<=strip_end 2/3<=a2<=1/sqrt2");
    mono(&mut r, "gamma1_increasing_a1", region.clone(), worst[0]);
    mono(&mut r, "gamma2_decreasing_a1", region.clone(), worst[1]);
    mono(&mut r, "gamma1_increasing_a2", region.clone(), worst[2]);
    mono(&mut r, "gamma2_decreasing_a2", region.clone(), worst[3]);
    r.push(Check::at_most("min_gamma12_bound", region, top, t, 1e-9));

    // along the line a2 = 9/sqrt(2) - 8 a1
    let line_end = (9.0 * FRAC_1_SQRT_2 - 2.0 / 3.0) / 8.0;
    let line: Vec<(f64, f64)> = grid(FRAC_1_SQRT_2, line_end).into_iter().map(|a1| (a1, 9.0 * FRAC_1_SQRT_2 - 8.0 * a1)).collect();
    let line_tag = tag("a2=9/sqrt2-8a1");
    mono(&mut r, "gamma1_decreasing_on_line", line_tag.clone(), monotone(&line, -1.0, |a1, a2| gamma1_two(n, a1, a2)));
    mono(&mut r, "gamma2_decreasing_on_line", line_tag, monotone(&line, -1.0, |a1, a2| gamma2_two(n, a1, a2)));

    // a2 < 2/3
    let left = grid(a1_window_start().max(2.0 / 3.0), FRAC_1_SQRT_2);
    let pts: Vec<(f64, f64)> = left.iter().map(|&a| (a, 0.0)).collect();
    mono(&mut r, "one_weight_gamma_increasing", tag("2/3<=a1<=1/sqrt2"), monotone(&pts, 1.0, |a, _| gamma_one(n, a)));
    let pts: Vec<(f64, f64)> = strip.iter().map(|&a| (a, 0.0)).collect();
    let strip_tag = tag("1/sqrt2<=a1<=strip_end");
    mono(&mut r, "one_weight_gamma1_increasing", strip_tag.clone(), monotone(&pts, 1.0, |a, _| gamma1_one(n, a)));
    mono(&mut r, "one_weight_gamma2_decreasing", strip_tag, monotone(&pts, -1.0, |a, _| gamma2_one(n, a)));
    if n >= 5 {
        r.push(Check::at_most("one_weight_endpoint", tag("a1=1/sqrt2"), gamma_one(n, FRAC_1_SQRT_2), t, 0.0));
    }

    let abar = one_weight_crossing();
    r.push(Check::equal("branch_crossing", tag("a2<2/3"), abar, CROSSING, 5e-4));
    let at_cross = gamma1_one(n, abar);
    match EXCEPTION_WINDOWS.iter().find(|w| w.0 == n) {
        None => r.push(Check::at_most("crossing_bound", tag("a1=crossing"), at_cross, t, 1e-9)),
        Some(&(_, lo, hi)) => match one_weight_window(n) {
            Some((wlo, whi)) => {
                let inputs = tag(&format!("window=({wlo:.5},{whi:.5})"));
                r.push(Check::at_least("window_inside_documented_lo", inputs.clone(), wlo, lo, 0.0));
                r.push(Check::at_most("window_inside_documented_hi", inputs.clone(), whi, hi, 0.0));
                r.push(Check::equal("window_lo", inputs.clone(), wlo, lo, 5e-4));
                r.push(Check::equal("window_hi", inputs, whi, hi, 5e-4));
            }
            None => r.push(Check::holds("window_present", tag("a2<2/3"), false)),
        },
    }
    if let Some(&(_, documented)) = REFINED_A2.iter().find(|w| w.0 == n) {
        let a2 = refined_a2_threshold(n);
        r.push(Check::at_most("refined_a2_threshold", tag(&format!("a2*={a2:.5}")), a2, documented, 0.0));
    }
    Ok(r)
}

/// Largest excess of the one-weight bound over the target, on `P/2` scale.
pub fn one_weight_excess(n: usize) -> f64 {
    interp::one_weight_bound(n, one_weight_crossing()) - interp::target(n)
}

/// `(n-1) sqrt(1 - (1 - a_1^2)/(n-1)) A(a)`, the concavity bound for `P/2`.
pub fn concavity_bound(a: &Direction, area: f64) -> f64 {
    let m = a.n() as f64 - 1.0;
    let a1 = a.coords()[0];
    m * (1.0 - (1.0 - a1 * a1) / m).sqrt() * area
}

/// Worst case of the concavity bound minus `P(a_max)/2` is `3 sqrt(2)/4 - 1`.
pub fn concavity_gap() -> f64 {
    0.75 * SQRT_2 - 1.0
}
