//! Semi-infinite quadrature for slowly decaying oscillatory integrands.
//!
//! The half line is cut into chunks of one half-period `pi / omega_max` and
//! each chunk is integrated with a fixed Gauss-Legendre rule. What happens
//! past the last chunk depends on what is known about the integrand:
//!
//! * black-box integrands ([`integrate_semi_infinite`]) are summed chunk by
//!   chunk and the tail is removed by Euler averaging of the partial sums
//!   (alternating chunks) or by Richardson extrapolation in the chunk count
//!   (power-law chunks);
//! * products of `sinc` and `2J1(x)/x` factors ([`integrate_sinc_product_cos`],
//!   [`integrate_j1c_product_j0`]) are expanded for large `s` into sums of
//!   `e^{i w s} s^{-mu}` terms, whose tails are generalised exponential
//!   integrals. For `sinc` products the expansion is exact;
//! * powers of `|sinc|` ([`integrate_abs_power`]) use the period mean of the
//!   numerator plus a second-order correction.

mod positive;
mod product;

pub use positive::{abs_sin_moments, integrate_abs_power, peak_breaks, periodic_moments, smoothed_panel, PeriodicMoments};
pub use product::{
    integrate_j1c_product_j0, integrate_sinc_product_cos, product_family, FamilyResult, Kernel,
};

use serde::Serialize;
use std::sync::{Arc, Mutex, OnceLock};

/// How the chunk sums of a black-box integrand are accelerated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Acceleration {
    /// Plain summation; the tail is bounded by the envelope.
    None,
    /// Repeated averaging of partial sums for sign-alternating chunks.
    EulerAlternating,
    /// Richardson extrapolation for chunks decaying like a power of the index.
    PowerLaw,
}

/// Quadrature controls.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadratureSpec {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Maximum number of half-period chunks.
    pub max_periods: usize,
    /// Gauss-Legendre order used on every chunk.
    pub points_per_period: usize,
    pub acceleration: Acceleration,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            abs_tol: 1e-10,
            rel_tol: 1e-10,
            max_periods: 1_000_000,
            points_per_period: 64,
            acceleration: Acceleration::EulerAlternating,
        }
    }
}

impl QuadratureSpec {
    pub fn tolerance(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }
}

/// Outcome of a semi-infinite integration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadratureResult {
    pub value: f64,
    pub est_error: f64,
    pub periods_used: usize,
    /// Size of the contribution attributed to `[X, inf)`, including its error.
    pub tail_bound: f64,
    pub converged: bool,
}

impl QuadratureResult {
    pub(crate) fn new(value: f64, est_error: f64, periods: usize, tail_bound: f64, spec: &QuadratureSpec) -> Self {
        QuadratureResult {
            value,
            est_error,
            periods_used: periods,
            tail_bound,
            converged: value.is_finite() && est_error <= spec.tolerance(value),
        }
    }

    /// The value, or a non-convergence error.
    pub fn checked(self) -> crate::Result<f64> {
        if self.converged {
            Ok(self.value)
        } else {
            Err(crate::Error::NonConvergence { est_error: self.est_error, periods: self.periods_used })
        }
    }
}

/// Known decay of a black-box integrand.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Envelope {
    /// `|f(x)| <= C x^{-2}` with `C` estimated from the last chunk.
    Estimated,
    /// `|f(x)| <= scale * x^{-exponent}` for `x` past the first chunk.
    Power { scale: f64, exponent: f64 },
}

impl Envelope {
    /// Bound on `int_x^inf |f|` implied by the envelope; non-increasing in `x`.
    pub fn tail_bound(&self, x: f64, observed_sup: f64) -> f64 {
        match *self {
            Envelope::Estimated => observed_sup * x,
            Envelope::Power { scale, exponent } => {
                if exponent <= 1.0 {
                    f64::INFINITY
                } else {
                    scale * x.powf(1.0 - exponent) / (exponent - 1.0)
                }
            }
        }
    }

    fn exponent(&self) -> f64 {
        match *self {
            Envelope::Estimated => 2.0,
            Envelope::Power { exponent, .. } => exponent,
        }
    }
}

/// Gauss-Legendre nodes and weights on `[-1, 1]`.
#[derive(Debug)]
pub struct GaussRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussRule {
    fn compute(n: usize) -> GaussRule {
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let m = n.div_ceil(2);
        for i in 0..m {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=n {
                    let kf = k as f64;
                    let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                    p0 = p1;
                    p1 = p2;
                }
                let pn = if n == 1 { x } else { p1 };
                let pn1 = if n == 1 { 1.0 } else { p0 };
                dp = n as f64 * (x * pn - pn1) / (x * x - 1.0);
                let dx = pn / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        GaussRule { nodes, weights }
    }

    /// `int_a^b f` with this rule.
    pub fn integrate(&self, a: f64, b: f64, mut f: impl FnMut(f64) -> f64) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let mut sum = 0.0;
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            sum += w * f(mid + half * x);
        }
        sum * half
    }
}

/// Cached Gauss-Legendre rule of order `n`.
pub fn gauss_legendre(n: usize) -> Arc<GaussRule> {
    static CACHE: OnceLock<Mutex<Vec<(usize, Arc<GaussRule>)>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(Vec::new()));
    let mut guard = cache.lock().unwrap_or_else(|e| e.into_inner());
    if let Some((_, r)) = guard.iter().find(|(k, _)| *k == n) {
        return r.clone();
    }
    let rule = Arc::new(GaussRule::compute(n.max(1)));
    guard.push((n, rule.clone()));
    rule
}

/// `int_0^inf f` for a black-box integrand, chunked by `period_hint`.
pub fn integrate_semi_infinite(f: impl Fn(f64) -> f64, period_hint: f64, spec: &QuadratureSpec) -> QuadratureResult {
    integrate_semi_infinite_with(f, period_hint, Envelope::Estimated, spec)
}

/// As [`integrate_semi_infinite`] with explicit envelope metadata.
pub fn integrate_semi_infinite_with(
    f: impl Fn(f64) -> f64,
    period_hint: f64,
    envelope: Envelope,
    spec: &QuadratureSpec,
) -> QuadratureResult {
    let h = period_hint;
    let rule = gauss_legendre(spec.points_per_period);
    let half = gauss_legendre((spec.points_per_period / 2).max(4));
    let chunk = |k: usize| -> (f64, f64) {
        let (a, b) = (k as f64 * h, (k + 1) as f64 * h);
        let mut sup = 0.0_f64;
        let v = rule.integrate(a, b, |x| {
            let y = f(x);
            sup = sup.max(y.abs());
            y
        });
        (v, sup)
    };
    // discretisation error from the first chunk, where the integrand is largest
    let (c0, _) = chunk(0);
    let head_err = (c0 - half.integrate(0.0, h, &f)).abs();

    let max_chunks = spec.max_periods.max(2);
    match spec.acceleration {
        Acceleration::None => {
            let mut sum = c0;
            let mut comp = 0.0;
            let mut k = 1;
            loop {
                let (c, sup) = chunk(k);
                let y = c - comp;
                let t = sum + y;
                comp = (t - sum) - y;
                sum = t;
                k += 1;
                let x = k as f64 * h;
                let tail = envelope.tail_bound(x, sup);
                let est = head_err + tail + 1e-16 * k as f64 * sum.abs();
                if est <= spec.tolerance(sum) || k >= max_chunks {
                    return QuadratureResult::new(sum, est, k, tail, spec);
                }
            }
        }
        Acceleration::EulerAlternating => {
            let mut partial = vec![c0];
            let mut estimates: Vec<f64> = Vec::new();
            let mut k = 1;
            loop {
                let (c, _) = chunk(k);
                partial.push(partial[k - 1] + c);
                k += 1;
                estimates.push(euler_average(&partial));
                let e = estimates.len();
                if e >= 3 && k >= 8 {
                    let d = (estimates[e - 1] - estimates[e - 2])
                        .abs()
                        .max((estimates[e - 1] - estimates[e - 3]).abs());
                    let value = estimates[e - 1];
                    let est = d + head_err + 1e-15 * value.abs();
                    if est <= spec.tolerance(value) || k >= max_chunks {
                        return QuadratureResult::new(value, est, k, d, spec);
                    }
                }
            }
        }
        Acceleration::PowerLaw => {
            // partial sums at 8, 16, 32, ... chunks, extrapolated in 1/K
            let p = envelope.exponent();
            let mut sums: Vec<f64> = Vec::new();
            let mut total = c0;
            let mut k = 1;
            let mut next = 8;
            let mut table: Vec<Vec<f64>> = Vec::new();
            loop {
                while k < next {
                    total += chunk(k).0;
                    k += 1;
                }
                sums.push(total);
                let j = sums.len() - 1;
                let mut row = vec![total];
                for i in 1..=j {
                    let e = p - 1.0 + (i - 1) as f64;
                    let factor = 2f64.powf(e) - 1.0;
                    let v = row[i - 1] + (row[i - 1] - table[j - 1][i - 1]) / factor;
                    row.push(v);
                }
                table.push(row);
                if j >= 2 {
                    let value = table[j][j];
                    let d = (value - table[j - 1][j - 1]).abs();
                    let est = d + head_err + 1e-15 * value.abs();
                    if est <= spec.tolerance(value) || 2 * next > max_chunks || j >= 14 {
                        return QuadratureResult::new(value, est, k, d, spec);
                    }
                }
                next *= 2;
            }
        }
    }
}

// Euler transform of the tail of a sequence of partial sums: average
// neighbours repeatedly over the last (up to) 24 entries.
fn euler_average(partial: &[f64]) -> f64 {
    let m = partial.len().min(24);
    let mut row: Vec<f64> = partial[partial.len() - m..].to_vec();
    while row.len() > 1 {
        for i in 0..row.len() - 1 {
            row[i] = 0.5 * (row[i] + row[i + 1]);
        }
        row.pop();
    }
    row[0]
}

/// Sum of one value per node over `chunks` chunks of length `h`, for several
/// integrands at once. Returns per-output integrals and error estimates.
pub(crate) fn head_integrals(
    h: f64,
    chunks: usize,
    order: usize,
    outputs: usize,
    mut g: impl FnMut(f64, &mut [f64]),
) -> (Vec<f64>, Vec<f64>) {
    let rule = gauss_legendre(order);
    let half = gauss_legendre((order / 2).max(4));
    let mut sums = vec![0.0; outputs];
    let mut abs = vec![0.0; outputs];
    let mut err = vec![0.0; outputs];
    let mut buf = vec![0.0; outputs];
    let mut chunk_sum = vec![0.0; outputs];
    for k in 0..chunks {
        let a = k as f64 * h;
        let halfw = 0.5 * h;
        let mid = a + halfw;
        chunk_sum.iter_mut().for_each(|v| *v = 0.0);
        for (x, w) in rule.nodes.iter().zip(&rule.weights) {
            g(mid + halfw * x, &mut buf);
            for (c, b) in chunk_sum.iter_mut().zip(&buf) {
                *c += w * b;
            }
        }
        for i in 0..outputs {
            let c = chunk_sum[i] * halfw;
            sums[i] += c;
            abs[i] += c.abs();
        }
        if k < 4 {
            let mut low = vec![0.0; outputs];
            for (x, w) in half.nodes.iter().zip(&half.weights) {
                g(mid + halfw * x, &mut buf);
                for (c, b) in low.iter_mut().zip(&buf) {
                    *c += w * b;
                }
            }
            for i in 0..outputs {
                err[i] += (low[i] * halfw - chunk_sum[i] * halfw).abs();
            }
        }
    }
    for i in 0..outputs {
        err[i] += 1e-16 * (chunks as f64).sqrt() * abs[i];
    }
    (sums, err)
}
