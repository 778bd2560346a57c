//! `int_0^inf prod_k |sinc(a_k s)|^p ds` and related positive integrands.
//!
//! Panels end at the zeros of the factors, where `|sinc|^p` has an
//! algebraic kink; the substitution `s = a + (b - a) phi(tau)` with the
//! quintic smoothstep `phi` flattens it before Gauss-Legendre is applied.
//! Past the last panel a single `|sin(u)|^p u^{-p}` factor is replaced by its
//! period mean plus a second-order midpoint correction.

use super::{gauss_legendre, QuadratureResult, QuadratureSpec};
use crate::specfun::{ln_gamma, sinc};
use crate::{Error, Result};
use std::f64::consts::PI;

const SINGLE_PANELS: usize = 1024;
const MIN_PANELS: usize = 64;

/// Mean and second moment of a `pi`-periodic function `g` symmetric about
/// `pi/2`, used to sum `int g(u) w(u) du` for slowly varying `w`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PeriodicMoments {
    /// `(1/pi) int_0^pi g`.
    pub mean: f64,
    /// `int_0^pi (g(v) - mean) (v - pi/2)^2 / 2 dv`.
    pub c2: f64,
}

impl PeriodicMoments {
    /// `int_x^inf g(u) u^{-q} du` for `x` a multiple of `pi`, `q > 1`, and the
    /// size of the first neglected term.
    pub fn power_tail(&self, x: f64, q: f64) -> (f64, f64) {
        let main = self.mean * x.powf(1.0 - q) / (q - 1.0);
        let corr = self.c2 * q * x.powf(-q - 1.0) / PI;
        let next = corr.abs() * ((q + 2.0) * PI / x).powi(2);
        (main + corr, next)
    }
}

/// Moments of `g` over one period `[0, pi]`.
pub fn periodic_moments(g: impl Fn(f64) -> f64) -> PeriodicMoments {
    let mean = smoothed_panel(0.0, PI, 128, &g) / PI;
    let second = smoothed_panel(0.0, PI, 128, |v| {
        let d = v - 0.5 * PI;
        (g(v) - mean) * d * d * 0.5
    });
    PeriodicMoments { mean, c2: second }
}

/// Moments of `|sin|^p`; the mean has the closed form
/// `Gamma((p+1)/2) / (sqrt(pi) Gamma(p/2 + 1))`.
pub fn abs_sin_moments(p: f64) -> PeriodicMoments {
    let mean = (ln_gamma(0.5 * (p + 1.0)) - ln_gamma(0.5 * p + 1.0)).exp() / PI.sqrt();
    let c2 = smoothed_panel(0.0, PI, 128, |v| {
        let d = v - 0.5 * PI;
        (v.sin().abs().powf(p) - mean) * d * d * 0.5
    });
    PeriodicMoments { mean, c2 }
}

/// `int_a^b f` after the smoothstep substitution, which damps endpoint
/// singularities of the form `|s - a|^p`.
pub fn smoothed_panel(a: f64, b: f64, order: usize, f: impl Fn(f64) -> f64) -> f64 {
    let rule = gauss_legendre(order);
    let w = b - a;
    let mut sum = 0.0;
    for (x, wt) in rule.nodes.iter().zip(&rule.weights) {
        let tau = 0.5 * (x + 1.0);
        let phi = tau * tau * tau * (10.0 - 15.0 * tau + 6.0 * tau * tau);
        let dphi = 30.0 * tau * tau * (1.0 - tau) * (1.0 - tau);
        sum += wt * f(a + w * phi) * dphi;
    }
    0.5 * sum * w
}

/// `(2/pi) int_0^inf prod_k |sinc(a_k s)|^p ds`; zero weights are factors 1.
pub fn integrate_abs_power(weights: &[f64], p: f64, spec: &QuadratureSpec) -> Result<QuadratureResult> {
    if !p.is_finite() || p <= 0.0 {
        return Err(Error::InvalidArgument(format!("exponent {p} must be positive")));
    }
    for &a in weights {
        if !a.is_finite() || a < 0.0 {
            return Err(Error::InvalidArgument(format!("weight {a} must be finite and non-negative")));
        }
    }
    let active: Vec<f64> = weights.iter().copied().filter(|&a| a > 0.0).collect();
    let q = p * active.len() as f64;
    if q <= 1.0 {
        return Err(Error::Divergent(format!("integrand decays like s^-{q}")));
    }
    let r = if active.len() == 1 {
        single(active[0], p, SINGLE_PANELS.min(spec.max_periods.max(MIN_PANELS)), spec)
    } else {
        multiple(&active, p, spec)
    };
    Ok(r)
}

fn single(a: f64, p: f64, panels: usize, spec: &QuadratureSpec) -> QuadratureResult {
    let order = spec.points_per_period;
    let f = |u: f64| sinc(u).abs().powf(p);
    // the first period is split so the error estimate sees the peak at 0
    let breaks = peak_breaks((6.0 / p).sqrt(), 0.25 * PI)
        .into_iter()
        .chain((1..4).map(|k| k as f64 * 0.25 * PI))
        .chain((1..=panels).map(|k| k as f64 * PI));
    let (head, head_err) = panel_sum(breaks, order, f);
    let xu = panels as f64 * PI;
    let (tail, tail_err) = abs_sin_moments(p).power_tail(xu, p);
    let envelope = xu.powf(1.0 - p) / (p - 1.0);
    let scale = 2.0 / PI / a;
    QuadratureResult::new(
        scale * (head + tail),
        scale * (head_err + tail_err),
        panels,
        scale * envelope,
        spec,
    )
}

fn multiple(weights: &[f64], p: f64, spec: &QuadratureSpec) -> QuadratureResult {
    let order = spec.points_per_period;
    let q = p * weights.len() as f64;
    let c: f64 = weights.iter().map(|a| a.powf(-p)).product();
    let a_min = weights.iter().copied().fold(f64::INFINITY, f64::min);
    let a_sum: f64 = weights.iter().sum();
    // envelope C X^{1-q}/(q-1) below a tenth of the tolerance
    let target = 0.1 * spec.abs_tol * PI / 2.0;
    let mut x = (c / ((q - 1.0) * target)).powf(1.0 / (q - 1.0));
    x = x.max(MIN_PANELS as f64 * PI / a_min);
    let cap = spec.max_periods.max(MIN_PANELS) as f64 * PI / a_sum;
    x = x.min(cap);

    let mut zeros: Vec<f64> = vec![0.0, x];
    for &a in weights {
        let m = (a * x / PI).floor() as usize;
        zeros.extend((1..=m).map(|j| j as f64 * PI / a).filter(|&z| z < x));
    }
    zeros.sort_by(f64::total_cmp);
    zeros.dedup_by(|b, a| (*b - *a).abs() <= 1e-12 * x);
    let panels = zeros.len() - 1;

    let f = |s: f64| weights.iter().map(|&a| sinc(a * s).abs()).product::<f64>().powf(p);
    let (head, head_err) = panel_sum(zeros.into_iter(), order, f);

    let mean: f64 = weights.iter().map(|_| abs_sin_moments(p).mean).product();
    let envelope = c * x.powf(1.0 - q) / (q - 1.0);
    let tail = mean * envelope;
    let tail_err = (envelope - tail).max(tail);
    let scale = 2.0 / PI;
    QuadratureResult::new(
        scale * (head + tail),
        scale * (head_err + tail_err),
        panels,
        scale * envelope,
        spec,
    )
}

/// `0, w, 2w, 4w, ...` below `end`: panels matched to a peak of width `w`
/// at the origin, which for large exponents is much narrower than a period.
pub fn peak_breaks(w: f64, end: f64) -> Vec<f64> {
    let mut b = vec![0.0];
    let mut x = w;
    while x < 0.5 * end {
        b.push(x);
        x *= 2.0;
    }
    b
}

// Sum of smoothed panels between consecutive breakpoints, with a discretisation
// estimate from a half-order rule on the first panels.
fn panel_sum(breaks: impl Iterator<Item = f64>, order: usize, f: impl Fn(f64) -> f64) -> (f64, f64) {
    let half = (order / 2).max(4);
    let mut sum = 0.0;
    let mut comp = 0.0;
    let mut err = 0.0;
    let mut prev: Option<f64> = None;
    let mut count = 0usize;
    for b in breaks {
        if let Some(a) = prev {
            let v = smoothed_panel(a, b, order, &f);
            if count < 6 {
                err += (v - smoothed_panel(a, b, half, &f)).abs();
            }
            let y = v - comp;
            let t = sum + y;
            comp = (t - sum) - y;
            sum = t;
            count += 1;
        }
        prev = Some(b);
    }
    (sum, err + 1e-16 * (count as f64).sqrt() * sum.abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mean_of_sin_squared() {
        let m = abs_sin_moments(2.0);
        assert!((m.mean - 0.5).abs() < 1e-15);
        let g = periodic_moments(|v| v.sin().powi(2));
        assert!((g.mean - 0.5).abs() < 1e-14);
        assert!((g.c2 - m.c2).abs() < 1e-14);
        // int_0^pi (sin^2 - 1/2)(v - pi/2)^2/2 = -pi/8
        assert!((m.c2 + PI / 8.0).abs() < 1e-13);
    }

    #[test]
    fn sinc_squared_integral() {
        let r = integrate_abs_power(&[1.0], 2.0, &QuadratureSpec::default()).unwrap();
        assert!((r.value - 1.0).abs() < 1e-12, "{r:?}");
        assert!(r.converged);
    }
}
