//! Ball's integral function
//!
//! ```text
//! f(p)  = sqrt(p/2) (2/pi) int_0^inf |sin(t)/t|^p dt
//! f~(p) = (p/2) (1/2)      int_0^inf |2 J1(s)/s|^p s ds
//! ```
//!
//! with `f(2) = f~(2) = 1`, plus the explicit upper-bound pipelines at
//! `p = 9/4` and `p = sqrt(2) + 1/2`, the second-derivative witness used for
//! convexity, and the distribution functions of `|sinc|` and `exp(-x^2/6)`.

use crate::oscint::{abs_sin_moments, integrate_abs_power, peak_breaks, periodic_moments, smoothed_panel, QuadratureSpec};
use crate::specfun::{bessel_j01, erf, j1c, si, sinc, zeta};
use crate::{Error, Result};
use serde::Serialize;
use std::f64::consts::{PI, SQRT_2};

/// `sqrt(3/pi)`, the limit of `f` at infinity.
pub fn sqrt_3_over_pi() -> f64 {
    (3.0 / PI).sqrt()
}

const COMPLEX_PANELS: usize = 1024;
const WITNESS_PANELS: usize = 1024;
const PANEL_ORDER: usize = 64;

/// How a value of `f` was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Quadrature,
    PiecewiseBound,
    Asymptotic,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BallSample {
    pub p: f64,
    pub f: f64,
    pub method: Method,
}

/// `f(p)` for `p > 1`.
pub fn ball_f(p: f64, spec: &QuadratureSpec) -> Result<f64> {
    if !(p > 1.0) || !p.is_finite() {
        return Err(Error::Divergent(format!("f(p) needs p > 1, got {p}")));
    }
    let r = integrate_abs_power(&[1.0], p, spec)?;
    Ok((0.5 * p).sqrt() * r.checked()?)
}

/// `f~(p)` for `p > 4/3`.
pub fn ball_f_complex(p: f64, spec: &QuadratureSpec) -> Result<f64> {
    if !(p > 4.0 / 3.0) || !p.is_finite() {
        return Err(Error::Divergent(format!("f~(p) needs p > 4/3, got {p}")));
    }
    let zeros = j1_zeros(COMPLEX_PANELS);
    let order = spec.points_per_period.max(PANEL_ORDER);
    let mut head = 0.0;
    let mut err = 0.0;
    let mut a = 0.0;
    // the first arch is split so the error estimate sees the peak at 0
    let first = zeros[0];
    let breaks = peak_breaks((8.0 / p).sqrt(), 0.25 * first)
        .into_iter()
        .skip(1)
        .chain((1..4).map(|k| k as f64 * 0.25 * first))
        .chain(zeros.iter().copied());
    for (i, b) in breaks.enumerate() {
        let g = |s: f64| j1c(s).abs().powf(p) * s;
        let v = smoothed_panel(a, b, order, g);
        if i < 6 {
            err += (v - smoothed_panel(a, b, order / 2, g)).abs();
        }
        head += v;
        a = b;
    }
    // |2 J1(s)/s|^p s ~ C s^{1-3p/2} |sin(phase)|^p (1 + 3p/(16 s^2))
    let x = a;
    let m = abs_sin_moments(p);
    // C x^{-e} in logs, since 2^p alone overflows for large p
    let e = 1.5 * p;
    let cx = (p * 2f64.ln() + 0.5 * p * (2.0 / PI).ln() - e * x.ln()).exp();
    let main = m.mean * (x * x / (e - 2.0) + 3.0 * p / 16.0 / e);
    let corr = m.c2 / PI * (e - 1.0);
    let tail = cx * (main + corr);
    err += cx * corr.abs() * ((e + 2.0) * PI / x).powi(2) + 1e-16 * head;
    let value = 0.25 * p * (head + tail);
    if 0.25 * p * err > spec.tolerance(value) {
        return Err(Error::NonConvergence { est_error: 0.25 * p * err, periods: COMPLEX_PANELS });
    }
    Ok(value)
}

/// First `k` positive zeros of `J1`.
pub fn j1_zeros(k: usize) -> Vec<f64> {
    (1..=k)
        .map(|m| {
            let beta = (m as f64 + 0.25) * PI;
            let mut x = beta - 3.0 / (8.0 * beta) + 3.0 / (128.0 * beta.powi(3));
            for _ in 0..20 {
                let (j0, j1) = bessel_j01(x);
                let dx = j1 / (j0 - j1 / x);
                x -= dx;
                if dx.abs() < 1e-15 * x {
                    break;
                }
            }
            x
        })
        .collect()
}

/// `sqrt(3/pi) (1 - 3/(20p) - 13/(1120 p^2))`.
pub fn kos_asymptotic(p: f64) -> f64 {
    sqrt_3_over_pi() * (1.0 - 3.0 / (20.0 * p) - 13.0 / (1120.0 * p * p))
}

/// Piecewise bound for `f(9/4)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundAt9Over4 {
    pub p0: f64,
    /// `I_0` (uses `(sinc)^2 (1 - x^2/24)` on `(0, pi)`), `I_1` (factor
    /// 0.683), then `I_2..I_5`.
    pub i: [f64; 6],
    /// Tail from `6 pi`.
    pub j6: f64,
    pub total: f64,
}

/// `sum_{k=0}^5 I_k + J_6 >= f(9/4)`.
///
/// On `(k pi, (k+1) pi)` the bound is `(k pi)^{-1/4} (sinc)^2`, whose
/// integral is `Si(2(k+1) pi) - Si(2 k pi)`.
pub fn bound_at_9_4() -> BoundAt9Over4 {
    let p0: f64 = 2.25;
    let c = (0.5 * p0).sqrt() * 2.0 / PI;
    let mut i = [0.0; 6];
    i[0] = c * (si(2.0 * PI) - PI / 48.0);
    i[1] = 0.683 * c * (si(4.0 * PI) - si(2.0 * PI));
    for (k, ik) in i.iter_mut().enumerate().skip(2) {
        let kf = k as f64;
        *ik = c * (kf * PI).powf(-0.25) * (si(2.0 * (kf + 1.0) * PI) - si(2.0 * kf * PI));
    }
    let j6 = c * (6.0 * PI).powf(-0.25) * (0.5 * PI - si(12.0 * PI));
    let total = i.iter().sum::<f64>() + j6;
    BoundAt9Over4 { p0, i, j6, total }
}

/// Piecewise bound for `f(sqrt(2) + 1/2)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundAtSqrt2Half {
    pub p0: f64,
    /// Closed-form majorant on `(0, pi/2)`.
    pub i01: f64,
    /// `(pi/2, pi)`, exact integrand.
    pub i02: f64,
    /// `(k pi, (k+1) pi)` for `k = 1..5`, exact integrand.
    pub i_k: [f64; 5],
    /// Zeta majorant on `(6 pi, inf)`.
    pub tail: f64,
    /// `int_0^pi |sin|^p0`, which the tail term replaces by 1.6.
    pub sin_mass: f64,
    pub total: f64,
}

/// Upper bound for `f(sqrt(2) + 1/2)`.
pub fn bound_at_sqrt2_half() -> BoundAtSqrt2Half {
    let p0 = SQRT_2 + 0.5;
    let c = (0.5 * p0).sqrt() * 2.0 / PI;
    let i01 = c
        * (PI / (480.0 * p0) * (36.0 + PI * PI * p0) * (-PI * PI * p0 / 24.0).exp()
            + (6.0 * PI).sqrt() / p0.powf(1.5) * (0.5 * p0 - 3.0 / 40.0) * erf(PI * (p0 / 24.0).sqrt()));
    let g = |x: f64| sinc(x).abs().powf(p0);
    let i02 = c * smoothed_panel(0.5 * PI, PI, 128, g);
    let mut i_k = [0.0; 5];
    for (k, v) in i_k.iter_mut().enumerate() {
        let a = (k + 1) as f64 * PI;
        *v = c * smoothed_panel(a, a + PI, 128, g);
    }
    let partial: f64 = (1..=5).map(|k| (k as f64).powf(-p0)).sum();
    let tail = c * PI.powf(-p0) * (zeta(p0) - partial) * 1.6;
    let sin_mass = smoothed_panel(0.0, PI, 128, |x| x.sin().abs().powf(p0));
    let total = i01 + i02 + i_k.iter().sum::<f64>() + tail;
    BoundAtSqrt2Half { p0, i01, i02, i_k, tail, sin_mass, total }
}

/// `int_0^inf h(p,x) |sinc x|^p dx` with
/// `h = 4p^2 ln^2|sinc| + 4p ln|sinc| - 1`; positive exactly where
/// `f''(p) > 0`, since `f''(p) = (2/pi) W(p) / (4 sqrt(2) p^{3/2})`.
pub fn convexity_witness(p: f64, spec: &QuadratureSpec) -> Result<f64> {
    if !(p > 1.0) || !p.is_finite() {
        return Err(Error::Divergent(format!("the witness needs p > 1, got {p}")));
    }
    let h = |x: f64| {
        let s = sinc(x).abs();
        if s == 0.0 {
            return 0.0;
        }
        let l = s.ln();
        (4.0 * p * p * l * l + 4.0 * p * l - 1.0) * s.powf(p)
    };
    let order = spec.points_per_period.max(PANEL_ORDER);
    let mut head = 0.0;
    let mut err = 0.0;
    for k in 0..WITNESS_PANELS {
        let a = k as f64 * PI;
        let v = smoothed_panel(a, a + PI, order, h);
        if k < 4 {
            err += (v - smoothed_panel(a, a + PI, order / 2, h)).abs();
        }
        head += v;
    }
    // past X: u^{-p} [P0 + ln(u) P1 + ln(u)^2 P2] with l = ln|sin u|
    let x = WITNESS_PANELS as f64 * PI;
    let pw = |u: f64| u.sin().abs().powf(p);
    let ls = |u: f64| {
        let s = u.sin().abs();
        if s == 0.0 {
            0.0
        } else {
            s.ln()
        }
    };
    let m0 = periodic_moments(|u| {
        let l = ls(u);
        pw(u) * (4.0 * p * p * l * l + 4.0 * p * l - 1.0)
    });
    let m1 = periodic_moments(|u| pw(u) * (-8.0 * p * p * ls(u) - 4.0 * p));
    let m2 = periodic_moments(|u| 4.0 * p * p * pw(u));
    let q = p - 1.0;
    let lx = x.ln();
    let xq = x.powf(-q);
    let int0 = xq / q;
    let int1 = xq * (lx / q + 1.0 / (q * q));
    let int2 = xq * (lx * lx / q + 2.0 * lx / (q * q) + 2.0 / (q * q * q));
    // -w_r'(X) for w_r = u^{-p} ln^r u
    let xp1 = x.powf(-p - 1.0);
    let d0 = p * xp1;
    let d1 = xp1 * (p * lx - 1.0);
    let d2 = xp1 * (p * lx * lx - 2.0 * lx);
    let corr = (m0.c2 * d0 + m1.c2 * d1 + m2.c2 * d2) / PI;
    let tail = m0.mean * int0 + m1.mean * int1 + m2.mean * int2 + corr;
    err += corr.abs() * ((p + 2.0) * PI / x).powi(2) + 1e-16 * head.abs();
    let value = head + tail;
    if err > spec.tolerance(value).max(1e-9) {
        return Err(Error::NonConvergence { est_error: err, periods: WITNESS_PANELS });
    }
    Ok(value)
}

/// `f''(p)` from the witness.
pub fn ball_f_second_derivative(p: f64, spec: &QuadratureSpec) -> Result<f64> {
    Ok(convexity_witness(p, spec)? * 2.0 / PI / (4.0 * SQRT_2 * p.powf(1.5)))
}

/// `(x_p, y_p)` with `y_p = exp(-(1 + sqrt 2)/(2p)) = sin(x_p)/x_p`, the
/// point where `h(p, .)` changes sign on `(0, pi)`.
pub fn crossing_point(p: f64) -> (f64, f64) {
    let y = (-(1.0 + SQRT_2) / (2.0 * p)).exp();
    (sinc_inverse(y, 0.0, PI), y)
}

// Root of sinc(x) = y on a monotone bracket.
fn sinc_inverse(y: f64, a: f64, b: f64) -> f64 {
    let (mut lo, mut hi) = (a, b);
    let up = sinc(hi).abs() > sinc(lo).abs();
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if (sinc(mid).abs() > y) != up {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Distribution functions at level `y`: `G(y) = |{x > 0 : |sinc x| > y}|`
/// and `H(y) = |{x > 0 : exp(-x^2/6) > y}| = sqrt(6 ln(1/y))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NpComparison {
    pub y: f64,
    pub g: f64,
    pub h: f64,
}

/// Location and height of the maximum of `|sinc|` on `(m pi, (m+1) pi)`, `m >= 1`.
pub fn arch_max(m: usize) -> (f64, f64) {
    let c = (m as f64 + 0.5) * PI;
    let mut x = c - 1.0 / c;
    for _ in 0..50 {
        // tan x = x  <=>  sin x - x cos x = 0
        let (s, co) = x.sin_cos();
        let f = s - x * co;
        let df = x * s;
        let dx = f / df;
        x -= dx;
        if dx.abs() < 1e-15 * x {
            break;
        }
    }
    (x, sinc(x).abs())
}

pub fn np_compare(y: f64) -> NpComparison {
    let h = (6.0 * (1.0 / y).ln()).sqrt();
    if !(y > 0.0 && y < 1.0) {
        return NpComparison { y, g: if y >= 1.0 { 0.0 } else { f64::INFINITY }, h };
    }
    let mut g = sinc_inverse(y, 0.0, PI);
    let mut m = 1;
    loop {
        let (xm, ym) = arch_max(m);
        if ym <= y {
            break;
        }
        let left = sinc_inverse(y, m as f64 * PI, xm);
        let right = sinc_inverse(y, xm, (m + 1) as f64 * PI);
        g += right - left;
        m += 1;
    }
    NpComparison { y, g, h }
}

/// The level `y_0` where `H - G` changes sign, by bisection on `[lo, hi]`.
pub fn np_crossing(lo: f64, hi: f64) -> Result<f64> {
    let d = |y: f64| {
        let c = np_compare(y);
        c.h - c.g
    };
    let (mut a, mut b) = (lo, hi);
    let da = d(a);
    if !(0.0 < lo && lo < hi && hi < 1.0) || (da > 0.0) == (d(b) > 0.0) {
        return Err(Error::InvalidArgument(format!("H - G does not change sign on [{lo}, {hi}]")));
    }
    for _ in 0..80 {
        let mid = 0.5 * (a + b);
        if (d(mid) > 0.0) == (da > 0.0) {
            a = mid;
        } else {
            b = mid;
        }
    }
    Ok(0.5 * (a + b))
}

/// `p_1` (`f = sqrt(3/pi)`), `p_2` (minimum of `f`) and `p_0` (inflection).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpecialPoints {
    pub p1: f64,
    pub p2: f64,
    pub f_p2: f64,
    /// From second differences of `f` with step `1e-3`.
    pub p0: f64,
    /// From the sign change of the witness integral.
    pub p0_witness: f64,
}

pub const FD_STEP: f64 = 1e-3;

pub fn find_special_points(spec: &QuadratureSpec) -> Result<SpecialPoints> {
    let f = |p: f64| ball_f(p, spec);
    let target = sqrt_3_over_pi();
    let p1 = bisect(|p| Ok(f(p)? - target), 2.0, 2.5, 1e-12)?;

    // golden section on (2.5, 4.5)
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let (mut a, mut b) = (2.5, 4.5);
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let (mut fc, mut fd) = (f(c)?, f(d)?);
    while b - a > 1e-7 {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d)?;
        }
    }
    let p2 = 0.5 * (a + b);
    let f_p2 = f(p2)?;

    let h = FD_STEP;
    let second = |p: f64| Ok((f(p + h)? - 2.0 * f(p)? + f(p - h)?) / (h * h));
    let p0 = bisect(second, 4.0, 5.0, 1e-7)?;
    let p0_witness = bisect(|p| convexity_witness(p, spec), 4.0, 5.0, 1e-10)?;
    Ok(SpecialPoints { p1, p2, f_p2, p0, p0_witness })
}

fn bisect(g: impl Fn(f64) -> Result<f64>, lo: f64, hi: f64, tol: f64) -> Result<f64> {
    let (mut a, mut b) = (lo, hi);
    let ga = g(a)?;
    let gb = g(b)?;
    if ga.signum() == gb.signum() {
        return Err(Error::InvalidArgument(format!("no sign change on [{lo}, {hi}]")));
    }
    while b - a > tol {
        let m = 0.5 * (a + b);
        let gm = g(m)?;
        if gm.signum() == ga.signum() {
            a = m;
        } else {
            b = m;
        }
    }
    Ok(0.5 * (a + b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn j1_zeros_are_zeros() {
        let z = j1_zeros(50);
        assert!((z[0] - 3.831_705_970_207_512).abs() < 1e-13);
        for x in z {
            assert!(crate::specfun::bessel_j1(x).abs() < 1e-13);
        }
    }

    #[test]
    fn arch_maxima_decrease() {
        let mut prev = 1.0;
        for m in 1..20 {
            let (x, y) = arch_max(m);
            assert!(x > m as f64 * PI && x < (m as f64 + 0.5) * PI);
            assert!(y < prev);
            prev = y;
        }
    }
}
