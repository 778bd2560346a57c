//! Products of `sinc(a_j s)` (real) or `2J1(a_j s)/(a_j s)` (complex) factors
//! times one `cos(c s)` or `J0(c s)` factor.
//!
//! For large `s` each factor is a finite sum of terms `C e^{i w s} s^{-mu}`:
//! exactly two terms for `sinc` and `cos`, a truncated Hankel expansion for
//! the Bessel factors. Multiplying the expansions and integrating term by term
//! gives the tail past the last chunk as a combination of
//! `int_X^inf e^{i w s} s^{-mu} ds = X^{1-mu} E_mu(-i w X)`.

use super::{head_integrals, QuadratureResult, QuadratureSpec};
use crate::specfun::{expint_e, j0_and_j1c, sinc};
use crate::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Hankel expansion order kept in the Bessel factors.
const HANKEL_ORDER: usize = 16;
/// Relative truncation error allowed in the Hankel expansion at the tail start.
const HANKEL_REL_TOL: f64 = 1e-13;
/// Largest loss of digits accepted in the exact sinc expansion.
const SINC_CANCELLATION: f64 = 1e4;
const MIN_CHUNKS: usize = 8;

/// Real (`sinc`, `cos`) or complex (`2J1(x)/x`, `J0`, extra factor `s`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kernel {
    Sinc,
    Disc,
}

/// One integrand of a family: all factors except `skip`, times the
/// oscillating factor at frequency `freq` (`cos` or `J0`).
#[derive(Debug, Clone, Copy)]
struct Member {
    skip: Option<usize>,
    freq: f64,
}

/// `A` and all `D_k` computed on a shared grid.
#[derive(Debug, Clone)]
pub struct FamilyResult {
    pub a: QuadratureResult,
    pub d: Vec<QuadratureResult>,
}

/// Normalised integral of the real product:
/// `(2/pi) int_0^inf prod_{j != skip} sinc(a_j s) cos(t s) ds`.
pub fn integrate_sinc_product_cos(
    weights: &[f64],
    t: f64,
    skip: Option<usize>,
    spec: &QuadratureSpec,
) -> Result<QuadratureResult> {
    let r = run(Kernel::Sinc, weights, &[Member { skip, freq: t }], spec)?;
    Ok(r[0])
}

/// Normalised integral of the complex product:
/// `(1/2) int_0^inf prod_{j != skip} j1c(a_j s) J0(t s) s ds`.
pub fn integrate_j1c_product_j0(
    weights: &[f64],
    t: f64,
    skip: Option<usize>,
    spec: &QuadratureSpec,
) -> Result<QuadratureResult> {
    let r = run(Kernel::Disc, weights, &[Member { skip, freq: t }], spec)?;
    Ok(r[0])
}

/// `A(a, 0)` together with every `D_k(a)` (factor `k` removed, oscillating
/// factor at frequency `a_k`).
pub fn product_family(kernel: Kernel, weights: &[f64], spec: &QuadratureSpec) -> Result<FamilyResult> {
    let mut members = vec![Member { skip: None, freq: 0.0 }];
    members.extend(weights.iter().enumerate().map(|(k, &a)| Member { skip: Some(k), freq: a }));
    let r = run(kernel, weights, &members, spec)?;
    Ok(FamilyResult { a: r[0], d: r[1..].to_vec() })
}

fn validate(weights: &[f64], members: &[Member]) -> Result<()> {
    for &a in weights {
        if !a.is_finite() || a < 0.0 {
            return Err(Error::InvalidArgument(format!("weight {a} must be finite and non-negative")));
        }
    }
    for m in members {
        if !m.freq.is_finite() {
            return Err(Error::InvalidArgument("frequency must be finite".into()));
        }
        if let Some(k) = m.skip {
            if k >= weights.len() {
                return Err(Error::InvalidArgument(format!("skip index {k} out of range")));
            }
        }
        let factors = weights.iter().enumerate().filter(|&(j, &a)| Some(j) != m.skip && a > 0.0).count();
        if factors == 0 {
            return Err(Error::Divergent("no decaying factor in the integrand".into()));
        }
    }
    Ok(())
}

fn run(kernel: Kernel, weights: &[f64], members: &[Member], spec: &QuadratureSpec) -> Result<Vec<QuadratureResult>> {
    validate(weights, members)?;
    let members: Vec<Member> = members.iter().map(|m| Member { skip: m.skip, freq: m.freq.abs() }).collect();
    let n = weights.len();
    let omega_max = weights
        .iter()
        .copied()
        .chain(members.iter().map(|m| m.freq))
        .fold(0.0_f64, f64::max);
    let h = PI / omega_max;

    let x_needed = match kernel {
        Kernel::Sinc => sinc_cutoff(weights, h),
        Kernel::Disc => disc_cutoff(weights, &members),
    };
    let wanted = ((x_needed / h).ceil() as usize).max(MIN_CHUNKS);
    let chunks = wanted.min(spec.max_periods.max(1));
    let capped = chunks < wanted;
    let x_end = chunks as f64 * h;

    // head: factor values at each node, then products with one factor removed
    let outputs = members.len();
    let mut factor = vec![1.0; n];
    let mut osc = vec![1.0; n];
    let mut prefix = vec![1.0; n + 1];
    let mut suffix = vec![1.0; n + 1];
    let (head, head_err) = head_integrals(h, chunks, spec.points_per_period, outputs, |s, out| {
        for j in 0..n {
            let x = weights[j] * s;
            match kernel {
                Kernel::Sinc => {
                    factor[j] = sinc(x);
                    osc[j] = x.cos();
                }
                Kernel::Disc => {
                    let (j0, j1c) = j0_and_j1c(x);
                    factor[j] = j1c;
                    osc[j] = j0;
                }
            }
        }
        for j in 0..n {
            prefix[j + 1] = prefix[j] * factor[j];
        }
        for j in (0..n).rev() {
            suffix[j] = suffix[j + 1] * factor[j];
        }
        let extra = if kernel == Kernel::Disc { s } else { 1.0 };
        for (i, m) in members.iter().enumerate() {
            let prod = match m.skip {
                Some(k) => prefix[k] * suffix[k + 1],
                None => prefix[n],
            };
            let o = match m.skip {
                Some(k) if m.freq == weights[k] => osc[k],
                _ => oscillator(kernel, m.freq * s),
            };
            out[i] = prod * o * extra;
        }
    });

    let scale = match kernel {
        Kernel::Sinc => 2.0 / PI,
        Kernel::Disc => 0.5,
    };
    let factor_series: Vec<Series> = weights.iter().map(|&a| Series::factor(kernel, a)).collect();
    let mut results = Vec::with_capacity(members.len());
    for (i, m) in members.iter().enumerate() {
        let mut prod = Series::oscillator(kernel, m.freq);
        for (j, fs) in factor_series.iter().enumerate() {
            if Some(j) == m.skip || weights[j] == 0.0 {
                continue;
            }
            prod = prod.mul(fs);
        }
        if kernel == Kernel::Disc {
            prod.base -= 1.0;
        }
        let tail = prod.tail(x_end)?;
        let value = scale * (head[i] + tail.value);
        let mut est = scale * (head_err[i] + tail.error);
        if capped && kernel == Kernel::Disc {
            // the expansion is used below its accuracy threshold
            est += scale * tail.value.abs();
        }
        results.push(QuadratureResult::new(
            value,
            est,
            chunks,
            scale * (tail.value.abs() + tail.error),
            spec,
        ));
    }
    Ok(results)
}

fn oscillator(kernel: Kernel, x: f64) -> f64 {
    match kernel {
        Kernel::Sinc => x.cos(),
        Kernel::Disc => j0_and_j1c(x).0,
    }
}

// Cut-off for the exact sinc expansion: the terms of size 1/(a_j X) cancel
// when a_j X is small, so ask for a bounded product of those ratios.
fn sinc_cutoff(weights: &[f64], h: f64) -> f64 {
    let mut x = MIN_CHUNKS as f64 * h;
    let loss = |x: f64| {
        weights
            .iter()
            .filter(|&&a| a > 0.0)
            .map(|&a| (1.0 / (a * x)).max(1.0))
            .product::<f64>()
    };
    while loss(x) > SINC_CANCELLATION {
        x *= 2.0;
    }
    x
}

// Cut-off for the Bessel expansion: every argument a_j s must be past the
// point where the truncated Hankel series reaches HANKEL_REL_TOL.
fn disc_cutoff(weights: &[f64], members: &[Member]) -> f64 {
    let threshold = hankel_threshold();
    let smallest = weights
        .iter()
        .copied()
        .chain(members.iter().map(|m| m.freq))
        .filter(|&a| a > 0.0)
        .fold(f64::INFINITY, f64::min);
    threshold / smallest
}

fn hankel_threshold() -> f64 {
    // |a_{J+1}(1)| x^{-(J+1)} <= tol
    let mut a = 1.0_f64;
    for j in 1..=HANKEL_ORDER + 1 {
        let odd = (2 * j - 1) as f64;
        a *= (4.0 - odd * odd).abs() / (8.0 * j as f64);
    }
    (a / HANKEL_REL_TOL).powf(1.0 / (HANKEL_ORDER + 1) as f64)
}

/// Sum of `e^{i w s} sum_k c_k s^{-(base + k)}` over frequencies `w`.
#[derive(Debug, Clone)]
struct Series {
    base: f64,
    order: usize,
    terms: Vec<(f64, Vec<Complex64>)>,
}

struct Tail {
    value: f64,
    error: f64,
}

impl Series {
    fn factor(kernel: Kernel, a: f64) -> Series {
        match kernel {
            Kernel::Sinc => {
                let c = Complex64::new(0.0, -0.5 / a); // 1/(2 i a)
                Series { base: 1.0, order: 0, terms: vec![(-a, vec![-c]), (a, vec![c])] }
            }
            Kernel::Disc => {
                // 2 J1(a s)/(a s)
                let mut s = hankel_series(1.0, a);
                for (_, c) in s.terms.iter_mut() {
                    for v in c.iter_mut() {
                        *v *= 2.0 / a;
                    }
                }
                s.base += 1.0;
                s
            }
        }
    }

    fn oscillator(kernel: Kernel, c: f64) -> Series {
        if c == 0.0 {
            let order = if kernel == Kernel::Disc { HANKEL_ORDER } else { 0 };
            let mut coeffs = vec![Complex64::new(0.0, 0.0); order + 1];
            coeffs[0] = Complex64::new(1.0, 0.0);
            return Series { base: 0.0, order, terms: vec![(0.0, coeffs)] };
        }
        match kernel {
            Kernel::Sinc => {
                let half = Complex64::new(0.5, 0.0);
                Series { base: 0.0, order: 0, terms: vec![(-c, vec![half]), (c, vec![half])] }
            }
            Kernel::Disc => hankel_series(0.0, c),
        }
    }

    fn mul(&self, other: &Series) -> Series {
        let order = self.order.max(other.order);
        let mut terms: Vec<(f64, Vec<Complex64>)> = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                let mut c = vec![Complex64::new(0.0, 0.0); order + 1];
                for (i, x) in c1.iter().enumerate() {
                    for (j, y) in c2.iter().enumerate() {
                        if i + j <= order {
                            c[i + j] += x * y;
                        }
                    }
                }
                terms.push((w1 + w2, c));
            }
        }
        terms.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut merged: Vec<(f64, Vec<Complex64>)> = Vec::with_capacity(terms.len());
        for (w, c) in terms {
            match merged.last_mut() {
                Some((lw, lc)) if (w - *lw).abs() <= 1e-12 * (1.0 + w.abs()) => {
                    for (a, b) in lc.iter_mut().zip(&c) {
                        *a += b;
                    }
                }
                _ => merged.push((w, c)),
            }
        }
        Series { base: self.base + other.base, order, terms: merged }
    }

    fn tail(&self, x: f64) -> Result<Tail> {
        let mut sum = Complex64::new(0.0, 0.0);
        let mut magnitude = 0.0;
        let mut last_order = 0.0;
        let largest = self
            .terms
            .iter()
            .flat_map(|(_, c)| c.iter().map(|v| v.norm()))
            .fold(0.0_f64, f64::max);
        for (w, coeffs) in &self.terms {
            let w = if w.abs() < 1e-13 { 0.0 } else { *w };
            for (k, c) in coeffs.iter().enumerate() {
                if c.norm() == 0.0 {
                    continue;
                }
                let mu = self.base + k as f64;
                let g = if w == 0.0 {
                    if mu <= 1.0 {
                        if c.norm() <= 1e-11 * largest {
                            continue;
                        }
                        return Err(Error::Divergent(format!("non-oscillating term decays like s^-{mu}")));
                    }
                    Complex64::new(x.powf(1.0 - mu) / (mu - 1.0), 0.0)
                } else {
                    let e = expint_e(mu, Complex64::new(0.0, -w.abs() * x)) * x.powf(1.0 - mu);
                    if w > 0.0 {
                        e
                    } else {
                        e.conj()
                    }
                };
                let contrib = c * g;
                sum += contrib;
                magnitude += contrib.norm();
                if k == self.order && self.order > 0 {
                    last_order += contrib.norm();
                }
            }
        }
        Ok(Tail { value: sum.re, error: 1e-15 * magnitude + last_order })
    }
}

// J_nu(a s) ~ sum_k [alpha_k e^{i a s} + conj] s^{-1/2-k}, with
// alpha_k = (1/2) sqrt(2/pi) e^{-i phi} i^k a_k(nu) a^{-1/2-k}, phi = (nu/2 + 1/4) pi.
fn hankel_series(nu: f64, a: f64) -> Series {
    let mu = 4.0 * nu * nu;
    let phase = Complex64::from_polar(1.0, -(nu / 2.0 + 0.25) * PI);
    let lead = 0.5 * (2.0 / PI).sqrt();
    let mut pos = Vec::with_capacity(HANKEL_ORDER + 1);
    let mut ak = 1.0;
    let mut ipow = Complex64::new(1.0, 0.0);
    for k in 0..=HANKEL_ORDER {
        if k > 0 {
            let odd = (2 * k - 1) as f64;
            ak *= (mu - odd * odd) / (8.0 * k as f64);
            ipow *= Complex64::new(0.0, 1.0);
        }
        pos.push(lead * phase * ipow * ak * a.powf(-0.5 - k as f64));
    }
    let neg: Vec<Complex64> = pos.iter().map(|c| c.conj()).collect();
    Series { base: 0.5, order: HANKEL_ORDER, terms: vec![(-a, neg), (a, pos)] }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hankel_series_matches_bessel_at_large_argument() {
        let s = hankel_series(1.0, 1.0);
        let x = 40.0_f64;
        let mut v = Complex64::new(0.0, 0.0);
        for (w, c) in &s.terms {
            for (k, ck) in c.iter().enumerate() {
                v += ck * Complex64::from_polar(1.0, w * x) * x.powf(-(0.5 + k as f64));
            }
        }
        assert!((v.re - crate::specfun::bessel_j1(x)).abs() < 1e-14);
        assert!(v.im.abs() < 1e-14);
    }

    #[test]
    fn threshold_is_moderate() {
        let t = hankel_threshold();
        assert!(t > 10.0 && t < 25.0, "{t}");
    }
}
