//! Reference values that do not go through oscillatory quadrature.
//!
//! For the cube, `A(a, t)` is the density at `t/2` of `S = sum a_k U_k` with
//! `U_k` uniform on `[-1/2, 1/2]`, and `S` has the generalised Irwin-Hall
//! density
//!
//! ```text
//! f(x) = 1/((m-1)! prod a_k) * sum_eps (-1)^|eps| max(0, x + sum a_k/2 - eps.a)^(m-1)
//! ```
//!
//! over the `m` positive weights. The alternating sum cancels badly, so it is
//! accumulated in double-double arithmetic. For the polydisc there is no such
//! formula and a seeded Monte Carlo estimate is used instead.

use crate::sections::{Direction, Field};
use crate::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::f64::consts::PI;

const MAX_TERMS: usize = 25;
const MAX_PIECEWISE: usize = 16;
/// Monte Carlo work is split into this many independent streams.
pub const MC_SHARDS: u64 = 16;

/// Double-double number `hi + lo`.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Dd {
    hi: f64,
    lo: f64,
}

impl Dd {
    const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };

    fn new(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    fn two_sum(a: f64, b: f64) -> Dd {
        let s = a + b;
        let bb = s - a;
        let e = (a - (s - bb)) + (b - bb);
        Dd { hi: s, lo: e }
    }

    fn quick(a: f64, b: f64) -> Dd {
        let s = a + b;
        Dd { hi: s, lo: b - (s - a) }
    }

    fn add(self, o: Dd) -> Dd {
        let s = Dd::two_sum(self.hi, o.hi);
        let t = Dd::two_sum(self.lo, o.lo);
        let r = Dd::quick(s.hi, s.lo + t.hi);
        Dd::quick(r.hi, r.lo + t.lo)
    }

    fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }

    fn sub(self, o: Dd) -> Dd {
        self.add(o.neg())
    }

    fn mul(self, o: Dd) -> Dd {
        let p = self.hi * o.hi;
        let e = self.hi.mul_add(o.hi, -p);
        Dd::quick(p, e + (self.hi * o.lo + self.lo * o.hi))
    }

    fn div(self, o: Dd) -> Dd {
        let q1 = self.hi / o.hi;
        let r = self.sub(o.mul(Dd::new(q1)));
        let q2 = r.hi / o.hi;
        let r = r.sub(o.mul(Dd::new(q2)));
        let q3 = r.hi / o.hi;
        Dd::quick(q1, q2).add(Dd::new(q3))
    }

    fn powi(self, k: usize) -> Dd {
        let mut r = Dd::new(1.0);
        for _ in 0..k {
            r = r.mul(self);
        }
        r
    }

    fn to_f64(self) -> f64 {
        self.hi + self.lo
    }
}

fn positive_weights(weights: &[f64]) -> Result<Vec<f64>> {
    for &a in weights {
        if !a.is_finite() || a < 0.0 {
            return Err(Error::InvalidArgument(format!("weight {a} must be finite and non-negative")));
        }
    }
    let w: Vec<f64> = weights.iter().copied().filter(|&a| a > 0.0).collect();
    if w.is_empty() {
        return Err(Error::InvalidArgument("at least one positive weight is required".into()));
    }
    Ok(w)
}

// 1 / ((m-1)! prod a_k) in double-double.
fn normaliser(w: &[f64]) -> Dd {
    let mut d = Dd::new(1.0);
    for (i, &a) in w.iter().enumerate() {
        d = d.mul(Dd::new(a));
        if i > 0 {
            d = d.mul(Dd::new(i as f64));
        }
    }
    Dd::new(1.0).div(d)
}

/// Density of `sum a_k U_k` at `x`, `U_k` uniform on `[-1/2, 1/2]`.
pub fn irwin_hall_density(weights: &[f64], x: f64) -> Result<f64> {
    let w = positive_weights(weights)?;
    let m = w.len();
    if m > MAX_TERMS {
        return Err(Error::InvalidArgument(format!("{m} weights exceed the limit of {MAX_TERMS}")));
    }
    if !x.is_finite() {
        return Err(Error::InvalidArgument("evaluation point must be finite".into()));
    }
    let x = x.abs();
    let half: f64 = w.iter().sum::<f64>() * 0.5;
    if m == 1 {
        let a = w[0];
        return Ok(match (x - 0.5 * a).partial_cmp(&0.0) {
            Some(std::cmp::Ordering::Less) => 1.0 / a,
            Some(std::cmp::Ordering::Equal) => 0.5 / a,
            _ => 0.0,
        });
    }
    if x >= half {
        return Ok(0.0);
    }
    // shift = x + sum a/2 - eps.a, enumerated in Gray-code order so each step
    // changes one weight; terms with shift <= 0 vanish
    let base = Dd::new(x).add(halves(&w));
    let mut terms: Vec<Dd> = Vec::new();
    let mut shift = base;
    let mut eps = vec![false; m];
    let mut parity = false;
    for step in 0..(1usize << m) {
        if step > 0 {
            let j = step.trailing_zeros() as usize;
            eps[j] = !eps[j];
            parity = !parity;
            shift = if eps[j] { shift.sub(Dd::new(w[j])) } else { shift.add(Dd::new(w[j])) };
        }
        if shift.hi > 0.0 {
            let v = shift.powi(m - 1);
            terms.push(if parity { v.neg() } else { v });
        }
    }
    terms.sort_by(|a, b| b.hi.abs().total_cmp(&a.hi.abs()));
    let sum = terms.into_iter().fold(Dd::ZERO, Dd::add);
    Ok(sum.mul(normaliser(&w)).to_f64().max(0.0))
}

fn halves(w: &[f64]) -> Dd {
    w.iter().fold(Dd::ZERO, |s, &a| s.add(Dd::new(0.5 * a)))
}

/// Exact piecewise polynomial form of the same density.
#[derive(Debug, Clone, Serialize)]
pub struct PiecewisePolyDensity {
    /// Sorted breakpoints; piece `i` lives on `[breakpoints[i], breakpoints[i+1]]`.
    pub breakpoints: Vec<f64>,
    /// Ascending coefficients in `x - breakpoints[i]` for each piece.
    pub coefficients: Vec<Vec<f64>>,
    pub weights: Vec<f64>,
}

impl PiecewisePolyDensity {
    pub fn new(weights: &[f64]) -> Result<Self> {
        let w = positive_weights(weights)?;
        let m = w.len();
        if m > MAX_PIECEWISE {
            return Err(Error::InvalidArgument(format!("{m} weights exceed the limit of {MAX_PIECEWISE}")));
        }
        let deg = m - 1;
        // knots b_eps = eps.a - sum a/2 with sign (-1)^|eps|
        let mut knots: Vec<(Dd, bool)> = Vec::with_capacity(1 << m);
        for mask in 0usize..(1 << m) {
            let mut b = halves(&w).neg();
            for (j, &a) in w.iter().enumerate() {
                if mask >> j & 1 == 1 {
                    b = b.add(Dd::new(a));
                }
            }
            knots.push((b, mask.count_ones() % 2 == 1));
        }
        knots.sort_by(|a, b| a.0.hi.total_cmp(&b.0.hi).then(a.0.lo.total_cmp(&b.0.lo)));
        let norm = normaliser(&w);
        let binom = binomials(deg);

        // running polynomial in powers of x (double-double), updated as knots are passed
        let mut global = vec![Dd::ZERO; deg + 1];
        let mut breakpoints = Vec::new();
        let mut coefficients = Vec::new();
        let mut i = 0;
        while i < knots.len() {
            let left = knots[i].0;
            while i < knots.len() && (knots[i].0.sub(left)).to_f64().abs() <= 1e-15 {
                let (b, odd) = knots[i];
                // (x - b)^deg = sum_j C(deg,j) x^j (-b)^(deg-j)
                for (j, g) in global.iter_mut().enumerate() {
                    let mut t = Dd::new(binom[j]).mul(b.neg().powi(deg - j));
                    if odd {
                        t = t.neg();
                    }
                    *g = g.add(t);
                }
                i += 1;
            }
            if i == knots.len() {
                breakpoints.push(left.to_f64());
                break;
            }
            breakpoints.push(left.to_f64());
            coefficients.push(taylor_shift(&global, left, &binom_table(deg), norm));
        }
        Ok(PiecewisePolyDensity { breakpoints, coefficients, weights: w })
    }

    /// `[-sum a/2, sum a/2]`.
    pub fn support(&self) -> (f64, f64) {
        (self.breakpoints[0], *self.breakpoints.last().unwrap_or(&0.0))
    }

    pub fn eval(&self, x: f64) -> f64 {
        let (lo, hi) = self.support();
        if !(x > lo && x < hi) {
            return 0.0;
        }
        let i = self.breakpoints.partition_point(|&b| b <= x).saturating_sub(1).min(self.coefficients.len() - 1);
        let u = x - self.breakpoints[i];
        self.coefficients[i].iter().rev().fold(0.0, |acc, c| acc * u + c)
    }

    /// Integral over the support, piece by piece.
    pub fn integral(&self) -> f64 {
        let mut total = 0.0;
        for (i, c) in self.coefficients.iter().enumerate() {
            let h = self.breakpoints[i + 1] - self.breakpoints[i];
            let mut hp = h;
            for (j, cj) in c.iter().enumerate() {
                total += cj * hp / (j + 1) as f64;
                hp *= h;
            }
        }
        total
    }
}

fn binomials(n: usize) -> Vec<f64> {
    let mut row = vec![1.0; n + 1];
    for j in 1..n {
        row[j] = row[j - 1] * (n - j + 1) as f64 / j as f64;
    }
    row
}

fn binom_table(n: usize) -> Vec<Vec<f64>> {
    (0..=n).map(binomials).collect()
}

// Coefficients of p(left + u) in powers of u, scaled by `norm`.
fn taylor_shift(global: &[Dd], left: Dd, table: &[Vec<f64>], norm: Dd) -> Vec<f64> {
    let deg = global.len() - 1;
    let mut out = vec![0.0; deg + 1];
    for (k, o) in out.iter_mut().enumerate() {
        let mut s = Dd::ZERO;
        for j in k..=deg {
            s = s.add(global[j].mul(Dd::new(table[j][k])).mul(left.powi(j - k)));
        }
        *o = s.mul(norm).to_f64();
    }
    out
}

/// `A(a, t)` for the cube from the density.
pub fn section_volume_oracle(a: &Direction, t: f64) -> Result<f64> {
    if a.field() != Field::Real {
        return Err(Error::InvalidArgument("the density oracle covers the real case only".into()));
    }
    irwin_hall_density(a.coords(), 0.5 * t)
}

/// `D_k(a)` from the density of the remaining weights; `k` is 1-based.
pub fn dk_oracle(a: &Direction, k: usize) -> Result<f64> {
    let c = a.coords();
    if k == 0 || k > c.len() {
        return Err(Error::InvalidArgument(format!("index {k} out of range")));
    }
    let ak = c[k - 1];
    let rest = (1.0 - ak * ak).sqrt();
    let others: Vec<f64> = c.iter().enumerate().filter(|&(j, _)| j != k - 1).map(|(_, &v)| v / rest).collect();
    Ok(irwin_hall_density(&others, 0.5 * ak / rest)? / rest)
}

/// Perimeter of the central section of the cube, built from the density only.
pub fn perimeter_oracle(a: &Direction) -> Result<f64> {
    if a.field() != Field::Real {
        return Err(Error::InvalidArgument("the density oracle covers the real case only".into()));
    }
    let n = a.n();
    if n < 3 {
        return Err(Error::InvalidArgument("perimeter needs n >= 3".into()));
    }
    let c = a.coords();
    if c[0] >= 1.0 || c[1] == 0.0 {
        return Ok(2.0 * (n - 1) as f64);
    }
    let mut sum = 0.0;
    for k in 1..=n {
        sum += (1.0 - c[k - 1] * c[k - 1]).sqrt() * dk_oracle(a, k)?;
    }
    Ok(2.0 * sum)
}

/// Monte Carlo density estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct McEstimate {
    pub value: f64,
    pub std_error: f64,
    pub samples: u64,
    pub seed: u64,
}

/// Density at the origin of `W = sum a_k Z_k` with `Z_k` uniform on the disc
/// of radius `1/sqrt(pi)`, estimated from the fraction of samples with
/// `|W| < eps`.
///
/// The samples are split evenly over [`MC_SHARDS`] ChaCha8 streams of the
/// same seed, the first `samples % MC_SHARDS` streams taking one extra, so the
/// estimate depends only on `(a, samples, eps, seed)`.
pub fn mc_complex_section(a: &Direction, samples: u64, eps: f64, seed: u64) -> Result<McEstimate> {
    if samples < 100_000 {
        return Err(Error::InvalidArgument("at least 1e5 samples are required".into()));
    }
    if !(eps > 0.0 && eps < 0.1) {
        return Err(Error::InvalidArgument(format!("eps {eps} must lie in (0, 0.1)")));
    }
    let w: Vec<f64> = a.coords().iter().copied().filter(|&v| v > 0.0).collect();
    let radius = 1.0 / PI.sqrt();
    let eps2 = eps * eps;
    let mut hits = 0u64;
    for shard in 0..MC_SHARDS {
        let count = samples / MC_SHARDS + u64::from(shard < samples % MC_SHARDS);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(shard);
        for _ in 0..count {
            let (mut x, mut y) = (0.0, 0.0);
            for &ak in &w {
                let (u, v) = loop {
                    let u: f64 = rng.random_range(-1.0..1.0);
                    let v: f64 = rng.random_range(-1.0..1.0);
                    if u * u + v * v < 1.0 {
                        break (u, v);
                    }
                };
                x += ak * radius * u;
                y += ak * radius * v;
            }
            if x * x + y * y < eps2 {
                hits += 1;
            }
        }
    }
    let n = samples as f64;
    let area = PI * eps2;
    let p = hits as f64 / n;
    let p_err = p.max(1.0 / n);
    Ok(McEstimate {
        value: p / area,
        std_error: (p_err * (1.0 - p_err) / n).sqrt() / area,
        samples,
        seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn double_double_keeps_small_parts() {
        let a = Dd::new(1.0).add(Dd::new(1e-20));
        let b = a.sub(Dd::new(1.0));
        assert_eq!(b.to_f64(), 1e-20);
        let q = Dd::new(1.0).div(Dd::new(3.0)).mul(Dd::new(3.0)).sub(Dd::new(1.0));
        assert!(q.to_f64().abs() < 1e-30);
    }

    #[test]
    fn triangle_density() {
        let r = 0.5f64.sqrt();
        assert!((irwin_hall_density(&[r, r], 0.0).unwrap() - 2f64.sqrt()).abs() < 1e-15);
        assert!((irwin_hall_density(&[r, r], 0.25 * r).unwrap() - 0.75 * 2f64.sqrt()).abs() < 1e-15);
    }
}
