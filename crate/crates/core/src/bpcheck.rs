//! The surface area Busemann-Petty comparison between the cube and a ball.
//!
//! Pick the Euclidean ball `rB^n` whose central sections have boundary
//! measure equal to the largest section perimeter of the cube,
//! `2((n-2)sqrt(2)+1)`. Every cube section perimeter is then at most the ball
//! section perimeter, and the ball is a counterexample once its own surface
//! area `r^{n-1} sigma(S^{n-1})` exceeds the cube's, `2n`. The ratio of the two
//! is
//!
//! ```text
//! BP(n) = [((n-2)sqrt(2)+1) Gamma((n-1)/2)]^{(n-1)/(n-2)} / (n Gamma(n/2) pi^{1/(2(n-2))})
//! ```
//!
//! and a counterexample exists whenever `BP(n) < 1`.
//!
//! # The polydisc
//!
//! The same recipe is run with `C^n = R^{2n}` and the unit polydisc, keeping
//! the dimension labels of the complex perimeter `P_{2(n-2)}`:
//!
//! * the section perimeter is matched against a sphere `S^{2n-4}`,
//!   `r^{2n-4} sigma(S^{2n-4}) = 2 pi (2(n-2)+1)`, the largest polydisc
//!   section perimeter;
//! * the ball surface `r^{2n-2} sigma(S^{2n-2})` is compared with `2 pi n`,
//!   which is `2 pi^{l-1}` times the `n` boundary pieces, in the same
//!   normalisation as the perimeter;
//!
//! where `sigma(S^d) = 2 pi^{(d+1)/2} / Gamma((d+1)/2)`. The ratio
//! `BP_C(n) = r^{2n-2} sigma(S^{2n-2}) / (2 pi n)` is decreasing and crosses 1
//! between 10 and 11. Matching the true real dimensions (`S^{2n-3}` and
//! `S^{2n-1}` with the boundary measure `2 sqrt(pi) n` of the polydisc) moves
//! the crossover below 10, so the labelled convention is the one implemented.

use crate::specfun::ln_gamma;
use crate::{Error, Field, Result};
use serde::Serialize;
use std::f64::consts::{PI, SQRT_2};

/// Largest `n` accepted by the tables.
pub const N_MAX: usize = 200;

/// One row of the comparison table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BpRow {
    pub n: usize,
    pub radius: f64,
    pub bp: f64,
    pub counterexample: bool,
}

/// `ln sigma(S^d)`, the log surface area of the unit sphere in `R^{d+1}`.
pub fn ln_sphere_area(d: f64) -> f64 {
    2f64.ln() + 0.5 * (d + 1.0) * PI.ln() - ln_gamma(0.5 * (d + 1.0))
}

fn ln_target(n: f64) -> f64 {
    ((n - 2.0) * SQRT_2 + 1.0).ln()
}

/// Radius of the ball in `R^n` whose central sections have perimeter
/// `2((n-2)sqrt(2)+1)`.
pub fn ball_radius(n: f64) -> f64 {
    let m = n - 2.0;
    ((ln_target(n) + ln_gamma(0.5 * (n - 1.0))) / m - 0.5 * (n - 1.0) / m * PI.ln()).exp()
}

/// `BP(n)` in log space; defined for real `n > 2`.
pub fn bp_value(n: f64) -> f64 {
    let m = n - 2.0;
    let lhs = (n - 1.0) / m * (ln_target(n) + ln_gamma(0.5 * (n - 1.0)));
    (lhs - n.ln() - ln_gamma(0.5 * n) - PI.ln() / (2.0 * m)).exp()
}

/// Ball surface area `r^{n-1} sigma(S^{n-1})` from [`ball_radius`].
pub fn ball_surface(n: f64) -> f64 {
    ((n - 1.0) * ball_radius(n).ln() + ln_sphere_area(n - 1.0)).exp()
}

/// Radius of the ball in `R^{2n}` matched to the polydisc, see the module notes.
pub fn ball_radius_complex(n: f64) -> f64 {
    let d = 2.0 * n - 4.0;
    (((2.0 * PI * (2.0 * n - 3.0)).ln() - ln_sphere_area(d)) / d).exp()
}

/// `BP_C(n) = r^{2n-2} sigma(S^{2n-2}) / (2 pi n)`.
pub fn bp_complex_value(n: f64) -> f64 {
    let lr = ball_radius_complex(n).ln();
    ((2.0 * n - 2.0) * lr + ln_sphere_area(2.0 * n - 2.0) - (2.0 * PI * n).ln()).exp()
}

fn check_range(n_min: usize, n_max: usize) -> Result<()> {
    if n_min < 3 || n_min > n_max || n_max > N_MAX {
        return Err(Error::InvalidArgument(format!(
            "table range {n_min}..={n_max} must satisfy 3 <= n_min <= n_max <= {N_MAX}"
        )));
    }
    Ok(())
}

/// Rows `n_min..=n_max` for the cube.
pub fn bp_table(n_min: usize, n_max: usize) -> Result<Vec<BpRow>> {
    bp_table_for(Field::Real, n_min, n_max)
}

/// Rows `n_min..=n_max` for either field.
pub fn bp_table_for(field: Field, n_min: usize, n_max: usize) -> Result<Vec<BpRow>> {
    check_range(n_min, n_max)?;
    Ok((n_min..=n_max)
        .map(|n| {
            let x = n as f64;
            let (radius, bp) = match field {
                Field::Real => (ball_radius(x), bp_value(x)),
                Field::Complex => (ball_radius_complex(x), bp_complex_value(x)),
            };
            BpRow { n, radius, bp, counterexample: bp < 1.0 }
        })
        .collect())
}

/// The real `x` in `(3, 200)` with `BP(x) = 1`, by bisection.
pub fn bp_root(field: Field) -> Result<f64> {
    let f = |x: f64| match field {
        Field::Real => bp_value(x) - 1.0,
        Field::Complex => bp_complex_value(x) - 1.0,
    };
    let (mut lo, mut hi) = (3.0, N_MAX as f64);
    if f(lo) <= 0.0 || f(hi) >= 0.0 {
        return Err(Error::InvalidArgument(format!("no crossover of BP for the {field} field on [3, {N_MAX}]")));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-13 {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Smallest integer `n` in the table range with a counterexample.
pub fn first_counterexample(field: Field) -> Option<usize> {
    bp_table_for(field, 3, N_MAX).ok()?.into_iter().find(|r| r.counterexample).map(|r| r.n)
}
