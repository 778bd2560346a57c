//! Scalar special functions.
//!
//! Bessel functions of order 0 and 1 use three regimes:
//!
//! ```text
//! |x| < 8          power series
//! 8 <= |x| < 14.5  Miller backward recurrence, normalised by J0 + 2 sum J2k = 1
//! |x| >= 14.5      Hankel expansion, truncated at the smallest term
//! ```
//!
//! The sine integral uses its power series up to 4 and the continued fraction
//! of the exponential integral beyond. `erf` uses the all-positive series
//! `e^{-x^2} sum 2^k x^{2k+1} / (2k+1)!!` below 3 and the erfc continued
//! fraction above.

use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_2, PI};

const BESSEL_SERIES_LIMIT: f64 = 8.0;
const BESSEL_ASYMPTOTIC_LIMIT: f64 = 14.5;
const SI_SERIES_LIMIT: f64 = 4.0;
const ERF_SERIES_LIMIT: f64 = 3.0;
const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// `sin(x)/x` with `sinc(0) = 1`.
pub fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        let x2 = x * x;
        1.0 - x2 / 6.0 * (1.0 - x2 / 20.0)
    } else {
        x.sin() / x
    }
}

/// Bessel function J0.
pub fn bessel_j0(x: f64) -> f64 {
    bessel_j01(x).0
}

/// Bessel function J1.
pub fn bessel_j1(x: f64) -> f64 {
    bessel_j01(x).1
}

/// `(J0(x), J1(x))` evaluated together.
pub fn bessel_j01(x: f64) -> (f64, f64) {
    if x.is_nan() {
        return (f64::NAN, f64::NAN);
    }
    let ax = x.abs();
    let (j0, j1) = if ax < BESSEL_SERIES_LIMIT {
        let (j0, j1c) = series_j0_j1c(ax);
        (j0, 0.5 * ax * j1c)
    } else if ax < BESSEL_ASYMPTOTIC_LIMIT {
        miller_j01(ax)
    } else {
        hankel_j01(ax)
    };
    (j0, if x < 0.0 { -j1 } else { j1 })
}

/// `2 J1(x) / x`, the Fourier transform of the unit-area disc profile.
pub fn j1c(x: f64) -> f64 {
    j0_and_j1c(x).1
}

/// `(J0(x), 2 J1(x)/x)` evaluated together.
pub fn j0_and_j1c(x: f64) -> (f64, f64) {
    let ax = x.abs();
    if ax < BESSEL_SERIES_LIMIT {
        series_j0_j1c(ax)
    } else {
        let (j0, j1) = bessel_j01(ax);
        (j0, 2.0 * j1 / ax)
    }
}

// J0 and 2 J1(x)/x from their power series; both share the powers of x^2/4.
fn series_j0_j1c(x: f64) -> (f64, f64) {
    let q = -0.25 * x * x;
    let mut t0 = 1.0; // (-x^2/4)^k / (k!)^2
    let mut t1 = 1.0; // (-x^2/4)^k / (k! (k+1)!)
    let (mut s0, mut s1) = (1.0, 1.0);
    for k in 1..80 {
        let kf = k as f64;
        t0 *= q / (kf * kf);
        t1 *= q / (kf * (kf + 1.0));
        s0 += t0;
        s1 += t1;
        if t0.abs() < 1e-18 && t1.abs() < 1e-18 {
            break;
        }
    }
    (s0, s1)
}

fn miller_j01(x: f64) -> (f64, f64) {
    let start = 2 * ((x as usize + 40) / 2);
    let tox = 2.0 / x;
    let (mut jp, mut j) = (0.0_f64, 1e-30_f64);
    let mut norm = 0.0;
    let (mut j0, mut j1) = (0.0, 0.0);
    for k in (1..=start).rev() {
        let jm = k as f64 * tox * j - jp;
        jp = j;
        j = jm;
        if j.abs() > 1e200 {
            j *= 1e-200;
            jp *= 1e-200;
            norm *= 1e-200;
            j1 *= 1e-200;
        }
        // j now holds J_{k-1}
        if k - 1 == 1 {
            j1 = j;
        }
        if (k - 1) % 2 == 0 && k > 1 {
            norm += 2.0 * j;
        }
        if k == 1 {
            j0 = j;
        }
    }
    norm += j0;
    (j0 / norm, j1 / norm)
}

// Hankel expansion coefficients a_k(nu) = prod (4 nu^2 - (2j-1)^2) / (k! 8^k).
fn hankel_pq(nu: f64, x: f64) -> (f64, f64) {
    let mu = 4.0 * nu * nu;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut term = 1.0;
    let mut last = f64::INFINITY;
    for k in 1..60 {
        let kf = k as f64;
        let odd = 2.0 * kf - 1.0;
        term *= (mu - odd * odd) / (8.0 * kf * x);
        if term.abs() >= last || term.abs() < 1e-17 {
            break;
        }
        last = term.abs();
        // i^k a_k / x^k split into real (P) and imaginary (Q) parts
        match k % 4 {
            1 => q += term,
            2 => p -= term,
            3 => q -= term,
            _ => p += term,
        }
    }
    (p, q)
}

fn hankel_j01(x: f64) -> (f64, f64) {
    let (s, c) = x.sin_cos();
    let amp = (2.0 / (PI * x)).sqrt();
    let r = std::f64::consts::FRAC_1_SQRT_2;
    // cos(x - pi/4), sin(x - pi/4), cos(x - 3pi/4), sin(x - 3pi/4)
    let c0 = r * (c + s);
    let s0 = r * (s - c);
    let c1 = r * (s - c);
    let s1 = -r * (s + c);
    let (p0, q0) = hankel_pq(0.0, x);
    let (p1, q1) = hankel_pq(1.0, x);
    (amp * (p0 * c0 - q0 * s0), amp * (p1 * c1 - q1 * s1))
}

/// Sine integral `Si(x) = int_0^x sin(t)/t dt`.
pub fn si(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    let ax = x.abs();
    let v = if ax <= SI_SERIES_LIMIT {
        si_series(ax)
    } else if ax.is_infinite() {
        FRAC_PI_2
    } else {
        si_auxiliary(ax)
    };
    v.copysign(x)
}

fn si_series(x: f64) -> f64 {
    let x2 = x * x;
    let mut term = x; // x^{2k+1} / (2k+1)!
    let mut sum = x;
    for k in 1..60 {
        let a = (2 * k) as f64;
        term *= -x2 / (a * (a + 1.0));
        let add = term / (a + 1.0);
        sum += add;
        if add.abs() < 1e-18 * sum.abs() {
            break;
        }
    }
    sum
}

// g + i f = e^{z} E1(z) at z = -ix, with Si = pi/2 - f cos x - g sin x.
fn si_auxiliary(x: f64) -> f64 {
    let h = expint_cf(1.0, Complex64::new(0.0, -x));
    let (g, f) = (h.re, h.im);
    let (s, c) = x.sin_cos();
    FRAC_PI_2 - f * c - g * s
}

/// Error function.
pub fn erf(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    let ax = x.abs();
    let v = if ax < ERF_SERIES_LIMIT {
        erf_series(ax)
    } else {
        1.0 - erfc_cf(ax)
    };
    v.copysign(x)
}

fn erf_series(x: f64) -> f64 {
    let x2 = x * x;
    let mut term = x;
    let mut sum = x;
    for k in 1..200 {
        term *= 2.0 * x2 / (2 * k + 1) as f64;
        sum += term;
        if term < 1e-17 * sum {
            break;
        }
    }
    2.0 / PI.sqrt() * (-x2).exp() * sum
}

// erfc(x) = e^{-x^2}/sqrt(pi) * 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...)))).
fn erfc_cf(x: f64) -> f64 {
    let tiny = 1e-300;
    let mut f = x;
    let mut c = x;
    let mut d = 0.0;
    for k in 1..500 {
        let a = 0.5 * k as f64;
        d = x + a * d;
        d = if d.abs() < tiny { tiny } else { d };
        c = x + a / c;
        c = if c.abs() < tiny { tiny } else { c };
        d = 1.0 / d;
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < 1e-16 {
            break;
        }
    }
    (-x * x).exp() / (PI.sqrt() * f)
}

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// `ln |Gamma(x)|`.
pub fn ln_gamma(x: f64) -> f64 {
    if x < 0.5 {
        // reflection
        (PI / (PI * x).sin().abs()).ln() - ln_gamma(1.0 - x)
    } else if x > 30.0 {
        stirling_ln_gamma(x)
    } else {
        let x = x - 1.0;
        let mut a = LANCZOS[0];
        let t = x + LANCZOS_G + 0.5;
        for (i, c) in LANCZOS.iter().enumerate().skip(1) {
            a += c / (x + i as f64);
        }
        0.5 * (2.0 * PI).ln() + (x + 0.5) * t.ln() - t + a.ln()
    }
}

fn stirling_ln_gamma(x: f64) -> f64 {
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    let series = inv
        * (1.0 / 12.0
            - inv2 * (1.0 / 360.0 - inv2 * (1.0 / 1260.0 - inv2 * (1.0 / 1680.0 - inv2 / 1188.0))));
    (x - 0.5) * x.ln() - x + 0.5 * (2.0 * PI).ln() + series
}

/// Gamma function for real arguments away from the poles.
pub fn gamma(x: f64) -> f64 {
    if x < 0.5 {
        PI / ((PI * x).sin() * gamma(1.0 - x))
    } else {
        ln_gamma(x).exp()
    }
}

const BERNOULLI_2K: [f64; 8] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
];

/// Riemann zeta function for `s > 1` (Euler-Maclaurin with ten direct terms).
pub fn zeta(s: f64) -> f64 {
    if s.is_nan() || s <= 1.0 {
        return f64::NAN;
    }
    const N: usize = 10;
    let mut sum = 0.0;
    for k in 1..N {
        sum += (k as f64).powf(-s);
    }
    let n = N as f64;
    sum += n.powf(1.0 - s) / (s - 1.0) + 0.5 * n.powf(-s);
    // B_2j / (2j)! * s (s+1) ... (s+2j-2) * N^{-s-2j+1}
    let mut rising = s;
    let mut fact = 2.0;
    let mut npow = n.powf(-s - 1.0);
    for (j, b) in BERNOULLI_2K.iter().enumerate() {
        let k = 2 * (j + 1);
        sum += b / fact * rising * npow;
        rising *= (s + k as f64 - 1.0) * (s + k as f64);
        fact *= ((k + 1) * (k + 2)) as f64;
        npow /= n * n;
    }
    sum
}

/// Digamma function at a positive integer.
pub fn digamma_int(n: u32) -> f64 {
    -EULER_GAMMA + (1..n).map(|k| 1.0 / k as f64).sum::<f64>()
}

/// Generalised exponential integral `E_nu(z) = int_1^inf e^{-zt} t^{-nu} dt`
/// for `Re z >= 0`, `z != 0` and `nu > 0`.
pub fn expint_e(nu: f64, z: Complex64) -> Complex64 {
    if z.norm() >= 2.0 {
        (-z).exp() * expint_cf(nu, z)
    } else {
        expint_series(nu, z)
    }
}

/// `e^{z} E_nu(z)` by the modified Lentz continued fraction.
pub fn expint_cf(nu: f64, z: Complex64) -> Complex64 {
    let tiny = Complex64::new(1e-300, 0.0);
    let mut b = z + nu;
    let mut c = Complex64::new(1e300, 0.0);
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..20_000 {
        let fi = i as f64;
        let an = -fi * (nu - 1.0 + fi);
        b += 2.0;
        d = an * d + b;
        if d.norm() < 1e-300 {
            d = tiny;
        }
        d = 1.0 / d;
        c = b + an / c;
        if c.norm() < 1e-300 {
            c = tiny;
        }
        let del = c * d;
        h *= del;
        if (del - 1.0).norm() < 1e-16 {
            break;
        }
    }
    h
}

fn expint_series(nu: f64, z: Complex64) -> Complex64 {
    let rounded = nu.round();
    let mz = -z;
    if (nu - rounded).abs() < 1e-12 && rounded >= 1.0 {
        let n = rounded as i64;
        let mut sum = Complex64::new(0.0, 0.0);
        let mut pow = Complex64::new(1.0, 0.0); // (-z)^k / k!
        let mut lead = Complex64::new(0.0, 0.0);
        for k in 0..80_i64 {
            if k > 0 {
                pow = pow * mz / k as f64;
            }
            if k == n - 1 {
                lead = pow * (-z.ln() + digamma_int(n as u32));
            } else {
                sum += pow / (k - n + 1) as f64;
            }
            if k > n && pow.norm() < 1e-18 {
                break;
            }
        }
        lead - sum
    } else {
        let mut sum = Complex64::new(0.0, 0.0);
        let mut pow = Complex64::new(1.0, 0.0);
        for k in 0..80 {
            if k > 0 {
                pow = pow * mz / k as f64;
            }
            sum += pow / (1.0 - nu + k as f64);
            if pow.norm() < 1e-18 {
                break;
            }
        }
        gamma(1.0 - nu) * ((nu - 1.0) * z.ln()).exp() - sum
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bessel_branches_agree_near_series_limit() {
        let mut x = 7.0;
        while x < 9.0 {
            let (a0, a1c) = series_j0_j1c(x);
            let (b0, b1) = miller_j01(x);
            assert!((a0 - b0).abs() < 1e-12, "J0 at {x}: {a0} vs {b0}");
            assert!((0.5 * x * a1c - b1).abs() < 1e-12, "J1 at {x}");
            x += 0.01;
        }
    }

    #[test]
    fn bessel_branches_agree_near_asymptotic_limit() {
        let mut x = 13.5;
        while x < 16.0 {
            let (a0, a1) = miller_j01(x);
            let (b0, b1) = hankel_j01(x);
            assert!((a0 - b0).abs() < 1e-12, "J0 at {x}: {a0} vs {b0}");
            assert!((a1 - b1).abs() < 1e-12, "J1 at {x}: {a1} vs {b1}");
            x += 0.01;
        }
    }

    #[test]
    fn si_branches_agree_near_switch() {
        let mut x = 3.0;
        while x < 5.0 {
            assert!((si_series(x) - si_auxiliary(x)).abs() < 1e-13, "Si at {x}");
            x += 0.01;
        }
    }

    #[test]
    fn erf_branches_agree_near_switch() {
        let mut x = 2.5;
        while x < 3.5 {
            assert!((erf_series(x) - (1.0 - erfc_cf(x))).abs() < 1e-14, "erf at {x}");
            x += 0.01;
        }
    }

    #[test]
    fn expint_series_and_fraction_agree() {
        for &nu in &[0.5, 1.0, 1.5, 2.0, 3.5, 6.0] {
            for &y in &[1.5, 2.0, 2.5] {
                let z = Complex64::new(0.0, -y);
                let a = expint_series(nu, z);
                let b = (-z).exp() * expint_cf(nu, z);
                assert!((a - b).norm() < 1e-12, "E_{nu}({z}): {a} vs {b}");
            }
        }
    }
}
