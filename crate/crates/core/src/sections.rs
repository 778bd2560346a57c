//! Central and parallel sections of the cube `[-1/2, 1/2]^n` (real field) and
//! of the polydisc `{z in C^n : |z_k| <= 1/sqrt(pi)}` (complex field), both of
//! volume one.
//!
//! With `l = 1` (real) or `l = 2` (complex):
//!
//! ```text
//! A(a, t)  real:    (2/pi) int_0^inf prod sinc(a_k s) cos(t s) ds
//!          complex: (1/2)  int_0^inf prod j1c(a_k s) J0(t s) s ds
//! D_k(a)   the same with factor k removed and t = a_k
//! P(a)     real:    2  sum sqrt(1 - a_k^2) D_k(a)
//!          complex: 2pi sum (1 - a_k^2) D_k(a)
//! ```
//!
//! `A(a, t)` is the volume of the section at distance `t/2` (real) or
//! `t/sqrt(pi)` (complex) from the origin, `P(a)` the boundary measure of the
//! central section.

use crate::ballfn::{ball_f, ball_f_complex};
use crate::oracle;
use crate::oscint::{
    integrate_j1c_product_j0, integrate_sinc_product_cos, product_family, Kernel, QuadratureSpec,
};
use crate::{Error, Result};
use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::{FRAC_1_SQRT_2, PI, SQRT_2};

/// Scalar field of the coefficient model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Field {
    Real,
    Complex,
}

impl Field {
    /// Real dimension of one coordinate.
    pub fn l(self) -> u32 {
        match self {
            Field::Real => 1,
            Field::Complex => 2,
        }
    }

    fn kernel(self) -> Kernel {
        match self {
            Field::Real => Kernel::Sinc,
            Field::Complex => Kernel::Disc,
        }
    }
}

impl std::str::FromStr for Field {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "real" | "r" => Ok(Field::Real),
            "complex" | "c" => Ok(Field::Complex),
            _ => Err(Error::InvalidArgument(format!("unknown field '{s}'"))),
        }
    }
}

impl std::fmt::Display for Field {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Field::Real => "real",
            Field::Complex => "complex",
        })
    }
}

/// Unit normal with non-increasing non-negative coordinates.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Direction {
    coords: Vec<f64>,
    field: Field,
}

impl Direction {
    /// Absolute values, sorted non-increasing, scaled to unit length.
    pub fn canonicalize(raw: &[f64], field: Field) -> Result<Direction> {
        if raw.len() < 2 {
            return Err(Error::InvalidDirection("at least two coordinates are required".into()));
        }
        if raw.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidDirection("coordinates must be finite".into()));
        }
        let mut c: Vec<f64> = raw.iter().map(|v| v.abs()).collect();
        let scale = c.iter().copied().fold(0.0_f64, f64::max);
        if scale == 0.0 {
            return Err(Error::InvalidDirection("all coordinates are zero".into()));
        }
        let norm = c.iter().map(|v| (v / scale).powi(2)).sum::<f64>().sqrt() * scale;
        c.iter_mut().for_each(|v| *v /= norm);
        c.sort_by(|a, b| b.total_cmp(a));
        Ok(Direction { coords: c, field })
    }

    /// Complex normal; only the moduli matter.
    pub fn from_complex(raw: &[Complex64]) -> Result<Direction> {
        let m: Vec<f64> = raw.iter().map(|z| z.norm()).collect();
        Direction::canonicalize(&m, Field::Complex)
    }

    /// `(1, 1, 0, ..., 0)/sqrt(2)`.
    pub fn a_max(n: usize, field: Field) -> Direction {
        let mut c = vec![0.0; n.max(2)];
        c[0] = FRAC_1_SQRT_2;
        c[1] = FRAC_1_SQRT_2;
        Direction { coords: c, field }
    }

    /// `(1, 0, ..., 0)`.
    pub fn a_min(n: usize, field: Field) -> Direction {
        let mut c = vec![0.0; n.max(2)];
        c[0] = 1.0;
        Direction { coords: c, field }
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn n(&self) -> usize {
        self.coords.len()
    }

    /// Same coordinates in the other model.
    pub fn with_field(&self, field: Field) -> Direction {
        Direction { coords: self.coords.clone(), field }
    }

    /// Euclidean distance between canonical coordinates.
    pub fn distance(&self, other: &Direction) -> f64 {
        let n = self.n().max(other.n());
        (0..n)
            .map(|i| {
                let a = self.coords.get(i).copied().unwrap_or(0.0);
                let b = other.coords.get(i).copied().unwrap_or(0.0);
                (a - b) * (a - b)
            })
            .sum::<f64>()
            .sqrt()
    }
}

/// `A(a, t)`. For the real field with `n <= 3` the value is checked against
/// the Irwin-Hall density.
pub fn section_volume(a: &Direction, t: f64, spec: &QuadratureSpec) -> Result<f64> {
    if !t.is_finite() || t < 0.0 {
        return Err(Error::InvalidArgument(format!("offset {t} must be finite and non-negative")));
    }
    let r = match a.field {
        Field::Real => integrate_sinc_product_cos(&a.coords, t, None, spec)?,
        Field::Complex => integrate_j1c_product_j0(&a.coords, t, None, spec)?,
    };
    let v = r.checked()?;
    if a.field == Field::Real && a.n() <= 3 {
        let exact = oracle::section_volume_oracle(a, t)?;
        // jump points of the n = 2 density are excluded
        let kink = a.coords.iter().any(|&c| (t - c).abs() < 1e-9);
        if !kink && (v - exact).abs() > 1e-6 {
            return Err(Error::Inconsistent(format!("A = {v} but the density gives {exact}")));
        }
    }
    Ok(v)
}

/// `D_k(a)` for `1 <= k <= n`; equals `A(a, 0)` when `a_k = 0` and 0 when
/// `a_k = 1`.
pub fn dk(a: &Direction, k: usize, spec: &QuadratureSpec) -> Result<f64> {
    if k == 0 || k > a.n() {
        return Err(Error::InvalidArgument(format!("index {k} out of range 1..={}", a.n())));
    }
    let ak = a.coords[k - 1];
    if ak == 0.0 {
        return section_volume(a, 0.0, spec);
    }
    if ak >= 1.0 {
        return Ok(0.0);
    }
    let r = match a.field {
        Field::Real => integrate_sinc_product_cos(&a.coords, ak, Some(k - 1), spec)?,
        Field::Complex => integrate_j1c_product_j0(&a.coords, ak, Some(k - 1), spec)?,
    };
    r.checked()
}

/// Perimeter from already computed `D_k`.
pub fn perimeter_from_family(a: &Direction, d: &[f64]) -> f64 {
    let s: f64 = a
        .coords
        .iter()
        .zip(d)
        .map(|(&c, &dk)| match a.field {
            Field::Real => (1.0 - c * c).max(0.0).sqrt() * dk,
            Field::Complex => (1.0 - c * c).max(0.0) * dk,
        })
        .sum();
    match a.field {
        Field::Real => 2.0 * s,
        Field::Complex => 2.0 * PI * s,
    }
}

/// `A(a, 0)` and all `D_k(a)`.
///
/// At `a_min` the first facet integral has no decaying factor; it is set to
/// its limit 0, the value forced by the sum identity, and carries weight 0 in
/// the perimeter.
pub fn section_family(a: &Direction, spec: &QuadratureSpec) -> Result<(f64, Vec<f64>)> {
    if a.coords[0] >= 1.0 {
        let av = section_volume(a, 0.0, spec)?;
        let mut d = vec![av; a.n()];
        d[0] = 0.0;
        return Ok((av, d));
    }
    let fam = product_family(a.field.kernel(), &a.coords, spec)?;
    let av = fam.a.checked()?;
    let mut d = Vec::with_capacity(a.n());
    for r in fam.d {
        d.push(r.checked()?);
    }
    Ok((av, d))
}

/// Perimeter of the central section, `n >= 3`.
pub fn perimeter(a: &Direction, spec: &QuadratureSpec) -> Result<f64> {
    require_perimeter(a)?;
    let (_, d) = section_family(a, spec)?;
    Ok(perimeter_from_family(a, &d))
}

fn require_perimeter(a: &Direction) -> Result<()> {
    if a.n() < 3 {
        return Err(Error::InvalidArgument("perimeter needs n >= 3".into()));
    }
    Ok(())
}

fn require_real(a: &Direction, n: usize) -> Result<()> {
    if a.field != Field::Real || a.n() != n {
        return Err(Error::InvalidArgument(format!("closed form needs a real direction with n = {n}")));
    }
    Ok(())
}

/// Perimeter for `n = 3` from the rectangle (`a_1 >= a_2 + a_3`) and hexagon
/// cases.
pub fn perimeter_n3_closed(a: &Direction) -> Result<f64> {
    require_real(a, 3)?;
    let (a1, a2, a3) = (a.coords[0], a.coords[1], a.coords[2]);
    let r = |x: f64| (1.0 - x * x).max(0.0).sqrt();
    let half = if a1 >= a2 + a3 {
        (r(a2) + r(a3)) / a1
    } else {
        hexagon(a1, a2, a3)
    };
    Ok(2.0 * half)
}

fn hexagon(a1: f64, a2: f64, a3: f64) -> f64 {
    let r = |x: f64| (1.0 - x * x).max(0.0).sqrt();
    r(a1) * (a2 + a3 - a1) / (2.0 * a2 * a3)
        + r(a2) * (a1 + a3 - a2) / (2.0 * a1 * a3)
        + r(a3) * (a1 + a2 - a3) / (2.0 * a1 * a2)
}

/// Perimeter for `n = 4` in the three regimes `a_1 < a_2 + a_3 - a_4`,
/// `a_2 + a_3 - a_4 <= a_1 <= a_2 + a_3 + a_4` and `a_1 > a_2 + a_3 + a_4`.
pub fn perimeter_n4_closed(a: &Direction) -> Result<f64> {
    require_real(a, 4)?;
    let (a1, a2, a3, a4) = (a.coords[0], a.coords[1], a.coords[2], a.coords[3]);
    let r = |x: f64| (1.0 - x * x).max(0.0).sqrt();
    let outer = (r(a2) + r(a3) + r(a4)) / a1;
    let half = if a1 < a2 + a3 - a4 {
        let g = a2 + a3 - a1;
        hexagon(a1, a2, a3) + r(a4) * (1.0 / a1 - (g * g + a4 * a4) / (4.0 * a1 * a2 * a3))
    } else if a1 > a2 + a3 + a4 || a4 == 0.0 {
        outer
    } else {
        let g = a2 + a3 + a4 - a1;
        -g * g / (8.0 * a1 * a2 * a3 * a4) * (-a1 * r(a1) + a2 * r(a2) + a3 * r(a3) + a4 * r(a4)) + outer
    };
    Ok(2.0 * half)
}

/// `sqrt(2) prod f(a_k^-2)^(a_k^2)` (real) or `2 prod f~(a_k^-2)^(a_k^2)`
/// (complex), an upper bound for `A(a)` when `a_1 <= 1/sqrt(2)`.
pub fn holder_bound(a: &Direction, spec: &QuadratureSpec) -> Result<f64> {
    if a.coords[0] > FRAC_1_SQRT_2 + 1e-12 {
        return Err(Error::InvalidArgument("the Holder bound needs a_1 <= 1/sqrt(2)".into()));
    }
    let mut log = 0.0;
    for &c in a.coords.iter().filter(|&&c| c > 0.0) {
        let p = 1.0 / (c * c);
        let f = match a.field {
            Field::Real => ball_f(p, spec)?,
            Field::Complex => ball_f_complex(p, spec)?,
        };
        log += c * c * f.ln();
    }
    Ok(match a.field {
        Field::Real => SQRT_2 * log.exp(),
        Field::Complex => 2.0 * log.exp(),
    })
}

/// `1/a_1` (real) or `1/a_1^2` (complex), an upper bound for `A(a)` when
/// `a_1 > 1/sqrt(2)`.
pub fn projection_bound(a: &Direction) -> Result<f64> {
    let a1 = a.coords[0];
    if a1 <= FRAC_1_SQRT_2 {
        return Err(Error::InvalidArgument("the projection bound needs a_1 > 1/sqrt(2)".into()));
    }
    Ok(match a.field {
        Field::Real => 1.0 / a1,
        Field::Complex => 1.0 / (a1 * a1),
    })
}

/// `(2/(1+t^2))^(l/2)`, a bound for `A(a, t)` uniform in `a`.
pub fn offset_section_bound(t: f64, l: u32) -> f64 {
    (2.0 / (1.0 + t * t)).powf(0.5 * l as f64)
}

/// `A`, all `D_k`, `P` and the applicable bound for one direction.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SectionProfile {
    pub field: Field,
    pub l: u32,
    pub coords: Vec<f64>,
    pub a: f64,
    pub d: Vec<f64>,
    /// `None` for `n = 2`.
    pub p: Option<f64>,
    /// Set when `a_1 <= 1/sqrt(2)`.
    pub holder_bound: Option<f64>,
    /// Set when `a_1 > 1/sqrt(2)`.
    pub projection_bound: Option<f64>,
}

impl SectionProfile {
    pub fn compute(a: &Direction, spec: &QuadratureSpec) -> Result<SectionProfile> {
        let (av, d) = section_family(a, spec)?;
        let p = if a.n() >= 3 { Some(perimeter_from_family(a, &d)) } else { None };
        let (holder, projection) = if a.coords[0] <= FRAC_1_SQRT_2 {
            (Some(holder_bound(a, spec)?), None)
        } else {
            (None, Some(projection_bound(a)?))
        };
        Ok(SectionProfile {
            field: a.field,
            l: a.field.l(),
            coords: a.coords.clone(),
            a: av,
            d,
            p,
            holder_bound: holder,
            projection_bound: projection,
        })
    }

    /// `|sum D_k - (n-1) A|`.
    pub fn sum_identity_gap(&self) -> f64 {
        (self.d.iter().sum::<f64>() - (self.d.len() as f64 - 1.0) * self.a).abs()
    }
}

/// Perimeter at `a_max`: `2((n-2)sqrt(2)+1)` or `2pi(2(n-2)+1)`.
pub fn perimeter_a_max(n: usize, field: Field) -> f64 {
    let m = n as f64 - 2.0;
    match field {
        Field::Real => 2.0 * (m * SQRT_2 + 1.0),
        Field::Complex => 2.0 * PI * (2.0 * m + 1.0),
    }
}

/// Perimeter at `a_min`: `2 pi^(l-1) (n-1)`.
pub fn perimeter_a_min(n: usize, field: Field) -> f64 {
    let m = n as f64 - 1.0;
    match field {
        Field::Real => 2.0 * m,
        Field::Complex => 2.0 * PI * m,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        let d = Direction::canonicalize(&[0.0, -1.0], Field::Real).unwrap();
        assert_eq!(d.coords(), &[1.0, 0.0]);
        let d = Direction::canonicalize(&[3.0, 4.0, 0.0], Field::Real).unwrap();
        assert!((d.coords()[0] - 0.8).abs() < 1e-15 && (d.coords()[1] - 0.6).abs() < 1e-15);
        assert!(Direction::canonicalize(&[0.0, 0.0], Field::Real).is_err());
    }

    #[test]
    fn n4_branches_meet() {
        // a_1 = a_2 + a_3 - a_4 on the boundary between the first two cases
        let raw = [0.6, 0.5, 0.4, 0.3];
        let d = Direction::canonicalize(&raw, Field::Real).unwrap();
        let c = d.coords();
        let (a1, a2, a3, a4) = (c[0], c[1], c[2], c[3]);
        assert!((a2 + a3 - a4 - a1).abs() < 1e-12);
        let r = |x: f64| (1.0 - x * x).sqrt();
        let g = a2 + a3 - a1;
        let first = hexagon(a1, a2, a3) + r(a4) * (1.0 / a1 - (g * g + a4 * a4) / (4.0 * a1 * a2 * a3));
        let g = a2 + a3 + a4 - a1;
        let outer = (r(a2) + r(a3) + r(a4)) / a1;
        let second = -g * g / (8.0 * a1 * a2 * a3 * a4) * (-a1 * r(a1) + a2 * r(a2) + a3 * r(a3) + a4 * r(a4)) + outer;
        assert!((first - second).abs() < 1e-12, "{first} vs {second}");
        let h = perimeter_n4_closed(&d).unwrap() / 2.0;
        assert!((first - h).abs() < 1e-12);
    }
}
