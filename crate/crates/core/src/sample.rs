//! Seeded random directions.

use crate::sections::{Direction, Field};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

/// Uniform direction on the sphere of `R^n` (real) or `C^n` (complex),
/// canonicalised.
///
/// # Panics
/// If `n < 2`.
pub fn random_direction(rng: &mut ChaCha8Rng, n: usize, field: Field) -> Direction {
    assert!(n >= 2, "directions need at least two coordinates");
    loop {
        let raw: Vec<f64> = (0..n)
            .map(|_| match field {
                Field::Real => StandardNormal.sample(rng),
                Field::Complex => {
                    let x: f64 = StandardNormal.sample(rng);
                    let y: f64 = StandardNormal.sample(rng);
                    x.hypot(y)
                }
            })
            .collect();
        if let Ok(d) = Direction::canonicalize(&raw, field) {
            return d;
        }
    }
}

/// `count` directions from the stream `(seed, n)`.
pub fn random_directions(seed: u64, n: usize, field: Field, count: usize) -> Vec<Direction> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(n as u64 + if field == Field::Complex { 1 << 32 } else { 0 });
    (0..count).map(|_| random_direction(&mut rng, n, field)).collect()
}

/// Direction with `a_1` uniform in `lead` and the remaining coordinates a
/// uniform direction scaled to the rest of the norm, conditioned on staying
/// below `a_1`.
///
/// # Panics
/// If `n < 3`.
pub fn random_with_leading(rng: &mut ChaCha8Rng, n: usize, lead: (f64, f64)) -> Direction {
    loop {
        let a1 = lead.0 + (lead.1 - lead.0) * rng.random::<f64>();
        let rest = random_direction(rng, n - 1, Field::Real);
        let scale = (1.0 - a1 * a1).sqrt();
        if rest.coords()[0] * scale > a1 {
            continue;
        }
        let mut raw = vec![a1];
        raw.extend(rest.coords().iter().map(|c| c * scale));
        if let Ok(d) = Direction::canonicalize(&raw, Field::Real) {
            return d;
        }
    }
}
