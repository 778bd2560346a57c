use cubesect::oscint::*;
use cubesect::Error;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::{FRAC_1_SQRT_2, PI, SQRT_2};

fn spec() -> QuadratureSpec {
    QuadratureSpec::default()
}

#[test]
fn black_box_integrals() {
    let sq = QuadratureSpec { acceleration: Acceleration::PowerLaw, ..spec() };
    let r = integrate_semi_infinite(|x| cubesect::specfun::sinc(x).powi(2), PI, &sq);
    assert!(r.converged && (r.value - PI / 2.0).abs() < 1e-9, "{r:?}");

    let r = integrate_semi_infinite(cubesect::specfun::sinc, PI, &spec());
    assert!(r.converged && (r.value - PI / 2.0).abs() < 1e-9, "{r:?}");

    let g = QuadratureSpec { acceleration: Acceleration::None, ..spec() };
    let r = integrate_semi_infinite(|x| (-x * x).exp(), 1.0, &g);
    assert!(r.converged && (r.value - PI.sqrt() / 2.0).abs() < 1e-10, "{r:?}");
}

#[test]
fn converged_results_respect_tolerance() {
    for w in [vec![1.0], vec![0.8, 0.6], vec![0.5; 4]] {
        let r = integrate_sinc_product_cos(&w, 0.0, None, &spec()).unwrap();
        assert!(r.est_error >= 0.0);
        if r.converged {
            assert!(r.est_error <= spec().tolerance(r.value));
        }
    }
}

#[test]
fn cube_product_values() {
    let amax = [FRAC_1_SQRT_2, FRAC_1_SQRT_2];
    let v = integrate_sinc_product_cos(&amax, 0.0, None, &spec()).unwrap().value;
    assert!((v - SQRT_2).abs() < 1e-10);
    let v = integrate_sinc_product_cos(&[1.0, 0.0, 0.0], 0.0, None, &spec()).unwrap().value;
    assert!((v - 1.0).abs() < 1e-10);
    let v = integrate_sinc_product_cos(&amax, FRAC_1_SQRT_2, Some(0), &spec()).unwrap().value;
    assert!((v - FRAC_1_SQRT_2).abs() < 1e-10);
}

#[test]
fn polydisc_product_values() {
    let amax = [FRAC_1_SQRT_2, FRAC_1_SQRT_2, 0.0];
    let v = integrate_j1c_product_j0(&amax, FRAC_1_SQRT_2, Some(0), &spec()).unwrap().value;
    assert!((v - 1.0).abs() < 1e-9);
    let v = integrate_j1c_product_j0(&amax, 0.0, Some(2), &spec()).unwrap().value;
    assert!((v - 2.0).abs() < 1e-9);
    let v = integrate_j1c_product_j0(&[1.0, 0.0], 0.0, None, &spec()).unwrap().value;
    assert!((v - 1.0).abs() < 1e-9);
}

#[test]
fn divergent_configurations_are_rejected() {
    let e = integrate_sinc_product_cos(&[0.0, 0.0], 0.0, None, &spec()).unwrap_err();
    assert!(matches!(e, Error::Divergent(_)), "{e:?}");
    let e = integrate_j1c_product_j0(&[0.0], 0.0, None, &spec()).unwrap_err();
    assert!(matches!(e, Error::Divergent(_)), "{e:?}");
    let e = integrate_abs_power(&[1.0], 1.0, &spec()).unwrap_err();
    assert!(matches!(e, Error::Divergent(_)), "{e:?}");
    assert!(integrate_abs_power(&[0.8, 0.6], 0.6, &spec()).is_ok());
}

#[test]
fn abs_power_values() {
    let r = integrate_abs_power(&[1.0], 2.0, &spec()).unwrap();
    assert!((r.value - 1.0).abs() < 1e-10);
    // f(p) tends to sqrt(3/pi)
    let p = 400.0;
    let r = integrate_abs_power(&[1.0], p, &spec()).unwrap();
    assert!(((p / 2.0f64).sqrt() * r.value - (3.0 / PI).sqrt()).abs() < 1e-3);
    // |sinc(a s)|^p scales like 1/a
    let r2 = integrate_abs_power(&[0.5], 3.0, &spec()).unwrap();
    let r1 = integrate_abs_power(&[1.0], 3.0, &spec()).unwrap();
    assert!((r2.value - 2.0 * r1.value).abs() < 1e-10);
}

#[test]
fn doubling_the_rule_is_self_consistent() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let base = spec();
    let fine = QuadratureSpec { points_per_period: 128, ..spec() };
    for _ in 0..20 {
        let n = rng.random_range(2..=8);
        let w: Vec<f64> = (0..n).map(|_| rng.random_range(0.05..1.0)).collect();
        let a = integrate_sinc_product_cos(&w, 0.0, None, &base).unwrap();
        let b = integrate_sinc_product_cos(&w, 0.0, None, &fine).unwrap();
        assert!(a.converged && b.converged);
        assert!((a.value - b.value).abs() < 10.0 * base.abs_tol, "{w:?}: {} vs {}", a.value, b.value);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn scale_covariance(w in prop::collection::vec(0.05f64..1.0, 2..7), lambda in 0.2f64..5.0, t in 0.0f64..1.5) {
        let s = spec();
        let base = integrate_sinc_product_cos(&w, t, None, &s).unwrap().value;
        let scaled: Vec<f64> = w.iter().map(|a| a * lambda).collect();
        let v = integrate_sinc_product_cos(&scaled, t * lambda, None, &s).unwrap().value;
        prop_assert!((v - base / lambda).abs() < 1e-9, "{} vs {}", v, base / lambda);
    }

    #[test]
    fn permutation_invariance(w in prop::collection::vec(0.05f64..1.0, 2..6)) {
        let s = spec();
        let a = integrate_j1c_product_j0(&w, 0.0, None, &s).unwrap().value;
        let mut r = w.clone();
        r.reverse();
        let b = integrate_j1c_product_j0(&r, 0.0, None, &s).unwrap().value;
        prop_assert!((a - b).abs() < 1e-9);
    }
}
