use cubesect::bpcheck::*;
use cubesect::extremal::*;
use cubesect::oscint::QuadratureSpec;
use cubesect::sample::{random_directions, random_with_leading};
use cubesect::sections::*;
use cubesect::verify::{concavity_window, two_weight_spec};
use cubesect::{Direction, Field};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::{FRAC_1_SQRT_2, PI, SQRT_2};

fn spec() -> QuadratureSpec {
    QuadratureSpec::default()
}

#[test]
fn search_finds_the_two_coordinate_direction() {
    let rep = search_max_perimeter(&SearchConfig::new(3, Field::Real), &spec()).unwrap();
    assert!((rep.best_value - 2.0 * (SQRT_2 + 1.0)).abs() < 1e-6, "{rep:?}");
    assert!(rep.best_direction.distance(&Direction::a_max(3, Field::Real)) < 1e-3);
    assert!(rep.margin >= -1e-6);
    assert!(rep.evaluations > 0);

    let rep = search_max_perimeter(&SearchConfig::new(5, Field::Real), &spec()).unwrap();
    assert!(rep.best_value <= 2.0 * (3.0 * SQRT_2 + 1.0) + 1e-6, "{rep:?}");
    assert!(rep.best_direction.distance(&Direction::a_max(5, Field::Real)) < 1e-3);

    let rep = search_max_perimeter(&SearchConfig::new(4, Field::Complex), &spec()).unwrap();
    assert!(rep.best_value <= 2.0 * PI * 5.0 + 1e-6, "{rep:?}");
    assert!((rep.target_value - 10.0 * PI).abs() < 1e-12);
    assert!(rep.best_direction.distance(&Direction::a_max(4, Field::Complex)) < 1e-3);
}

#[test]
fn search_config_is_validated() {
    let mut cfg = SearchConfig::new(9, Field::Real);
    assert!(search_max_perimeter(&cfg, &spec()).is_err());
    cfg.n = 4;
    cfg.grid_resolution = 5;
    assert!(search_max_perimeter(&cfg, &spec()).is_err());
    cfg.grid_resolution = 12;
    cfg.multistarts = 0;
    assert!(cfg.validate().is_err());
}

#[test]
fn nelder_mead_minimises_rosenbrock() {
    let f = |x: &[f64]| (1.0 - x[0]).powi(2) + 100.0 * (x[1] - x[0] * x[0]).powi(2);
    let (x, v) = nelder_mead(f, &[-1.2, 1.0], 0.5, 1e-14, 20_000);
    assert!(v < 1e-10, "{x:?} {v}");
    assert!((x[0] - 1.0).abs() < 1e-4 && (x[1] - 1.0).abs() < 1e-4);
}

#[test]
fn lower_bound_examples() {
    let a = Direction::a_min(4, Field::Real);
    assert!((perimeter(&a, &spec()).unwrap() - 6.0).abs() < 1e-9);
    assert!(check_lower_bound(&a, &spec()).unwrap().passed());
    let a = Direction::a_max(3, Field::Real);
    assert!(check_lower_bound(&a, &spec()).unwrap().passed());
    for a in random_directions(3, 5, Field::Complex, 10) {
        let rep = check_lower_bound(&a, &spec()).unwrap();
        assert!(rep.passed(), "{rep:?}");
        assert!(perimeter(&a, &spec()).unwrap() >= 6.0 * PI - 1e-6);
    }
}

#[test]
fn two_weight_integral_examples() {
    let tw = two_weight_spec();
    let corner = two_weight_check(0.7149, 0.5803, &tw).unwrap();
    assert!(corner <= TWO_WEIGHT_BOUND, "{corner}");
    let low = two_weight_check(0.7095, 1.0 / 10f64.sqrt(), &tw).unwrap();
    assert!(low < corner);
    let mid = two_weight_check(0.71, 0.45, &tw).unwrap() / SQRT_2;
    assert!((0.92..=0.96).contains(&mid), "{mid}");
    assert!(two_weight_check(0.70, 0.45, &tw).is_err());
    assert!(two_weight_check(0.71, 0.6, &tw).is_err());
    let grid = two_weight_grid(5, &tw);
    assert_eq!(grid.checks.len(), 25);
    assert!(grid.passed());
}

#[test]
fn interpolation_endpoint_and_sweeps() {
    for n in 4..=8 {
        let g = interp::gamma_two(n, FRAC_1_SQRT_2, FRAC_1_SQRT_2) * SQRT_2;
        assert!((g - ((n as f64 - 2.0) * SQRT_2 + 1.0)).abs() < 1e-9, "n={n}");
        let rep = interpolation_sweep(n).unwrap();
        assert!(rep.passed(), "n={n}: {:?}", rep.failures().collect::<Vec<_>>());
    }
    assert!(interpolation_sweep(3).is_err());
}

#[test]
fn crossing_and_windows() {
    let c = one_weight_crossing();
    assert!((c - CROSSING).abs() < 5e-4, "{c}");
    assert!(interp::gamma_one(7, c) <= 5.0 * SQRT_2 + 1.0);
    for (n, lo, hi) in EXCEPTION_WINDOWS {
        let (a, b) = one_weight_window(n).unwrap();
        assert!(a >= lo - 5e-4 && b <= hi + 5e-4, "n={n}: ({a}, {b})");
        assert!((a - lo).abs() < 5e-4 && (b - hi).abs() < 5e-4, "n={n}: ({a}, {b})");
    }
    for n in 7..=8 {
        assert!(one_weight_window(n).is_none());
        assert!(one_weight_excess(n) < 0.0);
    }
    for (n, v) in REFINED_A2 {
        assert!(refined_a2_threshold(n) <= v, "n={n}");
    }
}

#[test]
fn concavity_chain_and_window_gap() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for n in 3..=6 {
        for _ in 0..10 {
            let a = random_with_leading(&mut rng, n, (0.3, FRAC_1_SQRT_2));
            let (area, _) = section_family(&a, &spec()).unwrap();
            let half = 0.5 * perimeter(&a, &spec()).unwrap();
            assert!(half <= concavity_bound(&a, area) + 1e-7, "{:?}", a.coords());
        }
        let (lo, hi) = concavity_window();
        for _ in 0..10 {
            let a = random_with_leading(&mut rng, n, (lo, hi));
            let half = 0.5 * perimeter(&a, &spec()).unwrap();
            let excess = half - ((n as f64 - 2.0) * SQRT_2 + 1.0);
            assert!(excess <= 2.0 * concavity_gap() + 1e-6, "{:?}", a.coords());
        }
    }
    assert!((2.0 * concavity_gap() - 0.121).abs() < 1e-3);
}

#[test]
fn real_bp_table() {
    let t = bp_table(3, 20).unwrap();
    assert_eq!(t.iter().find(|r| r.counterexample).unwrap().n, 14);
    assert!(bp_table(14, 200).unwrap().iter().all(|r| r.counterexample));
    assert!(bp_table(3, 13).unwrap().iter().all(|r| !r.counterexample && r.bp > 1.0));
    let all = bp_table(3, 200).unwrap();
    assert!(all.windows(2).all(|w| w[1].bp < w[0].bp && w[1].bp > 0.0));
    assert!(bp_table(2, 10).is_err() && bp_table(5, 4).is_err() && bp_table(3, 201).is_err());
    let x0 = bp_root(Field::Real).unwrap();
    assert!((x0 - 13.70).abs() < 0.01, "{x0}");
    assert_eq!(first_counterexample(Field::Real), Some(14));
}

#[test]
fn ball_radius_matches_the_section_measure() {
    assert!((ball_radius(3.0) - (SQRT_2 + 1.0) / PI).abs() < 1e-14);
    for n in [3usize, 4, 7, 14, 50, 200] {
        let r = ball_radius(n as f64);
        let m = (n - 2) as f64;
        // area of the (n-2)-sphere of radius r in R^{n-1}
        let area = (ln_sphere_area((n - 2) as f64) + m * r.ln()).exp();
        let want = 2.0 * (m * SQRT_2 + 1.0);
        assert!((area - want).abs() < 1e-10 * want, "n={n}");
        // BP < 1 exactly when 2n exceeds the ball's surface
        assert_eq!(bp_value(n as f64) < 1.0, 2.0 * n as f64 > ball_surface(n as f64), "n={n}");
    }
    // sphere areas against 2 pi^{(d+1)/2} / Gamma((d+1)/2)
    assert!((ln_sphere_area(1.0).exp() - 2.0 * PI).abs() < 1e-13);
    assert!((ln_sphere_area(2.0).exp() - 4.0 * PI).abs() < 1e-13);
}

#[test]
fn complex_bp_threshold() {
    assert!(bp_complex_value(10.0) > 1.0);
    assert!(bp_complex_value(11.0) < 1.0);
    let x = bp_root(Field::Complex).unwrap();
    assert!(x > 10.0 && x < 11.0, "{x}");
    assert_eq!(first_counterexample(Field::Complex), Some(11));
    let t = bp_table_for(Field::Complex, 3, 200).unwrap();
    assert!(t.windows(2).all(|w| w[1].bp < w[0].bp));
}
