use cubesect::ballfn::*;
use cubesect::oscint::QuadratureSpec;
use std::f64::consts::SQRT_2;

fn spec() -> QuadratureSpec {
    QuadratureSpec::default()
}

// high-precision reference values (independent arbitrary-precision quadrature)
const REAL: [(f64, f64); 8] = [
    (1.5, 1.21997338839117),
    (2.25, 0.969069895485819),
    (3.0, 0.942220084609029),
    (4.0, 0.9428090415820634),
    (10.0, 0.9624433901170972),
    (40.0, 0.9735335498757861),
    (50.0, 0.9742689397879288),
    (100.0, 0.975738090391019),
];
const COMPLEX: [(f64, f64); 2] = [(3.0, 0.90597864495689), (4.0, 0.91924070781506377)];

#[test]
fn real_reference_values() {
    assert!((ball_f(2.0, &spec()).unwrap() - 1.0).abs() < 1e-12);
    for (p, v) in REAL {
        let f = ball_f(p, &spec()).unwrap();
        assert!((f - v).abs() < 1e-10, "f({p}) = {f}, expected {v}");
    }
}

#[test]
fn complex_reference_values() {
    assert!((ball_f_complex(2.0, &spec()).unwrap() - 1.0).abs() < 1e-12);
    for (p, v) in COMPLEX {
        let f = ball_f_complex(p, &spec()).unwrap();
        assert!((f - v).abs() < 1e-10, "f~({p}) = {f}, expected {v}");
    }
}

#[test]
fn domain_errors() {
    assert!(ball_f(1.0, &spec()).is_err());
    assert!(ball_f(f64::NAN, &spec()).is_err());
    assert!(ball_f_complex(4.0 / 3.0, &spec()).is_err());
    assert!(ball_f_complex(1.2, &spec()).is_err());
}

#[test]
fn large_exponents_follow_the_expansion() {
    for p in [1e3, 1e4, 1e5] {
        let f = ball_f(p, &spec()).unwrap();
        assert!((f - kos_asymptotic(p)).abs() < 1e-9, "p={p}");
        let g = ball_f_complex(p, &spec()).unwrap();
        assert!((g - (1.0 - 1.0 / (3.0 * p))).abs() < 1e-6, "p={p}: {g}");
    }
    assert!((sqrt_3_over_pi() - 0.977205023805840).abs() < 1e-14);
}

#[test]
fn ball_inequality_on_a_grid() {
    let mut prev = f64::INFINITY;
    for i in 0..=60 {
        let p = 2.0 + 0.05 * i as f64;
        let f = ball_f(p, &spec()).unwrap();
        assert!(f <= 1.0 + 1e-12);
        if p >= 2.25 {
            assert!(f < sqrt_3_over_pi(), "p={p}");
        }
        let g = ball_f_complex(p, &spec()).unwrap();
        assert!(g <= 1.0 + 1e-12, "p={p}");
        if p < 3.3 {
            assert!(f < prev);
        }
        prev = f;
    }
}

#[test]
fn special_points_lie_in_their_intervals() {
    let s = find_special_points(&spec()).unwrap();
    assert!(2.165 < s.p1 && s.p1 < 2.166, "{s:?}");
    assert!(3.36 < s.p2 && s.p2 < 3.37, "{s:?}");
    assert!(4.46 < s.p0 && s.p0 < 4.47, "{s:?}");
    assert!((s.p0 - s.p0_witness).abs() < 1e-3, "{s:?}");
    assert!(s.f_p2 < sqrt_3_over_pi());
}

#[test]
fn bound_at_nine_quarters() {
    let b = bound_at_9_4();
    assert!(b.i[0] <= 0.91340 && b.i[0] > 0.9133, "{b:?}");
    assert!(b.i[1] <= 0.03414 && b.i[1] > 0.0341, "{b:?}");
    assert!(b.total <= 0.977 && b.total < sqrt_3_over_pi(), "{b:?}");
    assert!(ball_f(2.25, &spec()).unwrap() <= b.total);
}

#[test]
fn bound_at_sqrt2_plus_half() {
    let b = bound_at_sqrt2_half();
    assert!((b.p0 - (SQRT_2 + 0.5)).abs() < 1e-15);
    assert!(b.i01 <= 0.76509 && b.i01 > 0.765, "{b:?}");
    assert!(b.i02 <= 0.13531, "{b:?}");
    assert!(b.i01 + b.i02 <= 0.90040, "{b:?}");
    assert!(b.i_k.iter().sum::<f64>() <= 0.09383, "{b:?}");
    assert!(b.tail <= 0.02567, "{b:?}");
    assert!(b.sin_mass <= 1.6);
    assert!(b.total <= 1.0199 + 1e-4 && b.total < 1.02, "{b:?}");
    assert!(ball_f(b.p0, &spec()).unwrap() <= b.total);
}

#[test]
fn crossing_points() {
    for (p, x, y) in [(SQRT_2 + 0.5, 1.8205, 0.5323), (2.0, 1.7863, 0.5469), (2.25, 1.6965, 0.5848)] {
        let (xp, yp) = crossing_point(p);
        assert!((xp - x).abs() < 6e-5, "p={p}: {xp}");
        assert!((yp - y).abs() < 6e-5, "p={p}: {yp}");
    }
}

#[test]
fn convex_between_the_bound_points() {
    let lo = SQRT_2 + 0.5;
    for i in 0..=20 {
        let p = lo + (2.25 - lo) * i as f64 / 20.0;
        let w = convexity_witness(p, &spec()).unwrap();
        assert!(w >= 0.2, "p={p}: {w}");
        assert!(ball_f_second_derivative(p, &spec()).unwrap() > 0.0);
    }
    // second differences agree with the witness
    let h = 1e-3;
    let p = 3.0;
    let fd = (ball_f(p + h, &spec()).unwrap() - 2.0 * ball_f(p, &spec()).unwrap() + ball_f(p - h, &spec()).unwrap()) / (h * h);
    let w = ball_f_second_derivative(p, &spec()).unwrap();
    assert!((fd - w).abs() < 1e-3 * (1.0 + w.abs()), "{fd} vs {w}");
}

#[test]
fn distribution_functions() {
    let y0 = np_crossing(1e-3, 0.5).unwrap();
    assert!((y0 - 0.2108228954).abs() < 1e-8, "{y0}");
    for y in [0.3, 0.5, 0.9] {
        let c = np_compare(y);
        assert!(c.h > c.g, "{c:?}");
    }
    let c = np_compare(0.05);
    assert!(c.g > c.h, "{c:?}");
    assert!(np_crossing(0.3, 0.9).is_err());
    assert!(np_crossing(0.5, 0.1).is_err());
    let (x, y) = arch_max(1);
    assert!((x - 4.493409457909064).abs() < 1e-12);
    assert!((y - 0.21723362821122166).abs() < 1e-12);
}

#[test]
fn bessel_zeros() {
    let z = j1_zeros(3);
    for (a, b) in z.iter().zip([3.831705970207512, 7.015586669815619, 10.17346813506272]) {
        assert!((a - b).abs() < 1e-12);
    }
}

#[test]
fn expansion_error_decays_like_inverse_cube() {
    let mut prev = f64::INFINITY;
    for p in [20.0, 40.0, 80.0] {
        let c = (ball_f(p, &spec()).unwrap() - kos_asymptotic(p)).abs() * p * p * p;
        assert!(c <= 1.0, "p={p}: C={c}");
        assert!(c < 1.5 * prev);
        prev = c;
    }
    assert!((ball_f(100.0, &spec()).unwrap() - kos_asymptotic(100.0)).abs() < 1e-3);
    assert!(kos_asymptotic(10.0) < 1.0);
}

#[test]
fn level_set_measure_by_counting() {
    // |{x in (0, 40) : |sinc x| > y}| on a fine grid; the arches beyond 40 stay below 0.025
    let m = 4_000_000;
    let dx = 40.0 / m as f64;
    for y in [0.9, 0.5, 0.1, 0.05] {
        let count = (0..m).filter(|&i| cubesect::specfun::sinc((i as f64 + 0.5) * dx).abs() > y).count();
        let g = np_compare(y).g;
        assert!((count as f64 * dx - g).abs() < 1e-4, "y={y}: {} vs {g}", count as f64 * dx);
    }
    let y0 = np_crossing(1e-3, 0.5).unwrap();
    for i in 1..100 {
        let y = y0 + (1.0 - y0) * i as f64 / 100.0;
        let c = np_compare(y);
        assert!(c.h >= c.g, "y={y}");
    }
}
