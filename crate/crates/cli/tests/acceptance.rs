//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Runs without the libtest harness so the lines are always visible:
//! `cargo test -p cubesect-cli --test acceptance`. Pass criterion numbers
//! (`-- 2 5 11`) to run a subset.

use cubesect::ballfn::{
    bound_at_9_4, bound_at_sqrt2_half, ball_f, convexity_witness, find_special_points, kos_asymptotic,
    sqrt_3_over_pi,
};
use cubesect::bpcheck::{bp_root, bp_table, bp_value, first_counterexample};
use cubesect::extremal::{interpolation_sweep, search_max_perimeter, SearchConfig};
use cubesect::oscint::QuadratureSpec;
use cubesect::sections::{perimeter, perimeter_a_max, section_family};
use cubesect::verify::{
    convexity_grid, distribution_comparison, lower_bound, monte_carlo, oracle_equivalence, sum_identity, two_weight,
    SuiteOptions,
};
use cubesect::{Check, Direction, Field, VerificationReport};
use std::f64::consts::{FRAC_1_SQRT_2, PI, SQRT_2};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

struct Criterion {
    id: usize,
    title: &'static str,
    budget: Option<Duration>,
    run: fn() -> cubesect::Result<VerificationReport>,
}

const CRITERIA: [Criterion; 12] = [
    Criterion { id: 1, title: "oracle equivalence", budget: Some(Duration::from_secs(120)), run: oracle },
    Criterion { id: 2, title: "known constants at a_max", budget: None, run: constants },
    Criterion { id: 3, title: "sum identity and facet bound", budget: None, run: sum_and_facets },
    Criterion { id: 4, title: "perimeter maximiser search", budget: Some(Duration::from_secs(600)), run: maximiser },
    Criterion { id: 5, title: "ball function", budget: None, run: ball_function },
    Criterion { id: 6, title: "upper-bound pipelines and convexity", budget: None, run: pipelines },
    Criterion { id: 7, title: "distribution comparison", budget: None, run: distributions },
    Criterion { id: 8, title: "two-weight integral grid", budget: None, run: two_weights },
    Criterion { id: 9, title: "interpolation sweeps", budget: None, run: interpolation },
    Criterion { id: 10, title: "perimeter lower bound", budget: None, run: lower },
    Criterion { id: 11, title: "surface-area counterexamples", budget: None, run: busemann_petty },
    Criterion { id: 12, title: "polydisc Monte Carlo", budget: Some(Duration::from_secs(300)), run: monte },
];

fn main() -> ExitCode {
    let wanted: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    for c in CRITERIA.iter().filter(|c| wanted.is_empty() || wanted.contains(&c.id)) {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(c.run));
        let elapsed = start.elapsed();
        let (ok, detail) = match outcome {
            Ok(Ok(report)) => {
                let over = c.budget.is_some_and(|b| elapsed > b);
                let mut detail = format!("{} checks, worst margin {:.3e}", report.checks.len(), report.worst_margin());
                if let Some(f) = report.failures().next() {
                    detail += &format!("; first failure {} [{}] value {} bound {}", f.name, f.inputs, f.value, f.bound);
                }
                if over {
                    detail += &format!("; over the {} s budget", c.budget.unwrap().as_secs());
                }
                (report.passed() && !report.checks.is_empty() && !over, detail)
            }
            Ok(Err(e)) => (false, format!("error: {e}")),
            Err(_) => (false, "panicked".to_string()),
        };
        if !ok {
            failed += 1;
        }
        println!(
            "{} {:>2} {:<38} {:>7.1} s  {}",
            if ok { "PASS" } else { "FAIL" },
            c.id,
            c.title,
            elapsed.as_secs_f64(),
            detail
        );
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}

fn spec() -> QuadratureSpec {
    QuadratureSpec::default()
}

fn oracle() -> cubesect::Result<VerificationReport> {
    oracle_equivalence(&SuiteOptions::default())
}

fn constants() -> cubesect::Result<VerificationReport> {
    let mut r = VerificationReport::new("constants");
    for n in 3..=8 {
        for field in [Field::Real, Field::Complex] {
            let a = Direction::a_max(n, field);
            let (area, d) = section_family(&a, &spec())?;
            let p = perimeter(&a, &spec())?;
            let m = n as f64 - 2.0;
            let inputs = format!("{field} n={n}");
            let (area_want, area_tol, p_want, p_tol, small, large) = match field {
                Field::Real => (SQRT_2, 1e-9, 2.0 * (m * SQRT_2 + 1.0), 1e-7, FRAC_1_SQRT_2, SQRT_2),
                Field::Complex => (2.0, 1e-8, 2.0 * PI * (2.0 * m + 1.0), 1e-6, 1.0, 2.0),
            };
            r.push(Check::equal("area", inputs.clone(), area, area_want, area_tol));
            r.push(Check::equal("perimeter", inputs.clone(), p, p_want, p_tol));
            r.push(Check::equal("perimeter_formula", inputs.clone(), perimeter_a_max(n, field), p_want, 1e-12));
            for (k, &dk) in d.iter().enumerate() {
                let want = if k < 2 { small } else { large };
                r.push(Check::equal(format!("d{}", k + 1), inputs.clone(), dk, want, 1e-8));
            }
        }
    }
    Ok(r)
}

fn sum_and_facets() -> cubesect::Result<VerificationReport> {
    let opts = SuiteOptions::default();
    let mut r = sum_identity(&opts)?;
    for field in [Field::Real, Field::Complex] {
        for n in 3..=8 {
            for a in cubesect::sample::random_directions(opts.seed, n, field, opts.samples) {
                let (area, d) = section_family(&a, &opts.spec)?;
                let dmax = d.iter().copied().fold(f64::NEG_INFINITY, f64::max);
                r.push(Check::at_most("max_d_at_most_a", format!("{field} n={n}"), dmax, area, 1e-7));
            }
        }
    }
    Ok(r)
}

fn maximiser() -> cubesect::Result<VerificationReport> {
    let mut r = VerificationReport::new("maximiser");
    for field in [Field::Real, Field::Complex] {
        for n in 3..=6 {
            let rep = search_max_perimeter(&SearchConfig::new(n, field), &spec())?;
            let inputs = format!("{field} n={n}");
            r.push(Check::at_least("margin", inputs.clone(), rep.margin, 0.0, 1e-6));
            let dist = rep.best_direction.distance(&Direction::a_max(n, field));
            r.push(Check::at_most("distance_to_a_max", inputs, dist, 0.0, 1e-3));
        }
    }
    Ok(r)
}

fn ball_function() -> cubesect::Result<VerificationReport> {
    let s = spec();
    let f = |p: f64| ball_f(p, &s);
    let mut r = VerificationReport::new("ball_function");
    r.push(Check::equal("f_at_2", "p=2", f(2.0)?, 1.0, 1e-9));
    r.push(Check::at_most("f_at_9_4", "p=9/4", f(2.25)?, 0.977, 0.0));
    r.push(Check::at_most("f_at_sqrt2_half", "p=sqrt2+1/2", f(SQRT_2 + 0.5)?, 1.0199, 0.0));
    for k in 0..=191 {
        let p = 2.25 + 0.25 * k as f64;
        r.push(Check::at_most("f_below_limit", format!("p={p}"), f(p)?, sqrt_3_over_pi(), 1e-9));
    }
    let sp = find_special_points(&s)?;
    for (name, v, lo, hi) in [("p1", sp.p1, 2.165, 2.166), ("p2", sp.p2, 3.36, 3.37), ("p0", sp.p0, 4.46, 4.47)] {
        r.push(Check::at_least(format!("{name}_lower"), format!("{v}"), v, lo, 0.0));
        r.push(Check::at_most(format!("{name}_upper"), format!("{v}"), v, hi, 0.0));
    }
    r.push(Check::equal("kos_expansion", "p=40", kos_asymptotic(40.0), f(40.0)?, 5e-5));
    Ok(r)
}

fn pipelines() -> cubesect::Result<VerificationReport> {
    let mut r = VerificationReport::new("pipelines");
    let b = bound_at_9_4();
    r.push(Check::at_most("i0", "p=9/4", b.i[0], 0.91340, 0.0));
    r.push(Check::at_most("i1", "p=9/4", b.i[1], 0.03414, 0.0));
    r.push(Check::at_most("total_9_4", "p=9/4", b.total, 0.977, 0.0));
    let b = bound_at_sqrt2_half();
    r.push(Check::at_most("total_sqrt2_half", "p=sqrt2+1/2", b.total, 1.0199, 0.0));
    for p in convexity_grid() {
        r.push(Check::at_least("convexity_witness", format!("p={p:.4}"), convexity_witness(p, &spec())?, 0.2, 0.0));
    }
    Ok(r)
}

fn distributions() -> cubesect::Result<VerificationReport> {
    distribution_comparison()
}

fn two_weights() -> cubesect::Result<VerificationReport> {
    let r = two_weight();
    assert_eq!(r.checks.len(), 400);
    Ok(r)
}

fn interpolation() -> cubesect::Result<VerificationReport> {
    let mut r = VerificationReport::new("interpolation");
    for n in 4..=8 {
        r.extend(interpolation_sweep(n)?);
    }
    Ok(r)
}

fn lower() -> cubesect::Result<VerificationReport> {
    lower_bound(&SuiteOptions::default())
}

fn busemann_petty() -> cubesect::Result<VerificationReport> {
    let mut r = VerificationReport::new("busemann_petty");
    let rows = bp_table(3, 200)?;
    for w in rows.windows(2) {
        r.push(Check::holds("decreasing", format!("n={}", w[1].n), w[1].bp < w[0].bp));
    }
    for k in 0..=1970 {
        let x = 3.0 + 0.1 * k as f64;
        let step = bp_value(x + 0.1) - bp_value(x);
        r.push(Check::holds("decreasing_real_argument", format!("x={x:.1}"), step < 0.0));
    }
    r.push(Check::at_least("bp_13", "n=13", bp_value(13.0), 1.0, 0.0));
    r.push(Check::at_most("bp_14", "n=14", bp_value(14.0), 1.0, 0.0));
    r.push(Check::equal("root", "real", bp_root(Field::Real)?, 13.70, 0.01));
    r.push(Check::holds("first_real", "real", first_counterexample(Field::Real) == Some(14)));
    let x = bp_root(Field::Complex)?;
    r.push(Check::at_least("complex_root_above_10", "complex", x, 10.0, 0.0));
    r.push(Check::at_most("complex_root_below_11", "complex", x, 11.0, 0.0));
    r.push(Check::holds("first_complex", "complex", first_counterexample(Field::Complex) == Some(11)));
    Ok(r)
}

fn monte() -> cubesect::Result<VerificationReport> {
    let opts = SuiteOptions { n_max: 5, ..SuiteOptions::default() };
    let r = monte_carlo(&opts, 10)?;
    assert!(r.checks.iter().all(|c| c.inputs.contains("samples=10000000")));
    Ok(r)
}
