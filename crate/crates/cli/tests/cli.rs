use serde_json::Value;
use std::process::{Command, Output};

fn run(args: &[&str], env: &[(&str, &str)]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cubesect")).args(args).env_clear().envs(env.iter().copied()).output().unwrap()
}

fn rows(out: &Output) -> Vec<Value> {
    String::from_utf8(out.stdout.clone()).unwrap().lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

#[test]
fn bp_roots() {
    let out = run(&["bp", "--root"], &[]);
    assert!(out.status.success());
    let r = rows(&out);
    assert_eq!(r.len(), 2);
    assert_eq!(r[0]["field"], "real");
    assert_eq!(r[0]["first_counterexample"], 14);
    assert!((r[0]["root"].as_f64().unwrap() - 13.70).abs() < 0.01);
    assert_eq!(r[1]["first_counterexample"], 11);
}

#[test]
fn bp_table_as_csv() {
    let out = run(&["bp", "--field", "real", "--n-min", "12", "--n-max", "15", "--format", "csv"], &[]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "field,n,radius,bp,counterexample");
    assert_eq!(lines.len(), 5);
    assert!(lines[2].starts_with("real,13,") && lines[2].ends_with(",false"));
    assert!(lines[3].starts_with("real,14,") && lines[3].ends_with(",true"));
}

#[test]
fn section_at_a_max() {
    let out = run(&["section", "--a", "1,-1,0,0", "--mc-samples", "1000"], &[]);
    assert!(out.status.success());
    let r = &rows(&out)[0];
    assert_eq!(r["n"], 4);
    assert!((r["area"].as_f64().unwrap() - 2f64.sqrt()).abs() < 1e-9);
    let p = r["perimeter"].as_f64().unwrap();
    assert!((p - r["perimeter_a_max"].as_f64().unwrap()).abs() < 1e-7);
    assert_eq!(r["d"].as_array().unwrap().len(), 4);
}

#[test]
fn output_is_reproducible() {
    let args = ["verify", "--suite", "prop4", "--n", "3..4", "--samples", "3", "--seed", "5"];
    let a = run(&args, &[]);
    let b = run(&args, &[]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let r = rows(&a);
    assert_eq!(r.len(), 2 * 2 * 3 * 3);
    assert!(r.iter().all(|c| c["passed"] == true && c["suite"] == "prop4"));
    let mc = ["section", "--field", "complex", "--a", "0.8,0.5,0.3", "--mc-samples", "20000", "--seed", "3"];
    assert_eq!(run(&mc, &[]).stdout, run(&mc, &[]).stdout);
}

#[test]
fn ballfn_rows() {
    let out = run(&["ballfn", "--p", "1.2,2,3"], &[]);
    assert!(out.status.success());
    let r = rows(&out);
    assert!(r[0]["f_complex"].is_null());
    assert!((r[1]["f"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert!((r[2]["f"].as_f64().unwrap() - 0.942220084609029).abs() < 1e-10);
    let out = run(&["ballfn", "--range", "2:3:0.5", "--emit", "plot-data"], &[]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("p,f,f_complex,kos,limit\n"));
    assert_eq!(text.lines().count(), 4);
}

#[test]
fn extremal_search() {
    let out = run(&["extremal", "--n", "3", "--grid", "10", "--multistarts", "3"], &[]);
    assert!(out.status.success());
    let r = &rows(&out)[0];
    assert!(r["margin"].as_f64().unwrap() >= -1e-6);
}

#[test]
fn flags_then_environment_then_config() {
    let dir = std::env::temp_dir().join(format!("cubesect-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("run.conf");
    std::fs::write(&cfg, "# bp settings\nfield=complex\nn-min=5\nn-max=6\n").unwrap();
    let c = cfg.to_str().unwrap();

    let r = rows(&run(&["bp", "--config", c], &[]));
    assert_eq!(r.len(), 2);
    assert!(r.iter().all(|v| v["field"] == "complex"));

    let r = rows(&run(&["bp", "--config", c], &[("CUBESECT_FIELD", "real")]));
    assert!(r.iter().all(|v| v["field"] == "real"));

    let r = rows(&run(&["bp", "--config", c, "--field", "both"], &[("CUBESECT_FIELD", "real")]));
    assert_eq!(r.len(), 4);

    let out = dir.join("rows.csv");
    let o = run(&["bp", "--config", c, "--format", "csv", "--output", out.to_str().unwrap()], &[]);
    assert!(o.status.success() && o.stdout.is_empty());
    assert!(std::fs::read_to_string(&out).unwrap().starts_with("field,n,"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn usage_errors_exit_with_2() {
    for args in [
        &["verify", "--suite", "nope"][..],
        &["section", "--a", "0,0,0"],
        &["section", "--a", "1,x"],
        &["bp", "--n-min", "2"],
        &["verify", "--n", "3..9"],
        &["ballfn", "--p", "1.0", "--format", "xml"],
        &["extremal", "--n", "12"],
        &["frobnicate"],
    ] {
        let out = run(args, &[]);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    }
    let out = run(&["bp", "--config", "/nonexistent/cubesect.conf"], &[]);
    assert_eq!(out.status.code(), Some(2));
}
