use std::process::{Command, Output};

use serde_json::Value;

fn lfunk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lfunk"))
        .args(args)
        .env_remove("LFUNK_TOL")
        .output()
        .expect("binary runs")
}

fn lfunk_with_tol(args: &[&str], tol: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lfunk"))
        .args(args)
        .env("LFUNK_TOL", tol)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_str(&stdout(out)).unwrap()
}

fn f(v: &Value) -> f64 {
    v.as_f64().unwrap()
}

#[test]
fn dist_origin_outward() {
    let v = json(&lfunk(&["dist", "--lambda", "1", "--from", "0,0", "--to", "0.5,0"]));
    assert!((f(&v["travel_time"]) - std::f64::consts::LN_2).abs() <= 1e-15);
    assert!((f(&v["exponent_r"]) - 2.0).abs() <= 1e-15);
    assert!(v["t2"].is_number() && v["k"].is_number());
}

#[test]
fn dist_windless() {
    let v = json(&lfunk(&["dist", "--lambda", "0", "--from", "0,0", "--to", "3,4"]));
    assert_eq!(f(&v["travel_time"]), 5.0);
    assert!(v["k"].is_null() && v["t2"].is_null());
}

#[test]
fn dist_reverse_reports_asymmetry() {
    let v = json(&lfunk(&["dist", "--lambda", "1", "--from", "0,0", "--to", "0.5,0", "--reverse"]));
    let back = f(&v["reverse"]["travel_time"]);
    assert!((back - 1.5f64.ln()).abs() <= 1e-15);
    assert!((f(&v["difference"]) - (2f64.ln() - 1.5f64.ln())).abs() <= 1e-15);
}

#[test]
fn dist_outside_domain() {
    let out = lfunk(&["dist", "--lambda", "1", "--from", "0,0", "--to", "1.5,0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    let err = String::from_utf8(out.stderr.clone()).unwrap();
    assert_eq!(err.lines().count(), 1);
    assert!(err.contains("(1.5, 0)") && err.contains("radius is 1"), "{err}");
}

#[test]
fn dist_csv_records() {
    let out = lfunk(&["dist", "--lambda", "0", "--from", "0,0", "--to", "3,4", "--format", "csv"]);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("key,value"));
    assert!(text.contains("\ntravel_time,5.0000000000000000\n"));
    assert!(text.contains("\nk,\n"));
}

#[test]
fn input_errors_exit_2() {
    for args in [
        vec!["dist", "--lambda", "-1", "--from", "0,0", "--to", "0.1,0"],
        vec!["dist", "--lambda", "1", "--from", "0", "--to", "0.1,0"],
        vec!["dist", "--lambda", "nan", "--from", "0,0", "--to", "0.1,0"],
        vec!["circle", "--lambda", "1", "--type", "3", "--center", "0,0", "--radius-time", "1"],
        vec!["circle", "--lambda", "1", "--type", "1", "--center", "0,0", "--radius-time", "-1"],
        vec!["line-dist", "--lambda", "0", "--line", "1,1", "--point", "0,0", "--direction", "to-line"],
        vec!["line-dist", "--lambda", "1", "--line", "0,2", "--point", "0,0", "--direction", "to-line"],
        vec!["verify", "--suite", "pde", "--tol", "-1"],
        vec!["verify", "--suite", "pde", "--lambdas", "0"],
        vec!["nonsense"],
    ] {
        let out = lfunk(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn circle_csv_ln2() {
    let out = lfunk(&[
        "circle", "--lambda", "1", "--type", "1", "--center", "0,0", "--radius-time", "0.6931", "--samples", "64",
        "--format", "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("x,y"));
    let rows: Vec<(f64, f64)> = lines
        .map(|l| {
            let (x, y) = l.split_once(',').unwrap();
            (x.parse().unwrap(), y.parse().unwrap())
        })
        .collect();
    assert_eq!(rows.len(), 64);
    for (x, y) in rows {
        assert!((x.hypot(y) - 0.5).abs() <= 1e-4);
    }
}

#[test]
fn circle_incoming_json() {
    let v = json(&lfunk(&[
        "circle", "--lambda", "0.4", "--type", "2", "--center", "0.2,0.1", "--radius-time", "0.5", "--format", "json",
    ]));
    let e = 0.2f64.exp();
    assert!((f(&v["euclidean_center"][0]) - 0.2 * e).abs() <= 1e-15);
    assert!((f(&v["euclidean_center"][1]) - 0.1 * e).abs() <= 1e-15);
    assert!((f(&v["euclidean_radius"]) - (e - 1.0) / 0.4).abs() <= 1e-14);
    assert_eq!(v["clipped"], Value::Bool(false));
    assert_eq!(v["samples"].as_array().unwrap().len(), 64);
}

#[test]
fn circle_straddling_is_clipped() {
    let v = json(&lfunk(&["circle", "--lambda", "1", "--type", "2", "--center", "0.6,0", "--radius-time", "0.4"]));
    assert_eq!(v["clipped"], Value::Bool(true));
    let n = v["samples"].as_array().unwrap().len();
    assert!(n > 0 && n < 64);
}

#[test]
fn circle_svg_layout() {
    let out = lfunk(&[
        "circle", "--lambda", "2", "--type", "2", "--center", "0.3,0", "--radius-time", "0.2", "--format", "svg",
    ]);
    let svg = stdout(&out);
    assert!(svg.starts_with("<svg"));
    assert!(svg.contains(r#"viewBox="-0.55000000000000004 -0.55000000000000004 1.1000000000000001 1.1000000000000001""#));
    assert!(svg.contains("scale(1,-1)"));
    assert!(svg.contains("#444444") && svg.contains("#1f77b4") && svg.contains("#d62728"));
    assert!(svg.trim_end().ends_with("</svg>"));
}

#[test]
fn line_dist_worked_examples() {
    let v = json(&lfunk(&["line-dist", "--lambda", "0.4", "--line", "1,1", "--point", "1,0.1", "--direction", "to-point"]));
    assert!((f(&v["travel_time"]) - 1.36).abs() <= 0.005);
    assert!((f(&v["realizer"][0]) - 0.45).abs() <= 0.005);
    assert!((f(&v["realizer"][1]) - 1.45).abs() <= 0.005);

    let v = json(&lfunk(&["line-dist", "--lambda", "0.4", "--line", "1,1", "--point", "1,0.1", "--direction", "to-line"]));
    assert!((f(&v["travel_time"]) - 1.4).abs() <= 0.05);
    assert!((f(&v["realizer"][0]) + 0.19).abs() <= 0.005);
    assert!((f(&v["realizer"][1]) - 0.81).abs() <= 0.005);
}

#[test]
fn line_dist_point_on_line() {
    for direction in ["to-point", "to-line"] {
        let v = json(&lfunk(&["line-dist", "--lambda", "0.4", "--line", "1,1", "--point", "-0.5,0.5", "--direction", direction]));
        assert!(f(&v["travel_time"]).abs() <= 1e-12);
    }
}

#[test]
fn line_dist_vertical_and_unattained() {
    let v = json(&lfunk(&[
        "line-dist", "--lambda", "1", "--line", "angle:1.5707963267948966,0.25", "--point", "-0.5,0.1", "--direction",
        "to-line",
    ]));
    assert!((f(&v["realizer"][0]) - 0.25).abs() <= 1e-12);

    let out = lfunk(&["line-dist", "--lambda", "1", "--line", "0,0.9", "--point", "0.95,-0.2", "--direction", "to-point"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_exponent_circles() {
    let v = json(&lfunk(&["verify", "--suite", "theorem51", "--trials", "1000", "--seed", "7"]));
    assert_eq!(v["passed"], Value::Bool(true));
    assert_eq!(v["suite"], "theorem51");
    assert_eq!(v["seed"], 7);
    assert!(f(&v["max_residual"]) <= 1e-10);
}

#[test]
fn verify_pde() {
    let v = json(&lfunk(&["verify", "--suite", "pde", "--lambdas", "0.2,0.5,1,2.5"]));
    assert_eq!(v["passed"], Value::Bool(true));
    assert_eq!(v["cases_run"], 1600);
}

#[test]
fn verify_flatness() {
    let v = json(&lfunk(&["verify", "--suite", "flatness", "--trials", "50"]));
    assert_eq!(v["passed"], Value::Bool(true));
    assert_eq!(v["cases_run"], 50);
}

#[test]
fn verify_all_is_jsonl() {
    let out = lfunk(&["verify", "--trials", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let names: Vec<String> = stdout(&out)
        .lines()
        .map(|l| serde_json::from_str::<Value>(l).unwrap()["suite"].as_str().unwrap().to_string())
        .collect();
    assert_eq!(names, ["pde", "flatness", "theorem51", "oracle", "circles"]);
}

#[test]
fn tolerance_override() {
    let args = ["verify", "--suite", "theorem51", "--trials", "50"];
    let out = lfunk_with_tol(&args, "1e-300");
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8(out.stderr.clone()).unwrap();
    assert_eq!(err.lines().count(), 1);
    assert!(err.contains("worst case") && err.contains("\"p\""), "{err}");
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["passed"], Value::Bool(false));

    let out = lfunk_with_tol(&["verify", "--suite", "theorem51", "--trials", "50", "--tol", "1e-10"], "1e-300");
    assert_eq!(out.status.code(), Some(0));

    let out = lfunk_with_tol(&args, "abc");
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn deterministic_output() {
    let runs = [
        vec!["verify", "--suite", "oracle", "--trials", "20", "--seed", "42"],
        vec!["verify", "--suite", "circles", "--trials", "5", "--seed", "42"],
        vec!["circle", "--lambda", "1", "--type", "2", "--center", "0.6,0", "--radius-time", "0.4", "--format", "csv"],
    ];
    for args in runs {
        assert_eq!(lfunk(&args).stdout, lfunk(&args).stdout, "{args:?}");
    }
    let a = lfunk(&["verify", "--suite", "oracle", "--trials", "20", "--seed", "1"]).stdout;
    let b = lfunk(&["verify", "--suite", "oracle", "--trials", "20", "--seed", "2"]).stdout;
    assert_ne!(a, b);
}

#[test]
fn numbers_carry_full_precision() {
    let text = stdout(&lfunk(&["line-dist", "--lambda", "0.4", "--line", "1,1", "--point", "1,0.1", "--direction", "to-line"]));
    let v: Value = serde_json::from_str(&text).unwrap();
    for key in ["travel_time", "exponent_r"] {
        let raw = v[key].to_string();
        let digits = raw.chars().skip_while(|c| *c == '0' || *c == '.' || *c == '-').filter(char::is_ascii_digit).count();
        assert!(digits >= 15, "{key}: {raw}");
    }
}
