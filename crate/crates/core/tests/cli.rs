use std::path::PathBuf;

use serde_json::Value;
use supdense::cli::run;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn invoke(args: &[&str]) -> (i32, String, String) {
    let mut argv = vec!["supdense".to_owned(), "densest".to_owned()];
    argv.extend(args.iter().map(|a| a.to_string()));
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn json(args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.push("--json");
    let (code, out, err) = invoke(&a);
    assert_eq!(code, 0, "stderr: {err}");
    serde_json::from_str(&out).unwrap()
}

/// Report with the timing field zeroed, for byte comparisons.
fn stable(args: &[&str]) -> String {
    let mut a = args.to_vec();
    a.push("--json");
    let (code, out, _) = invoke(&a);
    assert_eq!(code, 0);
    let _: Value = serde_json::from_str(&out).unwrap();
    out.lines()
        .map(|l| match l.find("\"wall_time_ms\": ") {
            Some(i) => format!("{}\"wall_time_ms\": 0", &l[..i]),
            None => l.to_owned(),
        })
        .collect::<Vec<_>>()
        .join("\n")
        + "\n"
}

#[test]
fn triangle_density() {
    let v = json(&[&data("k3.graph")]);
    assert_eq!(v["best_density"]["exact"], "1/1");
    assert_eq!(v["best_density"]["decimal"], "1.000000");
    assert_eq!(v["best_set"]["ids"], serde_json::json!([0, 1, 2]));
    assert_eq!(v["variant"], "densest");
    assert_eq!(v["engine"], "flow");

    let (code, out, _) = invoke(&[&data("k3.graph")]);
    assert_eq!(code, 0);
    assert!(out.contains("best_density: 1/1 (1.000000)"), "{out}");
}

#[test]
fn comatroid_verify_certificate() {
    let v = json(&[
        &data("k3iso.graph"),
        "--matroid",
        &data("card0.json"),
        "--verify",
    ]);
    assert_eq!(v["variant"], "comatroid");
    assert_eq!(v["best_density"]["exact"], "3/4");
    let cert = &v["factor_certificate"];
    assert_eq!(cert["ratio"]["exact"], "1/1");
    assert_eq!(cert["bound"], 2);
    assert_eq!(cert["within_bound"], true);
}

#[test]
fn knapsack_infeasible_exits_2() {
    let (code, _, err) = invoke(&[
        &data("k3iso.graph"),
        "--knapsack",
        &data("w.txt"),
        "--k",
        "999",
    ]);
    assert_eq!(code, 2, "{err}");
    assert!(err.contains("infeasible"));
}

#[test]
fn knapsack_with_trace() {
    let v = json(&[
        &data("k3iso.graph"),
        "--knapsack",
        &data("w.txt"),
        "--k",
        "5",
        "--trace",
        "--verify",
    ]);
    assert_eq!(v["variant"], "knapsack");
    assert_eq!(v["best_density"]["exact"], "3/4");
    assert_eq!(v["factor_certificate"]["bound"], 3);
    let trace = &v["trace"];
    assert_eq!(trace["chain"][0]["prefix"], serde_json::json!([0, 1, 2]));
    assert_eq!(
        trace["augmented"][0]["set"],
        serde_json::json!([0, 1, 2, 3])
    );
}

#[test]
fn closure_and_require_variants() {
    let v = json(&[
        &data("star.graph"),
        "--closure",
        &data("star.arcs"),
        "--verify",
    ]);
    assert_eq!(v["variant"], "closure");
    assert_eq!(v["best_density"]["exact"], "2/3");
    assert_eq!(v["factor_certificate"]["ratio"]["exact"], "1/1");

    let v = json(&[&data("pendant.graph"), "--require", "3", "--verify"]);
    assert_eq!(v["variant"], "subset");
    assert_eq!(v["best_density"]["exact"], "1/1");

    let v = json(&[
        &data("pendant.graph"),
        "--require",
        "3",
        "--matroid",
        &data("part.json"),
        "--verify",
    ]);
    assert_eq!(v["variant"], "combo");
    assert_eq!(v["factor_certificate"]["within_bound"], true);
    let ids = v["best_set"]["ids"].as_array().unwrap();
    assert!(ids.contains(&Value::from(3)));
}

#[test]
fn table_inputs() {
    let v = json(&[&data("and2.tbl"), "--table"]);
    assert_eq!(v["engine"], "brute");
    assert_eq!(v["best_density"]["exact"], "1/2");

    let (code, _, err) = invoke(&[&data("notsuper.tbl"), "--table"]);
    assert_eq!(code, 3);
    assert!(err.contains("not supermodular"), "{err}");

    let (code, _, _) = invoke(&[&data("and2.tbl"), "--table", "--engine", "flow"]);
    assert_eq!(code, 3);
}

#[test]
fn brute_override_warns_and_agrees() {
    let (code, out, err) = invoke(&[&data("k3iso.graph"), "--engine", "brute"]);
    assert_eq!(code, 0);
    assert!(err.contains("warning"));
    assert!(out.contains("engine: brute"));
    assert!(out.contains("best_density: 1/1"));
}

#[test]
fn format_errors_exit_3_with_location() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.graph");
    std::fs::write(&bad, "3 2\n0 1\n1 1\n").unwrap();
    let (code, _, err) = invoke(&[bad.to_str().unwrap()]);
    assert_eq!(code, 3);
    assert!(err.contains("bad.graph:3"), "{err}");

    let (code, _, _) = invoke(&["/nonexistent/file.graph"]);
    assert_eq!(code, 3);
    let (code, _, _) = invoke(&[&data("k3.graph"), "--require", "7"]);
    assert_eq!(code, 3);
    let (code, _, _) = invoke(&[&data("k3.graph"), "--matroid", &data("part.json")]);
    assert_eq!(code, 3);
    let (code, _, _) = invoke(&[
        &data("k3.graph"),
        "--closure",
        &data("star.arcs"),
        "--require",
        "0",
    ]);
    assert_eq!(code, 3);
}

#[test]
fn verify_over_cap_exits_4() {
    let dir = tempfile::tempdir().unwrap();
    let big = dir.path().join("big.graph");
    std::fs::write(&big, "21 1\n0 1\n").unwrap();
    let (code, _, err) = invoke(&[big.to_str().unwrap(), "--verify"]);
    assert_eq!(code, 4, "{err}");
    let (code, _, _) = invoke(&[big.to_str().unwrap()]);
    assert_eq!(code, 0);
}

#[test]
fn labels_are_reported() {
    let v = json(&[&data("k3.graph"), "--labels", &data("k3.labels")]);
    assert_eq!(v["best_set"]["labels"], serde_json::json!(["a", "b", "c"]));
    let (code, _, _) = invoke(&[&data("k3iso.graph"), "--labels", &data("k3.labels")]);
    assert_eq!(code, 3);
}

#[test]
fn json_is_stable_across_runs() {
    let args = [
        data("k3iso.graph"),
        "--matroid".into(),
        data("card0.json"),
        "--trace".into(),
        "--verify".into(),
    ];
    let args: Vec<&str> = args.iter().map(String::as_str).collect();
    assert_eq!(stable(&args), stable(&args));
}

#[test]
fn json_matches_golden_report() {
    let args = [
        data("k3iso.graph"),
        "--matroid".into(),
        data("card0.json"),
        "--trace".into(),
        "--verify".into(),
    ];
    let args: Vec<&str> = args.iter().map(String::as_str).collect();
    let golden = std::fs::read_to_string(data("k3iso_card0.golden.json")).unwrap();
    assert_eq!(stable(&args), golden);
}
