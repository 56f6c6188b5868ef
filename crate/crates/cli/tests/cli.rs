use std::process::{Command, Output};

use serde_json::Value;

fn run_env(args: &[&str], env: &[(&str, &str)]) -> (i32, Value, Output) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_tropmat"));
    cmd.args(args).env_remove("TROPMAT_SIZE_BOUND");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("binary runs");
    let code = out.status.code().expect("exit code");
    let json = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (code, json, out)
}

fn run(args: &[&str]) -> (i32, Value) {
    let (code, json, _) = run_env(args, &[]);
    (code, json)
}

#[test]
fn report_schema() {
    let (code, r) = run(&["validate-matroid", "builtin:uniform(2,4)"]);
    assert_eq!(code, 0);
    let keys: Vec<&str> = r.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys, ["stats", "verb", "verdict", "witness"]);
    assert_eq!(r["verb"], "validate-matroid");
    assert_eq!(r["verdict"], true);
    assert_eq!(r["stats"]["bases"], 6);
}

#[test]
fn l1_not_convex_example() {
    let (code, r) = run(&["paper-example", "L1-not-convex"]);
    assert_eq!(code, 0, "{r}");
    assert_eq!(r["witness"]["h1 + h2 Lorentzian"]["got"], false);
    assert_eq!(r["witness"]["invert(g2) Lorentzian"]["got"], false);
    assert_eq!(r["witness"]["h1 Lorentzian"]["got"], true);
}

#[test]
fn vamos_fails_levi() {
    let (code, r) = run(&["levi-check", "builtin:vamos"]);
    assert_eq!(code, 1);
    assert_eq!(r["verdict"], false);
    let w: Vec<Vec<u64>> = serde_json::from_value(r["witness"]["hyperplanes"].clone()).unwrap();
    assert_eq!(w, vec![vec![1, 2, 3, 4], vec![1, 2, 5, 6], vec![3, 4, 5, 6]]);
}

#[test]
fn u34_has_fifteen_subclasses() {
    let (code, r) = run(&["linear-subclasses", "builtin:uniform(3,4)"]);
    assert_eq!(code, 0);
    assert_eq!(r["stats"]["count"], 15);
}

#[test]
fn every_named_example_reproduces() {
    for name in ["u34-quotients", "vamos", "v8-minus", "fano-adjoint", "projective-gap"] {
        let (code, r) = run(&["paper-example", name]);
        assert_eq!(code, 0, "{name}: {r}");
    }
    assert_eq!(run(&["paper-example", "nonsense"]).0, 2);
}

#[test]
fn malformed_json_reports_position() {
    let (code, r, out) = run_env(&["validate-matroid", "{\"n\": 3,\n \"bases\": [[1,2],]}"], &[]);
    assert_eq!(code, 2);
    assert_eq!(r["verdict"], "error");
    let msg = String::from_utf8(out.stderr).unwrap();
    assert!(msg.contains("line 2, column"), "{msg}");
}

#[test]
fn input_errors_exit_two() {
    assert_eq!(run(&["validate-matroid", "/nonexistent/file.json"]).0, 2);
    assert_eq!(run(&["validate-matroid", r#"{"n": 3, "bases": [[1, 4]]}"#]).0, 2);
    assert_eq!(run(&["validate-matroid", "builtin:nonsense"]).0, 2);
    assert_eq!(run(&["lorentzian-check", "builtin:vamos"]).0, 2);
    assert_eq!(run(&["no-such-verb"]).0, 2);
}

#[test]
fn exchange_failure_is_a_verdict() {
    let (code, r) = run(&["validate-matroid", r#"{"n": 4, "bases": [[1, 2], [3, 4]]}"#]);
    assert_eq!(code, 1);
    assert_eq!(r["witness"]["axiom"], "basis exchange");
}

#[test]
fn valuated_validation_and_plucker() {
    let good = r#"{"n": 4, "d": 2, "entries": [
        {"set": [1,2], "value": "1"}, {"set": [1,3], "value": 0}, {"set": [1,4], "value": 0},
        {"set": [2,3], "value": 0}, {"set": [2,4], "value": 0}, {"set": [3,4], "value": "1"}]}"#;
    assert_eq!(run(&["validate-valuated", good]).0, 0);
    assert_eq!(run(&["plucker-check", good]).0, 0);
    // 0 on 12 and 34 and 1 elsewhere: the minimum 0 is attained once.
    let bad = r#"{"n": 4, "d": 2, "entries": [
        {"set": [1,2], "value": 0}, {"set": [1,3], "value": 1}, {"set": [1,4], "value": 1},
        {"set": [2,3], "value": 1}, {"set": [2,4], "value": 1}, {"set": [3,4], "value": 0}]}"#;
    let (code, r) = run(&["validate-valuated", bad]);
    assert_eq!(code, 1);
    assert_eq!(r["witness"]["axiom"], "Plücker");
    let (code, r) = run(&["plucker-check", bad]);
    assert_eq!(code, 1);
    assert!(r["witness"]["I"].is_array());
    assert_eq!(run(&["plucker-check", "builtin:four_point"]).0, 0);
}

#[test]
fn matroid_quotients() {
    assert_eq!(run(&["quotient-check", "builtin:uniform(3,4)", "builtin:u34_quotient(2)"]).0, 0);
    let (code, r) = run(&["quotient-check", "builtin:u34_quotient(2)", "builtin:uniform(3,4)"]);
    assert_eq!(code, 1);
    assert_eq!(r["witness"]["reason"], "rank increases");
    let (code, r) = run(&["quotient-lattice", "builtin:uniform(3,4)", "--dual-of", "builtin:graphic_K(4)"]);
    assert_eq!(code, 0);
    assert_eq!(r["stats"]["size"], 15);
}

#[test]
fn common_quotient_of_v8_minus_pair() {
    let (code, r) = run(&["common-quotient", "builtin:v8_minus_q1", "builtin:v8_minus_q2"]);
    assert_eq!(code, 1);
    assert_eq!(r["stats"]["common_flats"], 7);
    // Two copies of U_{2,4} share U_{1,4}; the witness re-parses as a matroid.
    let (code, r) = run(&["common-quotient", "builtin:uniform(2,4)", "builtin:uniform(2,4)"]);
    assert_eq!(code, 0);
    let q = r["witness"]["quotient"].to_string();
    assert_eq!(run(&["validate-matroid", &q]).0, 0);
}

#[test]
fn lorentzian_verbs() {
    assert_eq!(run(&["lorentzian-check", "builtin:h1"]).0, 0);
    assert_eq!(run(&["lorentzian-check", "builtin:basis(vamos)", "--jobs", "4"]).0, 0);
    let (code, r) = run(&["lorentzian-check", "builtin:g2"]);
    assert_eq!((code, &r["verdict"]), (0, &Value::Bool(true)));
    assert_eq!(run(&["proper-position", "builtin:h2", "builtin:basis(uniform(3,4))"]).0, 0);
    let sq = r#"{"n": 2, "terms": [{"exp": [2, 0], "coeff": "1"}, {"exp": [0, 2], "coeff": "1"}]}"#;
    let (code, r) = run(&["lorentzian-check", sq]);
    assert_eq!(code, 1);
    assert_eq!(r["witness"]["failure"]["kind"], "support");
}

#[test]
fn fq_output_round_trips() {
    let (code, r) = run(&["fq", "builtin:four_point", "--q", "1/2"]);
    assert_eq!(code, 0, "{r}");
    let f = r["witness"]["polynomials"][0]["polynomial"].to_string();
    let (code, again) = run(&["lorentzian-check", &f]);
    assert_eq!(code, 0);
    assert_eq!(again["stats"]["degree"], 2);
}

#[test]
fn segment_of_a_basis_polynomial() {
    let (code, r) = run(&["segment", "builtin:basis(uniform(3,5))", "--var", "5", "--from", "0", "--to", "1"]);
    assert_eq!(code, 0, "{r}");
    assert_eq!(r["witness"]["slices"][0]["proper_position"], true);
    assert_eq!(run(&["segment", "builtin:h1", "--var", "9", "--from", "0", "--to", "1"]).0, 2);
}

#[test]
fn adjoints() {
    let (code, r) = run(&["adjoint-check", "builtin:uniform(3,4)", "builtin:uniform(3,6)"]);
    assert_eq!(code, 1, "{r}");
    let fano = "builtin:fano";
    assert_eq!(run(&["adjoint-check", fano, fano]).0, 0);
}

#[test]
fn cofactor_and_plethysm() {
    let m = r#"{"rows": [[1, 2, 0, 1, 3], [0, 1, 1, 2, -1], [2, 0, 1, 1, 1]]}"#;
    let (code, r) = run(&["cofactor-verify", m]);
    assert_eq!(code, 0, "{r}");
    assert_eq!(r["stats"]["arithmetic"], "i128");
    assert_eq!(run(&["cofactor-verify", "builtin:A1"]).0, 0);
    assert_eq!(run(&["plethysm-check", m]).0, 0);
    let laurent = r#"{"rows": [["1", "t", "t^2 + 1", "2"], ["0", "1", "t^-1", "3*t"], ["1", "1", "1", "t^3"]]}"#;
    let (code, r) = run(&["cofactor-verify", laurent]);
    assert_eq!(code, 0, "{r}");
    assert!(r["stats"]["checked"].is_array());
}

#[test]
fn seeded_runs_are_byte_identical() {
    let args = ["cofactor-verify", "--random", "3", "5", "4", "--seed", "11"];
    let (_, _, a) = run_env(&args, &[]);
    let (_, _, b) = run_env(&args, &[]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn tropicalize_then_interpolate() {
    let a = r#"{"rows": [["1", "t", "t^2 + 1", "2"], ["0", "1", "t^-1", "3*t"], ["1", "1", "1", "t^3"]]}"#;
    let (code, r) = run(&["tropicalize", a]);
    assert_eq!(code, 0, "{r}");
    assert_eq!(r["stats"]["adjoint"], true);
    let (mu, sigma) = (r["witness"]["mu"].to_string(), r["witness"]["sigma"].to_string());
    assert_eq!(run(&["validate-valuated", &mu]).0, 0);
    assert_eq!(run(&["validate-valuated", &sigma]).0, 0);
    assert_eq!(run(&["adjoint-check", &mu, &sigma]).0, 0);
    // Points with an infinite coordinate are rejected.
    let pts = r#"{"points": [["0", "1", "0", "0"], ["inf", "0", "-1", "1"]]}"#;
    assert_eq!(run(&["interpolate", &mu, &sigma, pts]).0, 2);
    // μ is 1 on 124 and 0 elsewhere, so its circuit is (0, 0, 1, 0) and both points lie on Trop μ.
    let pts = r#"{"points": [["0", "1", "0", "0"], ["0", "0", "0", "1"]]}"#;
    let (code, r) = run(&["interpolate", &mu, &sigma, pts]);
    assert_eq!(code, 0, "{r}");
    let theta = r["witness"]["theta"].to_string();
    assert_eq!(run(&["validate-valuated", &theta]).0, 0);
    assert_eq!(run(&["quotient-check", &mu, &theta]).0, 0);
}

#[test]
fn levi_witness_certificate() {
    let (code, r) = run(&["levi-witness", "builtin:vamos", "--hyperplanes", "1234,1256,3456"]);
    assert_eq!(code, 0, "{r}");
    assert_eq!(r["witness"]["points"].as_array().unwrap().len(), 3);
    assert_eq!(r["stats"]["hyperplanes"], 41);
}

#[test]
fn lines_and_flags() {
    let u24 = "builtin:trivial(uniform(2,4))";
    let (code, r) = run(&["lines-intersect", u24, u24]);
    assert_eq!(code, 0, "{r}");
    let p = r["witness"].to_string();
    let (code, r) = run(&["flag-complete", "builtin:trivial(uniform(3,4))", &p]);
    assert_eq!(code, 0, "{r}");
    assert_eq!(r["stats"]["length"], 3);
    let off = r#"{"point": ["0", "1", "1", "1"]}"#;
    assert_eq!(run(&["flag-complete", "builtin:trivial(uniform(3,4))", off]).0, 1);
}

#[test]
fn size_bound_from_environment() {
    let (code, r, _) = run_env(&["linear-subclasses", "builtin:uniform(3,4)"], &[("TROPMAT_SIZE_BOUND", "3")]);
    assert_eq!(code, 2, "{r}");
    let (code, _, _) = run_env(&["linear-subclasses", "builtin:uniform(3,4)"], &[("TROPMAT_SIZE_BOUND", "6")]);
    assert_eq!(code, 0);
}

#[test]
fn text_format() {
    let out = Command::new(env!("CARGO_BIN_EXE_tropmat"))
        .args(["--format", "text", "levi-check", "builtin:vamos"])
        .output()
        .unwrap();
    let s = String::from_utf8(out.stdout).unwrap();
    assert!(s.starts_with("levi-check: false\n"), "{s}");
}
