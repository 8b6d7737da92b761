use std::path::PathBuf;

use evanescent::baric::{algebra_to_json, spectrum_algebra};
use evanescent::cli::run;
use evanescent::poly::q;
use evanescent::syntax::{from_json, parse};
use evanescent::trainsgen::generate_train_basis;
use serde_json::Value;

struct Output {
    code: i32,
    out: String,
    err: String,
}

fn evanescent(args: &[&str]) -> Output {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("evanescent").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    Output { code, out: String::from_utf8(out).unwrap(), err: String::from_utf8(err).unwrap() }
}

fn jsonl(out: &str) -> Vec<Value> {
    out.lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

fn write_algebra(name: &str, json: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, json).unwrap();
    path
}

#[test]
fn peirce_example_one() {
    let r = evanescent(&["peirce", "((t1 t2) t2)(t3^2) ((t1^2 t3) t1)"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.out, "d_x = 3t^4 + t^2\nd_y = t^4 + t^3\nd_z = 3t^3\n");

    let one = evanescent(&["peirce", "((t1 t2) t2)(t3^2) ((t1^2 t3) t1)", "--var", "y"]);
    assert_eq!(one.out, "d_y = t^4 + t^3\n");
}

#[test]
fn peirce_rejects_non_variable() {
    let r = evanescent(&["peirce", "x^2", "--var", "x^2"]);
    assert_eq!(r.code, 2);
    assert!(r.err.starts_with("error: "));
    assert!(r.out.is_empty());
}

#[test]
fn wnumber_table_entry() {
    let r = evanescent(&["wnumber", "--type", "10,1,1"]);
    assert_eq!((r.code, r.out.as_str()), (0, "23454\n"));
}

#[test]
fn check_backcrossing() {
    let r = evanescent(&["check", "x^2 x^2 - 2 x^3 + x^2"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.out.lines().next(), Some("evanescent identity"));
    assert!(r.out.contains("d_x = 0\n"));
    assert!(r.out.ends_with("f(1) = 0\n"));
}

#[test]
fn check_exit_codes() {
    assert_eq!(evanescent(&["check", "x^2x^2 - 2x^3 + x^2", "--expect-evanescent"]).code, 0);
    let not = evanescent(&["check", "x^2", "--expect-evanescent"]);
    assert_eq!(not.code, 1);
    assert_eq!(not.out.lines().next(), Some("not evanescent"));
    assert_eq!(evanescent(&["check", "x^2"]).code, 0);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["frobnicate"][..],
        &["peirce"],
        &["peirce", "x +"],
        &["wnumber", "--type", "a,b"],
        &["train", "--type", "n,1"],
        &["train", "--type", "n", "--all", "4..x"],
        &["train", "--type", "4,1", "--all", "4"],
        &["train", "--type", "3,3"],
        &["train", "--type", "4,1", "--of", "x^{4}y", "--all", "4"],
        &["verify", "--algebra", "/nonexistent/algebra.json", "--identity", "x^2 - x"],
        &["spectrum", "--eigenvalues", "1/0"],
    ] {
        let r = evanescent(args);
        assert_eq!(r.code, 2, "{args:?}: {}", r.err);
        assert!(!r.err.is_empty(), "{args:?}");
    }
}

#[test]
fn help_exits_zero() {
    let r = evanescent(&["--help"]);
    assert_eq!(r.code, 0);
    assert!(r.out.contains("Usage"));
}

#[test]
fn train_of_and_all() {
    let of = evanescent(&["train", "--type", "n", "--of", "x^2 x^2"]);
    assert_eq!((of.code, of.out.as_str()), (0, "x^2 x^2 - 2 x^3 + x^2\n"));

    let all = evanescent(&["train", "--type", "n", "--all", "4..6"]);
    assert_eq!(all.code, 0);
    assert_eq!(all.out.lines().count(), 1 + 2 + 5);

    let typed = evanescent(&["train", "--type", "4,1"]);
    let by_shape = evanescent(&["train", "--type", "n,1", "--all", "4"]);
    assert_eq!(typed.out, by_shape.out);
    assert_eq!(typed.out.lines().count(), 7);
}

#[test]
fn train_of_checks_type() {
    let r = evanescent(&["train", "--type", "4,1", "--of", "x^2 x^2"]);
    assert_eq!(r.code, 2);
}

#[test]
fn homog_and_enum() {
    let h = evanescent(&["homog", "--type", "6"]);
    assert_eq!(h.out.lines().count(), 2);
    assert_eq!(evanescent(&["homog", "--type", "5"]).out, "");

    let e = evanescent(&["enum", "--type", "2,1"]);
    assert_eq!(e.out, "x^2 y\nx(x y)\n");
}

#[test]
fn jsonl_reparses_to_the_same_polynomials() {
    let r = evanescent(&["--format", "jsonl", "train", "--type", "n,1", "--all", "3..5"]);
    assert_eq!(r.code, 0);
    let parsed: Vec<_> = jsonl(&r.out).iter().map(|v| from_json(v).unwrap()).collect();
    let mut want = Vec::new();
    for t in ["3,1", "4,1", "5,1"] {
        want.extend(generate_train_basis(&t.parse().unwrap()).unwrap().into_iter().map(|id| id.polynomial));
    }
    assert_eq!(parsed, want);

    let text = evanescent(&["train", "--type", "n,1", "--all", "3..5"]);
    let reparsed: Vec<_> = text.out.lines().map(|l| parse(l).unwrap()).collect();
    assert_eq!(reparsed, want);
}

#[test]
fn jsonl_peirce_and_wnumber() {
    let r = evanescent(&["peirce", "x^2 y", "--format", "jsonl"]);
    let lines = jsonl(&r.out);
    assert_eq!(lines[0]["var"], "x");
    assert_eq!(lines[0]["coeffs"], serde_json::json!(["0", "0", "2"]));
    let w = jsonl(&evanescent(&["--format", "jsonl", "wnumber", "--type", "10"]).out);
    assert_eq!(w[0]["w"], "98");
}

#[test]
fn verify_echoes_seed_and_reports() {
    let (a, _) = spectrum_algebra(&[q(0)]);
    let path = write_algebra("spectrum0.json", &algebra_to_json(&a));
    let path = path.to_str().unwrap();

    let pass =
        evanescent(&["verify", "--algebra", path, "--identity", "x^2x^2 - 2x^3 + x^2", "--trials", "5", "--seed", "3"]);
    assert_eq!(pass.code, 0, "{}", pass.err);
    assert_eq!(pass.out, "# seed 3 trials 5\npass (5 trials)\n");

    let fail = evanescent(&["verify", "--algebra", path, "--identity", "x^2 - x"]);
    assert_eq!(fail.code, 1);
    let lines: Vec<&str> = fail.out.lines().collect();
    assert_eq!(lines[0], "# seed 0 trials 64");
    assert!(lines[1].starts_with("fail at trial "));
    assert!(lines.last().unwrap().starts_with("value = ["));

    let json = evanescent(&["--format", "jsonl", "verify", "--algebra", path, "--identity", "x^2 - x"]);
    let lines = jsonl(&json.out);
    assert_eq!(lines[0], serde_json::json!({"seed": 0, "trials": 64}));
    assert_eq!(lines[1]["verdict"], "fail");
}

#[test]
fn verify_mutation_file() {
    let spec = r#"{"dim": 2, "mutation": {"matrix": [["1", "1/2"], ["0", "1/2"]], "weight": ["1", "1"]}}"#;
    let path = write_algebra("mutation2.json", spec);
    let r = evanescent(&["verify", "--algebra", path.to_str().unwrap(), "--identity", "x^2x^2 - 2x^3 + x^2"]);
    assert_eq!(r.code, 0, "{}{}", r.out, r.err);
}

#[test]
fn bad_algebra_file_is_usage_error() {
    let path = write_algebra("bad.json", r#"{"dim": 2}"#);
    let r = evanescent(&["verify", "--algebra", path.to_str().unwrap(), "--identity", "x^2 - x"]);
    assert_eq!(r.code, 2);
}

#[test]
fn spectrum_roots() {
    let r = evanescent(&["spectrum", "--eigenvalues", "0,1/2"]);
    assert_eq!(r.code, 0);
    let lines: Vec<&str> = r.out.lines().collect();
    assert!(lines[0].starts_with("algebra {"));
    assert_eq!(lines[3], "roots 0, 1/2, 1");
    assert_eq!(lines.len(), 4);

    let neg = evanescent(&["--format", "jsonl", "spectrum", "--eigenvalues", "-1"]);
    let v = &jsonl(&neg.out)[0];
    assert_eq!(v["roots"], serde_json::json!(["-1", "1"]));
    assert!(v["unfactored"].is_null());
}

#[test]
fn output_is_deterministic() {
    let (a, _) = spectrum_algebra(&[q(0), q(1)]);
    let path = write_algebra("determinism.json", &algebra_to_json(&a));
    for args in [
        vec!["verify", "--algebra", path.to_str().unwrap(), "--identity", "(x^2 y)y - x y", "--seed", "9"],
        vec!["homog", "--type", "3,1,1"],
        vec!["--format", "jsonl", "train", "--type", "n,2", "--all", "2..3"],
        vec!["spectrum", "--eigenvalues", "1/3,-2"],
    ] {
        let first = evanescent(&args);
        let second = evanescent(&args);
        assert_eq!(first.out, second.out, "{args:?}");
        assert_eq!(first.code, second.code);
    }
}
