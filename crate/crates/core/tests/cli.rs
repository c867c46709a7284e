use std::path::PathBuf;

use ideal_zeta::cli::run;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn invoke(args: &[&str]) -> (i32, String, String) {
    let mut full = vec!["ideal-zeta"];
    full.extend_from_slice(args);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(full, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn table_entry(out: &str, n: u64) -> Option<String> {
    let prefix = format!("a_{n} = ");
    out.lines().find_map(|l| l.strip_prefix(&prefix).map(str::to_string))
}

#[test]
fn delta_subcommand() {
    assert_eq!(
        invoke(&["delta", "--p", "5", "--a", "0", "--c", "1"]),
        (0, "5x^2-x+1\n".into(), String::new())
    );
    assert_eq!(invoke(&["delta", "--p", "2", "--a", "0", "--c", "0"]).1, "1\n");
    assert_eq!(
        invoke(&["delta", "--p", "3", "--a", "0", "--c", "1", "--format", "latex"]).1,
        "3x^{2}-x+1\n"
    );
    assert_eq!(
        invoke(&["delta", "--p", "3", "--a", "0", "--c", "1", "--format", "json"]).1,
        "{\"coeffs\":[1,-1,3]}\n"
    );
    let (code, out, err) = invoke(&["delta", "--p", "2", "--a", "3", "--c", "1"]);
    assert_eq!(code, 1);
    assert!(out.is_empty());
    assert!(err.contains("invalid valuation profile"), "{err}");
    assert_eq!(invoke(&["delta", "--p", "4", "--a", "0", "--c", "1"]).0, 1);
}

#[test]
fn ring_subcommand() {
    let (code, out, _) = invoke(&["ring", "--alpha", "1", "--beta", "3", "--limit", "10", "--check"]);
    assert_eq!(code, 0);
    assert_eq!(table_entry(&out, 2).as_deref(), Some("2"));
    assert!(out.contains("check: a_1..a_10 agree with enumeration"));

    let (code, out, _) = invoke(&["ring", "--alpha", "-3", "--beta", "2", "--limit", "30"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("ring: Z[x]/x(x+3)(x-2)\n"), "{out}");
    assert_eq!(table_entry(&out, 30).as_deref(), Some("8"));

    for bad in [["2", "2"], ["0", "5"], ["5", "0"]] {
        let (code, _, err) = invoke(&["ring", "--alpha", bad[0], "--beta", bad[1]]);
        assert_eq!(code, 1, "{bad:?}");
        assert!(err.contains("pairwise distinct"), "{err}");
    }
}

#[test]
fn ring_output_formats() {
    let (_, csv, _) = invoke(&["ring", "--alpha", "1", "--beta", "3", "--limit", "4", "--output", "csv"]);
    assert_eq!(csv, "n,a_n\n1,1\n2,2\n3,2\n4,5\n");
    let (_, json, _) = invoke(&[
        "ring", "--alpha", "1", "--beta", "3", "--limit", "4", "--output", "json",
    ]);
    assert_eq!(
        json,
        "{\"N\":4,\"coefficients\":[1,2,2,5],\"bad_primes\":[2,3],\"delta\":{\"2\":[1,-1,2],\"3\":[1,-1,3]}}\n"
    );
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["N"], 4);
    assert_eq!(v["bad_primes"], serde_json::json!([2, 3]));
    assert_eq!(v["delta"]["2"], serde_json::json!([1, -1, 2]));
}

#[test]
fn ring_check_runs_to_sixty() {
    let (code, out, err) = invoke(&["ring", "--alpha", "2", "--beta", "-2", "--limit", "100", "--check"]);
    assert_eq!(code, 0, "{err}");
    assert!(out.contains("check: a_1..a_60 agree with enumeration"));
}

#[test]
fn graph_petersen() {
    let (code, out, err) = invoke(&["graph", "--file", &data("petersen.txt"), "--limit", "30"]);
    assert_eq!(code, 0, "{err}");
    assert!(out.contains("eigenvalues: -2 1 3\n"));
    assert!(out.contains("bad primes: 2 3 5\n"));
    for p in [2, 3, 5] {
        assert!(out.contains(&format!("p={p} a=0 c=1 delta={p}x^2-x+1")));
    }
    assert!(out.contains(
        "zeta (latex): (1-2^{-s}+2^{1-2s})\\cdot (1-3^{-s}+3^{1-2s})\\cdot (1-5^{-s}+5^{1-2s})\\cdot \\zeta(s)^3\n"
    ));
    assert_eq!(table_entry(&out, 30).as_deref(), Some("8"));
    // byte-deterministic
    assert_eq!(
        invoke(&["graph", "--file", &data("petersen.txt"), "--limit", "30"]).1,
        out
    );
}

#[test]
fn graph_c4_graph6() {
    for format in ["auto", "graph6"] {
        let (code, out, _) = invoke(&["graph", "--file", &data("c4.g6"), "--format", format, "--limit", "8"]);
        assert_eq!(code, 0);
        assert!(out.contains("bad primes: 2\n"));
        assert!(
            out.contains("p=2 a=1 c=2 delta=16x^8-16x^7+12x^6+2x^4+3x^2-2x+1"),
            "{out}"
        );
        assert_eq!(table_entry(&out, 8).as_deref(), Some("7"));
    }
    let (code, _, err) = invoke(&["graph", "--file", &data("c4.g6"), "--format", "matrix"]);
    assert_eq!(code, 2, "{err}");
}

#[test]
fn graph_json_output() {
    let (code, out, _) = invoke(&["graph", "--file", &data("c4.g6"), "--limit", "4", "--output", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["coefficients"], serde_json::json!([1, 1, 3, 3]));
    assert_eq!(v["spectrum"]["eigenvalues"], serde_json::json!(["-2", "0", "2"]));
    assert_eq!(v["spectrum"]["profiles"]["2"], serde_json::json!([1, 2]));
}

#[test]
fn graph_errors() {
    let (code, _, err) = invoke(&["graph", "--file", &data("k4.txt")]);
    assert_eq!(code, 2);
    assert!(err.contains("degree 2"), "{err}");
    let (code, _, err) = invoke(&["graph", "--file", &data("does-not-exist.txt")]);
    assert_eq!(code, 1);
    assert!(err.contains("cannot read"), "{err}");
}

#[test]
fn oracle_subcommand() {
    assert_eq!(
        invoke(&["oracle", "--alpha", "1", "--beta", "3", "--index", "1"]).1,
        "1\n"
    );
    assert_eq!(
        invoke(&["oracle", "--alpha", "1", "--beta", "3", "--index", "6"]).1,
        "4\n"
    );
    let (code, out, _) = invoke(&["oracle", "--alpha", "2", "--beta", "-2", "--p", "2", "--kmax", "5"]);
    assert_eq!(code, 0);
    assert_eq!(out, "2^0 1\n2^1 1\n2^2 3\n2^3 7\n2^4 15\n2^5 27\n");
    let (_, out, _) = invoke(&[
        "oracle",
        "--alpha",
        "1",
        "--beta",
        "3",
        "--p",
        "2",
        "--kmax",
        "1",
        "--per-type",
    ]);
    assert_eq!(out, "(0,0,0) 1\n(0,0,1) 0\n(0,1,0) 1\n(1,0,0) 1\n");
    assert_eq!(invoke(&["oracle", "--alpha", "1", "--beta", "3"]).0, 1);
    assert_eq!(
        invoke(&["oracle", "--alpha", "1", "--beta", "3", "--p", "2", "--index", "4"]).0,
        1
    );
}

#[test]
fn oracle_budget_exit_code() {
    // too large for the default budget: type (0,0,20) needs 2^40 candidates
    let (code, _, err) = invoke(&["oracle", "--alpha", "1", "--beta", "3", "--p", "2", "--kmax", "20"]);
    assert_eq!(code, 3);
    assert!(err.contains("budget"), "{err}");
}

#[test]
fn verify_subcommand() {
    for suite in ["golden", "regions", "structure"] {
        let (code, out, err) = invoke(&["verify", "--suite", suite]);
        assert_eq!(code, 0, "{err}");
        assert!(out.lines().all(|l| l.starts_with("PASS")), "{out}");
    }
    let (code, out, _) = invoke(&["verify", "--suite", "oracle", "--kmax", "4", "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["checks"].as_array().unwrap().len(), 8);
}

#[test]
fn usage_errors() {
    assert_eq!(invoke(&[]).0, 1);
    assert_eq!(invoke(&["frobnicate"]).0, 1);
    assert_eq!(invoke(&["delta", "--p", "2"]).0, 1);
    let (code, out, _) = invoke(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("Usage"));
}
