use std::process::{Command, Output};

fn minifold(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_minifold"))
        .args(args)
        .env_remove("MINIFOLD_ATLAS_DATA")
        .output()
        .expect("binary runs")
}

fn machine(args: &[&str]) -> (i32, Vec<(String, String)>) {
    let mut full = vec!["--format", "machine"];
    full.extend_from_slice(args);
    let out = minifold(&full);
    let text = String::from_utf8(out.stdout).unwrap();
    let pairs = text
        .lines()
        .map(|l| {
            let (k, v) = l.split_once('=').expect("key=value line");
            (k.to_string(), v.to_string())
        })
        .collect();
    (out.status.code().unwrap(), pairs)
}

fn get<'a>(pairs: &'a [(String, String)], key: &str) -> &'a str {
    pairs
        .iter()
        .find(|(k, _)| k == key)
        .map(|(_, v)| v.as_str())
        .unwrap_or_else(|| panic!("missing key {key}"))
}

#[test]
fn reproduce_wilson() {
    let (code, r) = machine(&["reproduce", "wilson"]);
    assert_eq!(code, 0);
    assert_eq!(get(&r, "result.candidates"), "12");
    assert_eq!(get(&r, "result.serre_order"), "8");
    assert_eq!(get(&r, "result.outcome"), "exhausted");
    assert_eq!(get(&r, "verdict"), "PASS");
}

#[test]
fn reproduce_keum_both_branches() {
    let (code, r) = machine(&["reproduce", "keum"]);
    assert_eq!(code, 0);
    assert_eq!(get(&r, "result.trace.k4"), "bbar");
    assert_eq!(get(&r, "result.twist_exponents"), "6,5,3");
    assert_eq!(get(&r, "check.h0_O2_vanishes"), "PASS");
    let (code, r) = machine(&["reproduce", "keum", "--branch", "conjugate"]);
    assert_eq!(code, 0);
    assert_eq!(get(&r, "result.trace.k4"), "b");
    assert_eq!(get(&r, "result.canonical_exponents"), "3,6,5");
}

#[test]
fn reproduce_equivariant() {
    let (code, r) = machine(&["reproduce", "equivariant"]);
    assert_eq!(code, 0);
    let identities = r.iter().filter(|(k, v)| k.starts_with("check.identity.") && v == "PASS");
    assert_eq!(identities.count(), 4);
}

#[test]
fn gram_examples() {
    let (code, r) = machine(&["gram", "--profile", "wilson", "--mod", "2"]);
    assert_eq!(code, 0);
    assert_eq!(get(&r, "result.matrix"), "1 1 0 0 0|1 1 1 0 0|1 1 1 1 0|0 1 1 1 1|0 0 1 1 1");
    let (code, r) = machine(&["gram", "--poly", "1", "--twists", "0"]);
    assert_eq!(code, 0);
    assert_eq!(get(&r, "result.matrix"), "1");
    let (code, r) = machine(&["gram", "--profile", "fake-pn:3", "--twists", "0,-1,-2,-3"]);
    assert_eq!(code, 0);
    assert_eq!(get(&r, "result.numerically_exceptional"), "true");
}

#[test]
fn gram_from_factored_literal() {
    let (code, r) = machine(&["gram", "--poly", "1/2*(k+1)(k+2)"]);
    assert_eq!(code, 0);
    assert_eq!(get(&r, "result.matrix"), "1 3 6|0 1 3|0 0 1");
    assert_eq!(get(&r, "result.determinant"), "1");
}

#[test]
fn malformed_polynomial_is_an_error() {
    let out = minifold(&["gram", "--poly", "1/2,1/3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));
}

#[test]
fn sonb_positive_control_and_parallel_determinism() {
    let (code, seq) = machine(&["sonb", "--profile", "pn:3", "--mod", "5", "--expect", "found"]);
    assert_eq!(code, 0);
    assert_eq!(get(&seq, "result.basis"), "(1,0,0,0) (0,1,0,0) (0,0,1,0) (0,0,0,1)");
    let (_, par) = machine(&["sonb", "--profile", "pn:3", "--mod", "5", "--parallel"]);
    assert_eq!(get(&seq, "result.basis"), get(&par, "result.basis"));
    let (code, _) = machine(&["sonb", "--profile", "wilson", "--mod", "2", "--expect", "found"]);
    assert_eq!(code, 1);
}

#[test]
fn output_is_deterministic() {
    let a = minifold(&["--format", "machine", "reproduce", "wilson"]);
    let b = minifold(&["--format", "machine", "reproduce", "wilson"]);
    assert_eq!(a.stdout, b.stdout);
    let a = minifold(&["--seed", "11", "detcheck"]);
    let b = minifold(&["--seed", "11", "detcheck"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn serre_order_of_wilson() {
    let (code, r) = machine(&["serre", "--profile", "wilson", "--mod", "2"]);
    assert_eq!(code, 0);
    assert_eq!(get(&r, "result.order"), "8");
    // 3 divides the degree 225, so the reduced form is degenerate
    let out = minifold(&["serre", "--profile", "wilson", "--mod", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn chartable_and_decompose() {
    let (code, r) = machine(&["chartable"]);
    assert_eq!(code, 0);
    assert_eq!(get(&r, "result.class_sizes"), "1,3,3,7,7");
    assert_eq!(get(&r, "check.matches_printed_table"), "PASS");
    let (code, r) = machine(&["decompose", "--character", "3,3,3,0,0"]);
    assert_eq!(code, 0);
    assert_eq!(get(&r, "result.multiplicity.V1"), "1");
    let (code, r) = machine(&["decompose", "--classify-h0", "bbar"]);
    assert_eq!(code, 0);
    assert_eq!(get(&r, "result.classification"), "irreducible-3-dim (V3bar)");
    let (code, _) = machine(&["decompose", "--classify-h0", "xi"]);
    assert_eq!(code, 1);
    let (code, _) = machine(&["decompose", "--character", "2,b,0,0,0"]);
    assert_eq!(code, 1);
}

#[test]
fn lefschetz_defaults() {
    let (code, r) = machine(&["lefschetz"]);
    assert_eq!(code, 0);
    assert_eq!(get(&r, "result.trace.k0"), "1");
    assert_eq!(get(&r, "result.trace.k4"), "bbar");
}

#[test]
fn atlas_queries() {
    let (code, r) = machine(&["atlas", "--count"]);
    assert_eq!(code, 0);
    assert_eq!((get(&r, "result.records"), get(&r, "result.surfaces")), ("50", "100"));
    let (_, r) = machine(&["atlas", "--aut", "G21"]);
    assert_eq!((get(&r, "result.matched"), get(&r, "result.surfaces")), ("3", "6"));
    let (_, r) = machine(&["atlas", "--aut", "G21", "--three-torsion-free"]);
    assert_eq!(get(&r, "result.three_torsion_free"), "3/3");
    let (_, r) = machine(&["atlas", "--k-phantom"]);
    assert_eq!(get(&r, "result.k_phantom_pairs"), "4");
    let out = minifold(&["atlas", "--aut", "S3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn atlas_data_override() {
    let dir = std::env::temp_dir().join(format!("minifold-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("small.csv");
    let dump = minifold(&["atlas", "--dump"]);
    let full = String::from_utf8(dump.stdout).unwrap();
    let small: String = full.lines().take(3).map(|l| format!("{l}\n")).collect();
    std::fs::write(&path, small).unwrap();
    let (_, r) = machine(&["--data", path.to_str().unwrap(), "atlas", "--count"]);
    assert_eq!(get(&r, "result.records"), "2");
    let out = Command::new(env!("CARGO_BIN_EXE_minifold"))
        .args(["--format", "machine", "atlas", "--count"])
        .env("MINIFOLD_ATLAS_DATA", &path)
        .output()
        .unwrap();
    assert!(String::from_utf8(out.stdout).unwrap().contains("result.records=2"));
    let missing = minifold(&["--data", dir.join("nope.csv").to_str().unwrap(), "atlas"]);
    assert_eq!(missing.status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn text_format_has_verdict() {
    let out = minifold(&["reproduce", "equivariant"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("== reproduce equivariant =="));
    assert!(text.trim_end().ends_with("verdict: PASS"));
}
