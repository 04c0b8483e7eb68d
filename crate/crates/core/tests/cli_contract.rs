use std::process::Command;

mod common;

use common::expr;
use dunkl_core::builders::{Mu, Registry};
use dunkl_core::cli::{parse, run};
use dunkl_core::scalars::rat;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn rendered_ast_reparses(e in expr()) {
        prop_assert_eq!(parse(&e.to_string(), 2).unwrap(), e);
    }

    #[test]
    fn normal_forms_round_trip(e in expr()) {
        for reg in [Registry::parametric(2), Registry::new(2, Mu::Numeric(vec![rat(-1, 3), rat(5, 2)])).unwrap()] {
            let value = e.eval(&reg).unwrap();
            let again = parse(&value.to_string(), 2).unwrap().eval(&reg).unwrap();
            prop_assert_eq!(again, value);
        }
    }
}

fn dunkl(args: &[&str]) -> (String, String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_dunkl")).args(args).output().expect("binary runs");
    (
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
        out.status.code().expect("exit code"),
    )
}

fn code(args: &[&str]) -> i32 {
    let mut full = vec!["dunkl"];
    full.extend_from_slice(args);
    run(full).code
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["nf", "comm(d1, x1)"]), 0);
    assert_eq!(code(&["verify", "sd2", "--parametric"]), 0);
    assert_eq!(code(&["verify", "hahn", "--mu", "1/3,1/2"]), 0);
    assert_eq!(code(&["spectrum", "--dims", "1", "--mu", "-3/4"]), 0);
    assert_eq!(code(&["list-relations"]), 0);
    assert_eq!(code(&["verify", "hahn", "--perturb"]), 1);
    assert_eq!(code(&["verify", "all", "--perturb", "--mu", "0,0"]), 1);
    for bad in [
        &["nf", "x1 +"][..],
        &["nf", "foo"],
        &["nf", "x3"],
        &["nf", "1/d1"],
        &["nf", "x1", "--mu", "a"],
        &["verify", "nope"],
        &["verify", "sd2", "--mu", "1/3"],
        &["verify", "sd2", "--parametric", "--mu", "0,0"],
        &["spectrum", "--dims", "3", "--mu", "0,0,0"],
        &["spectrum", "--dims", "2", "--mu", "0"],
        &["spectrum", "--dims", "2"],
        &["frobnicate"],
        &[],
    ] {
        assert_eq!(code(bad), 2, "{bad:?}");
    }
}

#[test]
fn binary_matches_library_and_is_deterministic() {
    for args in [
        &["verify", "all", "--format", "json"][..],
        &["verify", "hahn", "--perturb"],
        &["spectrum", "--dims", "2", "--mu", "1/3,1/2", "--levels", "4", "--format", "json"],
        &["nf", "comm(K-, K+)", "--format", "json"],
        &["list-relations", "--format", "json"],
    ] {
        let first = dunkl(args);
        let second = dunkl(args);
        assert_eq!(first, second, "{args:?}");
        let mut full = vec!["dunkl"];
        full.extend_from_slice(args);
        let lib = run(full);
        assert_eq!((lib.stdout, lib.stderr, lib.code), first, "{args:?}");
    }
    let (_, err, c) = dunkl(&["nf", "x1 $"]);
    assert_eq!(c, 2);
    assert!(err.contains("at 3"), "{err}");
}

#[test]
fn json_reports_are_key_sorted_with_exact_rationals() {
    let out = run(["dunkl", "spectrum", "--dims", "2", "--mu", "1/3,1/2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    assert_eq!(keys, ["command", "dims", "mu", "mu_mode", "results", "status"]);
    let rows = v["results"][0]["rows"].as_array().unwrap();
    let got: Vec<(u64, &str, u64)> = rows
        .iter()
        .map(|r| (r["level"].as_u64().unwrap(), r["energy"].as_str().unwrap(), r["degeneracy"].as_u64().unwrap()))
        .collect();
    assert_eq!(got, [(0, "11/6", 1), (1, "17/6", 2), (2, "23/6", 3), (3, "29/6", 4)]);
    assert_eq!(v["mu"], serde_json::json!(["1/3", "1/2"]));

    let out = run(["dunkl", "verify", "hahn", "--perturb", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["status"], "fail");
    let ids = v["results"][0]["identities"].as_array().unwrap();
    assert!(ids.iter().any(|i| i["residual_terms"].as_u64().unwrap() > 0));
}

#[test]
fn spectrum_text_examples() {
    let out = run(["dunkl", "spectrum", "--dims", "1", "--mu", "0", "--levels", "2"]);
    let rows: Vec<Vec<&str>> = out
        .stdout
        .lines()
        .skip(2)
        .take(3)
        .map(|l| l.split_whitespace().collect())
        .collect();
    assert_eq!(rows, [["0", "1/2", "1"], ["1", "3/2", "1"], ["2", "5/2", "1"]]);
    assert!(!out.stdout.contains("warning"));
    let out = run(["dunkl", "spectrum", "--dims", "1", "--mu", "-3/4"]);
    assert!(out.stdout.contains("warning"));
}

#[test]
fn nf_examples() {
    let nf = |e: &str, dims: &str| run(["dunkl", "nf", e, "--dims", dims]).stdout;
    assert_eq!(nf("comm(d1,x1)", "1"), "1\n");
    assert_eq!(nf("R1*x1*R1", "1"), "-x1\n");
    // D^2 = d^2 + (2mu/x) d - (mu/x^2)(1 - R)
    assert_eq!(nf("D1^2 - (d1^2 + 2*mu1*x1^-1*d1 - mu1*x1^-2*(1 - R1))", "1"), "0\n");
    assert_eq!(nf("-(D1^2)/2 + x1^2/2 - H1", "1"), "0\n");
}
