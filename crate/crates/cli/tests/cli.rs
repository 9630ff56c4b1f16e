use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("discarr").chain(args.iter().copied());
    let code = discarr_cli::run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let (code, out, err) = run(&full);
    assert_eq!(code, 0, "{err}");
    serde_json::from_str(&out).unwrap()
}

fn fixture_path(name: &str) -> String {
    let p: PathBuf = [
        env!("CARGO_MANIFEST_DIR"),
        "..",
        "..",
        "fixtures",
        &format!("{name}.json"),
    ]
    .iter()
    .collect();
    p.to_string_lossy().into_owned()
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("discarr-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

#[test]
fn chi_on_fixture_file_counts_884() {
    let (code, out, _) = run(&["chi", &fixture_path("example-5-1"), "--disc"]);
    assert_eq!(code, 0);
    assert!(out.contains("cones = 884"), "{out}");
}

#[test]
fn chi_oracle_json() {
    let v = json(&["chi", "example-5-2", "--disc", "--oracle"]);
    assert_eq!(v["cones"], "888");
    assert_eq!(v["oracle"]["deletion_restriction"], "888");
    assert_eq!(v["oracle"]["flats"]["polynomial"], v["chi"]["polynomial"]);
}

#[test]
fn chi_of_primal_normals() {
    // six distinct lines through the origin: 12 sectors
    let (code, out, _) = run(&["chi", "example-5-1"]);
    assert_eq!(code, 0);
    assert!(out.contains("cones = 12"), "{out}");
}

#[test]
fn lattice_p_chi() {
    let (code, out, _) = run(&["lattice", "p", "--n", "6", "--k", "2", "--chi"]);
    assert_eq!(code, 0);
    assert!(out.contains("x^6-20x^5+145x^4-426x^3+300x^2"));
    assert!(out.contains("cones = 892"));
    let v = json(&["lattice", "p", "--n", "5", "--k", "2", "--list"]);
    assert_eq!(v["size"], 32);
    assert_eq!(v["elements"].as_array().unwrap().len(), 32);
}

#[test]
fn lattice_scale_guard_is_a_usage_error() {
    let (code, _, err) = run(&["lattice", "p", "--n", "10", "--k", "2"]);
    assert_eq!(code, 2);
    assert!(err.contains("refusing"), "{err}");
}

#[test]
fn disc_build_rows() {
    let v = json(&["disc", "build", "example-5-1"]);
    assert_eq!(v["subsets"].as_array().unwrap().len(), 20);
    let first: Vec<&str> = v["normals"][0]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_str().unwrap())
        .collect();
    assert_eq!(first, ["-5", "-2", "3", "0", "0", "0"]);
    let last: Vec<&str> = v["normals"][19]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_str().unwrap())
        .collect();
    assert_eq!(last, ["0", "0", "0", "-5", "2", "-3"]);
    let (_, text, _) = run(&["disc", "build", "example-5-1", "--canonical"]);
    assert!(text.starts_with("M_{1,2,3}\t(5, 2, -3, 0, 0, 0)"), "{text}");
}

#[test]
fn very_generic_verdicts() {
    let v = json(&["matroid", "very-generic", "example-5-1"]);
    assert_eq!(v["verdict"], false);
    assert_eq!(v["witness"]["members"].as_array().unwrap().len(), 4);
    let v = json(&["matroid", "very-generic", "prop-6-1"]);
    assert_eq!(v["verdict"], true);
}

#[test]
fn closure_and_sigma_from_files() {
    let f = scratch("pair.json", r#"{"n": 6, "k": 2, "members": [[1,2,3],[2,1,4]]}"#);
    let v = json(&["lattice", "closure", f.to_str().unwrap()]);
    assert_eq!(
        v["members"],
        serde_json::json!([[1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4]])
    );
    let closed = scratch("closed.json", &serde_json::to_string(&v["members"]).unwrap());
    let (code, out, _) = run(&["lattice", "sigma", closed.to_str().unwrap(), "--n", "6"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "{{1,2,3,4}}");
    // not closed
    let (code, _, err) = run(&["lattice", "sigma", f.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("not concurrency closed"));
}

#[test]
fn iso_check_on_very_generic_fixture() {
    let v = json(&["lattice", "iso-check", "prop-6-1"]);
    assert_eq!(v["very_generic"], true);
    assert_eq!(v["bijective"], true);
    assert_eq!(v["order_preserving"], true);
    assert_eq!(v["p_size"], 323);
}

#[test]
fn cone_commands() {
    let v = json(&["cone", "report", "prop-6-1"]);
    let rec = v
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["subset"] == serde_json::json!([1, 2, 5]))
        .unwrap();
    assert_eq!(rec["cell_present"], true);
    assert_eq!(rec["facet"], false);
    let v = json(&["cone", "cells", "prop-6-1"]);
    assert!(v
        .as_array()
        .unwrap()
        .iter()
        .any(|c| c["hyperplanes"] == serde_json::json!([1, 2, 5])));
    let v = json(&["cone", "facets", "prop-6-1"]);
    assert!(v["facets"].as_array().unwrap().len() >= 4);
    // the triangle fixture is not generic
    let (code, _, err) = run(&["cone", "cells", "triangle-altitudes"]);
    assert_eq!(code, 2);
    assert!(err.contains("generic"));
}

#[test]
fn svg_written_to_file() {
    let dir = std::env::temp_dir().join(format!("discarr-svg-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("prop.svg");
    let (code, _, err) = run(&["cone", "svg", "prop-6-1", "-o", out.to_str().unwrap()]);
    assert_eq!(code, 0, "{err}");
    let svg = std::fs::read_to_string(&out).unwrap();
    assert!(svg.contains(r#"version="1.1""#));
    assert_eq!(svg.matches("<line").count(), 6);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["frobnicate"]).0, 2);
    assert_eq!(run(&["chi"]).0, 2);
    let (code, _, err) = run(&["chi", "no-such-fixture"]);
    assert_eq!(code, 2);
    assert!(err.contains("example-5-1"));
    let bad = scratch(
        "bad.json",
        r#"{"m": 2, "hyperplanes": [{"coeffs": ["1", "x"], "constant": 0}]}"#,
    );
    let (code, _, err) = run(&["chi", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("hyperplanes[0].coeffs[1]"), "{err}");
    assert_eq!(run(&["--help"]).0, 0);
}

#[test]
fn verify_paper_is_deterministic() {
    let (code, first, _) = run(&["verify-paper"]);
    assert_eq!(code, 0);
    assert!(first.contains("15/15 checks passed"), "{first}");
    let (_, second, _) = run(&["verify-paper"]);
    assert_eq!(first, second);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_discarr");
    let ok = Command::new(bin)
        .args(["chi", "example-5-1", "--disc"])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("884"));
    let bad = Command::new(bin).arg("nonsense").output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn disc_build_matches_every_printed_row() {
    let v = json(&["disc", "build", "example-5-1"]);
    for (i, (subset, row)) in discarr::verify::PRINTED_DISC_ROWS.iter().enumerate() {
        let members: Vec<usize> = v["subsets"][i]
            .as_array()
            .unwrap()
            .iter()
            .map(|x| x.as_u64().unwrap() as usize)
            .collect();
        assert_eq!(&members[..], &subset[..]);
        let got: Vec<i64> = v["normals"][i]
            .as_array()
            .unwrap()
            .iter()
            .map(|x| x.as_str().unwrap().parse().unwrap())
            .collect();
        assert_eq!(&got[..], &row[..], "row {i}");
    }
}
