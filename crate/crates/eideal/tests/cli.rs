use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "fixtures", name]
        .iter()
        .collect();
    p.display().to_string()
}

fn eideal(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eideal"))
        .args(args)
        .env_remove("EIDEAL_MAX_VERTICES")
        .output()
        .unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

#[test]
fn analyze_fixtures() {
    let out = eideal(&["analyze", &fixture("path4.graph"), "--oracle", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["cm"], true);
    assert_eq!(
        (r["oracle"]["depth"].as_u64(), r["oracle"]["reg"].as_u64()),
        (Some(2), Some(1))
    );
    assert_eq!(r["formula"]["depth"], 2);

    let r = json(&eideal(&["analyze", &fixture("c4.graph"), "--json"]));
    assert_eq!(
        (r["cm"].as_bool(), r["bipartite"].as_bool()),
        (Some(false), Some(true))
    );
    assert!(r["oracle"].is_null() && r["formula"].is_null());

    let r = json(&eideal(&[
        "analyze",
        &fixture("fig4_g2.graph"),
        "--betti",
        "--json",
    ]));
    assert_eq!(
        (r["oracle"]["depth"].as_u64(), r["oracle"]["reg"].as_u64()),
        (Some(3), Some(2))
    );
    assert_eq!(r["oracle"]["betti"][0], serde_json::json!([0, 0, 1]));
    for key in [
        "vertices",
        "edges",
        "bipartite",
        "cm",
        "invariants",
        "formula",
        "oracle",
        "warnings",
    ] {
        assert!(r.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn table_output_is_not_json() {
    let out = eideal(&["analyze", &fixture("path4.graph"), "--oracle"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("oracle       depth=2 reg=1"));
    assert!(serde_json::from_str::<Value>(&text).is_err());
}

#[test]
fn compose_examples() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("fig3.graph");
    let out = eideal(&[
        "compose",
        "--op",
        "circ",
        "--g1",
        &fixture("fig3_g1.graph"),
        "--u1",
        "u1",
        "--g2",
        &fixture("p2.graph"),
        "--u2",
        "u2",
        "-o",
        out_path.to_str().unwrap(),
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(
        (r["vertices"].as_u64(), r["formula"]["depth"].as_u64()),
        (Some(5), Some(3))
    );
    assert_eq!(r["warnings"].as_array().unwrap().len(), 3);
    let written = std::fs::read_to_string(&out_path).unwrap();
    assert!(written.starts_with("v g1.x11\n") && written.contains("v v\n"));

    let r = json(&eideal(&[
        "compose",
        "--op",
        "star",
        "--g1",
        &fixture("p4.graph"),
        "--u1",
        "d",
        "--g2",
        &fixture("p4b.graph"),
        "--u2",
        "a2",
        "--json",
        "--oracle",
    ]));
    assert_eq!(
        (
            r["vertices"].as_u64(),
            r["formula"]["depth"].as_u64(),
            r["formula"]["reg"].as_u64()
        ),
        (Some(7), Some(3), Some(2))
    );
    assert_eq!(r["oracle"]["depth"], 3);

    let r = json(&eideal(&[
        "compose",
        "--op",
        "pendant",
        "--g1",
        &fixture("fig4_g2.graph"),
        "--u1",
        "u2",
        "--json",
    ]));
    assert_eq!(
        (r["vertices"].as_u64(), r["formula"]["depth"].as_u64()),
        (Some(7), Some(3))
    );
    assert!(r["formula"]["reg"].is_null());
}

#[test]
fn exit_codes() {
    // not a leaf
    let out = eideal(&[
        "compose",
        "--op",
        "pendant",
        "--g1",
        &fixture("p4.graph"),
        "--u1",
        "b",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not a leaf"));
    // not Cohen-Macaulay
    let out = eideal(&[
        "compose",
        "--op",
        "circ",
        "--g1",
        &fixture("c4.graph"),
        "--u1",
        "c1",
        "--g2",
        &fixture("p2.graph"),
        "--u2",
        "u2",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(
        eideal(&["analyze", "/nonexistent/x.graph"]).status.code(),
        Some(1)
    );
    assert_eq!(eideal(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(eideal(&["--help"]).status.code(), Some(0));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.graph");
    std::fs::write(&bad, "v a\nv b\ne a c\n").unwrap();
    let out = eideal(&["analyze", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));

    // a claw is not Cohen-Macaulay; --trusted applies the formula anyway and the oracle disagrees
    let claw = dir.path().join("claw.graph");
    std::fs::write(&claw, "v a\nv b\nv c\nv d\ne a b\ne a c\ne a d\n").unwrap();
    let out = eideal(&[
        "compose",
        "--op",
        "circ",
        "--trusted",
        "--oracle",
        "--g1",
        claw.to_str().unwrap(),
        "--u1",
        "b",
        "--g2",
        &fixture("p2.graph"),
        "--u2",
        "u2",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stdout).contains("FAIL"));

    let out = eideal(&[
        "analyze",
        &fixture("path4.graph"),
        "--oracle",
        "--max-vertices",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let out = Command::new(env!("CARGO_BIN_EXE_eideal"))
        .args(["analyze", &fixture("path4.graph"), "--oracle"])
        .env("EIDEAL_MAX_VERTICES", "3")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn generate_and_check() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    assert!(
        eideal(&["generate", "--pairs", "1", "--count", "1", "-o", d])
            .status
            .success()
    );
    let one = std::fs::read_to_string(dir.path().join("cm_1_0_0.graph")).unwrap();
    assert_eq!(one, "v x1\nv y1\ne x1 y1\n");

    assert!(eideal(&[
        "generate",
        "--pairs",
        "3",
        "--density",
        "0",
        "--seed",
        "5",
        "-o",
        d
    ])
    .status
    .success());
    let three = std::fs::read_to_string(dir.path().join("cm_3_5_0.graph")).unwrap();
    assert_eq!(three.lines().filter(|l| l.starts_with("e ")).count(), 3);

    let out = eideal(&[
        "generate",
        "--pairs",
        "4",
        "--density",
        "0.5",
        "--seed",
        "7",
        "--count",
        "20",
        "-o",
        d,
    ]);
    let files: Vec<String> = String::from_utf8(out.stdout)
        .unwrap()
        .lines()
        .map(String::from)
        .collect();
    assert_eq!(files.len(), 20);
    assert!(files[19].ends_with("cm_4_7_19.graph"));
    let mut args = vec!["check-cm", "--json"];
    args.extend(files.iter().map(String::as_str));
    let out = eideal(&args);
    assert_eq!(out.status.code(), Some(0));
    assert!(json(&out)
        .as_array()
        .unwrap()
        .iter()
        .all(|r| r["cm"] == true));

    let out = eideal(&["check-cm", &fixture("c4.graph"), &fixture("p2.graph")]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(
        eideal(&["generate", "--pairs", "2", "--density", "1.5", "-o", d])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn verify_is_deterministic() {
    let args = [
        "verify",
        "--theorem",
        "circ",
        "--trials",
        "30",
        "--max-pairs",
        "3",
        "--seed",
        "99",
        "--json",
    ];
    let a = eideal(&args);
    let b = eideal(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let r = json(&a);
    assert_eq!(
        (r["passed"].as_u64(), r["failed"].as_u64()),
        (Some(30), Some(0))
    );
    assert!(r["first_counterexample"].is_null());

    let out = eideal(&[
        "verify",
        "--theorem",
        "cm-values",
        "--trials",
        "100",
        "--max-pairs",
        "6",
        "--json",
    ]);
    assert_eq!(json(&out)["passed"], 100);
    let out = eideal(&[
        "verify",
        "--theorem",
        "leaf",
        "--trials",
        "100",
        "--max-pairs",
        "5",
        "--json",
    ]);
    assert_eq!(json(&out)["passed"], 100);
    // star composites of 6-pair operands have 23 vertices
    assert_eq!(
        eideal(&["verify", "--theorem", "star", "--max-pairs", "6"])
            .status
            .code(),
        Some(1)
    );
}
