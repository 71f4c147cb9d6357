use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn fixture(name: &str) -> String {
    root()
        .join("fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn opad(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_opad"))
        .args(args)
        .env_remove("OPAD_CACHE_DIR")
        .output()
        .expect("run opad")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = opad(&full);
    assert!(out.status.success(), "{}", stderr(&out));
    serde_json::from_str(&stdout(&out)).unwrap()
}

fn assert_valid(schema_file: &str, value: &Value) {
    let text = std::fs::read_to_string(root().join("schemas").join(schema_file)).unwrap();
    let schema: Value = serde_json::from_str(&text).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    let errors: Vec<String> = validator
        .iter_errors(value)
        .map(|e| format!("{} at {}", e, e.instance_path()))
        .collect();
    assert!(errors.is_empty(), "{schema_file}: {errors:?}");
}

#[test]
fn linking_number_of_identity_pair() {
    let out = opad(&["paths", "lk", "--tau", "0,1,2", "--pi", "0,1,2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "3");
}

#[test]
fn malformed_map_literal_is_a_usage_error() {
    for (tau, pi) in [("0,x", "1"), ("1,0", "0,1"), ("", "0")] {
        let out = opad(&["paths", "lk", "--tau", tau, "--pi", pi]);
        assert_eq!(out.status.code(), Some(2), "{tau} / {pi}");
        assert!(stderr(&out).starts_with("error:"));
    }
}

#[test]
fn delannoy_listing_at_origin() {
    let out = opad(&["paths", "delannoy", "-p", "0", "-q", "0"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "D\nEN\nNE\ncount: 3\n");
}

#[test]
fn smooth_path_listings() {
    let rho = stdout(&opad(&["paths", "smooth", "-p", "2", "-q", "1", "-n", "2"]));
    assert!(rho.ends_with("count: 3\n"), "{rho}");
    let text = stdout(&opad(&["paths", "smooth", "-p", "2", "-q", "2", "-n", "2"]));
    assert_eq!(text, "DEDN\nDNDE\nEDND\nNDED\ncount: 4\n");
    let eta = stdout(&opad(&["paths", "smooth", "-p", "3", "-q", "2", "-n", "1"]));
    assert!(eta.ends_with("count: 2\n"), "{eta}");
}

#[test]
fn normal_lattice_listing_reports_parity_and_sign() {
    // binary words with four letters of each kind and four runs: 2 * 3 * 3
    let text = stdout(&opad(&[
        "lattice", "normal", "-p", "3", "-q", "3", "-n", "3",
    ]));
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.last(), Some(&"count: 18"));
    let paths = &lines[..lines.len() - 1];
    assert_eq!(paths.iter().filter(|l| l.contains(" even ")).count(), 9);
    for l in paths {
        let fields: Vec<&str> = l.split(' ').collect();
        assert_eq!(fields.len(), 3, "{l}");
        let psi: opad::lattice::LatticePath = fields[0].parse().unwrap();
        assert_eq!(psi.m(), 3 + 3 - 3 + 1);
        assert_eq!(fields[1] == "even", psi.word()[0] == 1);
        assert_eq!(fields[2], if psi.sign() > 0 { "+1" } else { "-1" });
    }
}

#[test]
fn formula_texts() {
    assert_eq!(
        stdout(&opad(&[
            "formula", "bracket", "-p", "1", "-q", "1", "-n", "1"
        ]))
        .trim(),
        "+ a b - b a"
    );
    assert_eq!(
        stdout(&opad(&["formula", "cup", "-p", "2", "-q", "2", "-i", "2"])).trim(),
        "- a b"
    );
    let b33 = stdout(&opad(&[
        "formula", "bracket", "-p", "3", "-q", "3", "-n", "2",
    ]));
    for term in [
        "+ d2(a) d0(b)",
        "+ d4(a) d0(b)",
        "+ d4(a) d2(b)",
        "- d1(a) d3(b)",
        "+ d2(b) d0(a)",
        "+ d4(b) d0(a)",
        "+ d4(b) d2(a)",
        "- d1(b) d3(a)",
    ] {
        assert!(b33.contains(term), "{term} missing from {b33}");
    }
    assert_eq!(b33.matches(['+', '-']).count(), 8);
}

#[test]
fn formula_json_round_trips() {
    for args in [
        ["bracket", "-p", "3", "-q", "3", "-n", "2"],
        ["cup", "-p", "2", "-q", "3", "-i", "1"],
    ] {
        let mut full = vec!["formula"];
        full.extend_from_slice(&args);
        let v = json(&full);
        assert_valid("formula.schema.json", &v);
        let f = opad::formula::Formula::from_json(&v).unwrap();
        assert_eq!(f.to_json(), v);
        let text = stdout(&opad(&full));
        assert_eq!(f.to_string(), text.trim_end());
    }
}

#[test]
fn listings_match_schema() {
    for args in [
        vec!["paths", "delannoy", "-p", "2", "-q", "1"],
        vec!["paths", "smooth", "-p", "3", "-q", "2", "-n", "2"],
        vec!["lattice", "normal", "-p", "2", "-q", "2", "-n", "2"],
    ] {
        let v = json(&args);
        assert_valid("listing.schema.json", &v);
        assert_eq!(
            v["count"].as_u64().unwrap() as usize,
            v["paths"].as_array().unwrap().len()
        );
    }
}

#[test]
fn fixtures_match_config_schemas() {
    for entry in std::fs::read_dir(root().join("fixtures")).unwrap() {
        let path = entry.unwrap().path();
        let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        let schema = if v.get("dims").is_some() {
            "instance_document.schema.json"
        } else {
            "lie_config.schema.json"
        };
        assert_valid(schema, &v);
    }
}

#[test]
fn first_cohomology_of_heisenberg() {
    let config = fixture("heisenberg_q.json");
    let out = opad(&[
        "instance",
        "cohomology",
        "--config",
        &config,
        "--degree",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(stdout(&out).contains("dim H^1 = 3"), "{}", stdout(&out));
    let v = json(&[
        "instance",
        "cohomology",
        "--config",
        &config,
        "--degree",
        "1",
    ]);
    assert_valid("cohomology.schema.json", &v);
    assert_eq!(v["dimension"], 3);
}

#[test]
fn char3_class_suite_passes_on_heisenberg_mod_3() {
    for name in ["char3-class", "nte"] {
        let out = opad(&[
            "instance",
            "verify",
            "--config",
            &fixture("heisenberg_f3.json"),
            "--suite",
            name,
        ]);
        let text = stdout(&out);
        assert_eq!(out.status.code(), Some(0), "{text}");
        assert!(text.contains("(z (x) z^2 + z^2 (x) z)"), "{text}");
        assert!(text.trim_end().ends_with("PASS"));
    }
}

#[test]
fn alternation_suite_passes_on_heisenberg() {
    let out = opad(&[
        "--json",
        "instance",
        "verify",
        "--config",
        &fixture("heisenberg_q.json"),
        "--suite",
        "alternation",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_valid("report.schema.json", &v);
    assert_eq!(v["suite"], "alternation");
}

#[test]
fn char3_class_suite_rejects_other_algebras() {
    let out = opad(&[
        "instance",
        "verify",
        "--config",
        &fixture("sl2_q.json"),
        "--suite",
        "char3-class",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("$.brackets"));
}

#[test]
fn commutativity_suite_passes_on_heisenberg() {
    let out = opad(&[
        "--json",
        "instance",
        "verify",
        "--config",
        &fixture("heisenberg_q.json"),
        "--suite",
        "commutativity",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_valid("report.schema.json", &v);
    assert_eq!(v["passed"], true);
}

#[test]
fn noncommutative_document_fails_with_exit_one() {
    let out = opad(&[
        "instance",
        "verify",
        "--config",
        &fixture("twisted.json"),
        "--suite",
        "commutativity",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("witness"));
}

#[test]
fn schouten_suite_reports_each_mismatch() {
    // The order-1 path bracket is symmetric in degrees (1,2), so pairs with the
    // vector first come out with the opposite sign.
    let out = opad(&[
        "instance",
        "verify",
        "--config",
        &fixture("sl2_q.json"),
        "--suite",
        "schouten",
    ]);
    let text = stdout(&out);
    assert_eq!(out.status.code(), Some(1), "{text}");
    let mismatches: Vec<&str> = text
        .lines()
        .filter(|l| l.contains("bracket gives"))
        .collect();
    assert!(!mismatches.is_empty());
    for l in mismatches {
        let pair = &l[l.find('{').unwrap()..l.find('}').unwrap()];
        let (first, second) = pair.split_once(", ").unwrap();
        assert!(!first.contains('∧') && second.contains('∧'), "{l}");
    }
}

#[test]
fn schema_violations_name_the_field() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        (r#"{"basis":["x","y"],"char":4}"#, "$.char"),
        (
            r#"{"basis":["x","y"],"brackets":{"[x,w]":"y"}}"#,
            "$.brackets",
        ),
        (r#"{"basis":["x"],"colour":1}"#, "$.colour"),
        (
            r#"{"name":"t","char":0,"dims":[1],"units":[],"products":[],"cofaces":"no","codegeneracies":[]}"#,
            "cofaces",
        ),
    ];
    for (k, (body, path)) in cases.iter().enumerate() {
        let file = dir.path().join(format!("bad{k}.json"));
        std::fs::write(&file, body).unwrap();
        let out = opad(&[
            "instance",
            "cohomology",
            "--config",
            file.to_str().unwrap(),
            "--degree",
            "0",
        ]);
        assert_eq!(out.status.code(), Some(2), "{body}");
        assert!(stderr(&out).contains(path), "{body}: {}", stderr(&out));
    }
}

#[test]
fn cache_directory_is_used_and_reused() {
    let dir = tempfile::tempdir().unwrap();
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_opad"))
            .args(["paths", "delannoy", "-p", "1", "-q", "1"])
            .env("OPAD_CACHE_DIR", dir.path())
            .output()
            .unwrap()
    };
    let first = run();
    let entry = dir.path().join("delannoy-1-1.json");
    assert!(entry.exists());
    let second = run();
    assert_eq!(first.stdout, second.stdout);
    assert!(stdout(&first).ends_with("count: 13\n"));
}

#[test]
fn output_is_deterministic() {
    let args = [
        "instance",
        "cohomology",
        "--config",
        &fixture("sl2_q.json"),
        "--degree",
        "2",
        "--complex",
        "invariant",
    ];
    assert_eq!(opad(&args).stdout, opad(&args).stdout);
}
