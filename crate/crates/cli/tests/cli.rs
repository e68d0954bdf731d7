use std::process::{Command, Output};

use serde_json::Value;
use springer_core::block_getzler::shifted_dual_numbers;
use springer_core::dl_params::SL2ParameterRow;
use springer_core::hecke::{HeckeElement, HeckeJson};
use springer_core::root_weyl::{load_datum, oracle::bfs_ball};

fn springer(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_springer")).args(args).output().expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

/// Output re-parses to the same value after a second serialization.
fn assert_round_trip(v: &Value) {
    let again: Value = serde_json::from_str(&serde_json::to_string(v).unwrap()).unwrap();
    assert_eq!(&again, v);
}

const TS: &str = r#"{"datum":"SL2","terms":[{"lambda":[0],"word":[1],"coeff":{"vars":["v"],"terms":[{"exp":[0],"num":"1","den":"1"}]}}]}"#;

#[test]
fn weyl_length_matches_bfs() {
    let v = json_of(&springer(&["weyl", "length", "--datum", "SL2", "--element", r#"{"lambda":[1],"word":[]}"#]));
    assert_eq!(v, serde_json::json!({ "length": 2 }));

    let d = load_datum("SL2", None).unwrap();
    for (x, len) in bfs_ball(&d, 5) {
        let e = serde_json::to_string(&d.element_json(&x)).unwrap();
        let v = json_of(&springer(&["weyl", "length", "--datum", "SL2", "--element", &e]));
        assert_eq!(v["length"], len, "{e}");
    }
}

#[test]
fn reduced_word_recomposes() {
    let v = json_of(&springer(&["weyl", "reduced-word", "--datum", "GL2", "--element", r#"{"lambda":[2,-1],"word":[1]}"#]));
    let d = load_datum("GL2", None).unwrap();
    let omega = d.parse_element(&serde_json::from_value(v["omega"].clone()).unwrap()).unwrap();
    let word: Vec<usize> = serde_json::from_value(v["word"].clone()).unwrap();
    let x = d.compose_word(&word, &omega).unwrap();
    assert_eq!(serde_json::to_value(d.element_json(&x)).unwrap(), serde_json::json!({"lambda": [2, -1], "word": [1]}));
    assert_eq!(v["length"], word.len());
}

#[test]
fn hecke_quadratic_relation() {
    let v = json_of(&springer(&["hecke", "mul", "--left", TS, "--right", TS]));
    assert_round_trip(&v);
    let got = HeckeElement::from_json(&serde_json::from_value::<HeckeJson>(v).unwrap(), None).unwrap();
    let d = load_datum("SL2", None).unwrap();
    let s = HeckeElement::simple(&d, 1).unwrap();
    let q = springer_core::hecke::q();
    let expected =
        s.scale(&(&q - &springer_core::hecke::laurent_int(1))).add(&HeckeElement::one(&d).scale(&q)).unwrap();
    assert_eq!(got, expected);
}

#[test]
fn hecke_specialize_and_center() {
    let sq = json_of(&springer(&["hecke", "mul", "--left", TS, "--right", TS]));
    let at1 = json_of(&springer(&["hecke", "specialize", "--element", &sq.to_string(), "--q", "1"]));
    assert_eq!(at1["terms"], serde_json::json!([{ "lambda": [0], "word": [], "coeff": "1" }]));
    let z = json_of(&springer(&["hecke", "center", "--datum", "SL2", "--lambda", "1"]));
    assert_eq!(z["central"], true);
    let out = springer(&["hecke", "center", "--datum", "SL2", "--lambda", "-1"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn steinberg_report() {
    let v = json_of(&springer(&["steinberg", "verify-sl2"]));
    assert_eq!(v["quadratic"], "pass");
    assert_eq!(v["all_passed"], true);
    let out = springer(&["steinberg", "verify-sl2", "--q-convention", "b"]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["all_passed"], false);
}

#[test]
fn params_commands() {
    let v = json_of(&springer(&["params", "enumerate", "--n", "3", "--eigenvalues", "a,a*q,a*q^2"]));
    assert_eq!(v["count"], 4);
    assert_round_trip(&v);
    let v = json_of(&springer(&["params", "enumerate", "--n", "2", "--orbits", "2"]));
    assert_eq!(v["count"], 4);
    let v = json_of(&springer(&["params", "sl2-table", "--lambda", "i", "--q", "-1"]));
    let rows: Vec<SL2ParameterRow> = serde_json::from_value(v["rows"].clone()).unwrap();
    assert_eq!(rows.len(), 3);
    assert_eq!(springer(&["params", "enumerate", "--n", "2", "--orbits", "1", "--q", "-1"]).status.code(), Some(1));
}

#[test]
fn hh_commands() {
    let v = json_of(&springer(&["hh", "bg", "--rank", "1", "--mode", "twisted", "--q", "2", "--N", "5", "--window", "3"]));
    let slices = v["slices"].as_array().unwrap();
    let nonzero: usize = slices
        .iter()
        .flat_map(|s| s["ranks"].as_array().unwrap().iter())
        .map(|r| r["rank"].as_u64().unwrap() as usize)
        .sum();
    assert_eq!(nonzero, 1);
    assert_eq!(springer(&["hh", "bg", "--mode", "twisted"]).status.code(), Some(1));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("dg.json");
    std::fs::write(&path, serde_json::to_string(&shifted_dual_numbers(1)).unwrap()).unwrap();
    let v = json_of(&springer(&["hh", "dg", "--spec", path.to_str().unwrap()]));
    for row in v["ranks"].as_array().unwrap() {
        let at_origin = row["degree"] == 0 && row["weight"] == 0;
        assert_eq!(row["rank"], u64::from(at_origin));
    }
}

#[test]
fn blocks_commands() {
    let dir = tempfile::tempdir().unwrap();
    let ty = dir.path().join("type.json");
    std::fs::write(&ty, r#"{"n": 4, "entries": [{"label": "a", "d": 1, "r": 2, "multiplicity": 2}]}"#).unwrap();
    let v = json_of(&springer(&["blocks", "decompose", "--n", "4", "--type", ty.to_str().unwrap(), "--q", "q"]));
    assert_eq!(v["hecke_algebra"], "H_{q^2}(2)");
    let v = json_of(&springer(&["blocks", "decompose", "--n", "3", "--type", "trivial"]));
    assert_eq!(v["hecke_algebra"], "H_q(3)");
    assert_eq!(springer(&["blocks", "decompose", "--n", "5", "--type", ty.to_str().unwrap()]).status.code(), Some(1));

    let cat = dir.path().join("catalog.json");
    std::fs::write(&cat, r#"[[1, 1], {"d": 1, "r": 2}]"#).unwrap();
    let v = json_of(&springer(&["blocks", "enumerate", "--n", "2", "--catalog", cat.to_str().unwrap()]));
    assert_eq!(v["count"], 3);
    assert_round_trip(&v);
}

#[test]
fn exit_codes() {
    assert_eq!(springer(&["weyl", "length", "--bogus"]).status.code(), Some(2));
    assert_eq!(springer(&["nonsense"]).status.code(), Some(2));
    let out = springer(&["weyl", "length", "--datum", "E9", "--element", r#"{"lambda":[1]}"#]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("E9"));
}

#[test]
fn json_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.json");
    let out = springer(&["weyl", "length", "--datum", "GL2", "--element", r#"{"lambda":[1,0]}"#, "--json", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["length"], 1);
}

#[test]
fn verify_all_writes_results() {
    let dir = tempfile::tempdir().unwrap();
    let out = springer(&["verify-all", "--threads", "4", "--out", dir.path().to_str().unwrap()]);
    let table = String::from_utf8_lossy(&out.stderr);
    assert_eq!(table.lines().filter(|l| l.starts_with("criterion")).count(), 11, "{table}");
    let v = json_of(&out);
    assert_eq!(v["all_passed"], true);
    let saved: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("results.json")).unwrap()).unwrap();
    assert_eq!(saved["criteria"].as_array().unwrap().len(), 11);
}
