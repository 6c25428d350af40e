use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn rota(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_rota"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    let mut pipe = child.stdin.take().unwrap();
    pipe.write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("report is JSON")
}

#[test]
fn laurent_check_passes() {
    let out = rota(&["check", "--input", data("laurent.json").to_str().unwrap()], None);
    assert_eq!(out.status.code(), Some(0));
    let r = json_of(&out);
    assert_eq!(r["schema"], "rota-core/1");
    assert_eq!(r["passed"], true);
    let laws = r["algebra"]["laws"].as_array().unwrap();
    assert!(laws.iter().any(|l| l["law"] == "rota-baxter" && l["samples"].as_u64().unwrap() == 169));
}

#[test]
fn wrong_sign_weight_reports_the_pole_pair() {
    let out = rota(&["check", "--input", data("laurent-plus-one.json").to_str().unwrap()], None);
    assert_eq!(out.status.code(), Some(1));
    let r = json_of(&out);
    let rb = r["algebra"]["laws"].as_array().unwrap().iter().find(|l| l["law"] == "rota-baxter").unwrap().clone();
    assert_eq!(rb["passed"], false);
    let witness = rb["counterexample"].as_str().unwrap();
    assert_eq!(witness.matches("t^-1").count(), 2, "{witness}");
}

#[test]
fn malformed_input_is_a_parse_error() {
    let out = rota(&["check"], Some("{\"kind\": \"laurent\",\n  \"weight\": }"));
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 2, column"), "{err}");
    assert!(out.stdout.is_empty());
}

#[test]
fn unknown_instances_are_input_errors() {
    assert_eq!(rota(&["demo", "nope"], None).status.code(), Some(2));
    assert_eq!(rota(&["check"], Some("\"nope\"")).status.code(), Some(2));
    assert_eq!(rota(&["check"], Some("{}")).status.code(), Some(2));
    assert_eq!(rota(&["check", "--precision", "0"], Some("\"laurent\"")).status.code(), Some(2));
}

#[test]
fn module_and_coalgebra_checks() {
    for (file, section) in [("module.json", "module"), ("coalgebra.json", "coalgebra")] {
        let out = rota(&["check", "--input", data(file).to_str().unwrap()], None);
        assert_eq!(out.status.code(), Some(0), "{file}");
        assert_eq!(json_of(&out)[section]["laws"][0]["passed"], true);
    }
    let bad = r#"{"coalgebra": {"kind": "trivial"}, "sigma": [["1/1"]], "weight": "1/1"}"#;
    let out = rota(&["check"], Some(bad));
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json_of(&out)["coalgebra"]["laws"][0]["counterexample"], "1");
}

#[test]
fn split_of_a_projection_module() {
    let out = rota(&["split", "--input", data("module.json").to_str().unwrap()], None);
    assert_eq!(out.status.code(), Some(0));
    let r = json_of(&out);
    assert_eq!(r["regular"], serde_json::json!([{"m1": "1/1"}]));
    assert_eq!(r["singular"], serde_json::json!([{"m2": "1/1"}]));
}

#[test]
fn urb_commands() {
    let out = rota(&["urb-mul", "--input", data("urb-mul.json").to_str().unwrap()], None);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["product"]["tensor"], serde_json::json!({"(u1|u3)": "-2/1", "(u4|u0)": "8/1"}));

    let out = rota(&["urb-dim"], Some(r#"{"algebra": "dual"}"#));
    assert_eq!(json_of(&out)["urb_dimension"], 6);
    let out = rota(&["urb-dim"], Some(r#"{"algebra": "laurent"}"#));
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn birkhoff_of_the_toy_character() {
    let out = rota(&["birkhoff", "--input", data("toy-character.json").to_str().unwrap()], None);
    assert_eq!(out.status.code(), Some(0));
    let r = json_of(&out);
    let empty = serde_json::json!({});
    assert_eq!(r["table"]["[]"]["phi_plus"], empty);
    assert_eq!(r["table"]["[[]]"]["phi_plus"], empty);
    assert_eq!(r["table"]["[]"]["phi_minus"], serde_json::json!({"t^-1": "-1/1"}));
    assert_eq!(r["table"].as_object().unwrap().len(), 8);
}

#[test]
fn birkhoff_of_a_regular_character_is_trivial() {
    let input = r#"{"max_degree": 2, "trees": {"[]": {"t^0": "2/1", "t^1": "1/1"}, "[[]]": {"t^2": "3/1"}}}"#;
    let r = json_of(&rota(&["birkhoff"], Some(input)));
    for (k, row) in r["table"].as_object().unwrap() {
        let counit = if k == "1" { serde_json::json!({"t^0": "1/1"}) } else { serde_json::json!({}) };
        assert_eq!(row["phi_minus"], counit, "{k}");
        assert_eq!(row["phi_plus"], row["phi"], "{k}");
    }
}

#[test]
fn birkhoff_input_errors() {
    let out = rota(&["birkhoff"], Some(r#"{"max_degree": 6, "trees": {}}"#));
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("exceeds"));

    let input = r#"{"max_degree": 2, "trees": {"[]": {"t^-1": "1/1"}, "[[]]": {"t^-2": "1/1"}}}"#;
    let out = rota(&["birkhoff", "--precision", "1"], Some(input));
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("at forest"));

    let idempotent_fails = r#"{"max_degree": 1, "algebra": {"kind": "scalar", "weight": "-1/1", "operator": "2/1"},
        "trees": {"[]": {"1": "1/1"}}}"#;
    let out = rota(&["birkhoff"], Some(idempotent_fails));
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("idempotent"));
}

#[test]
fn reports_are_deterministic_and_can_go_to_a_file() {
    let dir = std::env::temp_dir().join(format!("rota-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let a = rota(&["demo", "kernel", "--output", path.to_str().unwrap()], None);
    assert_eq!(a.status.code(), Some(0));
    assert!(a.stdout.is_empty());
    let written = std::fs::read(&path).unwrap();
    let b = rota(&["demo", "kernel"], None);
    assert_eq!(written, b.stdout);
    assert_eq!(json_of(&b)["kernel_dimension"], 2);
    std::fs::remove_dir_all(&dir).unwrap();
}
