use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).display().to_string()
}

fn k3lab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_k3lab")).args(args).env_remove("K3LAB_SEED").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

fn json_of(o: &Output) -> Value {
    serde_json::from_str(&stdout(o)).expect("stdout is JSON")
}

#[test]
fn lattice_compare_reports_isometry() {
    let o = k3lab(&["lattice", "compare", &data("ns-eq1.json"), &data("ns-eq2.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("isometric-by-invariants: true"));
    let o = k3lab(&["lattice", "compare", &data("ns-eq1.json"), "U+2E8(-1)+<-6>"]);
    assert!(stdout(&o).contains("isometric-by-invariants: false"));
}

#[test]
fn lattice_info_accepts_expressions() {
    let v = json_of(&k3lab(&["lattice", "info", "U(2)+U(4)", "--json"]));
    assert_eq!(v["det"], "64");
    assert_eq!(v["disc_group"], serde_json::json!(["2", "2", "4", "4"]));
}

#[test]
fn lattice_enhance_takes_the_complement() {
    let v = json_of(&k3lab(&["lattice", "enhance", "U+<4>", "--vector", "1,-1,0"]));
    assert_eq!(v["v_square"], "-2");
    assert_eq!(v["complement"]["det"], "8");
}

#[test]
fn fibration_analyze_rigid_model() {
    let o = k3lab(&["fibration", "analyze", &data("eq-ii.json")]);
    assert_eq!(o.status.code(), Some(0));
    let v = json_of(&o);
    assert_eq!(v["configuration"], "2I8+4I2");
    assert_eq!(v["torsion"], serde_json::json!([2, 4]));
    assert_eq!(v["euler"], 24);
}

#[test]
fn fibration_isogeny_of_the_i16_model() {
    let v = json_of(&k3lab(&["fibration", "isogeny", &data("i16.json")]));
    assert_eq!(v["report"]["configuration"], "I8+8I2");
    let v = json_of(&k3lab(&["fibration", "analyze", &data("i16.json")]));
    assert_eq!(v["configuration"], "I16+8I1");
}

#[test]
fn frame_commands() {
    let (f, a) = (data("y-frame.json"), data("y-tau.json"));
    let v = json_of(&k3lab(&["frame", "build", &f]));
    assert_eq!(v["lattice"]["det"], "-64");
    assert_eq!(v["heights"]["P"], "1/2");
    let v = json_of(&k3lab(&["frame", "act", &f, &a]));
    assert_eq!(v["involution"], true);
    assert_eq!(v["anti_invariant"]["rank"], 8);
    let o = k3lab(&["frame", "brauer", &f, &a, "--json"]);
    let v = json_of(&o);
    assert_eq!(v["verdict"], "pullback_Z2");
    assert_eq!(v["fixed_point_free"], true);
}

#[test]
fn verify_one_scenario_in_both_formats() {
    let o = k3lab(&["verify", "S24", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json_of(&o);
    assert_eq!(v[0]["status"], "pass");
    assert_eq!(v[0]["id"], "gram-18-det");
    let md = stdout(&k3lab(&["verify", "gram-18-det", "--md"]));
    assert!(md.starts_with("| id | anchor | status | detail |"));
    for item in v[0]["checks"].as_array().unwrap() {
        assert!(md.contains(&format!("`{}`", item["computed"].as_str().unwrap())));
    }
}

#[test]
fn seed_flag_and_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_k3lab")).args(["verify", "14", "--json"]).env("K3LAB_SEED", "abc").output().unwrap();
    assert_eq!(json_of(&o)[0]["seed"], "0xabc");
    let o = Command::new(env!("CARGO_BIN_EXE_k3lab"))
        .args(["verify", "14", "--json", "--seed", "0x11"])
        .env("K3LAB_SEED", "abc")
        .output()
        .unwrap();
    assert_eq!(json_of(&o)[0]["seed"], "0x11");
}

#[test]
fn usage_errors_exit_two_with_empty_stdout() {
    for args in [&["verify", "no-such-scenario"][..], &["frobnicate"], &["lattice", "info", "U", "--bogus"], &["verify", "1", "--seed", "xyz"]] {
        let o = k3lab(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(o.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn bad_input_exits_one() {
    let o = k3lab(&["fibration", "analyze", "/nonexistent/model.json"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(!o.stderr.is_empty());
}
