use std::path::PathBuf;

use serde_json::Value;
use splitcomb::cli::{run, Output};

fn catalog(name: &str) -> String {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../catalog");
    root.join(name).to_string_lossy().into_owned()
}

fn sc(args: &[&str]) -> Output {
    let mut argv = vec!["splitcomb".to_string()];
    for a in args {
        argv.push(match a.strip_prefix('@') {
            Some(f) => catalog(f),
            None => a.to_string(),
        });
    }
    run(argv)
}

fn json(o: &Output) -> Value {
    serde_json::from_str(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", o.stdout))
}

#[test]
fn rep_dim_gl2() {
    let o = sc(&["rep", "dim", "--group", "@gl2.json", "--mu", "2,0"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let v = json(&o);
    assert_eq!(v["result"], 3);
    assert_eq!(v["command"], "rep dim");
    assert_eq!(v["provenance"]["library"], "splitcomb");
    assert_eq!(v["provenance"]["version"], splitcomb::VERSION);
    assert_eq!(v["inputs"]["args"]["mu"], serde_json::json!([2, 0]));
}

#[test]
fn basic_vsp_gl2_reports_criteria() {
    let o = sc(&["kottwitz", "basic-vsp", "--group", "@gl2.json", "--mu", "1,0"]);
    assert_eq!(o.code, 0);
    let v = json(&o);
    assert_eq!(v["result"], false);
    assert!(v["criteria"]["tate"].is_object());
    assert!(v["criteria"]["central_character"].is_object());
}

#[test]
fn broken_group_fails_validation() {
    let o = sc(&["group", "validate", "--group", "@broken.json"]);
    assert_eq!(o.code, 1);
    let v = json(&o);
    assert_eq!(v["result"]["valid"], false);
    assert!(!v["result"]["violations"].as_array().unwrap().is_empty());
}

#[test]
fn catalog_groups_validate() {
    for g in ["gl2.json", "sl3.json", "su3.json", "res_ram_gl2.json", "res_unram_sl2.json", "g2.json"] {
        let o = sc(&["group", "validate", "--group", &format!("@{g}")]);
        assert_eq!(o.code, 0, "{g}: {}", o.stdout);
    }
}

#[test]
fn bare_catalog_names_resolve() {
    let o = sc(&["rep", "dim", "--group", "sl2.json", "--mu", "1"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert_eq!(json(&o)["result"], 3);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(sc(&["rep", "dim", "--group", "@gl2.json", "--mu", "x"]).code, 2);
    assert_eq!(sc(&["rep", "frobnicate"]).code, 2);
    assert_eq!(sc(&["rep", "dim", "--group", "@gl2.json", "--mu", "1,0", "--bound", "0"]).code, 2);
    assert_eq!(sc(&["rep", "dim", "--group", "/nonexistent/x.json", "--mu", "1,0"]).code, 2);
}

#[test]
fn domain_errors_exit_1_with_name() {
    let o = sc(&["rep", "dim", "--group", "@gl2.json", "--mu", "0,1"]);
    assert_eq!(o.code, 1);
    assert_eq!(json(&o)["error"]["name"], "NotDominant");
    assert!(o.stderr.contains("NotDominant"));

    let o = sc(&["rep", "dim", "--group", "@gl2.json", "--mu", "1,0,0"]);
    assert_eq!(json(&o)["error"]["name"], "DimensionMismatch");

    let o = sc(&["satake", "general", "--group", "@pgl2.json", "--mu", "1", "--s", "1.5"]);
    assert_eq!(o.code, 1);
    assert_eq!(json(&o)["error"]["name"], "NonRationalUnsupported");
}

#[test]
fn satake_pgl2_examples() {
    let o = sc(&["satake", "divisor", "--group", "@pgl2.json", "--mu", "1"]);
    assert_eq!(json(&o)["result"]["entries"], serde_json::json!([]));
    let o = sc(&["satake", "general", "--group", "@pgl2.json", "--mu", "2", "--s", "2", "--basis", "2"]);
    assert_eq!(o.code, 0, "{}", o.stdout);
    assert_eq!(json(&o)["result"], true);
    let o = sc(&["satake", "general", "--group", "@pgl2.json", "--mu", "2", "--s", "1", "--basis", "2"]);
    assert_eq!(json(&o)["result"], false);
    let o = sc(&["satake", "strong-general", "--group", "@pgl2.json", "--mu", "2", "--s", "-1", "--basis", "2"]);
    assert_eq!(json(&o)["result"], false);
    let o = sc(&["satake", "strong-general", "--group", "@pgl2.json", "--mu", "2", "--s", "3", "--basis", "2"]);
    assert_eq!(json(&o)["result"], true);
}

#[test]
fn adlv_queries() {
    let o = sc(&["adlv", "nonempty", "--group", "@gl2.json", "--mu", "1,0", "--tau", "1,0"]);
    assert_eq!(o.code, 0, "{}", o.stdout);
    assert_eq!(json(&o)["result"], true);
    let o = sc(&["adlv", "dim", "--group", "@gl2.json", "--mu", "2,0", "--tau", "1,1"]);
    assert_eq!(json(&o)["result"], 1);
    let o = sc(&["adlv", "nonempty", "--group", "@gl2.json", "--mu", "1,0"]);
    assert_eq!(o.code, 2);
}

#[test]
fn human_mode_is_plain_text() {
    let o = sc(&["--format", "human", "rep", "dim", "--group", "@gl2.json", "--mu", "2,0"]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.contains("result: 3"));
    assert!(serde_json::from_str::<Value>(&o.stdout).is_err());
}

#[test]
fn oracle_verify_agrees() {
    let o = sc(&["oracle", "verify", "--group", "@res_ram_gl2.json", "--height", "4"]);
    assert_eq!(o.code, 0, "{}", o.stdout);
    let v = json(&o);
    assert_eq!(v["result"]["agree"], true);
    assert!(v["result"]["checked"].as_u64().unwrap() > 0);
}

#[test]
fn output_is_byte_stable() {
    let args = ["kottwitz", "vsp-enum", "--group", "@gl3.json", "--mu", "2,1,0"];
    let a = sc(&args);
    assert_eq!(a.code, 0);
    assert_eq!(a, sc(&args));
}
