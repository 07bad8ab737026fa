use std::process::{Command, Output};

use g2_unramified::localmodels::EpsChoice;
use g2_unramified::zeta::product_formula_text;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_g2verify")).args(args).output().expect("spawn g2verify")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

fn all_pass(v: &serde_json::Value) -> bool {
    match v {
        serde_json::Value::Object(m) => {
            m.get("pass").is_none_or(|p| p == &serde_json::Value::Bool(true)) && m.values().all(all_pass)
        }
        serde_json::Value::Array(a) => a.iter().all(all_pass),
        _ => true,
    }
}

#[test]
fn all_json_passes_and_is_reproducible() {
    let first = run(&["all", "--json"]);
    assert_eq!(first.status.code(), Some(0), "{}", String::from_utf8_lossy(&first.stderr));
    let doc: serde_json::Value = serde_json::from_slice(&first.stdout).expect("valid JSON");
    assert_eq!(doc["pass"], serde_json::Value::Bool(true));
    assert!(all_pass(&doc));
    let second = run(&["all", "--json"]);
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn closed_form_prints_the_product() {
    let o = run(&["closed-form", "--eps", "-1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains(&product_formula_text(EpsChoice::Minus)), "{text}");
}

#[test]
fn unfold_cosets_reports_gamma() {
    let o = run(&["unfold-cosets"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("= {α+β}"), "{text}");
    let json = run(&["unfold-cosets", "--json"]);
    let doc: serde_json::Value = serde_json::from_slice(&json.stdout).unwrap();
    assert_eq!(doc["pass"], serde_json::Value::Bool(true));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(run(&["oracle", "--no-such-flag"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["closed-form", "--eps", "3"]).status.code(), Some(2));
}

#[test]
fn failing_checks_exit_with_one() {
    let o = run(&["oracle", "--s", "0.3", "--points", "2", "--json"]);
    assert_eq!(o.status.code(), Some(1));
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["pass"], serde_json::Value::Bool(false));
}

#[test]
fn group_and_lemma_subcommands() {
    let o = run(&["verify-group", "--samples", "5"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = run(&["verify-lemmas", "--nmax", "4", "--nmax-i", "5", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(all_pass(&doc));
}
