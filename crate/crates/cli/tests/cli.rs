use std::process::{Command, Output};

use cartanweil::engine::serialize;
use cartanweil::gforms::GFormComplex;
use cartanweil::lie::{metric_polynomial, su2, Scale};
use cartanweil::transgression::transgress_closed;
use cartanweil::{Element, Q};
use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_cartanweil"));
    c.env_remove("CARTANWEIL_SEED");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn data(name: &str) -> String {
    format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn transgress_text_shows_structured_then_expanded() {
    let o = run(&["transgress", "--algebra", "su2", "--poly", "metric"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "-1/6 ⟨Θ,[Θ,Θ]⟩");
    assert_eq!(lines[1], "-Θ¹·Θ²·Θ³");
}

#[test]
fn json_form_round_trips() {
    let o = run(&["transgress", "--algebra", "su2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["degree"], 2);
    assert!(v.get("runtime_ms").is_none());
    let form: Element = serialize::from_json(&v["form"]).unwrap();
    let a = su2::<Q>().unwrap();
    let p = metric_polynomial(&a, Scale::one()).unwrap();
    let expect = transgress_closed(&GFormComplex::new(&a).unwrap(), &p).unwrap();
    assert_eq!(&form, expect.form.element());
}

#[test]
fn json_is_byte_identical_for_same_seed() {
    let args = ["verify", "--suite", "weil", "--algebra", "su2", "--format", "json", "--seed", "17"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn timings_only_on_request() {
    let o = run(&["transgress", "--algebra", "su2", "--format", "json", "--timings"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["runtime_ms"].is_u64());
}

#[test]
fn latex_output() {
    let o = run(&["transgress", "--algebra", "su2", "--equivariant", "--format", "latex"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("\\langle"));
    assert!(out.contains("\\Theta"));
    assert!(out.contains("\\chi"));
}

#[test]
fn env_seed_overrides_flag() {
    let args = ["transgress", "--algebra", "su2", "--format", "json", "--seed", "3"];
    let o = bin().args(args).env("CARTANWEIL_SEED", "99").output().unwrap();
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["seed"], 99);
    let o = bin().args(args).env("CARTANWEIL_SEED", "nope").output().unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        vec!["transgress", "--algebra", "so(5)"],
        vec!["transgress", "--poly", "cubic"],
        vec!["transgress", "--samples", "0"],
        vec!["transgress", "--format", "xml"],
        vec!["verify", "--suite", "everything"],
        vec!["string-universal", "--variant", "other"],
        vec!["frobnicate"],
    ] {
        assert_eq!(run(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn broken_jacobi_file_fails_verification() {
    let path = data("broken_jacobi.json");
    let o = run(&["verify", "--suite", "algebra", "--algebra", &path]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL algebra.jacobi"));
    let o = run(&["transgress", "--algebra", &path]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn file_algebra_transgresses() {
    let o = run(&["transgress", "--algebra", &data("so3_rescaled.json"), "--equivariant"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("-1/6 ⟨Θ,[Θ,Θ]⟩ + ⟨Θ,χ⟩ + ⟨Θ̂,χ⟩"));
}

#[test]
fn string_universal_su2() {
    let o = run(&["string-universal", "--algebra", "su2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("PASS string_class_equals_equivariant_transgression [su2 / metric-normalized]"));

    let o = run(&["string-universal", "--algebra", "su2", "--based", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["pass"], true);
}

#[test]
fn paper_display_variant_fails_with_witness() {
    let o = run(&["string-universal", "--algebra", "su2", "--variant", "paper_display", "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["pass"], false);
    assert_eq!(v["checks"][0]["witness"]["stage"], "basicness");
}

#[test]
fn verify_output_sorted() {
    let o = run(&["verify", "--suite", "transgression", "--algebra", "su2"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let names: Vec<&str> = out.lines().filter_map(|l| l.split_whitespace().nth(1)).collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
    assert!(names.contains(&"transgression.coefficients"));
}
