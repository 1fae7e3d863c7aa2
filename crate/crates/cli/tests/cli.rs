use std::process::{Command, Output};

use serde_json::Value;

fn coha(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coha"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let o = coha(&all);
    (serde_json::from_str(&stdout(&o)).unwrap(), o.status.code().unwrap())
}

#[test]
fn a1_product_of_generators_is_one() {
    let o = coha(&["product", "--quiver", "a1", "--left", "x^0", "--dim-left", "1", "--right", "x^1", "--dim-right", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "1\n");
}

#[test]
fn relations_grid_passes() {
    let (v, code) = json(&["relations", "--pmax", "3", "--qmax", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], "pass");
    let items = v["items"].as_array().unwrap();
    assert!(!items.is_empty());
    assert!(items.iter().all(|i| i["holds"] == true));
}

#[test]
fn ybe_table_has_expected_fields() {
    let (v, code) = json(&["ybe", "--weight", "4"]);
    assert_eq!(code, 0);
    let first = &v["items"][0];
    for key in ["tensor", "lhs", "rhs", "equal"] {
        assert!(first.get(key).is_some(), "{key}");
    }
}

#[test]
fn hn_check_table_fields() {
    let (v, code) = json(&["hn-check", "--quiver", "k2", "--dim", "1,1", "--deg", "3"]);
    assert_eq!(code, 0);
    let row = v["items"][3].as_object().unwrap();
    let keys: Vec<&str> = row.keys().map(String::as_str).collect();
    assert_eq!(keys, ["degree", "dim_vector", "pass", "strata_sum", "total"]);
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["pbw", "--n", "2", "--deg", "4", "--format", "json"][..],
        &["normal-order", "f2 e1 e0", "--format", "csv"],
        &["schur-check", "--quiver", "l1", "--max", "4"],
    ] {
        assert_eq!(coha(args).stdout, coha(args).stdout);
    }
}

#[test]
fn csv_has_fixed_header() {
    let o = coha(&["sst-dims", "--dim", "1,0", "--deg", "2", "--format", "csv"]);
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "dim_vector,degree,total,unstable,semistable");
    assert_eq!(lines.len(), 4);
}

#[test]
fn quiver_file_is_accepted() {
    let dir = std::env::temp_dir().join(format!("coha-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("k2.quiver");
    std::fs::write(&path, "vertices: [i, j]\narrows: [[i, j], [i, j]]\ntheta: {i: 1, j: 0}\n").unwrap();
    let from_file = coha(&["sst-dims", "--quiver", path.to_str().unwrap(), "--dim", "2,1", "--deg", "3"]);
    let builtin = coha(&["sst-dims", "--quiver", "k2", "--dim", "2,1", "--deg", "3"]);
    assert_eq!(from_file.status.code(), Some(0));
    assert_eq!(stdout(&from_file), stdout(&builtin));
}

#[test]
fn usage_errors_exit_with_two_and_name_the_flag() {
    let o = coha(&["sst-dims", "--dim", "1,2,3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--dim"));
    let o = coha(&["product", "--left", "x*", "--dim-left", "1,0", "--right", "1", "--dim-right", "0,1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--left"));
    let o = coha(&["ybe", "--weight", "many"]);
    assert_eq!(o.status.code(), Some(2));
    let o = coha(&["sst-dims", "--quiver", "/no/such/file", "--dim", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--quiver"));
}

#[test]
fn skipping_the_quotient_check() {
    let (v, code) = json(&["normal-order", "e1 e0", "--no-check"]);
    assert_eq!(code, 0);
    assert!(v["command"].get("quotient_check").is_none());
    assert_eq!(v["items"][0]["word"], "e0 e1");
}
