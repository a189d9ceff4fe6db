use std::path::PathBuf;
use std::process::{Command, Output};

fn knottab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_knottab")).args(args).current_dir(root()).output().expect("binary runs")
}

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn eval_examples() {
    for (rep, inv, expected) in [
        ("(2,2)", "conway", "z^2 + 1"),
        ("(2,8)", "span", "10"),
        ("(4,4)", "span", "8"),
        ("[2 2 2/2 2 2]", "conway", "9z^4 + 6z^2 + 1"),
    ] {
        let o = knottab(&["eval", rep, inv]);
        assert!(o.status.success(), "{rep} {inv}");
        assert_eq!(stdout(&o).trim(), expected, "{rep} {inv}");
    }
}

#[test]
fn eval_both_methods_agree() {
    for rep in ["(3,-2)", "[1 -2 3/0 2 -1]", "[2 4 2/4 2 6]"] {
        let o = knottab(&["eval", rep, "all", "--method", "both"]);
        assert!(o.status.success(), "{rep}: {}", stdout(&o));
        assert_eq!(stdout(&o).lines().last(), Some("AGREE"));
    }
}

#[test]
fn eval_json() {
    let o = knottab(&["eval", "(2,8)", "all", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["invariants"]["span"], 10);
    assert_eq!(v["invariants"]["components"], 1);
}

#[test]
fn input_errors_exit_2() {
    assert_eq!(knottab(&["eval", "(2"]).status.code(), Some(2));
    assert_eq!(knottab(&["eval", "(3,3)", "conway"]).status.code(), Some(2));
    assert_eq!(knottab(&["girth", "no/such/file.json"]).status.code(), Some(2));
    assert_eq!(knottab(&["census", "--girth", "5", "--max", "2"]).status.code(), Some(2));
    assert_eq!(knottab(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn compare_reports_jones_difference() {
    let o = knottab(&["compare", "(2,8)", "(4,4)"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().next(), Some("DistinctByJones"));
    let o = knottab(&["compare", "[2 4 6/2 4 6]", "[4 6 2/4 6 2]", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["tag"], "EqualBySymmetry");
}

#[test]
fn girth_of_the_template_fixture() {
    let o = knottab(&["girth", "fixtures/girth3_template.pd.json", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["girth"], 3);
    let o = knottab(&["decompose", "fixtures/girth3_template.pd.json"]);
    assert!(stdout(&o).trim_end().ends_with("22 decompositions, by girth 3:12 4:10"));
}

#[test]
fn census_csv_is_deterministic() {
    let args = ["census", "--girth", "2", "--max", "10", "--even", "--positive"];
    let a = knottab(&args);
    let b = knottab(&[&args[..], &["--jobs", "1"]].concat());
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("rep,girth,components,conway,jones,span,class_id,verdict"));
    assert_eq!(lines.count(), 15);
}

#[test]
fn verify_table_fails_on_the_bad_rows() {
    let o = knottab(&["verify-table"]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    let failing: Vec<&str> =
        text.lines().filter(|l| l.contains(" FAIL ")).map(|l| l.split_whitespace().next().unwrap()).collect();
    assert_eq!(failing, ["6_2", "7_6"]);
}

#[test]
fn selftest_passes() {
    let o = knottab(&["selftest"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).lines().all(|l| l.starts_with("PASS")));
}
