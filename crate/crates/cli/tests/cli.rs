use std::process::{Command, Output};

fn hydra(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hydra")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

#[test]
fn verify_rogers_ramanujan_passes() {
    let o = hydra(&["verify", "--id", "rr-quotient", "--L", "6", "--K", "24"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = stdout(&o);
    assert!(text.starts_with("PASS rr-quotient [L=6 K=24"), "{text}");
}

#[test]
fn verify_family_json() {
    let o = hydra(&["verify", "--id", "k-duality", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let reports = v.as_array().unwrap();
    assert!(reports.len() >= 2);
    assert!(reports.iter().all(|r| r["passed"] == true && r["witness"].is_null()));
}

#[test]
fn bijection_of_the_worked_example() {
    let o = hydra(&["bijection", "--composition", "3,5,7,7,4,5"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("3(5(7 7) 4(5))"));
    assert!(lines.next().unwrap().contains("round trip ok"));
}

#[test]
fn bijection_splits_at_local_minima() {
    let o = hydra(&["bijection", "--composition", "2,3,1,5,1"]);
    assert_eq!(o.status.code(), Some(0));
    let trees: Vec<String> = stdout(&o).lines().filter(|l| !l.starts_with(' ')).map(String::from).collect();
    assert_eq!(trees, ["2(3)", "1(5)", "1", "3 cyclic blocks, cut before each local minimum"]);
}

#[test]
fn expand_hydra_root_term_json() {
    let o = hydra(&["expand", "--series", "hydra-R", "--m", "1", "--L", "2", "--K", "3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let terms = v["terms"].as_array().unwrap();
    assert!(terms.iter().any(|t| t["word"] == serde_json::json!([0]) && t["coeff"] == "1"));
    assert!(terms.iter().any(|t| t["word"] == serde_json::json!([0, 1]) && t["coeff"] == "-1"));
    assert_eq!(v["window"], serde_json::json!({"L": 2, "K": 3, "O": 0}));
}

#[test]
fn expand_is_stable_across_runs() {
    let args = ["expand", "--series", "c-shat", "--set", "odd", "--L", "3", "--K", "4"];
    assert_eq!(stdout(&hydra(&args)), stdout(&hydra(&args)));
}

#[test]
fn qtable_closed_form_matches_umbral_image() {
    let form = hydra(&["qtable", "--form", "rm", "--m", "2", "--L", "4", "--Q", "12"]);
    let series = hydra(&["qtable", "--series", "hydra-R", "--m", "1", "--L", "4", "--Q", "12"]);
    assert_eq!(form.status.code(), Some(0));
    assert_eq!(series.status.code(), Some(0));
    assert_eq!(stdout(&form), stdout(&series));
    assert!(stdout(&form).starts_with("z\tt\tq\tcoeff\n1\t0\t0\t1\n"));
}

#[test]
fn oracle_compare_passes_for_rise_sets() {
    let o = hydra(&["oracle-compare", "--series", "p-s", "--set", "1 mod 3", "--L", "4", "--Q", "12"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).starts_with("PASS"));
}

#[test]
fn list_identities_covers_every_criterion() {
    let o = hydra(&["list-identities", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let mut seen: Vec<u64> = v.as_array().unwrap().iter().map(|i| i["criterion"].as_u64().unwrap()).collect();
    seen.sort_unstable();
    seen.dedup();
    assert_eq!(seen, (0..=11).collect::<Vec<u64>>());
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["expand", "--series", "no-such-series"],
        vec!["expand", "--series", "p"],
        vec!["expand", "--series", "p-s", "--set", "1 mod 0"],
        vec!["verify", "--id", "no-such-identity"],
        vec!["verify"],
        vec!["bijection", "--composition", "3,0,2"],
        vec!["frobnicate"],
    ] {
        let o = hydra(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn out_of_range_bounds_are_usage_errors() {
    let o = hydra(&["oracle-compare", "--series", "compositions", "--Q", "60"]);
    assert_eq!(o.status.code(), Some(2));
}
