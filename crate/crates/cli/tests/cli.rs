use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cyclic-arcs"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn census_gf8_csv() {
    let o = run(&["census", "--m", "3", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "# field m=3;mod=b;c=1");
    assert_eq!(
        lines[1],
        "m,h,k,degenerate,gcd,deg_g,d,d3,d4_xu,mds_predicted,agree"
    );
    let rows: Vec<Vec<&str>> = lines[2..]
        .iter()
        .filter(|l| !l.starts_with('#'))
        .map(|l| l.split(',').collect())
        .collect();
    assert_eq!(rows.len(), 9);
    let mds: Vec<&str> = rows
        .iter()
        .filter(|r| r[3] == "false" && r[6] == "5")
        .map(|r| r[1])
        .collect();
    assert_eq!(mds, ["2", "3", "5", "6"]);
    assert_eq!(
        *lines.last().unwrap(),
        r#"# summary {"mds_count":4,"bound_2phi_m":4,"all_agree":true}"#
    );
}

#[test]
fn census_json_is_well_formed() {
    let o = run(&["census", "--m", "4", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["field"], "m=4;mod=13;c=8");
    assert_eq!(v["rows"].as_array().unwrap().len(), 17);
    assert_eq!(v["summary"]["mds_count"], 4);
    assert_eq!(v["summary"]["all_agree"], true);
}

#[test]
fn classify_lists_descent_classes() {
    let o = run(&["classify", "--m", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let body: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(body, ["m,class_index,e_low,e_high", "5,0,1,4", "5,1,2,3"]);
}

#[test]
fn verify_arc_reports_consistency() {
    let o = run(&["verify-arc", "--m", "4", "--a", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o).lines().nth(1).unwrap(),
        "arc=false, frobenius_exponent=none, consistent=true"
    );
    let o = run(&["verify-arc", "--m", "4", "--a", "-2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o).lines().nth(1).unwrap(),
        "arc=true, frobenius_exponent=-2^1, consistent=true"
    );
}

#[test]
fn equivalence_prints_witness_or_none() {
    let o = run(&["equivalence", "--m", "4", "--a", "2", "--b", "8"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().nth(1).unwrap(), "2,1");
    let o = run(&["equivalence", "--m", "4", "--a", "2", "--b", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().nth(1).unwrap(), "none");
}

#[test]
fn witness_holds_and_rejects_bad_twists() {
    let o = run(&["witness", "--m", "4", "--e", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("holds=true"));
    let o = run(&["witness", "--m", "4", "--e", "2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn selfcheck_gf8_passes() {
    let o = run(&["selfcheck", "--m", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(!text.contains("FAIL"));
    assert!(text.ends_with("# summary {\"checks\":17,\"failures\":0,\"uncovered\":[]}\n"));
}

#[test]
fn invalid_input_exits_with_two() {
    for args in [
        vec!["census", "--m", "7"],
        vec!["census", "--m", "2"],
        vec!["census", "--m", "3", "--cap", "1"],
        vec!["verify-arc", "--m", "3", "--a", "3"],
        vec!["classify", "--m", "13"],
        vec!["bogus"],
    ] {
        assert_eq!(run(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn output_is_reproducible() {
    for args in [
        vec!["selfcheck", "--m", "4", "--seed", "9"],
        vec!["census", "--m", "5"],
    ] {
        assert_eq!(run(&args).stdout, run(&args).stdout, "{args:?}");
    }
}
