use std::process::{Command, Output};

fn qsrg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qsrg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn analyze_z6_json() {
    let out = qsrg(&[
        "analyze",
        "--group",
        "Z6",
        "--subgroup",
        "3",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["integrality"]["is_integral"], true);
    assert_eq!(v["qsrg"]["a"], 4);
    assert_eq!(v["qsrg"]["c_set"], serde_json::json!([2, 4, 6]));
    assert_eq!(v["kappa"]["spectra_equal"], true);
    let entries = v["spectrum"]["entries"].as_array().unwrap();
    assert_eq!(
        entries[0],
        serde_json::json!({"value": "12", "kind": "int", "mult": 1})
    );
}

#[test]
fn analyze_s3_reports_the_irrational_pair() {
    let out = qsrg(&["analyze", "--group", "S3", "--subgroup", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("integral no"));
    assert!(text.contains("irrational 2.605551 with multiplicity 4"));
    assert!(text.contains("irrational -4.605551 with multiplicity 4"));
}

#[test]
fn analyze_whole_group_is_edgeless() {
    let out = qsrg(&["analyze", "--group", "Z6", "--subgroup", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("edgeless"));
}

#[test]
fn construction_errors_exit_2() {
    let out = qsrg(&["analyze", "--group", "Q8"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("parse error at 0"));
    assert_eq!(qsrg(&["analyze", "--group", "Z17"]).status.code(), Some(2));
    assert_eq!(
        qsrg(&["analyze", "--group", "Z6", "--subgroup", "9"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        qsrg(&["verify", "--theorem", "nope"]).status.code(),
        Some(2)
    );
    assert_eq!(qsrg(&["bogus"]).status.code(), Some(2));
}

#[test]
fn table_file_groups() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("z3.txt");
    std::fs::write(&path, "3\n0 1 2\n1 2 0\n2 0 1\nlabels: e a b\n").unwrap();
    let spec = format!("@{}", path.display());
    let out = qsrg(&["export", "--group", &spec, "--subgroup", "a"]);
    assert_eq!(out.status.code(), Some(0));
    // H = G: nine isolated vertices.
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 10);
    assert!(text.lines().skip(1).all(|l| l == "000000000"));
}

#[test]
fn verify_single_tag_passes() {
    let out = qsrg(&["verify", "--max-order", "8", "--theorem", "closed-form"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("PASS closed-form"));
}

#[test]
fn verify_catches_injected_fault() {
    let out = qsrg(&[
        "verify",
        "--max-order",
        "6",
        "--theorem",
        "perron",
        "--inject-fault",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("failure [perron]"));
}

#[test]
fn verify_alpha_fails_on_non_normal_subgroups() {
    let out = qsrg(&[
        "verify",
        "--max-order",
        "6",
        "--theorem",
        "alpha",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    for f in v["failures"].as_array().unwrap() {
        assert!(f["group"] == "S3" || f["group"] == "D3", "{f}");
    }
}

#[test]
fn sweep_csv_is_deterministic() {
    let a = qsrg(&["sweep", "--max-order", "8", "--format", "csv"]);
    let b = qsrg(&[
        "sweep",
        "--max-order",
        "8",
        "--format",
        "csv",
        "--jobs",
        "1",
    ]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "group,subgroup,n,k,ell,normal,integral,kappa,grade,spectrum,closed_form_match,note"
    );
    assert!(text.contains("Z6,\"{0,3}\",6,2,3,true,true,5,3,"));
    assert_eq!(qsrg(&["sweep", "--max-order", "17"]).status.code(), Some(2));
}

#[test]
fn compare_isospectral_pair() {
    let out = qsrg(&[
        "compare",
        "--group",
        "Z8",
        "--subgroup",
        "2",
        "--group2",
        "Z4xZ2",
        "--subgroup2",
        "1,4",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("isospectral yes"));
    assert!(text.contains("verdict isospectral+"));
    let same = qsrg(&[
        "compare",
        "--group",
        "Z6",
        "--subgroup",
        "3",
        "--group2",
        "Z6",
        "--subgroup2",
        "3",
    ]);
    assert!(stdout(&same).contains("verdict isospectral+indistinguishable"));
}
