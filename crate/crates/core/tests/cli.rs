use std::process::{Command, Output};

fn m2rank(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_m2rank"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn expand_formats() {
    let o = m2rank(&["expand", "--expr", "poch(q; q; inf)", "--order", "7"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "0\t1\n1\t-1\n2\t-1\n5\t1\n7\t1\n# O(q^8)\n");

    let o = m2rank(&[
        "expand",
        "--expr",
        "poch(q; q; inf)",
        "--order",
        "5",
        "--bfile",
    ]);
    assert_eq!(stdout(&o), "0 1\n1 -1\n2 -1\n3 0\n4 0\n5 1\n");

    let o = m2rank(&["expand", "--expr", "1 - q", "--order", "2", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["coeffs"], serde_json::json!(["1", "-1", "0"]));
    assert_eq!(v["variable"], "q");
}

#[test]
fn dissect_and_tables() {
    let o = m2rank(&[
        "dissect",
        "--expr",
        "rankgf(1,5) - rankgf(2,5)",
        "--mod",
        "5",
        "--residue",
        "1",
        "--order",
        "30",
    ]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "# O(q^31)\n");

    let analytic = m2rank(&["table", "--ell", "3", "--nmax", "20"]);
    let brute = m2rank(&["bruteforce", "--nmax", "20", "--ell", "3"]);
    assert!(analytic.status.success() && brute.status.success());
    assert_eq!(stdout(&analytic), stdout(&brute));
    assert!(stdout(&brute).starts_with("n\ts\tcount\n0\t0\t1\n"));

    let o = m2rank(&["bruteforce", "--nmax", "4", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["counts"][4]["0"], 1);
}

#[test]
fn exit_codes() {
    assert_eq!(
        m2rank(&["verify", "--id", "JTP@(-1,1,2)", "--order", "150"])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(
        m2rank(&["verify", "--lhs", "mult()", "--rhs", "1", "--order", "10"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(m2rank(&["verify", "--id", "NOPE"]).status.code(), Some(2));
    let o = m2rank(&["expand", "--expr", "poch(q; q)"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains('^'));
    assert_eq!(m2rank(&["expand"]).status.code(), Some(2));
    assert_eq!(
        m2rank(&["dissect", "--expr", "q", "--mod", "3", "--residue", "3"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn verify_all_with_catalog_file() {
    let dir = tempfile::tempdir().unwrap();
    let cat = dir.path().join("cat.json");
    let report = dir.path().join("report.json");
    std::fs::write(
        &cat,
        r#"[{"id":"EULER","lhs":"poch(q; q; inf)","rhs":"1 - q - q^2 + q^5 + q^7","default_order":11,"note":""},
            {"id":"BAD","lhs":"q","rhs":"0","default_order":5,"note":""}]"#,
    )
    .unwrap();
    let args = [
        "verify-all",
        "--order",
        "20",
        "--catalog",
        cat.to_str().unwrap(),
        "--report",
        report.to_str().unwrap(),
    ];
    let o = m2rank(&args);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL BAD"));
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v["passed"], 1);
    assert_eq!(v["reports"][0]["id"], "BAD");
    assert_eq!(v["reports"][1]["order"], 11);
}

#[test]
fn catalog_dump_loads() {
    let o = m2rank(&["catalog"]);
    let specs = m2rank::identities::load_catalog(&stdout(&o)).unwrap();
    assert_eq!(specs, m2rank::identities::builtin_catalog());
}
