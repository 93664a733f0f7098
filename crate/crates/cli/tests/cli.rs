use std::process::Command;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("butterfly").chain(args.iter().copied());
    let code = butterfly_cli::run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn field<'a>(report: &'a str, key: &str) -> Option<&'a str> {
    report
        .lines()
        .find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix(": ")))
}

#[test]
fn bijection_report_counts_central_binomial() {
    let (code, out, _) = run(&[
        "--no-banner",
        "verify",
        "bijection",
        "drt-free-dyck",
        "--n",
        "6",
    ]);
    assert_eq!(code, 0);
    assert_eq!(field(&out, "domain"), Some("924"));
    assert_eq!(field(&out, "codomain"), Some("924"));
    assert_eq!(field(&out, "expected"), Some("924"));
    assert_eq!(field(&out, "verdict"), Some("PASS"));
}

#[test]
fn chung_feller_table_has_constant_rows() {
    let (code, out, _) = run(&[
        "--no-banner",
        "table",
        "chung-feller",
        "--n",
        "4",
        "--format",
        "csv",
    ]);
    assert_eq!(code, 0);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("m,count,catalan"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 5);
    for (m, row) in rows.iter().enumerate() {
        assert_eq!(*row, format!("{m},14,14"));
    }
}

#[test]
fn chain_series() {
    let (code, out, _) = run(&["--no-banner", "series", "chains", "--order", "6"]);
    assert_eq!(code, 0);
    assert_eq!(out, "1,3,12,51,222,978\n");
    let (_, json, _) = run(&[
        "--no-banner",
        "series",
        "chains",
        "--order",
        "3",
        "--format",
        "json",
    ]);
    assert_eq!(json.trim(), r#"["1","3","12"]"#);
}

#[test]
fn banner_goes_to_stderr_only() {
    let (_, out_a, err_a) = run(&["series", "C", "--order", "5"]);
    let (_, out_b, err_b) = run(&["--no-banner", "series", "C", "--order", "5"]);
    assert_eq!(out_a, out_b);
    assert!(err_a.starts_with("butterfly "));
    assert!(err_b.is_empty());
}

#[test]
fn output_is_deterministic() {
    let args = [
        "--no-banner",
        "enumerate",
        "free-schroder",
        "--n",
        "3",
        "--format",
        "json",
    ];
    assert_eq!(run(&args), run(&args));
}

#[test]
fn enumerate_streams_one_structure_per_line() {
    let (code, out, _) = run(&["--no-banner", "enumerate", "dyck", "--n", "3"]);
    assert_eq!(code, 0);
    assert_eq!(
        out.lines().collect::<Vec<_>>(),
        vec!["UUUDDD", "UUDUDD", "UUDDUD", "UDUUDD", "UDUDUD"]
    );
    let (_, trees, _) = run(&["--no-banner", "enumerate", "trees", "--n", "4"]);
    assert_eq!(trees.lines().count(), 14);
    let (_, json, _) = run(&[
        "--no-banner",
        "enumerate",
        "trees",
        "--n",
        "2",
        "--format",
        "json",
    ]);
    let doc: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(doc, serde_json::json!([[[[]]], [[], []]]));
}

#[test]
fn free_dyck_csv_lists_statistics() {
    let (_, out, _) = run(&[
        "--no-banner",
        "enumerate",
        "free-dyck",
        "--n",
        "2",
        "--format",
        "csv",
    ]);
    let mut reader = csv::Reader::from_reader(out.as_bytes());
    let records: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(records.len(), 6);
    let ddu = records.iter().find(|r| &r[1] == "DDUU").unwrap();
    assert_eq!((&ddu[2], &ddu[3]), ("2", "1"));
}

#[test]
fn verify_all_passes_at_five() {
    let (code, out, _) = run(&["--no-banner", "verify", "all", "--n", "5"]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(field(&out, "targets"), Some("19"));
    assert!(!out.contains("FAIL"));
}

#[test]
fn involution_report_lists_counts() {
    let (code, out, _) = run(&["--no-banner", "verify", "involution", "dyck", "--n", "4"]);
    assert_eq!(code, 0);
    assert_eq!(field(&out, "paths_checked"), Some("70"));
    assert_eq!(field(&out, "fixed_points"), Some("0"));
    assert_eq!(field(&out, "signed_sum"), Some("0"));
}

#[test]
fn riordan_rows_and_application() {
    let (code, out, _) = run(&[
        "--no-banner",
        "riordan",
        "--g",
        "B",
        "--f",
        "L",
        "--rows",
        "5",
        "--apply",
        "nat",
    ]);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        "1\n2,1\n6,5,1\n20,22,8,1\n70,93,47,11,1\napply: 1,4,19,92,446\n"
    );
    let (_, json, _) = run(&[
        "--no-banner",
        "riordan",
        "--g",
        "B",
        "--f",
        "L",
        "--rows",
        "2",
        "--format",
        "json",
    ]);
    let doc: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(doc["rows"], serde_json::json!([["1"], ["2", "1"]]));
}

#[test]
fn chain_report_csv_columns() {
    let (code, out, _) = run(&[
        "--no-banner",
        "chains",
        "asymptotic",
        "--n",
        "2",
        "--format",
        "csv",
    ]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(
        lines[0],
        "n,H_n,R_n,average_num,average_den,average_decimal"
    );
    assert_eq!(lines[2], "1,3,4,4,3,1.33333333333");
    let (_, avg, _) = run(&["--no-banner", "chains", "average", "--n", "50"]);
    assert!(avg.contains("9.83311292963"), "{avg}");
    let (_, dist, _) = run(&[
        "--no-banner",
        "chains",
        "size-dist",
        "--n",
        "2",
        "--format",
        "csv",
    ]);
    assert_eq!(dist, "k,chains\n1,6\n2,5\n3,1\n");
}

#[test]
fn usage_and_domain_errors_exit_two() {
    let (code, _, err) = run(&["--no-banner", "series", "nope"]);
    assert_eq!(code, 2);
    assert!(err.contains("nope"));
    let (code, _, err) = run(&["--no-banner", "enumerate", "dyck"]);
    assert_eq!(code, 2);
    assert!(err.contains("Usage"));
    let (code, _, _) = run(&["--no-banner", "verify", "bijection", "unknown", "--n", "2"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["--no-banner", "verify", "identity", "narayana", "--n", "0"]);
    assert_eq!(code, 2);
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("verify"));
}

#[test]
fn size_cap_comes_from_environment() {
    let bin = env!("CARGO_BIN_EXE_butterfly");
    let capped = Command::new(bin)
        .args(["--no-banner", "enumerate", "trees", "--n", "4"])
        .env("BUTTERFLY_MAX_N", "3")
        .output()
        .unwrap();
    assert_eq!(capped.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&capped.stderr).contains("capacity"));
    let allowed = Command::new(bin)
        .args(["--no-banner", "enumerate", "trees", "--n", "3"])
        .env("BUTTERFLY_MAX_N", "3")
        .output()
        .unwrap();
    assert_eq!(allowed.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&allowed.stdout).lines().count(), 5);
    let default_cap = Command::new(bin)
        .args(["--no-banner", "enumerate", "free-dyck", "--n", "11"])
        .env_remove("BUTTERFLY_MAX_N")
        .output()
        .unwrap();
    assert_eq!(default_cap.status.code(), Some(2));
}
