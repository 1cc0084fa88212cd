use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_teichfuchs"))
}

#[test]
fn empty_locus_message() {
    let out = bin().args(["prototypes", "--D", "4"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("W_D empty for D <= 4"));
}

#[test]
fn unknown_verb() {
    let out = bin().arg("solve").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Usage"));
}

#[test]
fn nilpotence_scan_appends_ledger() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("scan.jsonl");
    let out = bin()
        .args(["nilpotence-scan", "--D", "17", "--eps", "1", "--pmax", "7"])
        .env("TEICHFUCHS_LEDGER", &path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8(out.stdout).unwrap();
    let primes: Vec<u64> = stdout
        .lines()
        .map(|l| serde_json::from_str::<serde_json::Value>(l).unwrap()["p"].as_u64().unwrap())
        .collect();
    assert_eq!(primes, vec![3, 5, 7]);
    let ledger = std::fs::read_to_string(&path).unwrap();
    assert_eq!(ledger.lines().count(), 3);
    let rec: serde_json::Value = serde_json::from_str(ledger.lines().nth(2).unwrap()).unwrap();
    assert_eq!((rec["D"].as_i64(), rec["eps"].as_u64(), rec["p"].as_u64()), (Some(17), Some(1), Some(7)));
    assert_eq!(rec["verdict"], "nilpotent");

    // Re-running appends again.
    let out = bin()
        .args(["nilpotence-scan", "--D", "17", "--pmax", "3", "--jobs", "1"])
        .env("TEICHFUCHS_LEDGER", &path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(&path).unwrap().lines().count(), 4);
}

#[test]
fn empty_scan_writes_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("empty.jsonl");
    let out = bin()
        .args(["nilpotence-scan", "--D", "13", "--pmax", "3"])
        .env("TEICHFUCHS_LEDGER", &path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert!(!path.exists());
}

#[test]
fn unwritable_ledger_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .args(["nilpotence-scan", "--D", "13", "--pmax", "5"])
        .env("TEICHFUCHS_LEDGER", dir.path().join("no/such/dir/l.jsonl"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("ledger"));
}

#[test]
fn reduction_scan_lines() {
    let out = bin().args(["reduction", "--D", "13", "--pmax", "20"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let lines: Vec<serde_json::Value> = String::from_utf8(out.stdout)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert!(!lines.is_empty());
    let p3 = lines.iter().find(|l| l["report"]["p"] == 3).unwrap();
    assert_eq!(p3["report"]["status"], "bad_model");
    let p5 = lines.iter().find(|l| l["report"]["p"] == 5).unwrap();
    assert_eq!(p5["report"]["status"], "good");
}

#[test]
fn pf_printed_mismatch_exits_1() {
    // The derived D = 13 second operator differs from the published one in
    // two coefficients of B.
    let out = bin().args(["pf", "--D", "13", "--form", "2", "--verify-printed", "--json"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["verify_printed"]["exact"], true);
    assert_eq!(v["verify_printed"]["comparison"]["mismatched_powers"], serde_json::json!([0, 1]));
}
