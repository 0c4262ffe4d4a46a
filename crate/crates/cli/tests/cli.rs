use std::process::Command;

fn srd(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_srd")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn verify_exit_codes() {
    let (code, text) = srd(&["verify", "--field", "4", "--theorem", "unique-planes"]);
    assert_eq!(code, 0);
    assert!(text.contains("\"status\": \"pass\""));
    assert_eq!(srd(&["verify", "--field", "6"]).0, 2);
    assert_eq!(srd(&["verify", "--field", "3", "--theorem", "r2n-h1"]).0, 2);
    assert_eq!(srd(&["verify", "--field", "4", "--theorem", "nope"]).0, 2);
    assert_eq!(srd(&["frobnicate"]).0, 2);
}

#[test]
fn atlas_emit_odd_lists_thirty_table_rows() {
    let (code, text) = srd(&["atlas", "emit", "--field", "3", "--format", "md"]);
    assert_eq!(code, 0);
    let rows = text.lines().filter(|l| l.starts_with("| o_") || l.starts_with("| Omega_")).count();
    assert_eq!(rows, 30);
    assert_eq!(srd(&["atlas", "emit", "--field", "3", "--id", "Sigma_16"]).0, 2);
}

#[test]
fn classify_identity_code() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("id.json");
    std::fs::write(&path, r#"{"field":"3","basis":[[[1,0,0],[0,1,0],[0,0,1]]]}"#).unwrap();
    let (code, text) = srd(&["classify", "code", "--input", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["dim"], 1);
    assert_eq!(v["min_distance"], 3);
    assert_eq!(v["is_msrd"], false);
    assert_eq!(v["is_complete"], false);
    assert_eq!(v["class"], "NotComplete");
    std::fs::write(&path, r#"{"field":"3","basis":[[[1,2,0],[0,1,0],[0,0,1]]]}"#).unwrap();
    assert_eq!(srd(&["classify", "code", "--input", path.to_str().unwrap()]).0, 2);
}

#[test]
fn csv_is_identical_across_job_counts() {
    let a = srd(&["verify", "--field", "3", "--theorem", "solids", "--format", "csv", "--jobs", "1"]);
    let b = srd(&["verify", "--field", "3", "--theorem", "solids", "--format", "csv", "--jobs", "3"]);
    assert_eq!(a, b);
    assert!(a.1.starts_with("id,field,expected,computed,status,seconds"));
}

#[test]
fn enumerate_reconciles_with_total() {
    let (code, text) = srd(&["enumerate", "--field", "2", "--dim", "3"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    // Gaussian binomial [6 choose 3]_2.
    assert_eq!(v["total"], 1395);
    let sum: u64 = v["signatures"].as_array().unwrap().iter().map(|s| s["count"].as_u64().unwrap()).sum();
    assert_eq!(sum, 1395);
}

#[test]
fn acceptance_small_field() {
    let (code, text) = srd(&["acceptance", "--q", "2", "--format", "md"]);
    assert_eq!(code, 0, "{text}");
    assert_eq!(text.lines().count(), 11);
}
