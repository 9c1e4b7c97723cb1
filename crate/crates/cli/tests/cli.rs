use std::process::{Command, Output};

fn qseed(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qseed")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn golden(name: &str) -> serde_json::Value {
    let path = format!("{}/../core/tests/golden/{name}.json", env!("CARGO_MANIFEST_DIR"));
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn build_h_json_matches_golden() {
    let o = qseed(&["build-h", "--family", "dd", "--n", "4", "--r", "4", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v, golden("dd44_h"));
    let o = qseed(&["build-lambda", "--family", "dd", "--n", "4", "--r", "4"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v, golden("dd44_lambda"));
}

#[test]
fn latex_and_csv() {
    let o = qseed(&["build-h", "--family", "frt", "--n", "2", "--r", "3", "--format", "latex"]);
    let s = stdout(&o);
    assert!(s.starts_with("\\left(\\begin{array}{ccc|ccc}"), "{s}");
    assert_eq!(s.matches("\\hline").count(), 1);
    let o = qseed(&["build-h", "--family", "dd", "--n", "2", "--r", "2", "--format", "csv"]);
    assert_eq!(stdout(&o), "0,0,1,0\n0,0,1,1\n-1,-1,0,0\n0,-1,0,0\n");
}

#[test]
fn verify_examples_pass() {
    let o = qseed(&["verify", "inverse", "--family", "dd", "--n", "4", "--r", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("PASS inverse"));
    let o = qseed(&["verify", "seeds", "--family", "dd", "--n", "3", "--r", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("(-2I_8 ; 0_1x8)"), "{}", stdout(&o));
    let o = qseed(&["verify", "all", "--family", "frt", "--n", "2", "--r", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with("PASS")).count(), 6);
}

#[test]
fn seed_document_written() {
    let dir = std::env::temp_dir().join(format!("qseed-seed-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("seed.json");
    let o = qseed(&["verify", "seeds", "--family", "frt", "--n", "2", "--r", "2", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    for key in ["lambda", "bTilde", "c", "frozen", "family", "blockParams"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    assert_eq!(v["frozen"].as_array().unwrap().len(), 3);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn analyze_reports() {
    let o = qseed(&["analyze", "--family", "frt", "--n", "2", "--r", "2", "--m", "3,4"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["corank"], 2);
    assert_eq!(v["degree"]["3"], "3");
    assert_eq!(v["centerGenerators"].as_array().unwrap().len(), 2);
    assert_eq!(v["warnings"].as_array().unwrap().len(), 1);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["build-h", "--family", "zz", "--n", "2", "--r", "2"],
        vec!["build-h", "--family", "dd", "--n", "2"],
        vec!["verify", "bogus", "--family", "dd", "--n", "2", "--r", "2"],
        vec!["verify", "lambda", "--family", "dd", "--n", "2", "--r", "2", "--cap", "0"],
        vec!["sweep", "--n", "5..2"],
        vec!["sweep", "--family", "custom"],
        vec!["frobnicate"],
    ] {
        assert_eq!(qseed(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn sweep_is_deterministic_across_worker_counts() {
    let run = |workers: &str| {
        Command::new(env!("CARGO_BIN_EXE_qseed"))
            .args(["sweep", "--family", "dd,frt,ext", "--n", "2..4", "--r", "2..4", "--format", "json"])
            .env("QSEED_WORKERS", workers)
            .output()
            .unwrap()
    };
    let (a, b) = (run("1"), run("4"));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let rows: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(rows.as_array().unwrap().len(), 27);
    assert!(rows.as_array().unwrap().iter().all(|r| r["passed"] == true));
}

#[test]
fn extended_sweep_counts() {
    let o = qseed(&["sweep", "--family", "ext", "--n", "2..5", "--r", "2..5", "--format", "json"]);
    let rows: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    for row in rows.as_array().unwrap().iter().filter(|r| r["n"] == r["r"]) {
        let n = row["n"].as_u64().unwrap();
        assert_eq!(row["blocks"]["1"], 2 * n - 1);
        assert_eq!(row["blocks"]["2"], (n - 1) * (n - 2) / 2);
    }
}
