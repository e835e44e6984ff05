use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sigmaeq"))
        .args(args)
        .env("SIGMAEQ_CACHE_DIR", cache)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn seq_v_prints_terms() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["seq", "v", "--count", "7"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "1,2,4,15,219,47863,2290845187");
    for m in ["definition", "rec1", "rec3"] {
        let o = run(dir.path(), &["seq", "v", "--count", "7", "--method", m]);
        assert_eq!(stdout(&o).trim(), "1,2,4,15,219,47863,2290845187", "{m}");
    }
}

#[test]
fn enumerate_json_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("n5k3.json");
    let o = run(
        dir.path(),
        &[
            "enumerate",
            "--n",
            "5",
            "--k",
            "3",
            "--format",
            "json",
            "--output",
            file.to_str().unwrap(),
        ],
    );
    assert!(o.status.success());
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&file).unwrap()).unwrap();
    assert_eq!(doc["count"], 27);
    assert_eq!(doc["complete"], true);
    assert_eq!(doc["stats"]["M"], "218");
    assert_eq!(
        doc["solutions"][0],
        serde_json::json!(["1", "2", "4", "15", "218"])
    );

    let o = run(
        dir.path(),
        &[
            "verify",
            "--input",
            file.to_str().unwrap(),
            "--format",
            "json",
        ],
    );
    assert!(o.status.success());
    let report: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["ok"], true);
    assert_eq!(report["reports"].as_array().unwrap().len(), 27);
}

#[test]
fn cached_result_matches_fresh_run() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["enumerate", "--n", "6", "--k", "4", "--format", "json"];
    let first = run(dir.path(), &args);
    let cached = run(dir.path(), &args);
    let mut fresh_args = args.to_vec();
    fresh_args.push("--no-cache");
    let fresh = run(dir.path(), &fresh_args);
    assert!(first.status.success() && cached.status.success() && fresh.status.success());
    assert_eq!(first.stdout, cached.stdout);
    assert_eq!(cached.stdout, fresh.stdout);

    let entries: Vec<_> = walk(dir.path());
    assert_eq!(entries.len(), 1, "{entries:?}");
    assert!(entries[0].ends_with("solutions_n6_k4.json"));
}

fn walk(p: &Path) -> Vec<String> {
    let mut out = Vec::new();
    for e in std::fs::read_dir(p).unwrap() {
        let path = e.unwrap().path();
        if path.is_dir() {
            out.extend(walk(&path));
        } else {
            out.push(path.display().to_string());
        }
    }
    out
}

#[test]
fn corrupted_cache_is_ignored() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["enumerate", "--n", "4", "--k", "2", "--format", "json"];
    let good = run(dir.path(), &args);
    let file = walk(dir.path()).pop().unwrap();
    std::fs::write(&file, r#"{"n":4,"k":2,"count":1,"complete":true,"stats":{"M":"15","N0":"1","N2":"1"},"solutions":[["1","2","4","15"]]}"#).unwrap();
    let again = run(dir.path(), &args);
    assert!(again.status.success());
    assert_eq!(good.stdout, again.stdout);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(
        run(d, &["verify", "--n", "4", "--k", "2"]).status.code(),
        Some(0)
    );
    assert_eq!(
        run(d, &["enumerate", "--n", "3", "--k", "3"]).status.code(),
        Some(2)
    );
    assert_eq!(run(d, &["factor-count", "abc"]).status.code(), Some(2));
    assert_eq!(
        run(d, &["verify", "--k", "2", "--tuple", "1,2,4,15"])
            .status
            .code(),
        Some(3)
    );
    let budget = run(
        d,
        &["enumerate", "--n", "6", "--k", "4", "--max-nodes", "3"],
    );
    assert_eq!(budget.status.code(), Some(4));
    assert!(
        !walk(d).iter().any(|f| f.ends_with("solutions_n6_k4.json")),
        "budget exhaustion must not write the cache"
    );
}

#[test]
fn csv_and_text_formats() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(
        dir.path(),
        &[
            "enumerate",
            "--n",
            "4",
            "--k",
            "2",
            "--format",
            "csv",
            "--no-cache",
        ],
    );
    assert_eq!(stdout(&o), "x1,x2,x3,x4\n1,2,4,14\n2,2,2,6\n");
    let o = run(dir.path(), &["count", "--n", "5", "--k", "3", "--no-cache"]);
    assert_eq!(stdout(&o).trim(), "27");
    let o = run(dir.path(), &["factor-count", "12"]);
    assert_eq!(stdout(&o).trim(), "4");
    let o = run(dir.path(), &["construct", "lower-bound", "--n", "5"]);
    assert_eq!(stdout(&o), "(2,2,2,7,46)\n(2,2,2,8,26)\n");
    let o = run(
        dir.path(),
        &[
            "limits", "v", "--terms", "12", "--digits", "15", "--format", "json",
        ],
    );
    let doc: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(doc["value"]
        .as_str()
        .unwrap()
        .starts_with("1.18338202079840"));
    assert_eq!(
        run(
            dir.path(),
            &["limits", "v", "--digits", "40", "--precision-bits", "16"]
        )
        .status
        .code(),
        Some(2)
    );
}
