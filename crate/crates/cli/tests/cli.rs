use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures/projects")
        .join(name)
}

fn toolchain() -> PathBuf {
    std::env::var_os("TESTCOMP_TOOLCHAIN")
        .or_else(|| std::env::var_os("JAVA_HOME"))
        .map_or_else(|| PathBuf::from("/opt/jvmtool"), PathBuf::from)
}

fn testcomp(dir: &Path, args: &[&str]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_testcomp"));
    cmd.current_dir(dir).args(["--config", "pipeline.toml"]).args(args);
    cmd.output().unwrap()
}

fn ok(dir: &Path, args: &[&str]) -> String {
    let out = testcomp(dir, args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn workspace(config: &str) -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("pipeline.toml"), config).unwrap();
    dir
}

fn read(dir: &Path, file: &str) -> String {
    std::fs::read_to_string(dir.join(file)).unwrap()
}

fn json(dir: &Path, file: &str) -> Value {
    serde_json::from_str(&read(dir, file)).unwrap()
}

const COUNTER: &str = r#"
seed = 3
[split]
countertrain = "train"
countereval = "eval"
"#;

#[test]
fn full_pipeline_reranks_by_execution() {
    let ws = workspace(COUNTER);
    let d = ws.path();
    let tc = toolchain();
    let tc = tc.to_str().unwrap();
    ok(
        d,
        &[
            "collect",
            fixture("countertrain").to_str().unwrap(),
            fixture("countereval").to_str().unwrap(),
            "--out",
            "stores",
        ],
    );
    ok(
        d,
        &[
            "extract",
            "--store",
            "stores/countertrain.store.json",
            "--store",
            "stores/countereval.store.json",
            "--out",
            "corpus",
        ],
    );
    ok(
        d,
        &[
            "predict",
            "--tasks",
            "corpus/eval.jsonl",
            "--train",
            "corpus/train.jsonl",
            "--store",
            "stores/countertrain.store.json",
            "--out",
            "pred.jsonl",
        ],
    );
    let rerank = |extra: &[&str], out: &str, outcomes: &str| {
        let mut args = vec![
            "--toolchain",
            tc,
            "rerank",
            "--predictions",
            "pred.jsonl",
            "--tasks",
            "corpus/eval.jsonl",
        ];
        args.extend([
            "--store",
            "stores/countereval.store.json",
            "--out",
            out,
            "--outcomes",
            outcomes,
        ]);
        args.extend(extra);
        ok(d, &args);
    };
    rerank(&["--no-rerank"], "plain.jsonl", "plain-outcomes.jsonl");
    assert_eq!(read(d, "plain.jsonl"), read(d, "pred.jsonl"));
    rerank(&[], "reranked.jsonl", "outcomes.jsonl");
    assert_ne!(read(d, "reranked.jsonl"), read(d, "pred.jsonl"));
    let table = ok(
        d,
        &[
            "eval",
            "--predictions",
            "reranked.jsonl",
            "--outcomes",
            "outcomes.jsonl",
            "--tasks",
            "corpus/eval.jsonl",
            "--baseline",
            "pred.jsonl",
            "--baseline-outcomes",
            "plain-outcomes.jsonl",
            "--subset",
            "runnable",
            "--out",
            "report.json",
        ],
    );
    assert!(table.contains("runnable"), "{table}");
    let report = json(d, "report.json");
    let runnable = &report["report"]["subsets"][0];
    assert_eq!(runnable["subset"], "runnable");
    let reranked_run = runnable["pct_run"].as_f64().unwrap();
    ok(
        d,
        &[
            "eval",
            "--predictions",
            "pred.jsonl",
            "--outcomes",
            "plain-outcomes.jsonl",
            "--tasks",
            "corpus/eval.jsonl",
            "--subset",
            "runnable",
            "--out",
            "base.json",
        ],
    );
    let base_run = json(d, "base.json")["report"]["subsets"][0]["pct_run"]
        .as_f64()
        .unwrap();
    assert!(reranked_run > base_run, "{reranked_run} vs {base_run}");
    assert_eq!(report["seed"], 3);
    let meta = json(d, "report.json.meta.json");
    assert_eq!(meta["config_hash"], report["config_hash"]);
    assert_eq!(meta["command"], "eval");
    assert!(!report["report"]["significance"].as_array().unwrap().is_empty());
}

#[test]
fn gmoperation_pipeline_without_execution() {
    let ws = workspace("[split]\ngmoperation = \"eval\"\n");
    let d = ws.path();
    ok(
        d,
        &["collect", fixture("gmoperation").to_str().unwrap(), "--out", "stores"],
    );
    ok(
        d,
        &["extract", "--store", "stores/gmoperation.store.json", "--out", "corpus"],
    );
    let first = read(d, "corpus/eval.jsonl");
    assert!(!first.is_empty());
    assert!(read(d, "corpus/train.jsonl").is_empty());
    assert!(read(d, "corpus/filter-report.tsv").starts_with("project\ttest_id"));
    ok(
        d,
        &["extract", "--store", "stores/gmoperation.store.json", "--out", "again"],
    );
    assert_eq!(read(d, "again/eval.jsonl"), first);
    assert_eq!(
        json(d, "again/eval.jsonl.meta.json")["config_hash"],
        json(d, "corpus/eval.jsonl.meta.json")["config_hash"]
    );

    // gold statements as external predictions score perfectly
    let mut lines = String::new();
    for line in first.lines() {
        let task: Value = serde_json::from_str(line).unwrap();
        let gold = &task["statements"][task["stmt_index"].as_u64().unwrap() as usize];
        lines.push_str(
            &serde_json::json!({"task_id": task["id"], "candidates": [{"tokens": gold, "score": 1.0}]}).to_string(),
        );
        lines.push('\n');
    }
    std::fs::write(d.join("gold.jsonl"), lines).unwrap();
    ok(
        d,
        &[
            "predict",
            "--tasks",
            "corpus/eval.jsonl",
            "--external",
            "gold.jsonl",
            "--out",
            "pred.jsonl",
        ],
    );
    ok(
        d,
        &[
            "eval",
            "--predictions",
            "pred.jsonl",
            "--tasks",
            "corpus/eval.jsonl",
            "--out",
            "report.json",
            "--scale",
            "100",
        ],
    );
    let all = &json(d, "report.json")["report"]["subsets"][0];
    assert_eq!(all["subset"], "all");
    for m in ["xm", "acc_at_10", "bleu", "codebleu", "edit_sim", "rouge_l"] {
        assert!((all[m].as_f64().unwrap() - 100.0).abs() < 1e-9, "{m} = {}", all[m]);
    }
    assert!(all["pct_run"].is_null());
}

#[test]
fn unknown_task_id_is_an_error() {
    let ws = workspace("[split]\ngmoperation = \"eval\"\n");
    let d = ws.path();
    ok(
        d,
        &["collect", fixture("gmoperation").to_str().unwrap(), "--out", "stores"],
    );
    ok(
        d,
        &["extract", "--store", "stores/gmoperation.store.json", "--out", "corpus"],
    );
    std::fs::write(d.join("bad.jsonl"), "{\"task_id\": \"nope/0\", \"candidates\": []}\n").unwrap();
    for args in [
        vec![
            "eval",
            "--predictions",
            "bad.jsonl",
            "--tasks",
            "corpus/eval.jsonl",
            "--out",
            "r.json",
        ],
        vec![
            "predict",
            "--tasks",
            "corpus/eval.jsonl",
            "--external",
            "bad.jsonl",
            "--out",
            "p.jsonl",
        ],
    ] {
        let out = testcomp(d, &args);
        assert!(!out.status.success());
        let err = String::from_utf8_lossy(&out.stderr);
        assert!(err.contains("unknown task id nope/0"), "{err}");
    }
    assert!(!d.join("r.json").exists());
}

#[test]
fn bad_arguments_are_rejected() {
    let ws = workspace("[split]\nx = \"train\"\n");
    let d = ws.path();
    let out = testcomp(d, &["--workers", "0", "collect", "nowhere", "--out", "s"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("workers"));
    let out = testcomp(d, &["--subset", "bogus", "collect", "nowhere", "--out", "s"]);
    assert!(!out.status.success());
    std::fs::write(d.join("pipeline.toml"), "unknown_key = 1\n").unwrap();
    assert!(!testcomp(d, &["collect", "nowhere", "--out", "s"]).status.success());
    std::fs::write(d.join("pipeline.toml"), "").unwrap();
    let out = testcomp(d, &["collect", fixture("gmoperation").to_str().unwrap(), "--out", "s"]);
    assert!(out.status.success());
    let out = testcomp(d, &["extract", "--store", "s/gmoperation.store.json", "--out", "c"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("gmoperation"));
}
