mod common;

use common::scenarios::*;

#[test]
fn corpus_files_are_byte_identical_across_runs() {
    let stores = corpus_stores();
    let a = corpus_bytes(&stores);
    let b = corpus_bytes(&corpus_stores());
    assert_eq!(a, b);
    assert!(a.iter().all(|f| !f.is_empty()));
}

#[test]
fn retrieval_from_train_never_leaks_eval_statements() {
    let n = leakage_check(&corpus_stores()).unwrap();
    assert!(n > 0);
}

#[test]
fn reranking_by_execution_raises_top1_run_rate() {
    let d = directional_rerank();
    assert!(d.runnable_tasks > 0, "{d:?}");
    assert!(d.reranked_run >= d.baseline_run, "{d:?}");
    assert!(!d.improved.is_empty(), "{d:?}");
    assert!(d.worsened.is_empty(), "{d:?}");
}
