use std::collections::{BTreeMap, BTreeSet};

use testcomp_core::elements::{write_jsonl, CodeElementStore, FilterConfig, Partition};
use testcomp_core::exec::{rerank_with_outcomes, ExecConfig, ExecOutcome, ExecStatus, Executor};
use testcomp_core::pipeline::{execute_and_rerank, extract_corpus, predict_all, projects_in};
use testcomp_core::predictor::{build_retrieval_index, predict_retrieval};
use testcomp_core::semantics::{Bm25Params, SemanticsConfig};

pub fn corpus_assignment() -> BTreeMap<String, Partition> {
    [
        ("countertrain", Partition::Train),
        ("gmoperation", Partition::Train),
        ("typezoo", Partition::Train),
        ("deepchain", Partition::Val),
        ("widgets", Partition::Val),
        ("countereval", Partition::Eval),
        ("mathutil", Partition::Eval),
    ]
    .into_iter()
    .map(|(k, v)| (k.to_string(), v))
    .collect()
}

pub fn corpus_stores() -> Vec<CodeElementStore> {
    corpus_assignment().keys().map(|p| super::store(p)).collect()
}

/// Serialized train, val and eval files of one extraction run.
pub fn corpus_bytes(stores: &[CodeElementStore]) -> [Vec<u8>; 3] {
    let (split, _) = extract_corpus(
        stores,
        &corpus_assignment(),
        &FilterConfig::default(),
        &SemanticsConfig::default(),
    )
    .unwrap();
    let mut out: [Vec<u8>; 3] = Default::default();
    for (buf, p) in out.iter_mut().zip([Partition::Train, Partition::Val, Partition::Eval]) {
        write_jsonl(&mut *buf, split.get(p)).unwrap();
    }
    out
}

/// Checks partition purity and that retrieval over the training partition
/// only proposes training statements. Returns the number of eval tasks.
pub fn leakage_check(stores: &[CodeElementStore]) -> Result<usize, String> {
    let assignment = corpus_assignment();
    let (split, _) = extract_corpus(
        stores,
        &assignment,
        &FilterConfig::default(),
        &SemanticsConfig::default(),
    )
    .unwrap();
    let mut seen: BTreeMap<&str, BTreeSet<Partition>> = BTreeMap::new();
    for p in [Partition::Train, Partition::Val, Partition::Eval] {
        for t in split.get(p) {
            seen.entry(t.project.as_str()).or_default().insert(p);
        }
    }
    if let Some((proj, parts)) = seen.iter().find(|(_, v)| v.len() > 1) {
        return Err(format!("{proj} spans {parts:?}"));
    }
    let train = projects_in(&assignment, Partition::Train);
    let train_stores: Vec<&CodeElementStore> = stores.iter().filter(|s| train.contains(s.project())).collect();
    let index = build_retrieval_index(&train_stores, &split.train, Bm25Params::default());
    if let Some(e) = index
        .entries()
        .iter()
        .find(|e| !train.contains(e.origin.project.as_str()))
    {
        return Err(format!("index entry from {}", e.origin.project));
    }
    let train_statements: BTreeSet<&Vec<String>> = index.entries().iter().map(|e| &e.statement).collect();
    for t in &split.eval {
        for c in predict_retrieval(t, &index, 10).candidates {
            if !train_statements.contains(&c.tokens) {
                return Err(format!("{} proposed {:?}, absent from training data", t.id, c.tokens));
            }
        }
    }
    Ok(split.eval.len())
}

#[derive(Debug)]
pub struct Directional {
    pub runnable_tasks: usize,
    pub baseline_run: f64,
    pub reranked_run: f64,
    pub improved: Vec<String>,
    pub worsened: Vec<String>,
    pub seconds: f64,
}

/// Retrieval trained on `countertrain`, evaluated with execution on
/// `countereval`: top-1 %Run before and after reranking.
pub fn directional_rerank() -> Directional {
    let started = std::time::Instant::now();
    let assignment: BTreeMap<String, Partition> = [
        ("countertrain".to_string(), Partition::Train),
        ("countereval".to_string(), Partition::Eval),
    ]
    .into();
    let stores = vec![super::store("countertrain"), super::store("countereval")];
    let (split, _) = extract_corpus(
        &stores,
        &assignment,
        &FilterConfig::default(),
        &SemanticsConfig::default(),
    )
    .unwrap();
    let index = build_retrieval_index(&[&stores[0]], &split.train, Bm25Params::default());
    let predictions = predict_all(&split.eval, &index, 10);
    let executor = Executor::new(&stores[1], &[], super::toolchain(), ExecConfig::default()).unwrap();
    let mut d = Directional {
        runnable_tasks: 0,
        baseline_run: 0.0,
        reranked_run: 0.0,
        improved: vec![],
        worsened: vec![],
        seconds: 0.0,
    };
    for (task, pred) in split.eval.iter().zip(&predictions) {
        let list = testcomp_core::predictor::CandidateList {
            candidates: pred.candidates.clone(),
        };
        let (_, plain) = execute_and_rerank(&executor, task, &list, false).unwrap();
        if plain.gold.status != ExecStatus::Runnable {
            continue;
        }
        let (_, reranked) = rerank_with_outcomes(&list, &plain.candidates).unwrap();
        let top = |o: &[ExecOutcome]| o.first().is_some_and(|o| o.status == ExecStatus::Runnable);
        let (before, after) = (top(&plain.candidates), top(&reranked));
        d.runnable_tasks += 1;
        d.baseline_run += f64::from(u8::from(before));
        d.reranked_run += f64::from(u8::from(after));
        if after && !before {
            d.improved.push(task.id.clone());
        }
        if before && !after {
            d.worsened.push(task.id.clone());
        }
    }
    d.seconds = started.elapsed().as_secs_f64();
    if d.runnable_tasks > 0 {
        d.baseline_run *= 100.0 / d.runnable_tasks as f64;
        d.reranked_run *= 100.0 / d.runnable_tasks as f64;
    }
    d
}
