//! End-to-end stages shared by the command line and the tests.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::elements::{
    detect_tests, filter_corpus, split_corpus, CodeElementStore, CompletionTask, FilterConfig, FilterReport, Partition,
    SplitCorpus, SplitError,
};
use crate::exec::{rerank_with_outcomes, ExecError, ExecOutcome, ExecStatus, Executor};
use crate::metrics::EvalRecord;
use crate::predictor::{predict_retrieval, CandidateList, PredictionRecord};
use crate::semantics::{build_statement_index, extract_semantics, SemanticsConfig, StatementIndex};

/// Filters the tests of one project and attaches semantics to every task.
/// Tasks whose semantics cannot be extracted keep `semantics: None`.
pub fn extract_project(
    store: &CodeElementStore,
    filter: &FilterConfig,
    semantics: &SemanticsConfig,
) -> (Vec<CompletionTask>, FilterReport) {
    let (mut tasks, report) = filter_corpus(&detect_tests(store), store, filter);
    let index = build_statement_index(store, semantics.bm25);
    tasks
        .par_iter_mut()
        .for_each(|t| match extract_semantics(t, store, &index, semantics) {
            Ok(s) => t.semantics = Some(s),
            Err(e) => log::warn!("{}: {e}", t.id),
        });
    (tasks, report)
}

/// Extracts every project and partitions the tasks by project.
pub fn extract_corpus(
    stores: &[CodeElementStore],
    assignment: &BTreeMap<String, Partition>,
    filter: &FilterConfig,
    semantics: &SemanticsConfig,
) -> Result<(SplitCorpus, FilterReport), SplitError> {
    if let Some(s) = stores.iter().find(|s| !assignment.contains_key(s.project())) {
        return Err(SplitError::UnknownProject(s.project().to_string()));
    }
    let per_project: Vec<(Vec<CompletionTask>, FilterReport)> = stores
        .par_iter()
        .map(|s| extract_project(s, filter, semantics))
        .collect();
    let mut tasks = Vec::new();
    let mut report = FilterReport::default();
    for (t, r) in per_project {
        tasks.extend(t);
        report.extend(r);
    }
    Ok((split_corpus(tasks, assignment)?, report))
}

/// Projects assigned to a partition.
pub fn projects_in(assignment: &BTreeMap<String, Partition>, p: Partition) -> BTreeSet<&str> {
    assignment
        .iter()
        .filter(|(_, v)| **v == p)
        .map(|(k, _)| k.as_str())
        .collect()
}

pub fn predict_all(tasks: &[CompletionTask], index: &StatementIndex, k: usize) -> Vec<PredictionRecord> {
    tasks
        .par_iter()
        .map(|t| PredictionRecord {
            task_id: t.id.clone(),
            candidates: predict_retrieval(t, index, k).candidates,
        })
        .collect()
}

/// Execution results of one task: the gold statement and every candidate,
/// candidates in their final order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExecutionRecord {
    pub task_id: String,
    pub gold: ExecOutcome,
    /// Candidate tokens, aligned with `candidates`.
    pub tokens: Vec<Vec<String>>,
    pub candidates: Vec<ExecOutcome>,
}

/// Executes the gold statement and the candidates of a task, then reorders
/// the candidates by outcome unless `rerank` is false.
pub fn execute_and_rerank(
    executor: &Executor,
    task: &CompletionTask,
    list: &CandidateList,
    rerank: bool,
) -> Result<(CandidateList, ExecutionRecord), ExecError> {
    let gold = executor.evaluate(task, task.gold())?;
    let outcomes = executor.evaluate_all(task, list)?;
    let (list, outcomes) = if rerank {
        rerank_with_outcomes(list, &outcomes)?
    } else {
        (list.clone(), outcomes)
    };
    let tokens = list.candidates.iter().map(|c| c.tokens.clone()).collect();
    let record = ExecutionRecord {
        task_id: task.id.clone(),
        gold,
        tokens,
        candidates: outcomes,
    };
    Ok((list, record))
}

/// Joins tasks with their predictions and optional execution results.
/// Tasks without predictions get an empty list.
pub fn eval_records(
    tasks: &[CompletionTask],
    predictions: &BTreeMap<String, CandidateList>,
    executions: &BTreeMap<String, ExecutionRecord>,
) -> Vec<EvalRecord> {
    tasks
        .iter()
        .map(|t| {
            let list = predictions.get(&t.id);
            let exec = executions.get(&t.id);
            EvalRecord {
                task_id: t.id.clone(),
                gold: t.gold().to_vec(),
                predictions: list.map_or_else(Vec::new, |l| l.candidates.iter().map(|c| c.tokens.clone()).collect()),
                outcomes: exec.map_or_else(Vec::new, |e| e.candidates.iter().map(|o| Some(o.status)).collect()),
                runnable_gold: exec.is_some_and(|e| e.gold.status == ExecStatus::Runnable),
                first_assertion: t.first_assertion,
            }
        })
        .collect()
}
