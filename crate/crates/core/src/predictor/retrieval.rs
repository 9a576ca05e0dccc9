//! BM25 retrieval baseline over prior-statement contexts.

use std::collections::HashSet;

use super::candidates::{Candidate, CandidateList};
use crate::elements::{CodeElementStore, CompletionTask};
use crate::semantics::{context_of, non_test_entries, task_entries, Bm25Params, StatementIndex};

/// Index over the tests of `train` and the non-test code of `stores`.
pub fn build_retrieval_index(
    stores: &[&CodeElementStore],
    train: &[CompletionTask],
    params: Bm25Params,
) -> StatementIndex {
    let mut entries = task_entries(train);
    for s in stores {
        entries.extend(non_test_entries(s));
    }
    StatementIndex::new(entries, params)
}

/// Top `k` distinct statements following the contexts most similar to the
/// task's last two prior statements. Entries scoring zero are skipped.
pub fn predict_retrieval(task: &CompletionTask, index: &StatementIndex, k: usize) -> CandidateList {
    let mut seen: HashSet<&[String]> = HashSet::new();
    let mut candidates = Vec::new();
    for (i, score) in index.ranked(&context_of(task.prior())) {
        if candidates.len() == k || score <= 0.0 {
            break;
        }
        let statement = &index.entries()[i].statement;
        if seen.insert(statement.as_slice()) {
            candidates.push(Candidate::new(statement.clone(), score));
        }
    }
    CandidateList { candidates }
}
