//! Reordering candidates by execution outcome.

use super::run::{ExecOutcome, ExecStatus};
use super::ExecError;
use crate::predictor::CandidateList;

/// Stable order: runnable, then compilable, then the rest; descending
/// score within each status.
pub fn rerank_order(scores: &[f64], statuses: &[ExecStatus]) -> Result<Vec<usize>, ExecError> {
    if scores.len() != statuses.len() {
        return Err(ExecError::LengthMismatch {
            candidates: scores.len(),
            outcomes: statuses.len(),
        });
    }
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| statuses[b].cmp(&statuses[a]).then(scores[b].total_cmp(&scores[a])));
    Ok(order)
}

/// Reranked candidates with their outcomes carried along.
pub fn rerank_with_outcomes(
    list: &CandidateList,
    outcomes: &[ExecOutcome],
) -> Result<(CandidateList, Vec<ExecOutcome>), ExecError> {
    let scores: Vec<f64> = list.candidates.iter().map(|c| c.score).collect();
    let statuses: Vec<ExecStatus> = outcomes.iter().map(|o| o.status).collect();
    let order = rerank_order(&scores, &statuses)?;
    Ok((
        CandidateList {
            candidates: order.iter().map(|&i| list.candidates[i].clone()).collect(),
        },
        order.iter().map(|&i| outcomes[i].clone()).collect(),
    ))
}

pub fn rerank(list: &CandidateList, outcomes: &[ExecOutcome]) -> Result<CandidateList, ExecError> {
    rerank_with_outcomes(list, outcomes).map(|(l, _)| l)
}
