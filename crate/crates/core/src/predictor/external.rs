//! Predictions produced outside this crate, one JSON record per line.

use std::collections::{BTreeMap, HashSet};
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use super::candidates::{CandidateList, PredictionRecord};

#[derive(Debug, thiserror::Error)]
pub enum ExternalError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("line {line}: {message}")]
    MalformedRecord { line: usize, message: String },
    #[error("line {line}: unknown task id {id}")]
    UnknownTaskId { line: usize, id: String },
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ExternalPredictions {
    pub lists: BTreeMap<String, CandidateList>,
    /// Task ids whose candidates arrived out of score order.
    pub resorted: Vec<String>,
}

/// How candidate order in a predictions file is interpreted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ListOrder {
    /// Lists must be in descending score order and are re-sorted if not.
    ByScore,
    /// Lists are already ranked, for instance after reranking.
    AsGiven,
}

pub fn parse_predictions<R: BufRead>(
    reader: R,
    known: &HashSet<&str>,
    k: usize,
) -> Result<ExternalPredictions, ExternalError> {
    parse_predictions_with(reader, known, k, ListOrder::ByScore)
}

pub fn parse_predictions_with<R: BufRead>(
    reader: R,
    known: &HashSet<&str>,
    k: usize,
    order: ListOrder,
) -> Result<ExternalPredictions, ExternalError> {
    let mut out = ExternalPredictions::default();
    for (i, line) in reader.lines().enumerate() {
        let line_no = i + 1;
        let line = line.map_err(|e| ExternalError::MalformedRecord {
            line: line_no,
            message: e.to_string(),
        })?;
        if line.trim().is_empty() {
            continue;
        }
        let malformed = |message: String| ExternalError::MalformedRecord { line: line_no, message };
        let record: PredictionRecord = serde_json::from_str(&line).map_err(|e| malformed(e.to_string()))?;
        if !known.contains(record.task_id.as_str()) {
            return Err(ExternalError::UnknownTaskId {
                line: line_no,
                id: record.task_id,
            });
        }
        if record.candidates.len() > k {
            return Err(malformed(format!(
                "{} candidates, at most {k} allowed",
                record.candidates.len()
            )));
        }
        if record.candidates.iter().any(|c| c.score.is_nan()) {
            return Err(malformed("score is NaN".into()));
        }
        if out.lists.contains_key(&record.task_id) {
            return Err(malformed(format!("duplicate task id {}", record.task_id)));
        }
        let mut list = CandidateList {
            candidates: record.candidates,
        };
        if order == ListOrder::ByScore && !list.is_sorted() {
            log::warn!(
                "line {line_no}: candidates of {} not sorted by score, re-sorting",
                record.task_id
            );
            list.sort();
            out.resorted.push(record.task_id.clone());
        }
        out.lists.insert(record.task_id, list);
    }
    Ok(out)
}

pub fn load_external_predictions(
    path: &Path,
    known: &HashSet<&str>,
    k: usize,
) -> Result<ExternalPredictions, ExternalError> {
    let file = std::fs::File::open(path).map_err(|source| ExternalError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_predictions(BufReader::new(file), known, k)
}

/// Writes lists in key order, one record per line.
pub fn write_predictions<W: Write>(mut w: W, lists: &BTreeMap<String, CandidateList>) -> std::io::Result<()> {
    for (id, list) in lists {
        let record = PredictionRecord {
            task_id: id.clone(),
            candidates: list.candidates.clone(),
        };
        serde_json::to_writer(&mut w, &record)?;
        w.write_all(b"\n")?;
    }
    Ok(())
}
