//! Project-level partitioning of completion tasks.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::filter::CompletionTask;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Partition {
    Train,
    Val,
    Eval,
}

impl Partition {
    pub fn name(self) -> &'static str {
        match self {
            Partition::Train => "train",
            Partition::Val => "val",
            Partition::Eval => "eval",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SplitError {
    #[error("project {0} has no partition assigned")]
    UnknownProject(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct SplitCorpus {
    pub train: Vec<CompletionTask>,
    pub val: Vec<CompletionTask>,
    pub eval: Vec<CompletionTask>,
}

impl SplitCorpus {
    pub fn get(&self, p: Partition) -> &[CompletionTask] {
        match p {
            Partition::Train => &self.train,
            Partition::Val => &self.val,
            Partition::Eval => &self.eval,
        }
    }
}

/// Moves every task into the partition of its project, keeping input order.
pub fn split_corpus(
    tasks: Vec<CompletionTask>,
    assignment: &BTreeMap<String, Partition>,
) -> Result<SplitCorpus, SplitError> {
    let mut out = SplitCorpus::default();
    for t in tasks {
        let p = assignment
            .get(&t.project)
            .ok_or_else(|| SplitError::UnknownProject(t.project.clone()))?;
        match p {
            Partition::Train => out.train.push(t),
            Partition::Val => out.val.push(t),
            Partition::Eval => out.eval.push(t),
        }
    }
    Ok(out)
}
