//! Execution-based reranking: each candidate is compiled and run inside an
//! ad-hoc copy of its test class.

pub mod harness;
pub mod process;
pub mod rerank;
pub mod run;
pub mod toolchain;

use std::path::PathBuf;

pub use harness::{synthesize_harness, tokens_to_java, EntryMode, HarnessSpec, ProjectRuntime};
pub use rerank::{rerank, rerank_order, rerank_with_outcomes};
pub use run::{evaluate_candidate, ExecConfig, ExecOutcome, ExecStatus, Runner};
pub use toolchain::{Compiler, Toolchain, TOOLCHAIN_ENV};

use crate::elements::{CodeElementStore, CompletionTask};
use crate::predictor::CandidateList;

#[derive(Debug, thiserror::Error)]
pub enum ExecError {
    #[error("toolchain not found: {0}")]
    ToolchainMissing(String),
    #[error("no source for test class {0}")]
    MissingSource(String),
    #[error("{candidates} candidates but {outcomes} outcomes")]
    LengthMismatch { candidates: usize, outcomes: usize },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Everything needed to execute candidates of one project's tasks.
#[derive(Debug)]
pub struct Executor<'a> {
    pub store: &'a CodeElementStore,
    pub runtime: ProjectRuntime,
    pub toolchain: Toolchain,
    pub config: ExecConfig,
}

impl<'a> Executor<'a> {
    pub fn new(
        store: &'a CodeElementStore,
        dependencies: &[PathBuf],
        toolchain: Toolchain,
        config: ExecConfig,
    ) -> Result<Executor<'a>, ExecError> {
        Ok(Executor {
            store,
            runtime: ProjectRuntime::prepare(store, dependencies)?,
            toolchain,
            config,
        })
    }

    pub fn harness(&self, task: &CompletionTask, candidate: &[String]) -> Result<HarnessSpec, ExecError> {
        synthesize_harness(
            task,
            candidate,
            self.store,
            self.runtime.classpath(),
            self.config.timeout(),
        )
    }

    pub fn evaluate(&self, task: &CompletionTask, candidate: &[String]) -> Result<ExecOutcome, ExecError> {
        evaluate_candidate(&self.harness(task, candidate)?, &self.toolchain, &self.config)
    }

    /// Outcomes of every candidate, evaluated in parallel, in list order.
    pub fn evaluate_all(&self, task: &CompletionTask, list: &CandidateList) -> Result<Vec<ExecOutcome>, ExecError> {
        use rayon::prelude::*;
        list.candidates
            .par_iter()
            .map(|c| self.evaluate(task, &c.tokens))
            .collect()
    }
}
