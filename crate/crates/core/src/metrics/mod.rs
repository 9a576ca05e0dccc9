//! Evaluation metrics, subsets and significance testing.

pub mod bootstrap;
pub mod codebleu;
pub mod report;
pub mod similarity;

pub use bootstrap::{bootstrap_test, BootstrapConfig, BootstrapResult};
pub use codebleu::{codebleu, CodeBleuScore, CodeBleuWeights};
pub use report::{
    compare, evaluate, pct_compile_run, score_record, EvalConfig, EvalRecord, EvalReport, ExampleScores, Metric,
    Significance, Subset, SubsetReport,
};
pub use similarity::{acc_at_k, bleu, edit_similarity, edit_similarity_str, exact_match, rouge_l_f1};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MetricsError {
    #[error("empty record set")]
    EmptySubset,
    #[error("task {0} has no top-1 execution outcome")]
    MissingOutcome(String),
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
}
