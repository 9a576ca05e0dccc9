//! Static semantics extraction, corpus construction, execution-based
//! reranking and evaluation metrics for JVM test completion.

pub mod elements;
pub mod exec;
pub mod jclass;
pub mod jsource;
pub mod metrics;
pub mod pipeline;
pub mod predictor;
pub mod semantics;
