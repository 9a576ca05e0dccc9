//! Extraction of the six code semantics of a completion point.

pub mod bm25;
pub mod context;
pub mod extract;
pub mod fields;
pub mod index;
pub mod methods;
pub mod point;
pub mod types;

pub use bm25::{bm25_score, Bm25Index, Bm25Params, Bm25Stats};
pub use context::{LocalVar, SemanticContext};
pub use extract::{extract_semantics, SemanticsConfig};
pub use fields::{assigned_fields, extract_fields_notset, DEFAULT_MAX_DEPTH};
pub use index::{
    build_statement_index, context_of, extract_similar_stmt, non_test_entries, task_entries, IndexEntry, Origin,
    StatementIndex,
};
pub use methods::{extract_last_called_method, extract_setup_teardown};
pub use point::{CompletionPoint, SemanticsError};
pub use types::{extract_types_absent, extract_types_local, needed_types};
