use serde::{Deserialize, Serialize};

use super::bm25::Bm25Params;
use super::context::SemanticContext;
use super::fields::{extract_fields_notset, DEFAULT_MAX_DEPTH};
use super::index::{extract_similar_stmt, StatementIndex};
use super::methods::{extract_last_called_method, extract_setup_teardown};
use super::point::{CompletionPoint, SemanticsError};
use super::types::{extract_types_absent, extract_types_local};
use crate::elements::{CodeElementStore, CompletionTask};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SemanticsConfig {
    /// Call depth followed when looking for field assignments.
    pub max_depth: usize,
    pub bm25: Bm25Params,
}

impl Default for SemanticsConfig {
    fn default() -> Self {
        SemanticsConfig {
            max_depth: DEFAULT_MAX_DEPTH,
            bm25: Bm25Params::default(),
        }
    }
}

pub fn extract_semantics(
    task: &CompletionTask,
    store: &CodeElementStore,
    index: &StatementIndex,
    config: &SemanticsConfig,
) -> Result<SemanticContext, SemanticsError> {
    let p = CompletionPoint::new(task, store)?;
    let types_local = extract_types_local(&p)?;
    let types_absent = extract_types_absent(&p, &types_local, config.max_depth);
    Ok(SemanticContext {
        fields_notset: extract_fields_notset(&p, config.max_depth),
        setup_teardown: extract_setup_teardown(store, &task.test_class),
        last_called_method: extract_last_called_method(&p),
        similar_stmt: extract_similar_stmt(task.prior(), index),
        types_local,
        types_absent,
    })
}
