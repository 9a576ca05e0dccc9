use crate::elements::{CodeElementStore, CompletionTask};
use crate::jclass::{map_statements_to_instructions, ClassFile, InterpError, LineMapError, MethodInfo, StatementRange};
use crate::jsource::MethodDecl;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SemanticsError {
    #[error("test {0} is not in the store")]
    UnknownTest(String),
    #[error("test {0} has no bytecode")]
    MissingBytecode(String),
    #[error("statement index {index} out of range for {test}")]
    BadIndex { test: String, index: usize },
    #[error(transparent)]
    LineMapping(#[from] LineMapError),
    #[error(transparent)]
    Interp(#[from] InterpError),
}

/// A task resolved against the store: the test's source, bytecode and
/// statement ranges.
#[derive(Debug, Clone)]
pub struct CompletionPoint<'a> {
    pub store: &'a CodeElementStore,
    pub task: &'a CompletionTask,
    pub decl: &'a MethodDecl,
    pub class: &'a ClassFile,
    pub method: &'a MethodInfo,
    pub ranges: Vec<StatementRange>,
}

impl<'a> CompletionPoint<'a> {
    pub fn new(task: &'a CompletionTask, store: &'a CodeElementStore) -> Result<Self, SemanticsError> {
        let decl = store
            .method_decl(&task.test_id)
            .ok_or_else(|| SemanticsError::UnknownTest(task.test_id.clone()))?;
        let (class, method) = store
            .method_bytecode(&task.test_id)
            .ok_or_else(|| SemanticsError::MissingBytecode(task.test_id.clone()))?;
        if task.stmt_index >= decl.body.len() {
            return Err(SemanticsError::BadIndex {
                test: task.test_id.clone(),
                index: task.stmt_index,
            });
        }
        let spans: Vec<(u32, u32)> = decl.body.iter().map(|s| s.line_span).collect();
        let ranges = map_statements_to_instructions(method, &spans)?;
        Ok(CompletionPoint {
            store,
            task,
            decl,
            class,
            method,
            ranges,
        })
    }

    /// Offset where the target statement's instructions begin.
    pub fn prior_end(&self) -> u32 {
        match self.task.stmt_index {
            0 => 0,
            i => self.ranges[i - 1].end,
        }
    }
}
