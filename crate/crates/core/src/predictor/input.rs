//! Model input assembly.

use serde::{Deserialize, Serialize};

use crate::elements::CompletionTask;
use crate::jclass::types::simple_class_name;
use crate::jsource::subtokens_of;
use crate::semantics::SemanticContext;

pub const SEP: &str = "<sep>";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Piece {
    FieldsNotset,
    LastCalledMethod,
    TypesLocal,
    TypesAbsent,
    SimilarStmt,
    SetupTeardown,
    Mut,
    Sign,
    Prior,
}

impl Piece {
    pub const DEFAULT_ORDER: [Piece; 9] = [
        Piece::FieldsNotset,
        Piece::LastCalledMethod,
        Piece::TypesLocal,
        Piece::TypesAbsent,
        Piece::SimilarStmt,
        Piece::SetupTeardown,
        Piece::Mut,
        Piece::Sign,
        Piece::Prior,
    ];
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConfigError {
    #[error("ordering must list each of the 9 input pieces once")]
    NotAPermutation,
    #[error("max_len must be positive")]
    ZeroLength,
    #[error("k must be positive")]
    ZeroK,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct PredictorConfig {
    pub max_len: usize,
    pub k: usize,
    pub ordering: Vec<Piece>,
}

impl Default for PredictorConfig {
    fn default() -> Self {
        PredictorConfig {
            max_len: 512,
            k: 10,
            ordering: Piece::DEFAULT_ORDER.to_vec(),
        }
    }
}

impl PredictorConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.max_len == 0 {
            return Err(ConfigError::ZeroLength);
        }
        if self.k == 0 {
            return Err(ConfigError::ZeroK);
        }
        let mut sorted = self.ordering.clone();
        sorted.sort();
        let mut all = Piece::DEFAULT_ORDER.to_vec();
        all.sort();
        if sorted != all {
            return Err(ConfigError::NotAPermutation);
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputSequence {
    pub subtokens: Vec<String>,
    pub truncated: bool,
    pub original_length: usize,
}

fn field_text(id: &str) -> Vec<String> {
    let (class, name) = id.rsplit_once('.').unwrap_or(("", id));
    vec![simple_class_name(class).to_string(), ".".into(), name.to_string()]
}

/// Subtokens of one input piece.
pub fn piece_subtokens(task: &CompletionTask, piece: Piece) -> Vec<String> {
    let empty = SemanticContext::default();
    let sem = task.semantics.as_ref().unwrap_or(&empty);
    let texts: Vec<String> = match piece {
        Piece::FieldsNotset => sem.fields_notset.iter().flat_map(|f| field_text(f)).collect(),
        Piece::LastCalledMethod => sem.last_called_method.clone(),
        Piece::TypesLocal => sem
            .types_local
            .iter()
            .flat_map(|v| [v.ty.simple_name(), v.name.clone()])
            .collect(),
        Piece::TypesAbsent => sem.types_absent.iter().map(|t| t.simple_name()).collect(),
        Piece::SimilarStmt => sem.similar_stmt.clone(),
        Piece::SetupTeardown => sem.setup_teardown.clone(),
        Piece::Mut => task.mut_source.clone(),
        Piece::Sign => task.sign.clone(),
        Piece::Prior => task.prior_tokens(),
    };
    subtokens_of(&texts)
}

/// Pieces joined by [`SEP`] in the configured order, cut from the front to
/// at most `max_len` subtokens.
pub fn assemble_input(task: &CompletionTask, config: &PredictorConfig) -> InputSequence {
    let mut subtokens = Vec::new();
    for (i, &piece) in config.ordering.iter().enumerate() {
        if i > 0 {
            subtokens.push(SEP.to_string());
        }
        subtokens.extend(piece_subtokens(task, piece));
    }
    let original_length = subtokens.len();
    let truncated = original_length > config.max_len;
    if truncated {
        subtokens.drain(..original_length - config.max_len);
    }
    InputSequence {
        subtokens,
        truncated,
        original_length,
    }
}
