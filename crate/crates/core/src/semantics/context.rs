use serde::{Deserialize, Serialize};

use crate::elements::FieldId;
use crate::jclass::TypeDesc;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalVar {
    pub name: String,
    pub slot: u16,
    #[serde(rename = "type")]
    pub ty: TypeDesc,
}

/// The six extracted semantics of one completion point.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct SemanticContext {
    /// Local variables live before the target statement.
    pub types_local: Vec<LocalVar>,
    /// Types needed by the method under test but not yet prepared.
    pub types_absent: Vec<TypeDesc>,
    /// Fields of the test class and class under test never assigned.
    pub fields_notset: Vec<FieldId>,
    /// Masked tokens of setup then teardown methods.
    pub setup_teardown: Vec<String>,
    /// Masked tokens of the last called method with source.
    pub last_called_method: Vec<String>,
    /// Masked tokens of the most similar non-test statement.
    pub similar_stmt: Vec<String>,
}
