//! Model inputs and candidate next statements.

pub mod candidates;
pub mod external;
pub mod input;
pub mod retrieval;

pub use candidates::{Candidate, CandidateList, PredictionRecord};
pub use external::{
    load_external_predictions, parse_predictions, parse_predictions_with, write_predictions, ExternalError,
    ExternalPredictions, ListOrder,
};
pub use input::{assemble_input, piece_subtokens, ConfigError, InputSequence, Piece, PredictorConfig, SEP};
pub use retrieval::{build_retrieval_index, predict_retrieval};
