use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Candidate {
    /// Statement tokens.
    pub tokens: Vec<String>,
    /// Higher is better.
    pub score: f64,
}

impl Candidate {
    pub fn new(tokens: Vec<String>, score: f64) -> Candidate {
        Candidate { tokens, score }
    }
}

/// Ranked candidate next statements of one task, best first.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct CandidateList {
    pub candidates: Vec<Candidate>,
}

impl CandidateList {
    pub fn len(&self) -> usize {
        self.candidates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.candidates.is_empty()
    }

    pub fn top(&self) -> Option<&Candidate> {
        self.candidates.first()
    }

    pub fn is_sorted(&self) -> bool {
        self.candidates.windows(2).all(|w| w[0].score >= w[1].score)
    }

    /// Stable sort by descending score.
    pub fn sort(&mut self) {
        self.candidates.sort_by(|a, b| b.score.total_cmp(&a.score));
    }
}

/// One line of a predictions file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PredictionRecord {
    pub task_id: String,
    pub candidates: Vec<Candidate>,
}
