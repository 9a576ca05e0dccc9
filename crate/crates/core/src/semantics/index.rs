//! Statement index for similar-statement retrieval.

use serde::{Deserialize, Serialize};

use super::bm25::{Bm25Index, Bm25Params, Bm25Stats};
use crate::elements::{ClassKind, CodeElementStore, CompletionTask, MethodId};
use crate::jsource::{mask_strings, subtokens_of, Token};

/// Number of preceding statements forming a retrieval context.
pub const CONTEXT_STATEMENTS: usize = 2;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Origin {
    pub project: String,
    pub method: MethodId,
    pub stmt_index: usize,
    pub is_test: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexEntry {
    /// Subtokens of up to two preceding statements.
    pub context: Vec<String>,
    /// Masked tokens of the statement.
    pub statement: Vec<String>,
    pub origin: Origin,
}

/// Retrieval query for a statement preceded by `prior`.
pub fn context_of(prior: &[Vec<String>]) -> Vec<String> {
    let from = prior.len().saturating_sub(CONTEXT_STATEMENTS);
    let texts: Vec<String> = prior[from..].iter().flatten().cloned().collect();
    subtokens_of(&texts)
}

fn masked_texts(tokens: &[Token]) -> Vec<String> {
    mask_strings(tokens).into_iter().map(|t| t.text).collect()
}

/// Entries for every statement of every non-test method with source, in
/// (class, declaration) order.
pub fn non_test_entries(store: &CodeElementStore) -> Vec<IndexEntry> {
    let mut methods: Vec<_> = store
        .methods()
        .filter(|m| m.source.is_some())
        .filter(|m| store.class(&m.owner).is_some_and(|c| c.kind == ClassKind::NonTest))
        .collect();
    methods.sort_by(|a, b| (&a.owner, a.source).cmp(&(&b.owner, b.source)));
    let mut out = Vec::new();
    for m in methods {
        let Some(decl) = store.method_decl(&m.id) else { continue };
        let statements: Vec<Vec<String>> = decl.body.iter().map(|s| masked_texts(&s.tokens)).collect();
        for (i, s) in statements.iter().enumerate() {
            out.push(IndexEntry {
                context: context_of(&statements[..i]),
                statement: s.clone(),
                origin: Origin {
                    project: store.project().to_string(),
                    method: m.id.clone(),
                    stmt_index: i,
                    is_test: false,
                },
            });
        }
    }
    out
}

/// One entry per completion task: its prior context and gold statement.
pub fn task_entries(tasks: &[CompletionTask]) -> Vec<IndexEntry> {
    tasks
        .iter()
        .map(|t| IndexEntry {
            context: context_of(t.prior()),
            statement: t.gold().to_vec(),
            origin: Origin {
                project: t.project.clone(),
                method: t.test_id.clone(),
                stmt_index: t.stmt_index,
                is_test: true,
            },
        })
        .collect()
}

#[derive(Debug, Clone, Default)]
pub struct StatementIndex {
    entries: Vec<IndexEntry>,
    bm25: Bm25Index,
}

impl StatementIndex {
    pub fn new(entries: Vec<IndexEntry>, params: Bm25Params) -> StatementIndex {
        let docs: Vec<&[String]> = entries.iter().map(|e| e.context.as_slice()).collect();
        let bm25 = Bm25Index::new(&docs, params);
        StatementIndex { entries, bm25 }
    }

    pub fn entries(&self) -> &[IndexEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn stats(&self) -> &Bm25Stats {
        self.bm25.stats()
    }

    pub fn params(&self) -> &Bm25Params {
        self.bm25.params()
    }

    pub fn scores(&self, query: &[String]) -> Vec<f64> {
        self.bm25.scores(query)
    }

    /// Entries by descending score, ties by ascending entry id.
    pub fn ranked(&self, query: &[String]) -> Vec<(usize, f64)> {
        self.bm25.ranked(query)
    }

    pub fn best(&self, query: &[String]) -> Option<(usize, f64)> {
        self.bm25.best(query)
    }
}

pub fn build_statement_index(store: &CodeElementStore, params: Bm25Params) -> StatementIndex {
    StatementIndex::new(non_test_entries(store), params)
}

/// Statement following the indexed context most similar to the last two
/// prior statements; empty when nothing scores above zero.
pub fn extract_similar_stmt(prior: &[Vec<String>], index: &StatementIndex) -> Vec<String> {
    if index.is_empty() {
        return Vec::new();
    }
    match index.best(&context_of(prior)) {
        Some((i, _)) => index.entries()[i].statement.clone(),
        None => Vec::new(),
    }
}
