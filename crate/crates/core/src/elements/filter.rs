//! Test filtering and completion task construction.

use std::collections::BTreeMap;
use std::io::Write;

use serde::{Deserialize, Serialize};

use super::detect::{junit_version, JUnitVersion};
use super::locate::{first_assertion, locate_mut};
use super::store::{CodeElementStore, MethodId};
use crate::jclass::map_statements_to_instructions;
use crate::jsource::{lex, mask_strings, Token};
use crate::semantics::SemanticContext;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct FilterConfig {
    pub min_statements: usize,
    pub max_statements: usize,
    pub max_mut_tokens: usize,
    pub max_combined_tokens: usize,
    pub max_statement_tokens: usize,
}

impl Default for FilterConfig {
    fn default() -> Self {
        FilterConfig {
            min_statements: 1,
            max_statements: 20,
            max_mut_tokens: 400,
            max_combined_tokens: 800,
            max_statement_tokens: 100,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RejectReason {
    BadlyNamed,
    IrregularSignature,
    NoMut,
    LineMapping,
    TooFewStmts,
    TooManyStmts,
    MutTooLong,
    CombinedTooLong,
    StmtTooLong,
    ControlFlow,
    Lambda,
}

impl RejectReason {
    pub const ALL: [RejectReason; 11] = [
        RejectReason::BadlyNamed,
        RejectReason::IrregularSignature,
        RejectReason::NoMut,
        RejectReason::LineMapping,
        RejectReason::TooFewStmts,
        RejectReason::TooManyStmts,
        RejectReason::MutTooLong,
        RejectReason::CombinedTooLong,
        RejectReason::StmtTooLong,
        RejectReason::ControlFlow,
        RejectReason::Lambda,
    ];

    pub fn code(self) -> &'static str {
        match self {
            RejectReason::BadlyNamed => "badly-named",
            RejectReason::IrregularSignature => "irregular-signature",
            RejectReason::NoMut => "no-mut",
            RejectReason::LineMapping => "line-mapping",
            RejectReason::TooFewStmts => "too-few-stmts",
            RejectReason::TooManyStmts => "too-many-stmts",
            RejectReason::MutTooLong => "mut-too-long",
            RejectReason::CombinedTooLong => "combined-too-long",
            RejectReason::StmtTooLong => "stmt-too-long",
            RejectReason::ControlFlow => "control-flow",
            RejectReason::Lambda => "lambda",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", content = "reason", rename_all = "kebab-case")]
pub enum Disposition {
    Kept,
    Rejected(RejectReason),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FilterEntry {
    pub project: String,
    pub test_id: MethodId,
    pub disposition: Disposition,
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct FilterReport {
    pub entries: Vec<FilterEntry>,
}

impl FilterReport {
    pub fn kept(&self) -> usize {
        self.entries
            .iter()
            .filter(|e| e.disposition == Disposition::Kept)
            .count()
    }

    pub fn rejected(&self, reason: RejectReason) -> usize {
        self.entries
            .iter()
            .filter(|e| e.disposition == Disposition::Rejected(reason))
            .count()
    }

    pub fn disposition(&self, test_id: &str) -> Option<&Disposition> {
        self.entries
            .iter()
            .find(|e| e.test_id == test_id)
            .map(|e| &e.disposition)
    }

    pub fn extend(&mut self, other: FilterReport) {
        self.entries.extend(other.entries);
    }

    /// Tab-separated table with a header row.
    pub fn write_tsv<W: Write>(&self, w: W) -> csv::Result<()> {
        let mut out = csv::WriterBuilder::new().delimiter(b'\t').from_writer(w);
        out.write_record(["project", "test_id", "disposition", "detail"])?;
        for e in &self.entries {
            let disposition = match e.disposition {
                Disposition::Kept => "kept",
                Disposition::Rejected(r) => r.code(),
            };
            out.write_record([
                e.project.as_str(),
                e.test_id.as_str(),
                disposition,
                e.detail.as_deref().unwrap_or(""),
            ])?;
        }
        out.flush()?;
        Ok(())
    }

    pub fn counts(&self) -> BTreeMap<&'static str, usize> {
        let mut out = BTreeMap::new();
        out.insert("kept", self.kept());
        for r in RejectReason::ALL {
            out.insert(r.code(), self.rejected(r));
        }
        out
    }
}

/// One corpus entry: predict statement `stmt_index` of a test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompletionTask {
    pub id: String,
    pub project: String,
    pub test_class: String,
    pub test_id: MethodId,
    pub mut_id: MethodId,
    pub junit: JUnitVersion,
    /// Masked tokens of the test signature, annotations included.
    pub sign: Vec<String>,
    /// Masked tokens of every statement of the test.
    pub statements: Vec<Vec<String>>,
    pub stmt_index: usize,
    /// Masked tokens of the method under test.
    pub mut_source: Vec<String>,
    /// The target is the first assertion statement of the test.
    pub first_assertion: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub semantics: Option<SemanticContext>,
}

impl CompletionTask {
    pub fn prior(&self) -> &[Vec<String>] {
        &self.statements[..self.stmt_index]
    }

    pub fn gold(&self) -> &[String] {
        &self.statements[self.stmt_index]
    }

    pub fn prior_tokens(&self) -> Vec<String> {
        self.prior().iter().flatten().cloned().collect()
    }
}

pub fn task_id(project: &str, test_id: &str, stmt_index: usize) -> String {
    format!("{project}/{test_id}/{stmt_index}")
}

/// `test` followed only by digits.
pub fn is_badly_named(name: &str) -> bool {
    name.strip_prefix("test")
        .is_some_and(|rest| rest.chars().all(|c| c.is_ascii_digit()))
}

fn texts(tokens: &[Token]) -> Vec<String> {
    mask_strings(tokens).into_iter().map(|t| t.text).collect()
}

fn token_count(text: &str) -> usize {
    lex(text).map(|t| t.len()).unwrap_or(usize::MAX)
}

type Outcome = Result<Vec<CompletionTask>, (RejectReason, Option<String>)>;

fn filter_one(test: &str, store: &CodeElementStore, config: &FilterConfig) -> Outcome {
    let reject = |r: RejectReason, d: Option<String>| Err((r, d));
    let entry = store
        .method(test)
        .ok_or((RejectReason::NoMut, Some("unknown test".into())))?;
    let decl = store
        .method_decl(test)
        .ok_or((RejectReason::NoMut, Some("no source".into())))?;
    if is_badly_named(&decl.name) {
        return reject(RejectReason::BadlyNamed, None);
    }
    if !decl.params.is_empty() || !decl.returns_void() {
        return reject(RejectReason::IrregularSignature, None);
    }
    if let Some(e) = &decl.body_error {
        return reject(RejectReason::LineMapping, Some(e.clone()));
    }
    let mut_id = match locate_mut(test, store) {
        Ok(m) => m,
        Err(e) => return reject(RejectReason::NoMut, Some(e.to_string())),
    };
    let Some((_, mi)) = store.method_bytecode(test) else {
        return reject(RejectReason::LineMapping, Some("no bytecode".into()));
    };
    let spans: Vec<(u32, u32)> = decl.body.iter().map(|s| s.line_span).collect();
    if let Err(e) = map_statements_to_instructions(mi, &spans) {
        return reject(RejectReason::LineMapping, Some(e.to_string()));
    }
    let n = decl.body.len();
    if n < config.min_statements {
        return reject(RejectReason::TooFewStmts, Some(n.to_string()));
    }
    if n > config.max_statements {
        return reject(RejectReason::TooManyStmts, Some(n.to_string()));
    }
    let mut_decl = store
        .method_decl(&mut_id)
        .ok_or((RejectReason::NoMut, Some("method under test has no source".into())))?;
    let mut_tokens = token_count(&mut_decl.raw);
    if mut_tokens > config.max_mut_tokens {
        return reject(RejectReason::MutTooLong, Some(mut_tokens.to_string()));
    }
    let combined = mut_tokens.saturating_add(token_count(&decl.raw));
    if combined > config.max_combined_tokens {
        return reject(RejectReason::CombinedTooLong, Some(combined.to_string()));
    }
    if let Some(s) = decl.body.iter().find(|s| s.tokens.len() > config.max_statement_tokens) {
        return reject(RejectReason::StmtTooLong, Some(s.tokens.len().to_string()));
    }
    if decl.body.iter().any(|s| s.has_control_flow) {
        return reject(RejectReason::ControlFlow, None);
    }
    if decl.body.iter().any(|s| s.has_lambda) {
        return reject(RejectReason::Lambda, None);
    }

    let junit = junit_version(entry).unwrap_or(JUnitVersion::Junit4);
    let sign = texts(&decl.header);
    let statements: Vec<Vec<String>> = decl.body.iter().map(|s| texts(&s.tokens)).collect();
    let mut_source = texts(&lex(&mut_decl.raw).unwrap_or_default());
    let first = first_assertion(&decl.body);
    Ok((0..n)
        .map(|i| CompletionTask {
            id: task_id(store.project(), test, i),
            project: store.project().to_string(),
            test_class: entry.owner.clone(),
            test_id: test.to_string(),
            mut_id: mut_id.clone(),
            junit,
            sign: sign.clone(),
            statements: statements.clone(),
            stmt_index: i,
            mut_source: mut_source.clone(),
            first_assertion: first == Some(i),
            semantics: None,
        })
        .collect())
}

/// Applies the filters in order to each test and builds one task per
/// statement of every kept test.
pub fn filter_corpus(
    tests: &[MethodId],
    store: &CodeElementStore,
    config: &FilterConfig,
) -> (Vec<CompletionTask>, FilterReport) {
    let mut tasks = Vec::new();
    let mut report = FilterReport::default();
    for test in tests {
        let (disposition, detail) = match filter_one(test, store, config) {
            Ok(t) => {
                tasks.extend(t);
                (Disposition::Kept, None)
            }
            Err((r, d)) => (Disposition::Rejected(r), d),
        };
        report.entries.push(FilterEntry {
            project: store.project().to_string(),
            test_id: test.clone(),
            disposition,
            detail,
        });
    }
    (tasks, report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bad_names() {
        assert!(is_badly_named("test"));
        assert!(is_badly_named("test0"));
        assert!(is_badly_named("test123"));
        assert!(!is_badly_named("testAdd"));
        assert!(!is_badly_named("test0a"));
        assert!(!is_badly_named("addTest0"));
    }
}
