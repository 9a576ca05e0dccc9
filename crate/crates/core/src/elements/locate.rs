//! Locating the method under test of a test method.

use serde::{Deserialize, Serialize};

use super::store::{ClassKind, CodeElementStore, MethodEntry, MethodId};
use crate::jclass::classfile::{ClassFile, MemberRef};
use crate::jclass::instr::{op, Instruction};
use crate::jclass::linemap::line_of;
use crate::jclass::types::{package_of, simple_class_name};
use crate::jsource::{Statement, Token};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LocateError {
    #[error("no resolvable method calls in {0}")]
    Unlocatable(MethodId),
    #[error("{0} has no source or bytecode")]
    MissingBody(MethodId),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LocateStep {
    UniqueCall,
    UniqueCutCall,
    LastCutCallBeforeAssertion,
    LastCallBeforeAssertion,
    LastCall,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CallSite {
    pub offset: u32,
    pub line: Option<u32>,
    pub target: MethodId,
    pub owner: String,
}

/// Method reference of an invoke instruction other than invokedynamic.
pub fn invoke_ref(cf: &ClassFile, ins: &Instruction) -> Option<MemberRef> {
    if !ins.is_invoke() || ins.opcode == op::INVOKEDYNAMIC {
        return None;
    }
    cf.constant_pool.member_ref(ins.operand.constant_index()?)
}

/// Resolves an invoke to a store method, following inherited members.
pub fn resolve_invoke<'a>(store: &'a CodeElementStore, r: &MemberRef) -> Option<&'a MethodEntry> {
    if r.class.starts_with('[') {
        return None;
    }
    store.resolve_method(&r.class, &r.name, &r.descriptor)
}

/// Name of the first method called in a statement, skipping constructor
/// invocations.
pub fn first_callee(tokens: &[Token]) -> Option<&str> {
    let mut i = 0;
    while i < tokens.len() {
        let t = &tokens[i];
        if t.is_keyword("new") {
            i += 1;
            while tokens
                .get(i)
                .is_some_and(|t| t.is_ident() || t.is_sep(".") || t.is_sep("@"))
            {
                i += 1;
            }
            continue;
        }
        if t.is_ident() && tokens.get(i + 1).is_some_and(|n| n.is_sep("(")) {
            return Some(&t.text);
        }
        i += 1;
    }
    None
}

pub fn is_assertion_statement(tokens: &[Token]) -> bool {
    first_callee(tokens).is_some_and(|n| n.starts_with("assert") || n.starts_with("fail") || n.starts_with("verify"))
}

pub fn first_assertion(statements: &[Statement]) -> Option<usize> {
    statements.iter().position(|s| is_assertion_statement(&s.tokens))
}

/// Simple name of the class under test: the test class name without a
/// trailing or leading `Test`/`Tests`.
pub fn cut_simple_name(test_class: &str) -> Option<&str> {
    let top = simple_class_name(test_class.split('$').next().unwrap_or(test_class));
    let stripped = top
        .strip_suffix("Tests")
        .or_else(|| top.strip_suffix("Test"))
        .or_else(|| top.strip_prefix("Tests"))
        .or_else(|| top.strip_prefix("Test"))?;
    (!stripped.is_empty()).then_some(stripped)
}

pub fn class_under_test(store: &CodeElementStore, test_class: &str) -> Option<String> {
    let simple = cut_simple_name(test_class)?;
    let top = test_class.split('$').next().unwrap_or(test_class);
    let pkg = package_of(top);
    let same_pkg = if pkg.is_empty() {
        simple.to_string()
    } else {
        format!("{pkg}/{simple}")
    };
    if store.class(&same_pkg).is_some_and(|c| c.kind == ClassKind::NonTest) {
        return Some(same_pkg);
    }
    let matches: Vec<&str> = store
        .classes()
        .filter(|c| c.kind == ClassKind::NonTest && !c.name.contains('$') && simple_class_name(&c.name) == simple)
        .map(|c| c.name.as_str())
        .collect();
    match matches.as_slice() {
        [one] => Some(one.to_string()),
        _ => None,
    }
}

/// Calls in the test body to non-test project methods with source, in
/// bytecode order.
pub fn candidate_calls(store: &CodeElementStore, test: &str) -> Result<Vec<CallSite>, LocateError> {
    let (cf, mi) = store
        .method_bytecode(test)
        .ok_or_else(|| LocateError::MissingBody(test.to_string()))?;
    let code = mi.code().ok_or_else(|| LocateError::MissingBody(test.to_string()))?;
    let table: Vec<(u32, u32)> = code
        .line_numbers()
        .iter()
        .map(|l| (l.start_pc as u32, l.line as u32))
        .collect();
    let mut out = Vec::new();
    for ins in code.instructions() {
        let Some(r) = invoke_ref(cf, ins) else { continue };
        if r.name == "<init>" || r.name == "<clinit>" {
            continue;
        }
        let Some(m) = resolve_invoke(store, &r) else { continue };
        let is_candidate = m.source.is_some() && store.class(&m.owner).is_some_and(|c| c.kind == ClassKind::NonTest);
        if is_candidate {
            out.push(CallSite {
                offset: ins.offset,
                line: line_of(&table, ins.offset),
                target: m.id.clone(),
                owner: m.owner.clone(),
            });
        }
    }
    Ok(out)
}

fn unique_target(calls: &[&CallSite]) -> Option<MethodId> {
    let first = calls.first()?;
    calls
        .iter()
        .all(|c| c.target == first.target)
        .then(|| first.target.clone())
}

pub fn locate_mut(test: &str, store: &CodeElementStore) -> Result<MethodId, LocateError> {
    locate_mut_with_step(test, store).map(|(m, _)| m)
}

/// The method under test together with the heuristic step that chose it.
pub fn locate_mut_with_step(test: &str, store: &CodeElementStore) -> Result<(MethodId, LocateStep), LocateError> {
    let decl = store
        .method_decl(test)
        .ok_or_else(|| LocateError::MissingBody(test.to_string()))?;
    let owner = &store
        .method(test)
        .ok_or_else(|| LocateError::MissingBody(test.to_string()))?
        .owner;
    let calls = candidate_calls(store, test)?;
    if calls.is_empty() {
        return Err(LocateError::Unlocatable(test.to_string()));
    }
    let all: Vec<&CallSite> = calls.iter().collect();
    if let Some(m) = unique_target(&all) {
        return Ok((m, LocateStep::UniqueCall));
    }
    let assertion_line = first_assertion(&decl.body).map(|i| decl.body[i].line_span.0);
    let before = |c: &CallSite| match (assertion_line, c.line) {
        (Some(a), Some(l)) => l < a,
        (Some(_), None) => false,
        (None, _) => true,
    };
    if let Some(cut) = class_under_test(store, owner) {
        let cut_calls: Vec<&CallSite> = calls.iter().filter(|c| c.owner == cut).collect();
        if let Some(m) = unique_target(&cut_calls) {
            return Ok((m, LocateStep::UniqueCutCall));
        }
        if let Some(c) = cut_calls.iter().copied().rfind(|c| before(c)) {
            return Ok((c.target.clone(), LocateStep::LastCutCallBeforeAssertion));
        }
    }
    if let Some(c) = all.iter().copied().rfind(|c| before(c)) {
        return Ok((c.target.clone(), LocateStep::LastCallBeforeAssertion));
    }
    let last = calls.last().expect("non-empty");
    Ok((last.target.clone(), LocateStep::LastCall))
}
