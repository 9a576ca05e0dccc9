//! Setup and teardown methods, and the last called method.

use crate::elements::detect::{SETUP_ANNOTATIONS, TEARDOWN_ANNOTATIONS};
use crate::elements::locate::{invoke_ref, resolve_invoke};
use crate::elements::{CodeElementStore, MethodEntry};
use crate::jsource::{lex, mask_strings};

use super::point::CompletionPoint;

/// Masked token texts of a method's source.
pub fn masked_source(store: &CodeElementStore, id: &str) -> Vec<String> {
    store
        .method_decl(id)
        .and_then(|d| lex(&d.raw).ok())
        .map(|t| mask_strings(&t).into_iter().map(|t| t.text).collect())
        .unwrap_or_default()
}

fn annotated<'a>(store: &'a CodeElementStore, class: &str, names: &[&str]) -> Vec<&'a MethodEntry> {
    let mut out: Vec<&MethodEntry> = store
        .methods_of(class)
        .filter(|m| m.source.is_some() && names.iter().any(|a| m.has_annotation(a)))
        .collect();
    out.sort_by_key(|m| m.source);
    out
}

pub fn extract_setup_teardown(store: &CodeElementStore, test_class: &str) -> Vec<String> {
    let mut out = Vec::new();
    for group in [SETUP_ANNOTATIONS, TEARDOWN_ANNOTATIONS] {
        for m in annotated(store, test_class, group) {
            out.extend(masked_source(store, &m.id));
        }
    }
    out
}

pub fn extract_last_called_method(p: &CompletionPoint<'_>) -> Vec<String> {
    let end = p.prior_end();
    let code = p.method.code().expect("points have code");
    let last = code
        .instructions()
        .iter()
        .filter(|i| i.offset < end)
        .filter_map(|i| invoke_ref(p.class, i))
        .filter_map(|r| resolve_invoke(p.store, &r)).rfind(|m| m.source.is_some());
    match last {
        Some(m) => masked_source(p.store, &m.id),
        None => Vec::new(),
    }
}
