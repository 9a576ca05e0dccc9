//! Types of live local variables and types not yet prepared.

use crate::elements::CodeElementStore;
use crate::jclass::descriptor::{parse_field_descriptor, parse_method_descriptor};
use crate::jclass::hierarchy::is_assignable;
use crate::jclass::{analyze, TypeDesc};

use super::context::LocalVar;
use super::fields::assigned_fields;
use super::point::{CompletionPoint, SemanticsError};

/// Locals bound before the target statement, receiver excluded.
pub fn extract_types_local(p: &CompletionPoint<'_>) -> Result<Vec<LocalVar>, SemanticsError> {
    if p.task.stmt_index == 0 {
        return Ok(Vec::new());
    }
    let upto = p.prior_end();
    let analysis = analyze(p.method, p.class, p.store)?;
    let locals = analysis.locals_at(upto, p.store)?;
    let code = p.method.code().expect("analyzed methods have code");
    let pool = &p.class.constant_pool;
    let first_user_slot = if p.method.is_static() { 0 } else { 1 };
    let mut out = Vec::new();
    for (slot, ty) in locals {
        if slot < first_user_slot {
            continue;
        }
        let lvt = code
            .local_variables()
            .find(|v| v.index == slot && v.start_pc as u32 <= upto && upto <= v.start_pc as u32 + v.length as u32);
        let declared = lvt
            .and_then(|v| pool.utf8(v.descriptor_index))
            .and_then(|d| parse_field_descriptor(d).ok());
        let name = lvt
            .and_then(|v| pool.utf8(v.name_index))
            .map(str::to_string)
            .unwrap_or_else(|| format!("slot{slot}"));
        let ty = match (ty, declared) {
            (TypeDesc::Null | TypeDesc::Top, Some(d)) => d,
            (TypeDesc::Top, None) => continue,
            // the operand stack does not distinguish boolean, byte, char and short
            (TypeDesc::Primitive { prim }, Some(TypeDesc::Primitive { prim: d }))
                if prim.is_int_category() && d.is_int_category() =>
            {
                TypeDesc::prim(d)
            }
            (t, _) => t,
        };
        out.push(LocalVar { name, slot, ty });
    }
    Ok(out)
}

fn satisfies(store: &CodeElementStore, prepared: &TypeDesc, needed: &TypeDesc) -> bool {
    match (prepared, needed) {
        (TypeDesc::Primitive { .. }, _) | (_, TypeDesc::Primitive { .. }) => prepared == needed,
        (TypeDesc::Top, _) => false,
        _ => is_assignable(store, prepared, needed),
    }
}

/// Types needed to call the method under test: its parameter types and,
/// for instance methods, its declaring class.
pub fn needed_types(store: &CodeElementStore, mut_id: &str) -> Vec<TypeDesc> {
    let Some(m) = store.method(mut_id) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    if !m.is_static() && m.name != "<init>" {
        out.push(TypeDesc::object(m.owner.clone()));
    }
    if let Some(d) = m.descriptor.as_deref().and_then(|d| parse_method_descriptor(d).ok()) {
        for t in d.params {
            if !out.contains(&t) {
                out.push(t);
            }
        }
    }
    out
}

/// Types of test-class fields holding a value before the target statement.
pub fn prepared_field_types(p: &CompletionPoint<'_>, max_depth: usize) -> Vec<TypeDesc> {
    let assigned = assigned_fields(p, max_depth);
    p.store
        .fields_of(&p.task.test_class)
        .filter(|f| f.has_initializer || assigned.contains(&f.id))
        .filter_map(|f| f.descriptor.as_deref())
        .filter_map(|d| parse_field_descriptor(d).ok())
        .collect()
}

pub fn extract_types_absent(p: &CompletionPoint<'_>, locals: &[LocalVar], max_depth: usize) -> Vec<TypeDesc> {
    let mut prepared: Vec<TypeDesc> = locals.iter().map(|l| l.ty.clone()).collect();
    prepared.extend(prepared_field_types(p, max_depth));
    needed_types(p.store, &p.task.mut_id)
        .into_iter()
        .filter(|n| !prepared.iter().any(|t| satisfies(p.store, t, n)))
        .collect()
}
