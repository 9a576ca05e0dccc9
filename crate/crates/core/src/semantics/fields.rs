//! Fields of the test class and class under test that are never
//! assigned before the target statement.

use std::collections::{BTreeSet, VecDeque};

use crate::elements::detect::SETUP_ANNOTATIONS;
use crate::elements::locate::invoke_ref;
use crate::elements::{CodeElementStore, FieldId, MethodId};
use crate::jclass::instr::{op, Instruction};
use crate::jclass::ClassFile;

use super::point::CompletionPoint;

pub const DEFAULT_MAX_DEPTH: usize = 4;

/// Methods an invoke may dispatch to: the resolved method and, for
/// virtual calls, overriding methods in subtypes.
pub fn call_targets(store: &CodeElementStore, cf: &ClassFile, ins: &Instruction) -> Vec<MethodId> {
    let Some(r) = invoke_ref(cf, ins) else {
        return Vec::new();
    };
    if r.class.starts_with('[') {
        return Vec::new();
    }
    let mut out = Vec::new();
    if let Some(m) = store.resolve_method(&r.class, &r.name, &r.descriptor) {
        out.push(m.id.clone());
    }
    if matches!(ins.opcode, op::INVOKEVIRTUAL | op::INVOKEINTERFACE) {
        for sub in store.subtypes(&r.class) {
            let id = crate::elements::store::method_id(&sub.name, &r.name, &r.descriptor);
            if store.method(&id).is_some() && !out.contains(&id) {
                out.push(id);
            }
        }
    }
    out
}

fn stored_field(store: &CodeElementStore, cf: &ClassFile, ins: &Instruction) -> Option<FieldId> {
    if !ins.is_field_store() {
        return None;
    }
    let r = cf.constant_pool.member_ref(ins.operand.constant_index()?)?;
    store.resolve_field(&r.class, &r.name).map(|f| f.id.clone())
}

/// Test-class methods run before each test by the framework.
pub fn setup_methods(store: &CodeElementStore, test_class: &str) -> Vec<MethodId> {
    store
        .methods_of(test_class)
        .filter(|m| SETUP_ANNOTATIONS.iter().any(|a| m.has_annotation(a)))
        .map(|m| m.id.clone())
        .collect()
}

/// Fields stored by the prior statements or by methods reachable within
/// `max_depth` call edges. Setup methods and the test class initializers
/// sit one edge away from the test.
pub fn assigned_fields(p: &CompletionPoint<'_>, max_depth: usize) -> BTreeSet<FieldId> {
    let store = p.store;
    let mut assigned = BTreeSet::new();
    let mut seen: BTreeSet<MethodId> = BTreeSet::new();
    let mut queue: VecDeque<(MethodId, usize)> = VecDeque::new();
    let mut enqueue = |id: MethodId, depth: usize, queue: &mut VecDeque<(MethodId, usize)>| {
        if depth <= max_depth && seen.insert(id.clone()) {
            queue.push_back((id, depth));
        }
    };

    let end = p.prior_end();
    let code = p.method.code().expect("points have code");
    for ins in code.instructions().iter().filter(|i| i.offset < end) {
        if let Some(f) = stored_field(store, p.class, ins) {
            assigned.insert(f);
        }
        for t in call_targets(store, p.class, ins) {
            enqueue(t, 1, &mut queue);
        }
    }
    let test_class = &p.task.test_class;
    let mut roots = setup_methods(store, test_class);
    roots.extend(
        store
            .methods_of(test_class)
            .filter(|m| m.name == "<init>" || m.name == "<clinit>")
            .map(|m| m.id.clone()),
    );
    for r in roots {
        enqueue(r, 1, &mut queue);
    }

    while let Some((id, depth)) = queue.pop_front() {
        let Some((cf, mi)) = store.method_bytecode(&id) else {
            continue;
        };
        let Some(code) = mi.code() else { continue };
        for ins in code.instructions() {
            if let Some(f) = stored_field(store, cf, ins) {
                assigned.insert(f);
            }
            for t in call_targets(store, cf, ins) {
                enqueue(t, depth + 1, &mut queue);
            }
        }
    }
    assigned
}

/// Declared, non-synthetic fields of the test class then the class under
/// test, minus those assigned before the target statement.
pub fn extract_fields_notset(p: &CompletionPoint<'_>, max_depth: usize) -> Vec<FieldId> {
    let assigned = assigned_fields(p, max_depth);
    let cut = p.store.method(&p.task.mut_id).map(|m| m.owner.clone());
    let mut classes = vec![p.task.test_class.clone()];
    if let Some(c) = cut {
        if c != p.task.test_class {
            classes.push(c);
        }
    }
    classes
        .iter()
        .flat_map(|c| p.store.fields_of(c))
        .filter(|f| !f.is_synthetic() && !assigned.contains(&f.id))
        .map(|f| f.id.clone())
        .collect()
}
