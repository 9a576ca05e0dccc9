//! Test method detection from resolved annotations.

use serde::{Deserialize, Serialize};

use super::store::{ClassKind, CodeElementStore, MethodEntry, MethodId};

pub const JUNIT4_TEST: &str = "org.junit.Test";
pub const JUNIT5_TEST: &str = "org.junit.jupiter.api.Test";
pub const JUNIT4_IGNORE: &str = "org.junit.Ignore";
pub const JUNIT5_DISABLED: &str = "org.junit.jupiter.api.Disabled";

pub const SETUP_ANNOTATIONS: &[&str] = &[
    "org.junit.Before",
    "org.junit.jupiter.api.BeforeEach",
    "org.junit.BeforeClass",
    "org.junit.jupiter.api.BeforeAll",
];

pub const TEARDOWN_ANNOTATIONS: &[&str] = &[
    "org.junit.After",
    "org.junit.jupiter.api.AfterEach",
    "org.junit.AfterClass",
    "org.junit.jupiter.api.AfterAll",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum JUnitVersion {
    Junit4,
    Junit5,
}

/// Carries a test annotation and no ignore annotation.
pub fn is_test_annotated(annotations: &[String]) -> bool {
    let has = |n: &str| annotations.iter().any(|a| a == n);
    (has(JUNIT4_TEST) || has(JUNIT5_TEST)) && !has(JUNIT4_IGNORE) && !has(JUNIT5_DISABLED)
}

pub fn junit_version(method: &MethodEntry) -> Option<JUnitVersion> {
    if method.has_annotation(JUNIT4_TEST) {
        Some(JUnitVersion::Junit4)
    } else if method.has_annotation(JUNIT5_TEST) {
        Some(JUnitVersion::Junit5)
    } else {
        None
    }
}

/// Detected test methods, ordered by class name then declaration order.
pub fn detect_tests(store: &CodeElementStore) -> Vec<MethodId> {
    let mut out: Vec<(&str, usize, &str)> = store
        .methods()
        .filter(|m| {
            m.source.is_some()
                && store.class(&m.owner).is_some_and(|c| c.kind != ClassKind::Dependency)
                && is_test_annotated(&m.annotations)
        })
        .map(|m| (m.owner.as_str(), m.source.unwrap_or(0), m.id.as_str()))
        .collect();
    out.sort();
    out.into_iter().map(|(_, _, id)| id.to_string()).collect()
}
