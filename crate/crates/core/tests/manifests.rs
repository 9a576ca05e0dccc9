mod common;

use std::collections::BTreeMap;

use common::{manifest, store, stubs_classpath, toolchain, words, FIXTURES};
use testcomp_core::elements::{detect_tests, filter_corpus, ClassKind, CompletionTask, Disposition, FilterConfig};
use testcomp_core::exec::{ExecConfig, Executor};
use testcomp_core::semantics::{build_statement_index, extract_semantics, Bm25Params, SemanticsConfig};

fn tasks(name: &str) -> (testcomp_core::elements::CodeElementStore, Vec<CompletionTask>) {
    let s = store(name);
    let (tasks, _) = filter_corpus(&detect_tests(&s), &s, &FilterConfig::default());
    (s, tasks)
}

fn find<'a>(tasks: &'a [CompletionTask], test: &str, index: usize) -> &'a CompletionTask {
    tasks
        .iter()
        .find(|t| t.test_id == test && t.stmt_index == index)
        .unwrap_or_else(|| panic!("no task {test}/{index}"))
}

#[test]
fn store_contents_match_manifests() {
    for name in FIXTURES {
        let m = manifest(name);
        assert_eq!(m.project, name);
        let s = store(name);
        let of_kind = |k: ClassKind| -> Vec<String> {
            let mut v: Vec<String> = s.classes().filter(|c| c.kind == k).map(|c| c.name.clone()).collect();
            v.sort();
            v
        };
        assert_eq!(of_kind(ClassKind::NonTest), m.classes.non_test, "{name}");
        assert_eq!(of_kind(ClassKind::Test), m.classes.test, "{name}");

        let tests = detect_tests(&s);
        let mut want: Vec<&String> = m.tests.keys().collect();
        want.sort();
        let mut got: Vec<&String> = tests.iter().collect();
        got.sort();
        assert_eq!(got, want, "{name}");

        let (tasks, report) = filter_corpus(&tests, &s, &FilterConfig::default());
        for (test, expected) in &m.tests {
            let got = match report.disposition(test).unwrap() {
                Disposition::Kept => "kept",
                Disposition::Rejected(r) => r.code(),
            };
            assert_eq!(got, expected, "{test}");
        }
        let muts: BTreeMap<String, String> = tasks.iter().map(|t| (t.test_id.clone(), t.mut_id.clone())).collect();
        assert_eq!(muts, m.mut_ids, "{name}");
    }
}

#[test]
fn semantics_match_manifests() {
    for name in FIXTURES {
        let m = manifest(name);
        let (s, tasks) = tasks(name);
        let index = build_statement_index(&s, Bm25Params::default());
        for e in &m.semantics {
            let t = find(&tasks, &e.test, e.stmt_index);
            let c = extract_semantics(t, &s, &index, &SemanticsConfig::default()).unwrap();
            let at = format!("{}/{}", e.test, e.stmt_index);
            if let Some(want) = &e.types_local {
                let got: Vec<(String, String)> = c
                    .types_local
                    .iter()
                    .map(|v| (v.name.clone(), v.ty.descriptor()))
                    .collect();
                assert_eq!(&got, want, "{at}");
            }
            if let Some(want) = &e.types_absent {
                let got: Vec<String> = c.types_absent.iter().map(|t| t.descriptor()).collect();
                assert_eq!(&got, want, "{at}");
            }
            if let Some(want) = &e.fields_notset {
                assert_eq!(&c.fields_notset, want, "{at}");
            }
            for f in &e.fields_notset_excludes {
                assert!(!c.fields_notset.contains(f), "{at}: {f}");
            }
            if let Some(want) = &e.setup_teardown_contains {
                let want = words(want);
                assert!(
                    want.is_empty() && c.setup_teardown.is_empty()
                        || c.setup_teardown
                            .windows(want.len().max(1))
                            .any(|w| w == want.as_slice()),
                    "{at}: {:?}",
                    c.setup_teardown
                );
            }
            if let Some(want) = &e.last_called_method_starts {
                let want = words(want);
                if want.is_empty() {
                    assert!(c.last_called_method.is_empty(), "{at}");
                } else {
                    assert!(
                        c.last_called_method.starts_with(&want),
                        "{at}: {:?}",
                        c.last_called_method
                    );
                }
            }
        }
    }
}

#[test]
fn exec_outcomes_match_manifests() {
    let config = ExecConfig {
        extra_classpath: stubs_classpath(),
        ..ExecConfig::default()
    };
    for name in FIXTURES {
        let m = manifest(name);
        if m.exec.is_empty() {
            continue;
        }
        let (s, tasks) = tasks(name);
        let executor = Executor::new(&s, &[], toolchain(), config.clone()).unwrap();
        for e in &m.exec {
            let t = find(&tasks, &e.test, e.stmt_index);
            let outcome = executor.evaluate(t, &words(&e.candidate)).unwrap();
            assert_eq!(
                outcome.status, e.status,
                "{name} {}: {}\n{}",
                e.test, e.candidate, outcome.diagnostics
            );
        }
    }
}
