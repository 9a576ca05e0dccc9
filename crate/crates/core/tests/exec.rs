mod common;

use std::collections::BTreeMap;
use std::path::Path;

use common::oracles::{check_rerank, outcome};
use common::{fixture, store, stubs_classpath, toolchain, words};
use proptest::prelude::*;
use testcomp_core::elements::{detect_tests, filter_corpus, CompletionTask, FilterConfig};
use testcomp_core::exec::*;
use testcomp_core::predictor::{Candidate, CandidateList};

fn task(project: &str, test: &str, index: usize) -> (testcomp_core::elements::CodeElementStore, CompletionTask) {
    let s = store(project);
    let (tasks, _) = filter_corpus(&detect_tests(&s), &s, &FilterConfig::default());
    let t = tasks
        .into_iter()
        .find(|t| t.test_id.contains(&format!(".{test}(")) && t.stmt_index == index)
        .unwrap();
    (s, t)
}

fn config() -> ExecConfig {
    ExecConfig {
        extra_classpath: stubs_classpath(),
        ..ExecConfig::default()
    }
}

#[test]
fn figure_one_harness_shape() {
    let (s, t) = task("gmoperation", "addImage_ThrowsException_WhenFileIsNull", 1);
    let h = synthesize_harness(&t, t.gold(), &s, &[], config().timeout()).unwrap();
    assert_eq!(h.class_name, "org/gm4java/engine/support/GMOperationTest");
    assert_eq!(h.entry, EntryMode::Junit4ThenMain);
    assert!(h.source.starts_with("package org.gm4java.engine.support;"));
    assert!(h
        .source
        .contains("public ExpectedException exception = ExpectedException.none();"));
    assert!(h.source.contains("public void setup() {"));
    assert!(h.source.contains(
        "@ Test public void addImage_ThrowsException_WhenFileIsNull ( ) throws Exception {\n        \
         exception . expect ( IllegalArgumentException . class ) ;\n        \
         sut . addImage ( ( File ) null ) ;\n    }"
    ));
    let main = &h.source[h.source.find("public static void main").unwrap()..];
    let calls: Vec<&str> = main.lines().map(str::trim).filter(|l| l.starts_with("t.")).collect();
    assert_eq!(
        calls,
        vec!["t.setup();", "t.addImage_ThrowsException_WhenFileIsNull();"]
    );
    // other tests of the class are left out
    for gone in ["addImage_AppendsPath", "test0", "noCalls", "addImage_Ignored"] {
        assert!(!h.source.contains(gone), "{gone}");
    }
}

#[test]
fn harness_without_helpers_has_only_test_and_main() {
    let (s, t) = task("mathutil", "zeroIsZero", 1);
    let h = synthesize_harness(&t, t.gold(), &s, &[], config().timeout()).unwrap();
    let body = &h.source[h.source.find("class MathUtilTest {").unwrap()..];
    let methods = body.lines().filter(|l| l.contains("void ")).count();
    assert_eq!(methods, 2, "{body}");
    assert!(!body.contains("clampsHighValues"));
    let main = &body[body.find("main").unwrap()..];
    assert_eq!(main.matches("t.").count(), 1);
}

#[test]
fn teardown_follows_the_test_in_main() {
    let (s, t) = task("deepchain", "startsEngine", 1);
    let h = synthesize_harness(&t, t.gold(), &s, &[], config().timeout()).unwrap();
    let main = &h.source[h.source.find("public static void main").unwrap()..];
    let calls: Vec<&str> = main.lines().map(str::trim).filter(|l| l.starts_with("t.")).collect();
    assert_eq!(calls, vec!["t.setup();", "t.startsEngine();", "t.teardown();"]);
    let (s, t) = task("widgets", "addComponent", 1);
    let h = synthesize_harness(&t, t.gold(), &s, &[], config().timeout()).unwrap();
    assert_eq!(h.entry, EntryMode::MainOnly);
    assert!(h.source.contains("void helper()"));
    assert!(h.source.contains("panel . add ( comp , \"\" ) ;"));
}

#[test]
fn unbalanced_candidate_fails_at_compile() {
    let (s, t) = task("mathutil", "zeroIsZero", 1);
    let candidate = words("assertTrue ( ( z == 0 ) ;");
    let h = synthesize_harness(&t, &candidate, &s, &[], config().timeout()).unwrap();
    assert!(h.source.contains("assertTrue ( ( z == 0 ) ;"));
    let ex = Executor::new(&s, &[], toolchain(), config()).unwrap();
    let o = ex.evaluate(&t, &candidate).unwrap();
    assert_eq!(o.status, ExecStatus::NotCompilable);
    assert_eq!(o.runner, Runner::None);
    assert!(o.diagnostics.contains("[compile]"));
}

#[test]
fn missing_source_is_an_error() {
    let (s, mut t) = task("mathutil", "zeroIsZero", 1);
    t.test_class = "org/mathutil/Nope".into();
    assert!(matches!(
        synthesize_harness(&t, t.gold(), &s, &[], config().timeout()),
        Err(ExecError::MissingSource(_))
    ));
}

fn tree_digest(root: &Path) -> BTreeMap<String, Vec<u8>> {
    walkdir::WalkDir::new(root)
        .into_iter()
        .filter_map(Result::ok)
        .filter(|e| e.file_type().is_file())
        .map(|e| (e.path().display().to_string(), std::fs::read(e.path()).unwrap()))
        .collect()
}

#[test]
fn evaluation_is_repeatable_and_leaves_the_project_alone() {
    let root = fixture("deepchain");
    let before = tree_digest(&root);
    let (s, t) = task("deepchain", "startsEngine", 1);
    let ex = Executor::new(&s, &[], toolchain(), config()).unwrap();
    let list = CandidateList {
        candidates: vec![
            Candidate::new(t.gold().to_vec(), 0.0),
            Candidate::new(words("assertTrue ( false ) ;"), -1.0),
        ],
    };
    let first = ex.evaluate_all(&t, &list).unwrap();
    let second = ex.evaluate_all(&t, &list).unwrap();
    let statuses = |o: &[ExecOutcome]| o.iter().map(|o| o.status).collect::<Vec<_>>();
    assert_eq!(
        statuses(&first),
        vec![ExecStatus::Runnable, ExecStatus::CompilableNotRunnable]
    );
    assert_eq!(statuses(&first), statuses(&second));
    assert_eq!(first[0].runner, Runner::Junit4Cli);
    // the runner failure falls back to the ad-hoc main
    assert_eq!(first[1].runner, Runner::AdhocMain);
    assert!(first[1].diagnostics.contains("[junit4]") && first[1].diagnostics.contains("[main]"));
    assert_eq!(tree_digest(&root), before);
}

#[test]
fn timeout_means_not_runnable() {
    let (s, t) = task("mathutil", "zeroIsZero", 1);
    let quick = ExecConfig {
        timeout_secs: 3,
        ..config()
    };
    let ex = Executor::new(&s, &[], toolchain(), quick).unwrap();
    let o = ex.evaluate(&t, &words("while ( z == 0 ) { }")).unwrap();
    assert_eq!(o.status, ExecStatus::CompilableNotRunnable);
    assert!(o.diagnostics.contains("timed out"), "{}", o.diagnostics);
}

#[test]
fn toolchain_lookup() {
    let empty = tempfile::tempdir().unwrap();
    assert!(matches!(
        Toolchain::at(empty.path()),
        Err(ExecError::ToolchainMissing(_))
    ));
    let tc = toolchain();
    assert!(tc.java.is_file());
    assert_eq!(Toolchain::discover(Some(&tc.root)).unwrap(), tc);
}

fn list(items: &[(&str, f64)]) -> CandidateList {
    CandidateList {
        candidates: items.iter().map(|(t, s)| Candidate::new(words(t), *s)).collect(),
    }
}

fn names(l: &CandidateList) -> Vec<String> {
    l.candidates.iter().map(|c| c.tokens.join(" ")).collect()
}

#[test]
fn rerank_examples() {
    use ExecStatus::*;
    let l = list(&[("a", 0.9), ("b", 0.5)]);
    let r = rerank(&l, &[outcome(NotCompilable), outcome(Runnable)]).unwrap();
    assert_eq!(names(&r), vec!["b", "a"]);
    let l = list(&[("a", 0.9), ("b", 0.1)]);
    let r = rerank(&l, &[outcome(NotCompilable), outcome(CompilableNotRunnable)]).unwrap();
    assert_eq!(names(&r), vec!["b", "a"]);
    let l = list(&[("a", 0.9), ("b", 0.5), ("c", 0.1)]);
    let r = rerank(&l, &[outcome(Runnable), outcome(Runnable), outcome(Runnable)]).unwrap();
    assert_eq!(r, l);
    assert!(matches!(
        rerank(&l, &[outcome(Runnable)]),
        Err(ExecError::LengthMismatch {
            candidates: 3,
            outcomes: 1
        })
    ));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn rerank_follows_the_pairwise_order(
        items in proptest::collection::vec((0u8..3, -4i32..4), 0..10)
    ) {
        // original list sorted by score, as predictors produce
        let mut items = items;
        items.sort_by_key(|x| std::cmp::Reverse(x.1));
        prop_assert!(check_rerank(&items).is_ok(), "{:?}", check_rerank(&items));
    }
}
