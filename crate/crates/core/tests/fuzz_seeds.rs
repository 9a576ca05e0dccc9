use std::collections::HashSet;
use std::path::Path;

use testcomp_core::elements::{CodeElementStore, StoreArchive};
use testcomp_core::jclass::descriptor::{parse_field_descriptor, parse_method_descriptor};
use testcomp_core::jclass::{analyze, parse_classfile, NoHierarchy};
use testcomp_core::jsource::{lex, parse_source, print_tokens, split_statements};
use testcomp_core::predictor::{parse_predictions_with, ListOrder};

fn seeds(target: &str) -> Vec<Vec<u8>> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fuzz/corpus").join(target);
    let mut out: Vec<_> = std::fs::read_dir(&dir)
        .unwrap()
        .map(|e| std::fs::read(e.unwrap().path()).unwrap())
        .collect();
    assert!(!out.is_empty(), "no seeds for {target}");
    out.sort();
    out
}

fn texts(target: &str) -> Vec<String> {
    seeds(target)
        .into_iter()
        .map(|b| String::from_utf8(b).unwrap())
        .collect()
}

#[test]
fn classfile_seeds_parse_and_analyze() {
    for bytes in seeds("classfile") {
        let cf = parse_classfile(&bytes).unwrap();
        for m in &cf.methods {
            if m.code().is_some() {
                analyze(m, &cf, &NoHierarchy).unwrap();
            }
        }
    }
}

#[test]
fn descriptor_seeds_parse() {
    for s in texts("descriptor") {
        assert!(
            parse_field_descriptor(&s).is_ok() || parse_method_descriptor(&s).is_ok(),
            "{s}"
        );
    }
}

#[test]
fn lexer_seeds_round_trip() {
    for s in texts("lexer") {
        let printed = print_tokens(&lex(&s).unwrap());
        assert_eq!(print_tokens(&lex(&printed).unwrap()), printed);
    }
}

#[test]
fn source_seeds_parse() {
    for s in texts("source_model") {
        parse_source(&s).unwrap();
    }
}

#[test]
fn statement_seeds_split() {
    for s in texts("statements") {
        let tokens = lex(&s).unwrap();
        let stmts = split_statements(&tokens).unwrap();
        assert!(stmts.len() >= 2);
    }
}

#[test]
fn archive_seeds_load() {
    for bytes in seeds("archive") {
        let archive: StoreArchive = serde_json::from_slice(&bytes).unwrap();
        CodeElementStore::from_archive(archive).unwrap();
    }
}

#[test]
fn prediction_seeds_decode() {
    let known: HashSet<&str> = ["p/T.m()V/0", "p/T.m()V/1"].into_iter().collect();
    let outcomes: Vec<bool> = seeds("predictions")
        .iter()
        .map(|b| parse_predictions_with(b.as_slice(), &known, 10, ListOrder::ByScore).is_ok())
        .collect();
    assert!(outcomes.contains(&true) && outcomes.contains(&false));
}

mod mutated {
    use super::*;
    use proptest::prelude::*;

    fn flip(mut bytes: Vec<u8>, edits: &[(usize, u8)]) -> Vec<u8> {
        for &(at, v) in edits {
            let n = bytes.len();
            bytes[at % n] = v;
        }
        bytes
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(2000))]

        #[test]
        fn corrupted_classfiles_do_not_panic(pick in 0usize..3, edits in prop::collection::vec((any::<usize>(), any::<u8>()), 1..6), cut in any::<usize>()) {
            let all = seeds("classfile");
            let mut bytes = flip(all[pick % all.len()].clone(), &edits);
            if cut % 4 == 0 {
                bytes.truncate(cut % bytes.len());
            }
            if let Ok(cf) = parse_classfile(&bytes) {
                for m in &cf.methods {
                    let _ = analyze(m, &cf, &NoHierarchy);
                }
            }
        }

        #[test]
        fn corrupted_sources_do_not_panic(pick in 0usize..4, edits in prop::collection::vec((any::<usize>(), 0x20u8..0x7f), 1..8)) {
            let mut all = texts("source_model");
            all.extend(texts("statements"));
            let s = all[pick % all.len()].clone().into_bytes();
            let s = String::from_utf8(flip(s, &edits)).unwrap();
            let _ = parse_source(&s);
            if let Ok(tokens) = lex(&s) {
                let _ = split_statements(&tokens);
                let printed = print_tokens(&tokens);
                prop_assert_eq!(print_tokens(&lex(&printed).unwrap()), printed);
            }
        }

        #[test]
        fn corrupted_records_do_not_panic(edits in prop::collection::vec((any::<usize>(), any::<u8>()), 1..6)) {
            let known: HashSet<&str> = ["p/T.m()V/0"].into_iter().collect();
            for b in seeds("predictions") {
                let _ = parse_predictions_with(flip(b, &edits).as_slice(), &known, 10, ListOrder::AsGiven);
            }
            for b in seeds("archive") {
                if let Ok(a) = serde_json::from_slice::<StoreArchive>(&flip(b, &edits)) {
                    let _ = CodeElementStore::from_archive(a);
                }
            }
        }
    }
}
