mod common;

use std::collections::{BTreeMap, HashSet};

use common::store;
use proptest::prelude::*;
use testcomp_core::elements::{detect_tests, filter_corpus, CompletionTask, FilterConfig, JUnitVersion};
use testcomp_core::predictor::*;
use testcomp_core::semantics::*;

fn words(s: &str) -> Vec<String> {
    s.split_whitespace().map(str::to_string).collect()
}

fn toy_task(prior: &[&str], semantics: Option<SemanticContext>) -> CompletionTask {
    let mut statements: Vec<Vec<String>> = prior.iter().map(|s| words(s)).collect();
    statements.push(words("gold ;"));
    CompletionTask {
        id: "toy/T.t()V/0".into(),
        project: "toy".into(),
        test_class: "T".into(),
        test_id: "T.t()V".into(),
        mut_id: "C.m()V".into(),
        junit: JUnitVersion::Junit4,
        sign: words("@ Test public void t ( )"),
        stmt_index: prior.len(),
        statements,
        mut_source: words("void m ( ) { }"),
        first_assertion: false,
        semantics,
    }
}

fn segments(seq: &[String]) -> Vec<Vec<String>> {
    seq.split(|t| t == SEP).map(<[String]>::to_vec).collect()
}

#[test]
fn figure_one_piece_order() {
    let s = store("gmoperation");
    let (mut tasks, _) = filter_corpus(&detect_tests(&s), &s, &FilterConfig::default());
    let index = build_statement_index(&s, Bm25Params::default());
    let t = tasks
        .iter_mut()
        .find(|t| t.test_id.contains("WhenFileIsNull") && t.stmt_index == 1)
        .unwrap();
    t.semantics = Some(extract_semantics(t, &s, &index, &SemanticsConfig::default()).unwrap());
    let input = assemble_input(t, &PredictorConfig::default());
    assert!(!input.truncated);
    let delims: Vec<usize> = input
        .subtokens
        .iter()
        .enumerate()
        .filter(|(_, t)| *t == SEP)
        .map(|(i, _)| i)
        .collect();
    assert_eq!(delims.len(), 8);
    let seg = segments(&input.subtokens);
    // fields not set, last called method and local types are empty here
    assert!(seg[0].is_empty() && seg[1].is_empty() && seg[2].is_empty());
    assert_eq!(&input.subtokens[..3], &[SEP, SEP, SEP]);
    assert_eq!(seg[3], words("file"));
    assert_eq!(seg[4], words("return this ;"));
    assert_eq!(seg[5][..5], words("@ before public void setup"));
    assert_eq!(seg[6][..5], words("public gm operation add image"));
    assert_eq!(
        seg[7],
        words("@ test public void add image throws exception when file is null ( ) throws exception")
    );
    assert_eq!(
        seg[8],
        words("exception . expect ( illegal argument exception . class ) ;")
    );
}

#[test]
fn empty_semantics_leave_only_syntax_pieces() {
    let t = toy_task(&["int x = 1 ;"], None);
    let input = assemble_input(&t, &PredictorConfig::default());
    let mut want = vec![SEP.to_string(); 6];
    want.extend(words("void m ( ) { }"));
    want.push(SEP.into());
    want.extend(words("@ test public void t ( )"));
    want.push(SEP.into());
    want.extend(words("int x = 1 ;"));
    assert_eq!(input.subtokens, want);
    assert!(!input.truncated);
    assert_eq!(input.original_length, want.len());
}

#[test]
fn long_input_keeps_the_last_512() {
    // 8 delimiters, 7 mut, 6 sign and 579 prior subtokens make 600
    let prior: Vec<String> = (0..579)
        .map(|i| ["alpha", "beta", "gamma"][i % 3].to_string())
        .collect();
    let joined = prior.join(" ");
    let t = toy_task(&[&joined], None);
    let untruncated = assemble_input(
        &t,
        &PredictorConfig {
            max_len: usize::MAX,
            ..PredictorConfig::default()
        },
    );
    let input = assemble_input(&t, &PredictorConfig::default());
    assert_eq!(input.original_length, 600);
    assert!(input.truncated);
    assert_eq!(input.subtokens.len(), 512);
    assert_eq!(input.subtokens[..], untruncated.subtokens[88..]);
}

#[test]
fn config_validation() {
    assert!(PredictorConfig::default().validate().is_ok());
    let mut c = PredictorConfig::default();
    c.ordering.pop();
    assert_eq!(c.validate(), Err(ConfigError::NotAPermutation));
    c.ordering.push(Piece::Mut);
    assert_eq!(c.validate(), Err(ConfigError::NotAPermutation));
    let c = PredictorConfig {
        max_len: 0,
        ..PredictorConfig::default()
    };
    assert_eq!(c.validate(), Err(ConfigError::ZeroLength));
}

fn rich_semantics() -> SemanticContext {
    SemanticContext {
        types_local: vec![LocalVar {
            name: "file".into(),
            slot: 1,
            ty: testcomp_core::jclass::TypeDesc::object("java/io/File"),
        }],
        types_absent: vec![testcomp_core::jclass::TypeDesc::object("org/a/ImageList")],
        fields_notset: vec!["org/a/FooTest.count".into()],
        setup_teardown: words("void setUp ( ) { }"),
        last_called_method: words("int size ( ) { return n ; }"),
        similar_stmt: words("list . add ( x ) ;"),
    }
}

#[test]
fn semantic_pieces_render_as_text() {
    let t = toy_task(&["a ;"], Some(rich_semantics()));
    assert_eq!(piece_subtokens(&t, Piece::TypesLocal), words("file file"));
    assert_eq!(piece_subtokens(&t, Piece::TypesAbsent), words("image list"));
    assert_eq!(piece_subtokens(&t, Piece::FieldsNotset), words("foo test . count"));
}

proptest! {
    #[test]
    fn assembly_invariants(
        order in Just(Piece::DEFAULT_ORDER.to_vec()).prop_shuffle(),
        max_len in 1usize..120,
        n in 0usize..40,
    ) {
        let prior: Vec<String> = (0..n).map(|i| format!("tok{i}")).collect();
        let joined = prior.join(" ");
        let t = toy_task(&[&joined], Some(rich_semantics()));
        let config = PredictorConfig { max_len, k: 10, ordering: order.clone() };
        let input = assemble_input(&t, &config);
        prop_assert!(input.subtokens.len() <= max_len);
        let full = assemble_input(&t, &PredictorConfig { max_len: usize::MAX, ..config.clone() });
        if !input.truncated {
            prop_assert_eq!(&input.subtokens, &full.subtokens);
        } else {
            prop_assert_eq!(&input.subtokens[..], &full.subtokens[full.subtokens.len() - max_len..]);
        }
        let bag = |v: &[String]| {
            let mut b: Vec<String> = v.iter().filter(|t| *t != SEP).cloned().collect();
            b.sort();
            b
        };
        let default = assemble_input(&t, &PredictorConfig { max_len: usize::MAX, ..PredictorConfig::default() });
        prop_assert_eq!(bag(&full.subtokens), bag(&default.subtokens));
        let seg = segments(&full.subtokens);
        prop_assert_eq!(seg.len(), 9);
        for (i, p) in order.iter().enumerate() {
            prop_assert_eq!(&seg[i], &piece_subtokens(&t, *p));
        }
    }
}

fn entry(context: &str, statement: &str, i: usize) -> IndexEntry {
    IndexEntry {
        context: words(context),
        statement: words(statement),
        origin: Origin {
            project: "toy".into(),
            method: format!("toy/M.m{i}()V"),
            stmt_index: 0,
            is_test: true,
        },
    }
}

fn twenty() -> StatementIndex {
    let vocab = [
        "list", "add", "size", "file", "path", "map", "put", "get", "key", "value",
    ];
    let entries = (0..20)
        .map(|i| {
            let ctx: Vec<&str> = (0..1 + i % 4).map(|j| vocab[(i * 3 + j * 7) % 10]).collect();
            // a few statements repeat so distinctness matters
            entry(&ctx.join(" "), &format!("s{} ;", i % 13), i)
        })
        .collect();
    StatementIndex::new(entries, Bm25Params::default())
}

#[test]
fn retrieval_on_empty_index() {
    let t = toy_task(&["list . add ( x ) ;"], None);
    assert!(predict_retrieval(&t, &StatementIndex::default(), 10).is_empty());
}

#[test]
fn retrieval_exact_context_ranks_first() {
    let entries = vec![
        entry("map put key value", "m ;", 0),
        entry("list add item", "l ;", 1),
        entry("file path", "f ;", 2),
        entry("list size", "s ;", 3),
    ];
    let index = StatementIndex::new(entries, Bm25Params::default());
    let t = toy_task(&["list add item"], None);
    let got = predict_retrieval(&t, &index, 10);
    assert_eq!(got.candidates[0].tokens, words("l ;"));
    assert!(got.is_sorted());
}

proptest! {
    #[test]
    fn retrieval_matches_exhaustive_top_k(q in proptest::collection::vec(0usize..11, 0..6), k in 1usize..12) {
        let vocab = ["list", "add", "size", "file", "path", "map", "put", "get", "key", "value", "none"];
        let query = q.iter().map(|&i| vocab[i]).collect::<Vec<_>>().join(" ");
        let index = twenty();
        let t = toy_task(&[&query], None);
        let got = predict_retrieval(&t, &index, k);

        let docs: Vec<Vec<String>> = index.entries().iter().map(|e| e.context.clone()).collect();
        let stats = Bm25Stats::from_docs(&docs);
        let qv = words(&query);
        let mut scored: Vec<(f64, usize)> = docs
            .iter()
            .enumerate()
            .map(|(i, d)| (bm25_score(&qv, d, &stats, index.params()), i))
            .collect();
        // selection sort by (score desc, id asc)
        let mut want: Vec<Vec<String>> = Vec::new();
        while want.len() < k {
            let Some(pos) = (0..scored.len()).max_by(|&a, &b| {
                scored[a].0.partial_cmp(&scored[b].0).unwrap().then(scored[b].1.cmp(&scored[a].1))
            }) else { break };
            let (s, i) = scored.remove(pos);
            if s <= 0.0 {
                break;
            }
            let st = index.entries()[i].statement.clone();
            if !want.contains(&st) {
                want.push(st);
            }
        }
        let got_tokens: Vec<Vec<String>> = got.candidates.iter().map(|c| c.tokens.clone()).collect();
        prop_assert_eq!(got_tokens, want);
        prop_assert!(got.is_sorted());
    }
}

fn known() -> HashSet<&'static str> {
    ["p/A.a()V/0", "p/A.a()V/1"].into_iter().collect()
}

#[test]
fn external_sorted_records_are_kept_verbatim() {
    let cands: Vec<String> = (0..10)
        .map(|i| format!(r#"{{"tokens":["s{i}",";"],"score":{}}}"#, -(i as f64)))
        .collect();
    let text = format!("{{\"task_id\":\"p/A.a()V/0\",\"candidates\":[{}]}}\n", cands.join(","));
    let got = parse_predictions(text.as_bytes(), &known(), 10).unwrap();
    let list = &got.lists["p/A.a()V/0"];
    assert_eq!(list.len(), 10);
    assert_eq!(list.candidates[3].tokens, words("s3 ;"));
    assert!(got.resorted.is_empty());
    let mut out = Vec::new();
    write_predictions(&mut out, &got.lists).unwrap();
    let again = parse_predictions(out.as_slice(), &known(), 10).unwrap();
    assert_eq!(again, got);
}

#[test]
fn external_unsorted_records_are_resorted() {
    let text = r#"{"task_id":"p/A.a()V/1","candidates":[{"tokens":["a"],"score":-3.0},{"tokens":["b"],"score":-1.0}]}"#;
    let got = parse_predictions(text.as_bytes(), &known(), 10).unwrap();
    assert_eq!(got.resorted, vec!["p/A.a()V/1".to_string()]);
    assert_eq!(got.lists["p/A.a()V/1"].candidates[0].tokens, words("b"));
}

#[test]
fn external_record_errors() {
    let unknown = r#"{"task_id":"q/B.b()V/0","candidates":[]}"#;
    assert!(matches!(
        parse_predictions(unknown.as_bytes(), &known(), 10),
        Err(ExternalError::UnknownTaskId { line: 1, .. })
    ));
    let bad = "{\"task_id\":\"p/A.a()V/0\",\"candidates\":[]}\nnot json\n";
    assert!(matches!(
        parse_predictions(bad.as_bytes(), &known(), 10),
        Err(ExternalError::MalformedRecord { line: 2, .. })
    ));
    let many = r#"{"task_id":"p/A.a()V/0","candidates":[{"tokens":["a"],"score":1},{"tokens":["b"],"score":0}]}"#;
    assert!(matches!(
        parse_predictions(many.as_bytes(), &known(), 1),
        Err(ExternalError::MalformedRecord { .. })
    ));
    let dup = "{\"task_id\":\"p/A.a()V/0\",\"candidates\":[]}\n{\"task_id\":\"p/A.a()V/0\",\"candidates\":[]}";
    assert!(parse_predictions(dup.as_bytes(), &known(), 10).is_err());
    let lists: BTreeMap<String, CandidateList> = BTreeMap::new();
    let mut out = Vec::new();
    write_predictions(&mut out, &lists).unwrap();
    assert!(out.is_empty());
}
