use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use testcomp_core::jsource::*;

fn kinds_and_texts(tokens: &[Token]) -> Vec<(TokenKind, String)> {
    tokens.iter().map(|t| (t.kind, t.text.clone())).collect()
}

fn identifier() -> impl Strategy<Value = String> {
    "[a-zA-Z_$][a-zA-Z0-9_$]{0,12}".prop_filter("not a keyword", |s| !testcomp_core::jsource::lexer::is_keyword(s))
}

fn token_text() -> impl Strategy<Value = String> {
    prop_oneof![
        identifier(),
        prop::sample::select(vec!["int", "new", "return", "null", "true", "this", "class"]).prop_map(str::to_string),
        "[0-9]{1,6}L?".prop_map(|s| s),
        "[0-9]{1,3}\\.[0-9]{1,3}f?".prop_map(|s| s),
        "\"[a-z ;{}()]{0,8}\"".prop_map(|s| s),
        "'[a-z]'".prop_map(|s| s),
        prop::sample::select(vec![
            "=", "==", "+", "++", "->", "<<=", ">>>", "!", "&&", "?", ":", "::"
        ])
        .prop_map(str::to_string),
        prop::sample::select(vec!["(", ")", "{", "}", "[", "]", ";", ",", ".", "@"]).prop_map(str::to_string),
    ]
}

fn stream() -> impl Strategy<Value = Vec<Token>> {
    prop::collection::vec(token_text(), 0..40).prop_map(|texts| lex(&texts.join(" ")).unwrap())
}

const TEMPLATES: &[&str] = &[
    "x = a ( b , \"s;t\" ) ;",
    "int[] v = { 1 , 2 } ;",
    "if ( c ) { y ++ ; } else { z -- ; }",
    "for ( int i = 0 ; i < n ; i ++ ) { f ( i ) ; }",
    "{ a ( ) ; }",
    "try { g ( ) ; } catch ( E e ) { } finally { h ( ) ; }",
    "Runnable r = ( ) -> { h ( ) ; } ;",
    "while ( k ) k = next ( ) ;",
    "list . forEach ( System . out :: println ) ;",
    "return ;",
];

proptest! {
    #[test]
    fn lex_print_is_a_fixpoint(tokens in stream()) {
        let printed = print_tokens(&tokens);
        let relexed = lex(&printed).unwrap();
        prop_assert_eq!(kinds_and_texts(&relexed), kinds_and_texts(&tokens));
        prop_assert_eq!(print_tokens(&relexed), printed);
    }

    #[test]
    fn masking_keeps_length_and_is_idempotent(tokens in stream()) {
        let once = mask_strings(&tokens);
        prop_assert_eq!(once.len(), tokens.len());
        prop_assert_eq!(&mask_strings(&once), &once);
        for (a, b) in tokens.iter().zip(&once) {
            if a.kind == TokenKind::LiteralString {
                prop_assert_eq!(&b.text, STR);
            } else {
                prop_assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn split_preserves_tokens(picks in prop::collection::vec(0..TEMPLATES.len(), 0..12)) {
        let body: Vec<&str> = picks.iter().map(|&i| TEMPLATES[i]).collect();
        let tokens = lex(&body.join("\n")).unwrap();
        let statements = split_statements(&tokens).unwrap();
        prop_assert_eq!(statements.len(), picks.len());
        let joined: Vec<Token> = statements.iter().flat_map(|s| s.tokens.clone()).collect();
        prop_assert_eq!(joined, tokens);
        for (s, &i) in statements.iter().zip(&picks) {
            prop_assert_eq!(s.has_control_flow, matches!(i, 2 | 3 | 5 | 7));
            prop_assert_eq!(s.has_lambda, matches!(i, 6 | 8));
        }
        for w in statements.windows(2) {
            prop_assert!(w[0].line_span.1 < w[1].line_span.0);
        }
    }

    #[test]
    fn subtoken_round_trip_on_random_identifiers(tokens in stream()) {
        prop_assert_eq!(detokenize(&subtokenize(&tokens)), tokens);
    }
}

#[test]
fn subtoken_round_trip_on_fixture_tokens() {
    let root = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures/projects");
    let mut pool: Vec<Token> = Vec::new();
    for entry in walkdir::WalkDir::new(root) {
        let entry = entry.unwrap();
        if entry.path().extension().is_some_and(|e| e == "java") {
            pool.extend(lex(&std::fs::read_to_string(entry.path()).unwrap()).unwrap());
        }
    }
    assert!(pool.len() > 1000);
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let sample: Vec<Token> = pool.choose_multiple(&mut rng, 1000).cloned().collect();
    for t in &sample {
        let one = std::slice::from_ref(t);
        assert_eq!(detokenize(&subtokenize(one)), one, "{}", t.text);
    }
    assert_eq!(detokenize(&subtokenize(&sample)), sample);
}
