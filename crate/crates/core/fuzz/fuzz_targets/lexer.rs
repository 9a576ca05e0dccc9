#![no_main]
use libfuzzer_sys::fuzz_target;
use testcomp_core::jsource::{lex, print_tokens};

fuzz_target!(|s: &str| {
    if let Ok(tokens) = lex(s) {
        let printed = print_tokens(&tokens);
        let again = lex(&printed).expect("printed tokens relex");
        assert_eq!(print_tokens(&again), printed);
    }
});
