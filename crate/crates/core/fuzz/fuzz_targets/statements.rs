#![no_main]
use libfuzzer_sys::fuzz_target;
use testcomp_core::jsource::{lex, split_statements};

fuzz_target!(|s: &str| {
    if let Ok(tokens) = lex(s) {
        if let Ok(stmts) = split_statements(&tokens) {
            let n: usize = stmts.iter().map(|st| st.tokens.len()).sum();
            assert!(n <= tokens.len());
        }
    }
});
