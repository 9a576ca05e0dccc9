#![no_main]
use libfuzzer_sys::fuzz_target;
use testcomp_core::jclass::{analyze, parse_classfile, NoHierarchy};

fuzz_target!(|data: &[u8]| {
    if let Ok(cf) = parse_classfile(data) {
        for m in &cf.methods {
            let _ = analyze(m, &cf, &NoHierarchy);
        }
    }
});
