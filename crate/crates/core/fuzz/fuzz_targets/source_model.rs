#![no_main]
use libfuzzer_sys::fuzz_target;
use testcomp_core::jsource::parse_source;

fuzz_target!(|s: &str| {
    let _ = parse_source(s);
});
