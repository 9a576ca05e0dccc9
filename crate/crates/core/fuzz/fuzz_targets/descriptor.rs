#![no_main]
use libfuzzer_sys::fuzz_target;
use testcomp_core::jclass::descriptor::{parse_field_descriptor, parse_method_descriptor};

fuzz_target!(|s: &str| {
    let _ = parse_field_descriptor(s);
    let _ = parse_method_descriptor(s);
});
