#![no_main]
use std::collections::HashSet;

use libfuzzer_sys::fuzz_target;
use testcomp_core::predictor::{parse_predictions_with, ListOrder};

fuzz_target!(|data: &[u8]| {
    let known: HashSet<&str> = ["p/T.m()V/0", "p/T.m()V/1"].into_iter().collect();
    for order in [ListOrder::ByScore, ListOrder::AsGiven] {
        let _ = parse_predictions_with(data, &known, 10, order);
    }
});
