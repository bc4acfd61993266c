#![no_main]

use libfuzzer_sys::fuzz_target;
use polytau::io::{parse_scalar, scalar_from_json, scalar_to_json};

fuzz_target!(|data: &str| {
    if let Ok(c) = parse_scalar(data) {
        assert_eq!(scalar_from_json(&scalar_to_json(&c)).unwrap(), c);
    }
});
