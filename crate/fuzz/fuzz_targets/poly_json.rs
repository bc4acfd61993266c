#![no_main]

use libfuzzer_sys::fuzz_target;
use polytau::io::{poly_from_json, poly_to_json};

fuzz_target!(|data: &[u8]| {
    let Ok(v) = serde_json::from_slice::<serde_json::Value>(data) else { return };
    if let Ok(p) = poly_from_json(&v) {
        assert_eq!(poly_from_json(&poly_to_json(&p)).unwrap(), p);
    }
});
