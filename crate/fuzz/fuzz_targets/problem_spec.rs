#![no_main]

use std::str::FromStr;

use libfuzzer_sys::fuzz_target;
use polytau::io::ProblemSpec;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        // decoding only; building is bounded by the spec limits but too slow for fuzzing
        let _ = ProblemSpec::from_str(s);
    }
});
