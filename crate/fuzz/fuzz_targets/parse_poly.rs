#![no_main]

use libfuzzer_sys::fuzz_target;
use polytau::io::{parse_poly, plain};

fuzz_target!(|data: &str| {
    // anything that parses must survive a render/parse round trip
    if let Ok(p) = parse_poly(data) {
        assert_eq!(parse_poly(&plain(&p)).unwrap(), p);
    }
});
