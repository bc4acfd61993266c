#![no_main]

use std::str::FromStr;

use libfuzzer_sys::fuzz_target;
use polytau::io::TauFile;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(f) = TauFile::from_str(s) {
            assert_eq!(TauFile::from_json(&f.to_json()).unwrap(), f);
        }
    }
});
