#![no_main]

use apnlab::io;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(f) = io::parse_set_json(s) {
        let again = serde_json::to_string(&f).unwrap();
        assert_eq!(io::parse_set_json(&again).unwrap(), f);
    }
});
