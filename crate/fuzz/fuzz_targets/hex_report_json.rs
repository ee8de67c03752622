#![no_main]

use apnlab::io;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(r) = io::parse_hex_report_json(s) {
        assert_eq!(
            io::parse_hex_report_json(&io::hex_report_to_json(&r)).unwrap(),
            r
        );
    }
});
