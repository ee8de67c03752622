#![no_main]

use apnlab::io;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(spec) = io::parse_walsh_csv(s) {
        assert_eq!(
            io::parse_walsh_csv(&io::spectrum_to_csv(&spec)).unwrap(),
            spec
        );
    }
    if let Ok(spec) = io::parse_hyperplane_csv(s) {
        assert_eq!(
            io::parse_hyperplane_csv(&io::spectrum_to_csv(&spec)).unwrap(),
            spec
        );
    }
});
