#![no_main]

use apnlab::io;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(f) = io::parse_vbf_json(s) {
        if f.n <= 8 {
            let v = f.into_vbf().expect("validated file builds");
            let _ = v.differential_uniformity();
        }
    }
});
