#![no_main]

use apnlab::field::{parse_hex_u64, Elem};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(v) = parse_hex_u64(s) {
        if let Ok(bits) = u32::try_from(v) {
            let e = Elem::from_bits(bits);
            assert_eq!(parse_hex_u64(&e.to_hex()).unwrap(), v);
        }
    }
    let _ = serde_json::from_str::<Elem>(s);
});
