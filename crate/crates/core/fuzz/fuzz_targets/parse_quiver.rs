#![no_main]

use libfuzzer_sys::fuzz_target;
use tiltlab::quiver::{dynkin_type, parse_quiver};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(q) = parse_quiver(text) {
        let again = parse_quiver(&q.serialize()).expect("serialized quiver parses");
        assert_eq!(again.serialize(), q.serialize());
        let _ = dynkin_type(&q);
    }
});
