#![no_main]

use libfuzzer_sys::fuzz_target;
use tiltlab::io::{export_abstract, import_labels, import_poset, Format};
use tiltlab::reconstruct::extract_tilting;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let _ = import_labels(text);
    let Ok(p) = import_poset(text) else {
        return;
    };
    if p.is_empty() {
        return;
    }
    let json = export_abstract(&p, Format::Json).expect("non-empty poset exports");
    let back = import_poset(&json).expect("exported poset imports");
    assert_eq!(export_abstract(&back, Format::Json).unwrap(), json);
    if p.len() <= 256 {
        let _ = extract_tilting(&p);
    }
});
