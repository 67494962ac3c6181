//! Fuzzes the reference-objective table parser.

#![no_main]

use libfuzzer_sys::fuzz_target;
use splitclust::formats::parse_fbest;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(rows) = parse_fbest(text) {
        assert!(!rows.is_empty());
        for (k, f) in rows {
            assert!(k >= 1);
            assert!(f.is_finite());
        }
    }
});
