//! Fuzzes the label-file parser; parsed labels must compact to a contiguous
//! id range.

#![no_main]

use libfuzzer_sys::fuzz_target;
use splitclust::formats::{compact_labels, parse_labels};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(labels) = parse_labels(text) {
        assert!(!labels.is_empty());
        let compact = compact_labels(&labels);
        assert_eq!(compact.len(), labels.len());
        let max = compact.iter().copied().max().unwrap();
        let mut seen = vec![false; max + 1];
        for c in compact {
            seen[c] = true;
        }
        assert!(seen.into_iter().all(|s| s));
    }
});
