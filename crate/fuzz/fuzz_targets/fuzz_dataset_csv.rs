//! Fuzzes the dataset CSV parser. The first two input bytes pick the
//! delimiter and header flag; the rest is the file content. A successful
//! parse must satisfy the dataset invariants.

#![no_main]

use libfuzzer_sys::fuzz_target;
use splitclust::data::{CsvOptions, Dataset};

fuzz_target!(|data: &[u8]| {
    if data.len() < 2 {
        return;
    }
    let delimiter = match data[0] % 4 {
        0 => ',',
        1 => ';',
        2 => '\t',
        _ => '|',
    };
    let opts = CsvOptions {
        delimiter,
        has_header: data[1] & 1 == 1,
    };
    let Ok(text) = std::str::from_utf8(&data[2..]) else {
        return;
    };
    if let Ok(ds) = Dataset::parse_csv(text, &opts) {
        assert!(ds.m() >= 1 && ds.n() >= 1);
        assert_eq!(ds.points().len(), ds.m() * ds.n());
        assert!(ds.points().iter().all(|v| v.is_finite()));
    }
});
