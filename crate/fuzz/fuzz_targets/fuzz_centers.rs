//! Fuzzes the persisted-center parser and checks the write/parse round trip
//! on every accepted input.

#![no_main]

use libfuzzer_sys::fuzz_target;
use splitclust::formats::parse_centers;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(centers) = parse_centers(text) {
        assert!(centers.k() >= 1 && centers.n() >= 1);
        assert!(centers.coords().iter().all(|v| v.is_finite()));
        // shortest round-trip formatting reproduces the same coordinates
        let mut rendered = String::new();
        for j in 0..centers.k() {
            let row: Vec<String> = centers.row(j).iter().map(|v| format!("{v:?}")).collect();
            rendered.push_str(&row.join(","));
            rendered.push('\n');
        }
        let back = parse_centers(&rendered).expect("rendered centers parse");
        assert_eq!(back, centers);
    }
});
