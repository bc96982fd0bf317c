#![no_main]

use bandlim::constants::parse_constants;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|text: &str| {
    if let Ok(c) = parse_constants(text) {
        assert!(c.entries.iter().all(|(k, v)| !k.is_empty() && v.is_finite()));
    }
});
