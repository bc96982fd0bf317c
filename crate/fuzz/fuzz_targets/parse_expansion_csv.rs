#![no_main]

use bandlim::projections::Expansion;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|text: &str| {
    if let Ok(e) = Expansion::from_csv(text) {
        assert_eq!(e.coeffs.len(), e.order + 1);
        let again = Expansion::from_csv(&e.to_csv()).expect("written expansion parses");
        assert_eq!(again, e);
    }
});
