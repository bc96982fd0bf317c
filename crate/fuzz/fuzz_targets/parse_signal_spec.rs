#![no_main]

use bandlim::concentration::Signal;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|spec: &str| {
    if let Ok(s) = Signal::from_spec(spec) {
        let again = Signal::from_spec(&s.spec()).expect("canonical spelling parses");
        assert_eq!(again.name, s.name);
        assert!(s.l2_norm.is_finite() && s.l2_norm > 0.0);
    }
});
