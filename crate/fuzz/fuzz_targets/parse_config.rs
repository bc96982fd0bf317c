#![no_main]

use bandlim_cli::ExperimentConfig;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|text: &str| {
    // A config that parses must survive its own serialization unchanged.
    if let Ok(cfg) = ExperimentConfig::parse(text, None, &[]) {
        let again = ExperimentConfig::parse(&cfg.to_text(), None, &[]).expect("serialized config parses");
        assert_eq!(again, cfg);
    }
});
