//! Fuzzes the curve-configuration parser: arbitrary input must either be
//! rejected with an error or produce a configuration whose rendering
//! parses back to the same configuration.

#![no_main]

use libfuzzer_sys::fuzz_target;
use shimura::CurveConfig;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(config) = CurveConfig::parse(text) {
        let rendered = config.render();
        let round = CurveConfig::parse(&rendered).expect("rendered file parses");
        assert_eq!(round, config, "render/parse round trip");
    }
});
