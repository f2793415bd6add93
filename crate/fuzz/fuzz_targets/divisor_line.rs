//! Fuzzes the divisor-line parser against the bundled curve
//! configuration: arbitrary input must either be rejected with an error
//! or produce a divisor whose rendering parses back to the same divisor.

#![no_main]

use std::sync::OnceLock;

use libfuzzer_sys::fuzz_target;
use shimura::fixtures::y_config;
use shimura::{CurveConfig, Divisor};

static CONFIG: OnceLock<CurveConfig> = OnceLock::new();

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let config = CONFIG.get_or_init(y_config);
    if let Ok(divisor) = Divisor::parse(text, config) {
        let rendered = divisor.render();
        let round = Divisor::parse(&rendered, config).expect("rendered line parses");
        assert_eq!(round, divisor, "render/parse round trip");
    }
});
