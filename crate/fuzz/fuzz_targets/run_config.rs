//! Fuzzes the command-line run-configuration parser: arbitrary input
//! must either be rejected with an error or produce a configuration
//! whose rendering parses back to the same configuration.

#![no_main]

use libfuzzer_sys::fuzz_target;
use shimura_cli::config::RunConfig;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(config) = RunConfig::parse(text) {
        assert_eq!(
            RunConfig::parse(&config.render()),
            Ok(config),
            "render/parse round trip"
        );
    }
});
