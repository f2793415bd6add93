//! Fuzzes the lattice fixture-file parser: arbitrary input must either
//! be rejected with an error or produce a lattice whose rendering parses
//! back to the same lattice.

#![no_main]

use libfuzzer_sys::fuzz_target;
use shimura::QuaternaryLattice;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(lattice) = QuaternaryLattice::parse(text) {
        let rendered = lattice.render();
        let round = QuaternaryLattice::parse(&rendered).expect("rendered file parses");
        assert_eq!(round, lattice, "render/parse round trip");
    }
});
