//! Run-configuration support for the `shimura` command-line binary.
//!
//! The binary itself lives in `main.rs`; this library exposes the pieces
//! with a pure-parsing surface so they can be exercised (and fuzzed)
//! without spawning a process.

pub mod config;
