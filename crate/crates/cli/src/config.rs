//! Run configuration: defaults, `key = value` files, and rendering.
//!
//! - A configuration file is a sequence of lines; blank lines and lines
//!   starting with `#` are ignored, everything else must be `key = value`.
//! - Recognized keys: `D`, `dL`, `B`, `maxN`, `bound`, `format`.
//! - `format` takes `text` or `csv`; every other value is a signed 64-bit
//!   integer.
//! - Later lines override earlier ones, and command-line flags override
//!   the file.
//! - [`RunConfig::render`] writes a file that parses back to the same
//!   configuration, so configs round-trip exactly.
//!
//! Parsing here is purely syntactic: semantic constraints (fundamental
//! discriminant, positive level, sweep-bound caps) are enforced by the
//! library routines that consume the values.

use std::fmt;

use thiserror::Error;

/// A syntactic error in a configuration file, with its 1-based line.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConfigError {
    #[error("line {0}: expected `key = value`")]
    UnparsableLine(usize),
    #[error("line {line}: unknown key `{key}`")]
    UnknownKey { line: usize, key: String },
    #[error("line {line}: bad value `{value}` for `{key}`")]
    BadValue { line: usize, key: String, value: String },
}

/// Output format of a report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    /// Human-readable aligned text.
    Text,
    /// Comma-separated tables with header rows.
    Csv,
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Format::Text => write!(f, "text"),
            Format::Csv => write!(f, "csv"),
        }
    }
}

/// Every knob a report depends on. Reports are pure functions of this
/// struct, which is what makes reruns byte-identical.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunConfig {
    /// Field discriminant `D`.
    pub d_field: i64,
    /// Reduced discriminant `dL` of the level.
    pub d_lambda: i64,
    /// Norm parameter `B` of the twisting algebra.
    pub b: i64,
    /// Largest curve parameter `N` covered by tables and sweeps.
    pub max_n: i64,
    /// Coordinate bound for brute-force lattice sweeps.
    pub bound: i64,
    /// Output format.
    pub format: Format,
}

impl Default for RunConfig {
    /// The bundled example: `D = 13`, `dL = 3`, `B = 2`, with a sweep
    /// window (`N <= 120`, coordinates up to 40) small enough for a
    /// sub-second default run.
    fn default() -> Self {
        RunConfig {
            d_field: 13,
            d_lambda: 3,
            b: 2,
            max_n: 120,
            bound: 40,
            format: Format::Text,
        }
    }
}

impl RunConfig {
    /// Overlays the settings from a configuration file onto `self`.
    pub fn apply_file(&mut self, text: &str) -> Result<(), ConfigError> {
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(ConfigError::UnparsableLine(line_no));
            };
            let key = key.trim();
            let value = value.trim();
            let bad = || ConfigError::BadValue {
                line: line_no,
                key: key.to_string(),
                value: value.to_string(),
            };
            match key {
                "D" => self.d_field = value.parse().map_err(|_| bad())?,
                "dL" => self.d_lambda = value.parse().map_err(|_| bad())?,
                "B" => self.b = value.parse().map_err(|_| bad())?,
                "maxN" => self.max_n = value.parse().map_err(|_| bad())?,
                "bound" => self.bound = value.parse().map_err(|_| bad())?,
                "format" => {
                    self.format = match value {
                        "text" => Format::Text,
                        "csv" => Format::Csv,
                        _ => return Err(bad()),
                    }
                }
                _ => {
                    return Err(ConfigError::UnknownKey {
                        line: line_no,
                        key: key.to_string(),
                    })
                }
            }
        }
        Ok(())
    }

    /// Parses a configuration file over the defaults.
    pub fn parse(text: &str) -> Result<RunConfig, ConfigError> {
        let mut config = RunConfig::default();
        config.apply_file(text)?;
        Ok(config)
    }

    /// Renders a file that [`RunConfig::parse`] maps back to `self`.
    pub fn render(&self) -> String {
        format!(
            "D = {}\ndL = {}\nB = {}\nmaxN = {}\nbound = {}\nformat = {}\n",
            self.d_field, self.d_lambda, self.b, self.max_n, self.bound, self.format
        )
    }
}
