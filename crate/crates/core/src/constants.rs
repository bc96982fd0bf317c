//! Oracle-checked constants, loaded from a small `key = value` text file.

use crate::error::{Error, Result};

/// Text of the constants file shipped with the crate.
pub const CONSTANTS_FILE: &str = include_str!("../data/constants.txt");

/// A parsed constants file, in file order.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Constants {
    pub entries: Vec<(String, f64)>,
}

impl Constants {
    pub fn get(&self, key: &str) -> Option<f64> {
        self.entries.iter().find(|(k, _)| k == key).map(|&(_, v)| v)
    }
}

/// Parses `key = value` lines. Blank lines and lines starting with `#` are
/// skipped; keys must be non-empty identifiers and may not repeat.
pub fn parse_constants(text: &str) -> Result<Constants> {
    let mut entries: Vec<(String, f64)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| Error::Parse {
            line: line_no,
            message: format!("expected `key = value`, got {line:?}"),
        })?;
        let key = key.trim();
        if key.is_empty() || !key.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
            return Err(Error::Parse {
                line: line_no,
                message: format!("invalid key {key:?}"),
            });
        }
        let value: f64 = value.trim().parse().map_err(|_| Error::Parse {
            line: line_no,
            message: format!("invalid number {:?}", value.trim()),
        })?;
        if !value.is_finite() {
            return Err(Error::Parse {
                line: line_no,
                message: format!("non-finite value for {key}"),
            });
        }
        if entries.iter().any(|(k, _)| k == key) {
            return Err(Error::Parse {
                line: line_no,
                message: format!("duplicate key {key}"),
            });
        }
        entries.push((key.to_string(), value));
    }
    Ok(Constants { entries })
}

/// The shipped constants.
pub fn shipped() -> Constants {
    parse_constants(CONSTANTS_FILE).expect("shipped constants file parses")
}
