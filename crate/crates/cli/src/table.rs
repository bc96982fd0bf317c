//! CSV output with a versioned comment header.

use std::fs;
use std::path::{Path, PathBuf};

use crate::CliError;

pub const SCHEMA_LINE: &str = "#schema=1";

/// A CSV file: `#key=value` metadata lines, a header row and data rows.
#[derive(Debug, Clone, Default)]
pub struct Table {
    pub meta: Vec<(String, String)>,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
    /// `#key=value` lines written after the data.
    pub footer: Vec<(String, String)>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Self {
            header: header.iter().map(|s| s.to_string()).collect(),
            ..Self::default()
        }
    }

    pub fn meta(mut self, key: &str, value: impl ToString) -> Self {
        self.meta.push((key.to_string(), value.to_string()));
        self
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_bytes(&self) -> Result<Vec<u8>, CliError> {
        let mut out = Vec::new();
        out.extend_from_slice(SCHEMA_LINE.as_bytes());
        out.push(b'\n');
        for (k, v) in &self.meta {
            out.extend_from_slice(format!("#{k}={v}\n").as_bytes());
        }
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.header)?;
        for r in &self.rows {
            w.write_record(r)?;
        }
        let mut out = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
        for (k, v) in &self.footer {
            out.extend_from_slice(format!("#{k}={v}\n").as_bytes());
        }
        Ok(out)
    }

    pub fn write(&self, dir: &Path, name: &str) -> Result<PathBuf, CliError> {
        let path = dir.join(name);
        fs::write(&path, self.to_bytes()?)?;
        Ok(path)
    }
}

/// A float with 17 significant digits.
pub fn num(v: f64) -> String {
    format!("{v:.16e}")
}

/// [`num`] of the value, or an empty field.
pub fn opt(v: Option<f64>) -> String {
    v.map(num).unwrap_or_default()
}

/// A name safe to use inside a file name.
pub fn slug(s: &str) -> String {
    s.chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || c == '.' || c == '-' {
                c
            } else {
                '_'
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_rows_and_footer() {
        let mut t = Table::new(&["n", "value"]).meta("T", 1);
        t.push(vec!["10".into(), num(0.5)]);
        t.footer.push(("trace".into(), "2".into()));
        let text = String::from_utf8(t.to_bytes().unwrap()).unwrap();
        assert_eq!(text, "#schema=1\n#T=1\nn,value\n10,5.0000000000000000e-1\n#trace=2\n");
    }

    #[test]
    fn floats_keep_seventeen_digits() {
        let v = 0.1 + 0.2;
        assert_eq!(num(v).parse::<f64>().unwrap(), v);
        assert_eq!(opt(None), "");
    }

    #[test]
    fn slugs_are_file_safe() {
        assert_eq!(slug("sinc:c=10"), "sinc_c_10");
    }
}
