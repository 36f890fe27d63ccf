use std::fs;
use std::path::Path;

use crate::error::{Error, Result};

/// A non-blank, non-comment line with its 1-based line number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Record<'a> {
    pub line: usize,
    pub text: &'a str,
}

pub(crate) fn read_file(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

/// Yields data records, skipping blank lines and `#` comments. Trailing
/// carriage returns are stripped.
pub fn records(content: &str) -> impl Iterator<Item = Record<'_>> {
    content.lines().enumerate().filter_map(|(i, raw)| {
        let text = raw.trim_end_matches('\r');
        if text.trim().is_empty() || text.starts_with('#') {
            None
        } else {
            Some(Record { line: i + 1, text })
        }
    })
}
