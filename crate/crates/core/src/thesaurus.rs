//! Word to category lookup over a hierarchical thesaurus.
//!
//! Category codes are digit strings whose prefixes name the enclosing
//! categories, so moving to a coarser hierarchy level is a prefix truncation.
//! The on-disk format is one `word<TAB>code` record per line; `#` lines are
//! comments.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use crate::error::{Error, Result};
use crate::text;

pub const DEFAULT_LEVEL: usize = 3;
pub const MAX_LEVEL: usize = 6;

/// A category code truncated to one hierarchy level, e.g. `137`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CategoryId(String);

impl CategoryId {
    pub fn new(code: impl Into<String>) -> Result<Self> {
        let code = code.into();
        if code.is_empty() {
            return Err(Error::InvalidCategory {
                code,
                reason: "empty code",
            });
        }
        if !code.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::InvalidCategory {
                code,
                reason: "non-digit character",
            });
        }
        Ok(CategoryId(code))
    }

    /// Keeps the first `level` digits.
    pub fn truncate(&self, level: usize) -> Result<Self> {
        if level == 0 || self.0.len() < level {
            return Err(Error::InvalidCategory {
                code: self.0.clone(),
                reason: "code shorter than the requested level",
            });
        }
        Ok(CategoryId(self.0[..level].to_owned()))
    }

    pub fn level(&self) -> usize {
        self.0.len()
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for CategoryId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::str::FromStr for CategoryId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CategoryId::new(s)
    }
}

fn check_level(level: usize) -> Result<()> {
    if (1..=MAX_LEVEL).contains(&level) {
        Ok(())
    } else {
        Err(Error::InvalidLevel(level))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Thesaurus {
    level: usize,
    entries: BTreeMap<String, Vec<CategoryId>>,
    max_word_chars: usize,
    source_level_counts: Option<BTreeMap<usize, usize>>,
}

impl Thesaurus {
    /// Builds a thesaurus from `(word, full code)` pairs, truncating every code
    /// to `level`. Repeated `(word, truncated code)` pairs collapse; the first
    /// occurrence fixes the order within a word's category list.
    pub fn from_entries<W, C>(level: usize, entries: impl IntoIterator<Item = (W, C)>) -> Result<Self>
    where
        W: Into<String>,
        C: AsRef<str>,
    {
        check_level(level)?;
        let mut thesaurus = Thesaurus {
            level,
            entries: BTreeMap::new(),
            max_word_chars: 0,
            source_level_counts: None,
        };
        for (word, code) in entries {
            let category = CategoryId::new(code.as_ref())?.truncate(level)?;
            thesaurus.insert(word.into(), category);
        }
        Ok(thesaurus)
    }

    fn insert(&mut self, word: String, category: CategoryId) {
        self.max_word_chars = self.max_word_chars.max(word.chars().count());
        let set = self.entries.entry(word).or_default();
        if !set.contains(&category) {
            set.push(category);
        }
    }

    pub fn parse(content: &str, level: usize) -> Result<Self> {
        check_level(level)?;
        let mut thesaurus = Thesaurus::from_entries::<String, &str>(level, [])?;
        for record in text::records(content) {
            let parse_error = |message: String| Error::Parse {
                line: record.line,
                message,
            };
            let (word, code) = record
                .text
                .split_once('\t')
                .ok_or_else(|| parse_error("expected word<TAB>code".into()))?;
            let code = code.trim();
            if word.is_empty() {
                return Err(parse_error("empty word".into()));
            }
            let category = CategoryId::new(code)
                .and_then(|c| c.truncate(level))
                .map_err(|e| parse_error(e.to_string()))?;
            thesaurus.insert(word.to_owned(), category);
        }
        if thesaurus.entries.is_empty() {
            return Err(Error::Empty("thesaurus".into()));
        }
        Ok(thesaurus)
    }

    pub fn load(path: impl AsRef<Path>, level: usize) -> Result<Self> {
        let path = path.as_ref();
        let content = text::read_file(path)?;
        Thesaurus::parse(&content, level).map_err(|e| match e {
            Error::Empty(_) => Error::Empty(path.display().to_string()),
            other => other,
        })
    }

    /// Serializes back to the TSV format, in word order.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for (word, categories) in &self.entries {
            for category in categories {
                out.push_str(word);
                out.push('\t');
                out.push_str(category.as_str());
                out.push('\n');
            }
        }
        out
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn categories_of(&self, word: &str) -> Option<&[CategoryId]> {
        self.entries.get(word).map(Vec::as_slice)
    }

    pub fn contains(&self, word: &str) -> bool {
        self.entries.contains_key(word)
    }

    pub fn is_ambiguous(&self, word: &str) -> Result<bool> {
        self.categories_of(word)
            .map(|c| c.len() >= 2)
            .ok_or_else(|| Error::UnknownWord(word.to_owned()))
    }

    /// Length in characters of the longest headword.
    pub fn max_word_chars(&self) -> usize {
        self.max_word_chars
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn words(&self) -> impl Iterator<Item = (&str, &[CategoryId])> {
        self.entries.iter().map(|(w, c)| (w.as_str(), c.as_slice()))
    }

    /// Category counts per level of the source hierarchy. Informational only.
    pub fn source_level_counts(&self) -> Option<&BTreeMap<usize, usize>> {
        self.source_level_counts.as_ref()
    }

    pub fn with_source_level_counts(mut self, counts: BTreeMap<usize, usize>) -> Self {
        self.source_level_counts = Some(counts);
        self
    }
}
