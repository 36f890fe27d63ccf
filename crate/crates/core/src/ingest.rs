//! Turns a corpus of four-character compounds into category collocations.
//!
//! Each distinct compound is cut in the middle into two two-character words.
//! A compound survives only when both halves are headwords with exactly one
//! category; it then yields one ordered `(left, right)` category pair.
//! Repeated corpus lines are counted once.

use std::collections::{BTreeMap, HashSet};
use std::ops::AddAssign;
use std::path::Path;

use crate::error::{Error, Result};
use crate::text;
use crate::thesaurus::{CategoryId, Thesaurus};

/// Multiset of ordered category pairs.
pub type PairCounts = BTreeMap<(CategoryId, CategoryId), u64>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WordPair {
    pub left: String,
    pub right: String,
}

pub fn split_middle(word: &str) -> Result<WordPair> {
    let found = word.chars().count();
    if found != 4 {
        return Err(Error::NotFourCharacters {
            word: word.to_owned(),
            found,
        });
    }
    let mid = word.char_indices().nth(2).map(|(i, _)| i).unwrap();
    Ok(WordPair {
        left: word[..mid].to_owned(),
        right: word[mid..].to_owned(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecordError {
    pub line: usize,
    pub message: String,
}

/// Accounting for one ingestion run.
///
/// `total_records` counts well-formed four-character records only; lines of
/// any other length are listed in `rejected`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IngestReport {
    pub total_records: u64,
    pub duplicates: u64,
    pub discarded_not_in_thesaurus: u64,
    pub discarded_ambiguous: u64,
    pub unique_word_pairs: u64,
    pub category_pair_tokens: u64,
    /// Distinct headwords seen in kept or discarded halves that carry more
    /// than one category.
    pub ambiguous_words: u64,
    pub rejected: Vec<RecordError>,
}

impl IngestReport {
    /// `total = not-in-thesaurus + ambiguous + duplicates + unique`.
    pub fn reconciles(&self) -> bool {
        self.total_records
            == self.discarded_not_in_thesaurus + self.discarded_ambiguous + self.duplicates + self.unique_word_pairs
            && self.category_pair_tokens == self.unique_word_pairs
    }
}

impl AddAssign for IngestReport {
    fn add_assign(&mut self, other: Self) {
        self.total_records += other.total_records;
        self.duplicates += other.duplicates;
        self.discarded_not_in_thesaurus += other.discarded_not_in_thesaurus;
        self.discarded_ambiguous += other.discarded_ambiguous;
        self.unique_word_pairs += other.unique_word_pairs;
        self.category_pair_tokens += other.category_pair_tokens;
        self.ambiguous_words += other.ambiguous_words;
        self.rejected.extend(other.rejected);
    }
}

enum Verdict {
    Keep(CategoryId, CategoryId),
    NotInThesaurus,
    Ambiguous,
}

fn classify(pair: &WordPair, thesaurus: &Thesaurus) -> Verdict {
    let (Some(left), Some(right)) = (
        thesaurus.categories_of(&pair.left),
        thesaurus.categories_of(&pair.right),
    ) else {
        return Verdict::NotInThesaurus;
    };
    match (left, right) {
        ([l], [r]) => Verdict::Keep(l.clone(), r.clone()),
        _ => Verdict::Ambiguous,
    }
}

/// Ingests `(line number, text)` records.
pub fn ingest_records<'a>(
    records: impl IntoIterator<Item = (usize, &'a str)>,
    thesaurus: &Thesaurus,
) -> (PairCounts, IngestReport) {
    let mut report = IngestReport::default();
    let mut seen = HashSet::new();
    let mut ambiguous_words = HashSet::new();
    let mut pairs = PairCounts::new();

    for (line, text) in records {
        let word = text.trim();
        let pair = match split_middle(word) {
            Ok(pair) => pair,
            Err(e) => {
                report.rejected.push(RecordError {
                    line,
                    message: e.to_string(),
                });
                continue;
            }
        };
        report.total_records += 1;
        if !seen.insert(pair.clone()) {
            report.duplicates += 1;
            continue;
        }
        for half in [&pair.left, &pair.right] {
            if thesaurus.is_ambiguous(half).unwrap_or(false) {
                ambiguous_words.insert(half.clone());
            }
        }
        match classify(&pair, thesaurus) {
            Verdict::Keep(l, r) => {
                report.unique_word_pairs += 1;
                report.category_pair_tokens += 1;
                *pairs.entry((l, r)).or_insert(0) += 1;
            }
            Verdict::NotInThesaurus => report.discarded_not_in_thesaurus += 1,
            Verdict::Ambiguous => report.discarded_ambiguous += 1,
        }
    }
    report.ambiguous_words = ambiguous_words.len() as u64;
    (pairs, report)
}

pub fn ingest_str(content: &str, thesaurus: &Thesaurus) -> (PairCounts, IngestReport) {
    ingest_records(text::records(content).map(|r| (r.line, r.text)), thesaurus)
}

pub fn ingest(corpus: impl AsRef<Path>, thesaurus: &Thesaurus) -> Result<(PairCounts, IngestReport)> {
    let content = text::read_file(corpus.as_ref())?;
    Ok(ingest_str(&content, thesaurus))
}
