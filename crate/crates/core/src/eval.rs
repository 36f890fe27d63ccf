//! Rank-bucket accuracy against gold bracketings.
//!
//! Gold files hold one `surface<TAB>bracketing` record per line, where the
//! bracketing uses list notation over words, e.g. `新型間接税<TAB>[[新型,間接],税]`.
//! A gold structure matches a candidate when the word boundaries and the tree
//! shape agree; category labels are not compared.

use std::fmt::Write;
use std::path::Path;

use crate::analyze::{Analyzer, RankedAnalysis};
use crate::error::{Error, Result};
use crate::ingest::RecordError;
use crate::scalar::Scalar;
use crate::segment::Segmentation;
use crate::text;
use crate::tree::{parse_bracketing, Shape};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoldRecord {
    pub surface: String,
    pub segmentation: Segmentation,
    pub shape: Shape,
}

impl GoldRecord {
    pub fn parse(line: &str) -> Result<Self> {
        let (surface, bracketing) = line.split_once('\t').ok_or_else(|| Error::Bracket {
            text: line.to_owned(),
            reason: "expected surface<TAB>bracketing".into(),
        })?;
        let surface = surface.trim();
        let (shape, words) = parse_bracketing(bracketing)?;
        let segmentation = Segmentation::new(words);
        if segmentation.surface() != surface {
            return Err(Error::Bracket {
                text: bracketing.to_owned(),
                reason: format!("words do not spell {surface:?}"),
            });
        }
        Ok(GoldRecord {
            surface: surface.to_owned(),
            segmentation,
            shape,
        })
    }
}

/// Parses a gold file body; bad records are returned separately.
pub fn parse_gold(content: &str) -> (Vec<GoldRecord>, Vec<RecordError>) {
    let mut records = Vec::new();
    let mut rejected = Vec::new();
    for record in text::records(content) {
        match GoldRecord::parse(record.text) {
            Ok(r) => records.push(r),
            Err(e) => rejected.push(RecordError {
                line: record.line,
                message: e.to_string(),
            }),
        }
    }
    (records, rejected)
}

/// Where the gold structure landed in a ranking.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GoldRank {
    /// 1-based rank group; `tie` when a different structure shares the group.
    Ranked { rank: usize, tie: bool },
    /// The gold structure is not among the candidates.
    Unresolved,
}

pub fn rank_of_gold<S>(analysis: &RankedAnalysis<S>, gold: &GoldRecord) -> GoldRank {
    let candidates = analysis.candidates();
    let matches = |i: usize| {
        let c = &candidates[i];
        c.segmentation == gold.segmentation && c.tree.shape() == gold.shape
    };
    for (g, group) in analysis.groups().iter().enumerate() {
        if group.clone().any(matches) {
            let tie = group.clone().any(|i| !matches(i));
            return GoldRank::Ranked { rank: g + 1, tie };
        }
    }
    GoldRank::Unresolved
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct BucketCounts {
    /// Rank 1 with no competing structure in the group.
    pub unique_first: usize,
    pub within_1: usize,
    pub within_2: usize,
    pub within_3: usize,
    pub fourth_or_lower: usize,
    pub unresolved: usize,
}

impl BucketCounts {
    pub fn add(&mut self, rank: GoldRank) {
        match rank {
            GoldRank::Unresolved => self.unresolved += 1,
            GoldRank::Ranked { rank, tie } => {
                if rank == 1 && !tie {
                    self.unique_first += 1;
                }
                if rank <= 1 {
                    self.within_1 += 1;
                }
                if rank <= 2 {
                    self.within_2 += 1;
                }
                if rank <= 3 {
                    self.within_3 += 1;
                }
                if rank >= 4 {
                    self.fourth_or_lower += 1;
                }
            }
        }
    }
}

pub const BUCKET_LABELS: [&str; 6] = ["1", "~1", "~2", "~3", "4~", "∞"];

#[derive(Clone, Debug, PartialEq)]
pub struct EvalTable {
    pub label: String,
    pub total: usize,
    pub counts: BucketCounts,
    pub ranks: Vec<GoldRank>,
    pub rejected: Vec<RecordError>,
}

impl EvalTable {
    pub fn from_ranks(label: impl Into<String>, ranks: Vec<GoldRank>) -> Self {
        let mut counts = BucketCounts::default();
        for &r in &ranks {
            counts.add(r);
        }
        EvalTable {
            label: label.into(),
            total: ranks.len(),
            counts,
            ranks,
            rejected: Vec::new(),
        }
    }

    /// Counts in [`BUCKET_LABELS`] order.
    pub fn bucket_counts(&self) -> [usize; 6] {
        let c = &self.counts;
        [
            c.unique_first,
            c.within_1,
            c.within_2,
            c.within_3,
            c.fourth_or_lower,
            c.unresolved,
        ]
    }

    /// Percentages in [`BUCKET_LABELS`] order.
    pub fn percentages(&self) -> [f64; 6] {
        let total = self.total.max(1) as f64;
        self.bucket_counts().map(|n| n as f64 * 100.0 / total)
    }
}

/// Whole percent, with one decimal below 1%.
pub fn format_percent(p: f64) -> String {
    if p > 0.0 && p < 1.0 {
        format!("{p:.1}")
    } else {
        format!("{p:.0}")
    }
}

pub fn evaluate_records<S: Scalar>(records: &[GoldRecord], analyzer: &Analyzer<'_>) -> EvalTable {
    let mut ranks = Vec::with_capacity(records.len());
    let mut rejected = Vec::new();
    for (i, gold) in records.iter().enumerate() {
        match analyzer.analyze::<S>(&gold.surface) {
            Ok(analysis) => ranks.push(rank_of_gold(&analysis, gold)),
            Err(e) => rejected.push(RecordError {
                line: i + 1,
                message: format!("{}: {e}", gold.surface),
            }),
        }
    }
    let mut table = EvalTable::from_ranks(analyzer.options().scoring.to_string(), ranks);
    table.rejected = rejected;
    table
}

/// Evaluates every record of a gold file. Unparseable records and records
/// the analyzer rejects are listed in the table and left out of the total.
pub fn evaluate<S: Scalar>(gold: impl AsRef<Path>, analyzer: &Analyzer<'_>) -> Result<EvalTable> {
    let path = gold.as_ref();
    let content = text::read_file(path)?;
    let (records, mut rejected) = parse_gold(&content);
    if records.is_empty() && rejected.is_empty() {
        return Err(Error::Empty(path.display().to_string()));
    }
    let mut table = evaluate_records::<S>(&records, analyzer);
    // analyzer rejections are numbered by record; file parse errors by line
    rejected.append(&mut table.rejected);
    table.rejected = rejected;
    Ok(table)
}

/// Aligned text table with one column per evaluated scoring.
pub fn render_table(tables: &[EvalTable]) -> String {
    let mut out = String::new();
    let _ = write!(out, "{:<6}", "rank");
    for t in tables {
        let _ = write!(out, " {:>8}", t.label);
    }
    out.push('\n');
    for (row, label) in BUCKET_LABELS.iter().enumerate() {
        let _ = write!(out, "{label:<6}");
        for t in tables {
            let _ = write!(out, " {:>8}", format_percent(t.percentages()[row]));
        }
        out.push('\n');
    }
    let _ = write!(out, "{:<6}", "n");
    for t in tables {
        let _ = write!(out, " {:>8}", t.total);
    }
    out.push('\n');
    out
}

/// `scoring<TAB>bucket<TAB>count<TAB>total<TAB>percent` rows.
pub fn render_tsv(tables: &[EvalTable]) -> String {
    let mut out = String::from("scoring\tbucket\tcount\ttotal\tpercent\n");
    for t in tables {
        let counts = t.bucket_counts();
        let pct = t.percentages();
        for (i, label) in BUCKET_LABELS.iter().enumerate() {
            let _ = writeln!(out, "{}\t{label}\t{}\t{}\t{:.4}", t.label, counts[i], t.total, pct[i]);
        }
    }
    out
}
