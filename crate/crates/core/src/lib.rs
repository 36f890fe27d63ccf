//! Statistical bracketing of compound nouns.
//!
//! Category collocations are learned from a corpus of four-character
//! compounds ([`ingest`], [`model`]). New compounds are segmented against a
//! thesaurus ([`segment`]), every binary bracketing and category assignment
//! is scored by a head-final product of category associations
//! ([`analyze`]), and rankings are scored against gold data ([`eval`]).
//!
//! Scores are generic over [`Scalar`]; [`Analysis`] uses `f64` and
//! [`ExactAnalysis`] uses arbitrary-precision rationals.

pub mod analyze;
pub mod error;
pub mod eval;
pub mod ingest;
pub mod model;
pub mod scalar;
pub mod segment;
pub mod text;
pub mod thesaurus;
pub mod tree;

pub use analyze::{
    analyze, expand_assignments, preference, q, AnalyzeOptions, Analyzer, DistanceDecay, RankedAnalysis,
    ScoredStructure, Scoring,
};
pub use error::{Error, Result};
pub use eval::{evaluate, rank_of_gold, EvalTable, GoldRank, GoldRecord};
pub use ingest::{ingest, split_middle, IngestReport, PairCounts, WordPair};
pub use model::{CollocationModel, Measure};
pub use num_rational::BigRational;
pub use scalar::Scalar;
pub use segment::{enumerate_segmentations, min_content_words, Segmentation};
pub use thesaurus::{CategoryId, Thesaurus};
pub use tree::{enumerate_shapes, parse_bracketing, Shape, StructureTree};

/// Exact rational score.
pub type ExactScore = BigRational;

pub type Analysis = RankedAnalysis<f64>;
pub type ExactAnalysis = RankedAnalysis<ExactScore>;
pub type Candidate = ScoredStructure<f64>;
pub type ExactCandidate = ScoredStructure<ExactScore>;
