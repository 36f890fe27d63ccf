//! Scoring and ranking of candidate structures.
//!
//! A structure's preference is the product, over its internal nodes, of the
//! association between the categories of the two child heads. Optional
//! distance weighting multiplies each node's factor by a power-law decay in
//! the word distance between those heads.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::Range;

use crate::error::{Error, Result};
use crate::model::{CollocationModel, Measure};
use crate::scalar::Scalar;
use crate::segment::{self, Segmentation};
use crate::thesaurus::{CategoryId, Thesaurus};
use crate::tree::{self, Shape, StructureTree};

pub const DEFAULT_CANDIDATE_CAP: usize = 100_000;

/// `q(d) = coefficient * d^-exponent`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DistanceDecay {
    coefficient: f64,
    exponent: f64,
}

impl DistanceDecay {
    pub const DEFAULT_COEFFICIENT: f64 = 0.54;
    pub const DEFAULT_EXPONENT: f64 = 1.896;

    pub fn new(coefficient: f64, exponent: f64) -> Result<Self> {
        if !(coefficient.is_finite() && coefficient > 0.0) {
            return Err(Error::InvalidDecay(format!(
                "coefficient {coefficient} must be positive"
            )));
        }
        if !(exponent.is_finite() && exponent > 0.0) {
            return Err(Error::InvalidDecay(format!("exponent {exponent} must be positive")));
        }
        Ok(DistanceDecay { coefficient, exponent })
    }

    pub fn coefficient(&self) -> f64 {
        self.coefficient
    }

    pub fn exponent(&self) -> f64 {
        self.exponent
    }

    pub fn weight(&self, distance: usize) -> Result<f64> {
        if distance == 0 {
            return Err(Error::InvalidDistance);
        }
        Ok(self.factor(distance))
    }

    fn factor(&self, distance: usize) -> f64 {
        self.coefficient * (distance as f64).powf(-self.exponent)
    }
}

impl Default for DistanceDecay {
    fn default() -> Self {
        DistanceDecay {
            coefficient: Self::DEFAULT_COEFFICIENT,
            exponent: Self::DEFAULT_EXPONENT,
        }
    }
}

/// Distance decay with the default constants.
pub fn q(distance: usize) -> Result<f64> {
    DistanceDecay::default().weight(distance)
}

/// Which association measure to use and whether to weight it by distance.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Scoring {
    pub measure: Measure,
    pub decay: Option<DistanceDecay>,
}

impl Scoring {
    pub fn plain(measure: Measure) -> Self {
        Scoring { measure, decay: None }
    }

    pub fn weighted(measure: Measure, decay: DistanceDecay) -> Self {
        Scoring {
            measure,
            decay: Some(decay),
        }
    }
}

impl fmt::Display for Scoring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.decay {
            None => write!(f, "{}", self.measure),
            Some(_) => write!(f, "{}*q", self.measure),
        }
    }
}

/// Recursive preference of `tree`: 1 at a leaf, otherwise the product of
/// both children's preferences and the association of their head categories.
pub fn preference<S: Scalar>(tree: &StructureTree, model: &CollocationModel, scoring: &Scoring) -> S {
    match tree.children() {
        None => S::one(),
        Some((left, right)) => {
            let mut value = preference::<S>(left, model, scoring) * preference::<S>(right, model, scoring);
            value = value * model.association::<S>(scoring.measure, left.category(), right.category());
            if let Some(decay) = &scoring.decay {
                let d = right.head().index - left.head().index;
                value = value * S::from_weight(decay.factor(d));
            }
            value
        }
    }
}

/// Every combination of one category per word, in thesaurus order with the
/// last word varying fastest.
pub fn expand_assignments(segmentation: &Segmentation, thesaurus: &Thesaurus) -> Result<Vec<Vec<CategoryId>>> {
    let mut out: Vec<Vec<CategoryId>> = vec![Vec::new()];
    for word in segmentation.words() {
        let options = thesaurus
            .categories_of(word)
            .ok_or_else(|| Error::UnknownWord(word.clone()))?;
        out = out
            .into_iter()
            .flat_map(|prefix| {
                options.iter().map(move |c| {
                    let mut next = prefix.clone();
                    next.push(c.clone());
                    next
                })
            })
            .collect();
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScoredStructure<S> {
    pub tree: StructureTree,
    pub segmentation: Segmentation,
    pub score: S,
    pub scoring: Scoring,
}

impl<S> ScoredStructure<S> {
    fn canonical_key(&self) -> (String, String) {
        (self.segmentation.to_string(), self.tree.render_labeled())
    }
}

/// Candidates sorted by descending score, with equal scores grouped into one
/// rank. Inside a group, candidates follow their canonical serialization.
#[derive(Clone, Debug, PartialEq)]
pub struct RankedAnalysis<S> {
    input: String,
    candidates: Vec<ScoredStructure<S>>,
    groups: Vec<Range<usize>>,
}

impl<S: Scalar> RankedAnalysis<S> {
    pub fn from_candidates(input: impl Into<String>, mut candidates: Vec<ScoredStructure<S>>) -> Self {
        candidates.sort_by(|a, b| {
            b.score
                .partial_cmp(&a.score)
                .unwrap_or(Ordering::Equal)
                .then_with(|| a.canonical_key().cmp(&b.canonical_key()))
        });
        let mut groups: Vec<Range<usize>> = Vec::new();
        for (i, c) in candidates.iter().enumerate() {
            match groups.last_mut() {
                Some(g) if candidates[g.start].score == c.score => g.end = i + 1,
                _ => groups.push(i..i + 1),
            }
        }
        RankedAnalysis {
            input: input.into(),
            candidates,
            groups,
        }
    }

    /// One analysis per segmentation, each ranked on its own.
    pub fn by_segmentation(&self) -> Vec<RankedAnalysis<S>> {
        let mut order: Vec<&Segmentation> = Vec::new();
        let mut buckets: HashMap<&Segmentation, Vec<ScoredStructure<S>>> = HashMap::new();
        for c in &self.candidates {
            if !buckets.contains_key(&c.segmentation) {
                order.push(&c.segmentation);
            }
            buckets.entry(&c.segmentation).or_default().push(c.clone());
        }
        order.sort();
        order
            .into_iter()
            .map(|seg| RankedAnalysis::from_candidates(self.input.clone(), buckets.remove(seg).unwrap()))
            .collect()
    }
}

impl<S> RankedAnalysis<S> {
    pub fn input(&self) -> &str {
        &self.input
    }

    pub fn candidates(&self) -> &[ScoredStructure<S>] {
        &self.candidates
    }

    /// Index ranges of tied candidates, best first.
    pub fn groups(&self) -> &[Range<usize>] {
        &self.groups
    }

    /// No candidate structure exists, e.g. the input could not be segmented.
    pub fn is_unresolved(&self) -> bool {
        self.candidates.is_empty()
    }

    pub fn len(&self) -> usize {
        self.candidates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.candidates.is_empty()
    }

    /// 1-based rank group of the candidate at `index`.
    pub fn rank_of(&self, index: usize) -> Option<usize> {
        self.groups.iter().position(|g| g.contains(&index)).map(|g| g + 1)
    }

    /// `(rank, candidate)` pairs, best first.
    pub fn ranked(&self) -> impl Iterator<Item = (usize, &ScoredStructure<S>)> {
        self.groups
            .iter()
            .enumerate()
            .flat_map(move |(g, range)| self.candidates[range.clone()].iter().map(move |c| (g + 1, c)))
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AnalyzeOptions {
    pub scoring: Scoring,
    /// Keep only segmentations with the fewest words.
    pub prune: bool,
    pub length_cap: usize,
    pub word_cap: usize,
    pub candidate_cap: usize,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions {
            scoring: Scoring::plain(Measure::Cv1),
            prune: true,
            length_cap: segment::DEFAULT_LENGTH_CAP,
            word_cap: tree::DEFAULT_WORD_CAP,
            candidate_cap: DEFAULT_CANDIDATE_CAP,
        }
    }
}

/// Segments, labels and scores compounds against one thesaurus and model.
#[derive(Clone, Copy, Debug)]
pub struct Analyzer<'a> {
    thesaurus: &'a Thesaurus,
    model: &'a CollocationModel,
    options: AnalyzeOptions,
}

impl<'a> Analyzer<'a> {
    pub fn new(thesaurus: &'a Thesaurus, model: &'a CollocationModel, options: AnalyzeOptions) -> Result<Self> {
        if thesaurus.level() != model.level() {
            return Err(Error::LevelMismatch {
                expected: model.level(),
                found: thesaurus.level(),
            });
        }
        Ok(Analyzer {
            thesaurus,
            model,
            options,
        })
    }

    pub fn options(&self) -> &AnalyzeOptions {
        &self.options
    }

    pub fn with_scoring(mut self, scoring: Scoring) -> Self {
        self.options.scoring = scoring;
        self
    }

    /// Segmentations that go on to structure analysis.
    pub fn segmentations(&self, input: &str) -> Result<Vec<Segmentation>> {
        let segs = segment::enumerate_segmentations(input, self.thesaurus, self.options.length_cap)?;
        Ok(if self.options.prune {
            segment::min_content_words(segs)
        } else {
            segs
        })
    }

    pub fn analyze<S: Scalar>(&self, input: &str) -> Result<RankedAnalysis<S>> {
        let segmentations = self.segmentations(input)?;

        let mut planned = 0usize;
        for seg in &segmentations {
            if seg.len() > self.options.word_cap {
                return Err(Error::ResourceLimit {
                    what: "word count",
                    actual: seg.len(),
                    limit: self.options.word_cap,
                });
            }
            let assignments = seg
                .words()
                .iter()
                .map(|w| self.thesaurus.categories_of(w).map_or(0, <[_]>::len))
                .fold(1usize, usize::saturating_mul);
            planned = planned.saturating_add(assignments.saturating_mul(catalan(seg.len() - 1)));
        }
        if planned > self.options.candidate_cap {
            return Err(Error::ResourceLimit {
                what: "candidate count",
                actual: planned,
                limit: self.options.candidate_cap,
            });
        }

        let mut shapes: HashMap<usize, Vec<Shape>> = HashMap::new();
        let mut candidates = Vec::with_capacity(planned);
        for seg in &segmentations {
            let assignments = expand_assignments(seg, self.thesaurus)?;
            let shapes = match shapes.entry(seg.len()) {
                std::collections::hash_map::Entry::Occupied(e) => e.into_mut(),
                std::collections::hash_map::Entry::Vacant(e) => {
                    e.insert(tree::enumerate_shapes(seg.len(), self.options.word_cap)?)
                }
            };
            for shape in shapes.iter() {
                for categories in &assignments {
                    let tree = StructureTree::from_shape(shape, seg.words(), categories)?;
                    let score = preference::<S>(&tree, self.model, &self.options.scoring);
                    candidates.push(ScoredStructure {
                        tree,
                        segmentation: seg.clone(),
                        score,
                        scoring: self.options.scoring,
                    });
                }
            }
        }
        Ok(RankedAnalysis::from_candidates(input, candidates))
    }
}

pub fn analyze<S: Scalar>(
    input: &str,
    thesaurus: &Thesaurus,
    model: &CollocationModel,
    options: AnalyzeOptions,
) -> Result<RankedAnalysis<S>> {
    Analyzer::new(thesaurus, model, options)?.analyze(input)
}

fn catalan(n: usize) -> usize {
    // C(n) = C(n-1) * 2(2n-1) / (n+1), exact at each step
    (1..=n).fold(1usize, |c, k| c.saturating_mul(2 * (2 * k - 1)) / (k + 1))
}
