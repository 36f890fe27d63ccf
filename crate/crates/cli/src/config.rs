use clap::ValueEnum;
use compound_core::analyze::{AnalyzeOptions, DistanceDecay, Scoring};
use compound_core::thesaurus::MAX_LEVEL;
use compound_core::Measure;

use crate::{Failure, ScoringArgs};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Labels {
    Categories,
    Words,
    Both,
}

/// Validated settings for one scoring run.
#[derive(Clone, Debug, PartialEq)]
pub struct Config {
    pub level: Option<usize>,
    pub measure: Measure,
    pub decay: Option<DistanceDecay>,
    pub prune: bool,
    pub length_cap: usize,
    pub word_cap: usize,
    pub candidate_cap: usize,
    pub top_k: Option<usize>,
    pub exact: bool,
}

pub fn check_level(level: usize) -> Result<(), Failure> {
    if (1..=MAX_LEVEL).contains(&level) {
        Ok(())
    } else {
        Err(Failure::usage(format!(
            "--level must be in 1..={MAX_LEVEL}, got {level}"
        )))
    }
}

impl Config {
    pub fn from_scoring(args: &ScoringArgs, measure: Measure, top_k: Option<usize>) -> Result<Self, Failure> {
        if let Some(level) = args.level {
            check_level(level)?;
        }
        // decay constants are validated even when weighting is off
        let decay =
            DistanceDecay::new(args.q_coefficient, args.q_exponent).map_err(|e| Failure::usage(e.to_string()))?;
        if top_k == Some(0) {
            return Err(Failure::usage("--top-k must be at least 1"));
        }
        for (name, value) in [
            ("--length-cap", args.length_cap),
            ("--word-cap", args.word_cap),
            ("--candidate-cap", args.candidate_cap),
        ] {
            if value == 0 {
                return Err(Failure::usage(format!("{name} must be at least 1")));
            }
        }
        Ok(Config {
            level: args.level,
            measure,
            decay: args.distance.then_some(decay),
            prune: !args.no_prune,
            length_cap: args.length_cap,
            word_cap: args.word_cap,
            candidate_cap: args.candidate_cap,
            top_k,
            exact: args.exact,
        })
    }

    pub fn analyze_options(&self) -> AnalyzeOptions {
        AnalyzeOptions {
            scoring: Scoring {
                measure: self.measure,
                decay: self.decay,
            },
            prune: self.prune,
            length_cap: self.length_cap,
            word_cap: self.word_cap,
            candidate_cap: self.candidate_cap,
        }
    }
}
