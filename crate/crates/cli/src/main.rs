//! Command-line front end: build a collocation model, segment, analyze and
//! evaluate compound nouns.
//!
//! Exit codes: 0 success, 1 usage, 2 missing input, 3 empty or degenerate
//! data, 4 internal error.

mod config;

use std::fmt::Write as _;
use std::io::{self, BufRead, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use compound_core::eval::{self, EvalTable};
use compound_core::{
    enumerate_segmentations, ingest, min_content_words, Analyzer, CollocationModel, Error, ExactScore, RankedAnalysis,
    Scalar, Thesaurus,
};

use config::{Config, Labels};

#[derive(Debug, Parser)]
#[command(
    name = "cnbracket",
    version,
    about = "Segment and bracket compound nouns from category collocations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Learn category collocation counts from a four-character compound corpus.
    BuildModel(BuildModelArgs),
    /// Print the dictionary segmentations of each input.
    Segment(SegmentArgs),
    /// Rank candidate structures for each input.
    Analyze(AnalyzeArgs),
    /// Score rankings against a gold bracketing file.
    Evaluate(EvaluateArgs),
    /// List the pairs of a model file as left, right, count.
    Dump(DumpArgs),
}

#[derive(Debug, Args)]
struct BuildModelArgs {
    #[arg(long)]
    thesaurus: PathBuf,
    #[arg(long)]
    corpus: PathBuf,
    #[arg(long, short)]
    output: PathBuf,
    #[arg(long, default_value_t = 3)]
    level: usize,
}

#[derive(Debug, Args)]
struct SegmentArgs {
    #[arg(long)]
    thesaurus: PathBuf,
    #[arg(long, default_value_t = 3)]
    level: usize,
    /// Keep segmentations with more than the minimum number of words.
    #[arg(long)]
    no_prune: bool,
    #[arg(long, default_value_t = compound_core::segment::DEFAULT_LENGTH_CAP)]
    length_cap: usize,
    /// Compounds to segment; read from standard input, one per line, if absent.
    inputs: Vec<String>,
}

#[derive(Debug, Args)]
pub(crate) struct ScoringArgs {
    #[arg(long)]
    thesaurus: PathBuf,
    #[arg(long)]
    model: PathBuf,
    /// Thesaurus level; defaults to the model's level.
    #[arg(long)]
    level: Option<usize>,
    /// Weight each association by the modifier distance decay.
    #[arg(long)]
    distance: bool,
    #[arg(long, default_value_t = compound_core::DistanceDecay::DEFAULT_COEFFICIENT)]
    q_coefficient: f64,
    #[arg(long, default_value_t = compound_core::DistanceDecay::DEFAULT_EXPONENT)]
    q_exponent: f64,
    #[arg(long)]
    no_prune: bool,
    #[arg(long, default_value_t = compound_core::segment::DEFAULT_LENGTH_CAP)]
    length_cap: usize,
    #[arg(long, default_value_t = compound_core::tree::DEFAULT_WORD_CAP)]
    word_cap: usize,
    #[arg(long, default_value_t = compound_core::analyze::DEFAULT_CANDIDATE_CAP)]
    candidate_cap: usize,
    /// Score with exact rationals instead of f64.
    #[arg(long)]
    exact: bool,
}

#[derive(Debug, Args)]
struct AnalyzeArgs {
    #[command(flatten)]
    scoring: ScoringArgs,
    #[arg(long, default_value = "cv1")]
    measure: compound_core::Measure,
    /// Print at most this many candidates per input.
    #[arg(long)]
    top_k: Option<usize>,
    #[arg(long, value_enum, default_value_t = Labels::Categories)]
    labels: Labels,
    /// Rank each segmentation's candidates separately.
    #[arg(long)]
    per_segmentation: bool,
    inputs: Vec<String>,
}

#[derive(Debug, Args)]
struct EvaluateArgs {
    #[command(flatten)]
    scoring: ScoringArgs,
    #[arg(long)]
    gold: PathBuf,
    /// One or more measures, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "cv1")]
    measure: Vec<compound_core::Measure>,
    /// Also write the table as TSV.
    #[arg(long)]
    tsv: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct DumpArgs {
    #[arg(long)]
    model: PathBuf,
}

#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: 1,
            message: message.into(),
        }
    }

    fn degenerate(message: impl Into<String>) -> Self {
        Failure {
            code: 3,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Io { .. } => 2,
            Error::InvalidLevel(_) | Error::InvalidDecay(_) | Error::LevelMismatch { .. } => 1,
            Error::Parse { .. }
            | Error::Empty(_)
            | Error::InvalidCategory { .. }
            | Error::ResourceLimit { .. }
            | Error::ModelFormat(_)
            | Error::ModelVersion { .. }
            | Error::ModelTruncated { .. }
            | Error::ModelChecksum { .. }
            | Error::Bracket { .. }
            | Error::NotFourCharacters { .. }
            | Error::UnknownWord(_) => 3,
            Error::InvalidDistance => 4,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure {
            code: 4,
            message: e.to_string(),
        }
    }
}

type CliResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let result = match cli.command {
        Command::BuildModel(args) => build_model(args, &mut out),
        Command::Segment(args) => segment(args, &mut out),
        Command::Analyze(args) => analyze(args, &mut out),
        Command::Evaluate(args) => evaluate(args, &mut out),
        Command::Dump(args) => dump(args, &mut out),
    };
    let flushed = out.flush();
    match result.and(flushed.map_err(Failure::from)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("cnbracket: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn read_inputs(inputs: Vec<String>) -> Result<Vec<String>, Failure> {
    if !inputs.is_empty() {
        return Ok(inputs);
    }
    let mut lines = Vec::new();
    for line in io::stdin().lock().lines() {
        let line = line?;
        let line = line.trim();
        if !line.is_empty() {
            lines.push(line.to_owned());
        }
    }
    Ok(lines)
}

fn build_model(args: BuildModelArgs, out: &mut impl Write) -> CliResult {
    config::check_level(args.level)?;
    let thesaurus = Thesaurus::load(&args.thesaurus, args.level)?;
    let (pairs, report) = ingest(&args.corpus, &thesaurus)?;
    for r in &report.rejected {
        eprintln!("{}:{}: {}", args.corpus.display(), r.line, r.message);
    }
    writeln!(out, "records\t{}", report.total_records)?;
    writeln!(out, "duplicates\t{}", report.duplicates)?;
    writeln!(out, "not_in_thesaurus\t{}", report.discarded_not_in_thesaurus)?;
    writeln!(out, "ambiguous\t{}", report.discarded_ambiguous)?;
    writeln!(out, "unique_word_pairs\t{}", report.unique_word_pairs)?;
    writeln!(out, "category_pair_tokens\t{}", report.category_pair_tokens)?;
    writeln!(out, "ambiguous_words\t{}", report.ambiguous_words)?;
    writeln!(out, "rejected_lines\t{}", report.rejected.len())?;
    if !report.reconciles() {
        return Err(Failure {
            code: 4,
            message: "ingest report does not reconcile".into(),
        });
    }
    if pairs.is_empty() {
        return Err(Failure::degenerate(format!(
            "{}: no compound survived (every record was a duplicate, unknown or ambiguous)",
            args.corpus.display()
        )));
    }
    let model = CollocationModel::build(pairs, thesaurus.level())?;
    model.save(&args.output)?;
    Ok(())
}

fn segment(args: SegmentArgs, out: &mut impl Write) -> CliResult {
    config::check_level(args.level)?;
    if args.length_cap == 0 {
        return Err(Failure::usage("--length-cap must be at least 1"));
    }
    let thesaurus = Thesaurus::load(&args.thesaurus, args.level)?;
    let inputs = read_inputs(args.inputs)?;
    for (i, input) in inputs.iter().enumerate() {
        if i > 0 {
            writeln!(out)?;
        }
        let mut segs = enumerate_segmentations(input, &thesaurus, args.length_cap)?;
        if !args.no_prune {
            segs = min_content_words(segs);
        }
        if segs.is_empty() {
            writeln!(out, "∞")?;
        }
        for s in segs {
            writeln!(out, "{s}")?;
        }
    }
    Ok(())
}

fn load_for_scoring(args: &ScoringArgs) -> Result<(Thesaurus, CollocationModel), Failure> {
    let model = CollocationModel::load(&args.model)?;
    let level = args.level.unwrap_or(model.level());
    let thesaurus = Thesaurus::load(&args.thesaurus, level)?;
    Ok((thesaurus, model))
}

fn analyze(args: AnalyzeArgs, out: &mut impl Write) -> CliResult {
    let config = Config::from_scoring(&args.scoring, args.measure, args.top_k)?;
    let (thesaurus, model) = load_for_scoring(&args.scoring)?;
    let analyzer = Analyzer::new(&thesaurus, &model, config.analyze_options())?;
    let inputs = read_inputs(args.inputs)?;
    let mut failed = 0usize;
    for input in &inputs {
        let text = if config.exact {
            analyzer
                .analyze::<ExactScore>(input)
                .map(|a| render_analysis(&a, &config, args.labels, args.per_segmentation))
        } else {
            analyzer
                .analyze::<f64>(input)
                .map(|a| render_analysis(&a, &config, args.labels, args.per_segmentation))
        };
        writeln!(out, "# {input}")?;
        match text {
            Ok(text) => out.write_all(text.as_bytes())?,
            Err(e) => {
                failed += 1;
                eprintln!("cnbracket: {input}: {e}");
                writeln!(out, "!")?;
            }
        }
    }
    if failed > 0 {
        return Err(Failure::degenerate(format!("{failed} input(s) could not be analyzed")));
    }
    Ok(())
}

fn render_analysis<S: Scalar>(
    analysis: &RankedAnalysis<S>,
    config: &Config,
    labels: Labels,
    per_segmentation: bool,
) -> String {
    let mut text = String::new();
    if analysis.is_unresolved() {
        text.push_str("∞\n");
        return text;
    }
    let pools = if per_segmentation {
        analysis.by_segmentation()
    } else {
        vec![analysis.clone()]
    };
    for pool in &pools {
        if per_segmentation {
            let _ = writeln!(text, "## {}", pool.candidates()[0].segmentation);
        }
        for (rank, c) in pool.ranked().take(config.top_k.unwrap_or(usize::MAX)) {
            let structure = match labels {
                Labels::Categories => c.tree.render_categories(),
                Labels::Words => c.tree.render_words(),
                Labels::Both => c.tree.render_labeled(),
            };
            let _ = writeln!(
                text,
                "{rank}\t{:.12}\t{}\t{structure}",
                c.score.to_f64(),
                c.segmentation
            );
        }
    }
    text
}

fn evaluate(args: EvaluateArgs, out: &mut impl Write) -> CliResult {
    if args.measure.is_empty() {
        return Err(Failure::usage("--measure needs at least one value"));
    }
    let configs = args
        .measure
        .iter()
        .map(|&m| Config::from_scoring(&args.scoring, m, None))
        .collect::<Result<Vec<_>, _>>()?;
    let (thesaurus, model) = load_for_scoring(&args.scoring)?;
    let mut tables: Vec<EvalTable> = Vec::new();
    for config in &configs {
        let analyzer = Analyzer::new(&thesaurus, &model, config.analyze_options())?;
        let table = if config.exact {
            eval::evaluate::<ExactScore>(&args.gold, &analyzer)?
        } else {
            eval::evaluate::<f64>(&args.gold, &analyzer)?
        };
        tables.push(table);
    }
    if let Some(first) = tables.first() {
        for r in &first.rejected {
            eprintln!("{}: record {}: {}", args.gold.display(), r.line, r.message);
        }
        if first.total == 0 {
            return Err(Failure::degenerate(format!(
                "{}: no usable gold records",
                args.gold.display()
            )));
        }
    }
    out.write_all(eval::render_table(&tables).as_bytes())?;
    if let Some(path) = &args.tsv {
        std::fs::write(path, eval::render_tsv(&tables)).map_err(|e| Failure {
            code: 2,
            message: format!("{}: {e}", path.display()),
        })?;
    }
    Ok(())
}

fn dump(args: DumpArgs, out: &mut impl Write) -> CliResult {
    let model = CollocationModel::load(&args.model)?;
    out.write_all(model.dump_tsv().as_bytes())?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn error_codes() {
        let missing = Failure::from(Error::Io {
            path: "x".into(),
            source: io::Error::from(io::ErrorKind::NotFound),
        });
        assert_eq!(missing.code, 2);
        assert_eq!(Failure::from(Error::Empty("x".into())).code, 3);
        assert_eq!(Failure::from(Error::InvalidLevel(9)).code, 1);
    }
}
