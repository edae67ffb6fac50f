//! End-to-end orchestration: sources in, report out, plus the
//! threshold-tuning harness.

use std::collections::BTreeSet;
use std::path::Path;

use serde::Deserialize;
use thiserror::Error;

use crate::bindings::{BindingSet, DEFAULT_COMPARISON_FNS};
use crate::classify::{classify, ErrorLexicon};
use crate::ingest::{harvest_candidates, parse_corpus, HarvestOptions, DEFAULT_FILE_GLOBS};
use crate::lexicon::{segment_identifier, OptionLexicon};
use crate::relate::relate_candidate;
use crate::report::{ConstraintFinding, EvidenceRecord, Report, RunParams};
use crate::similarity::build_idf;
use crate::{IngestError, LexiconError, SimilarityError};

pub const DEFAULT_THRESHOLD: f64 = 0.63;

#[derive(Debug, Error)]
pub enum PipelineError {
    /// Bad invocation: missing inputs, out-of-range parameters.
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Lexicon(#[from] LexiconError),
    #[error(transparent)]
    Ingest(#[from] IngestError),
    #[error(transparent)]
    Similarity(#[from] SimilarityError),
    #[error("labels: {0}")]
    Labels(String),
    #[error("config: {0}")]
    Config(String),
}

/// Everything a run can be steered with.
#[derive(Debug, Clone)]
pub struct ToolConfig {
    /// Similarity score at or above which a variable relates to an option.
    pub threshold: f64,
    /// Minimum words for a string literal to count as a message.
    pub min_words: usize,
    /// Basename globs selecting source files.
    pub file_globs: Vec<String>,
    /// Extra exact callee names treated as log calls.
    pub log_functions: BTreeSet<String>,
    /// Getter names for the container interface.
    pub getter_functions: BTreeSet<String>,
    /// String-comparison functions for the comparison interface.
    pub comparison_functions: BTreeSet<String>,
    pub error_lexicon: ErrorLexicon,
    /// Where the error lexicon came from, echoed into reports.
    pub error_lexicon_source: String,
}

impl Default for ToolConfig {
    fn default() -> ToolConfig {
        ToolConfig {
            threshold: DEFAULT_THRESHOLD,
            min_words: 2,
            file_globs: DEFAULT_FILE_GLOBS.iter().map(|g| g.to_string()).collect(),
            log_functions: BTreeSet::new(),
            getter_functions: BTreeSet::new(),
            comparison_functions: DEFAULT_COMPARISON_FNS
                .iter()
                .map(|f| f.to_string())
                .collect(),
            error_lexicon: ErrorLexicon::default(),
            error_lexicon_source: "bundled".to_string(),
        }
    }
}

/// Optional overrides read from a TOML file. Unknown keys are rejected so
/// typos fail loudly.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    threshold: Option<f64>,
    min_words: Option<usize>,
    file_globs: Option<Vec<String>>,
    log_functions: Option<Vec<String>>,
    getter_functions: Option<Vec<String>>,
    comparison_functions: Option<Vec<String>>,
}

impl ToolConfig {
    /// Applies the settings present in a TOML document on top of `self`.
    pub fn merge_toml(&mut self, text: &str) -> Result<(), PipelineError> {
        let file: ConfigFile =
            toml::from_str(text).map_err(|e| PipelineError::Config(e.to_string()))?;
        if let Some(t) = file.threshold {
            self.threshold = t;
        }
        if let Some(m) = file.min_words {
            self.min_words = m;
        }
        if let Some(globs) = file.file_globs {
            self.file_globs = globs;
        }
        if let Some(fns) = file.log_functions {
            self.log_functions = fns.into_iter().collect();
        }
        if let Some(fns) = file.getter_functions {
            self.getter_functions = fns.into_iter().collect();
        }
        if let Some(fns) = file.comparison_functions {
            self.comparison_functions = fns.into_iter().collect();
        }
        Ok(())
    }
}

/// A finished run: the report plus whether parsing was degraded.
#[derive(Debug)]
pub struct RunOutcome {
    pub report: Report,
    /// More than half of the discovered files failed to parse; the report
    /// covers the remainder.
    pub degraded: bool,
}

/// Runs the whole pipeline over a source tree.
pub fn run(
    src: &Path,
    options_file: &Path,
    config: &ToolConfig,
) -> Result<RunOutcome, PipelineError> {
    if !(0.0..=1.0).contains(&config.threshold) {
        return Err(PipelineError::Usage(format!(
            "threshold {} is outside [0, 1]",
            config.threshold
        )));
    }
    let lexicon = OptionLexicon::from_file(options_file)?;
    let corpus = parse_corpus(src, &config.file_globs)?;
    let degraded = corpus.failures.len() * 2 > corpus.discovered();
    for failure in &corpus.failures {
        log::warn!("skipped {}: {}", failure.path.display(), failure.reason);
    }

    let params = RunParams {
        threshold: config.threshold,
        source_root: src.display().to_string(),
        options_file: options_file.display().to_string(),
        error_lexicon: config.error_lexicon_source.clone(),
        min_words: config.min_words,
    };
    if lexicon.is_empty() {
        return Ok(RunOutcome {
            report: Report::new(params, Vec::new()),
            degraded,
        });
    }

    let idf = build_idf(&lexicon)?;
    let bindings = BindingSet::build(
        &corpus,
        &lexicon,
        &config.getter_functions,
        &config.comparison_functions,
    );
    let harvest = HarvestOptions {
        min_words: config.min_words,
        log_functions: config.log_functions.clone(),
    };
    let mut findings = Vec::new();
    for candidate in harvest_candidates(&corpus, &harvest) {
        let relations = relate_candidate(
            &corpus,
            &candidate,
            &lexicon,
            &bindings,
            &idf,
            config.threshold,
        );
        for relation in relations {
            let option = lexicon.get(relation.option);
            let Some(pattern) = classify(&candidate.text, Some(option), &config.error_lexicon)
            else {
                continue;
            };
            findings.push(ConstraintFinding {
                option: option.raw_name.clone(),
                message: candidate.text.clone(),
                pattern,
                evidence: EvidenceRecord::from_relation(&relation.evidence),
                file: candidate.location.file.display().to_string(),
                line: candidate.location.line,
            });
        }
    }
    Ok(RunOutcome {
        report: Report::new(params, findings),
        degraded,
    })
}

/// One labeled (option, variable) pair for threshold tuning.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledPair {
    pub option: String,
    pub variable: String,
    pub related: bool,
}

/// Precision, recall and F1 at one threshold.
#[derive(Debug, Clone, PartialEq)]
pub struct TunePoint {
    pub threshold: f64,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TuneResult {
    pub best_threshold: f64,
    pub best_f1: f64,
    pub curve: Vec<TunePoint>,
}

/// Reads a labels file: option, variable and 0/1 relatedness, tab-separated,
/// `#` starts a comment.
pub fn load_labels(path: &Path) -> Result<Vec<LabeledPair>, PipelineError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| PipelineError::Labels(format!("{}: {e}", path.display())))?;
    let mut pairs = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim_end();
        if line.trim().is_empty() {
            continue;
        }
        let cols: Vec<&str> = line.split('\t').collect();
        let [option, variable, label] = cols.as_slice() else {
            return Err(PipelineError::Labels(format!(
                "line {}: expected 3 tab-separated columns",
                lineno + 1
            )));
        };
        let related = match label.trim() {
            "1" => true,
            "0" => false,
            other => {
                return Err(PipelineError::Labels(format!(
                    "line {}: label {other:?} is not 0 or 1",
                    lineno + 1
                )))
            }
        };
        pairs.push(LabeledPair {
            option: option.trim().to_string(),
            variable: variable.trim().to_string(),
            related,
        });
    }
    Ok(pairs)
}

/// Sweeps the similarity threshold over 0.40..=0.80 in steps of 0.01 and
/// returns the best-F1 point (ties break to the smallest threshold) with
/// the full curve.
pub fn tune_threshold(
    pairs: &[LabeledPair],
    lexicon: &OptionLexicon,
) -> Result<TuneResult, PipelineError> {
    if pairs.is_empty() {
        return Err(PipelineError::Labels("label set is empty".to_string()));
    }
    let positives = pairs.iter().filter(|p| p.related).count();
    if positives == 0 || positives == pairs.len() {
        return Err(PipelineError::Labels(
            "label set must hold both related and unrelated pairs".to_string(),
        ));
    }
    let idf = build_idf(lexicon)?;
    let mut scored = Vec::with_capacity(pairs.len());
    for pair in pairs {
        let Some(idx) = lexicon.index_of(&pair.option) else {
            return Err(PipelineError::Labels(format!(
                "option {:?} is not in the lexicon",
                pair.option
            )));
        };
        let words = segment_identifier(&pair.variable);
        scored.push((
            idf.similarity(&lexicon.get(idx).words, &words),
            pair.related,
        ));
    }

    let mut curve = Vec::with_capacity(41);
    for i in 40..=80u32 {
        let threshold = f64::from(i) / 100.0;
        let tp = scored
            .iter()
            .filter(|(s, rel)| *s >= threshold && *rel)
            .count() as f64;
        let fp = scored
            .iter()
            .filter(|(s, rel)| *s >= threshold && !*rel)
            .count() as f64;
        let fn_ = scored
            .iter()
            .filter(|(s, rel)| *s < threshold && *rel)
            .count() as f64;
        let precision = if tp + fp > 0.0 { tp / (tp + fp) } else { 0.0 };
        let recall = if tp + fn_ > 0.0 { tp / (tp + fn_) } else { 0.0 };
        let f1 = if precision + recall > 0.0 {
            2.0 * precision * recall / (precision + recall)
        } else {
            0.0
        };
        curve.push(TunePoint {
            threshold,
            precision,
            recall,
            f1,
        });
    }
    let best = curve
        .iter()
        .cloned()
        .reduce(|best, p| if p.f1 > best.f1 { p } else { best })
        .expect("curve is non-empty");
    Ok(TuneResult {
        best_threshold: best.threshold,
        best_f1: best.f1,
        curve,
    })
}
