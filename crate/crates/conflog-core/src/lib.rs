//! conflog-core: infer configuration constraints from log messages in
//! C/C++ sources.
//!
//! The pipeline has three stages. Ingest parses a source tree and harvests
//! every string constant as a candidate log message. Relation links each
//! candidate to the configuration option it talks about, using the option
//! name itself, variable/function bindings reached by backward slicing,
//! structure proximity, or lexical similarity as a last resort. Inference
//! tags the message words and matches part-of-speech patterns that signal a
//! constraint. The result is a deterministic, evidence-backed report.

pub mod assemble;
pub mod bindings;
pub mod classify;
pub mod ingest;
pub mod lexicon;
pub mod pipeline;
pub mod postag;
pub mod relate;
pub mod report;
pub mod similarity;
pub mod slice;
pub mod syntax;

pub use assemble::{Segment, VARIABLE_TOKEN};
pub use bindings::{BindingProvenance, BindingRole, BindingSet, BoundName, DEFAULT_COMPARISON_FNS};
pub use classify::{classify, match_patterns, normalize, ErrorLexicon, PosPattern, PATTERNS};
pub use ingest::{
    harvest_candidates, parse_corpus, parse_source, FileFailure, HarvestOptions, IngestError,
    MessageCandidate, MessageStyle, SourceCorpus, DEFAULT_FILE_GLOBS,
};
pub use lexicon::{ConfigOption, LexiconError, OptionLexicon};
pub use pipeline::{
    load_labels, run, tune_threshold, LabeledPair, PipelineError, RunOutcome, ToolConfig,
    TunePoint, TuneResult, DEFAULT_THRESHOLD,
};
pub use postag::{pos_tag, Marker, PosTag, TagToken};
pub use relate::{relate_candidate, EvidenceKind, Relation, RelationEvidence};
pub use report::{ConstraintFinding, EvidenceRecord, Report, ReportStats, RunParams};
pub use similarity::{build_idf, IdfTable, SimilarityError};
pub use slice::{backward_slice, Slice, SliceError, SliceRef};
pub use syntax::{NodeId, NodeKind, SourceLocation, SyntaxTree};
