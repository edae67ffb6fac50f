//! Findings and the report container, with JSON, TSV and text renderings.
//!
//! Reports are fully deterministic: findings are sorted, duplicates are
//! collapsed, stats are derived maps, and no timestamps or machine state
//! enter the output.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::relate::{EvidenceKind, RelationEvidence};

/// Evidence as it appears in a report, with the witness site flattened.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvidenceRecord {
    pub kind: EvidenceKind,
    pub score: f64,
    pub witness: String,
    pub file: String,
    pub line: u32,
}

impl EvidenceRecord {
    pub fn from_relation(evidence: &RelationEvidence) -> EvidenceRecord {
        EvidenceRecord {
            kind: evidence.kind,
            score: evidence.score,
            witness: evidence.witness.clone(),
            file: evidence.location.file.display().to_string(),
            line: evidence.location.line,
        }
    }
}

/// One constraint-describing message tied to one option.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConstraintFinding {
    pub option: String,
    pub message: String,
    pub pattern: u8,
    pub evidence: EvidenceRecord,
    /// Message location, relative to the scanned root.
    pub file: String,
    pub line: u32,
}

/// Parameters a run was performed with, echoed into the report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunParams {
    pub threshold: f64,
    pub source_root: String,
    pub options_file: String,
    pub error_lexicon: String,
    pub min_words: usize,
}

/// Counts derived from the findings list.
#[derive(Debug, Clone, PartialEq, Serialize, Default)]
pub struct ReportStats {
    pub findings: usize,
    pub by_evidence: BTreeMap<String, usize>,
    pub by_pattern: BTreeMap<String, usize>,
}

/// The complete result of one run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub version: String,
    pub params: RunParams,
    pub findings: Vec<ConstraintFinding>,
    pub stats: ReportStats,
}

fn kind_label(kind: EvidenceKind) -> &'static str {
    match kind {
        EvidenceKind::DirectName => "direct-name",
        EvidenceKind::ConfigVariable => "config-variable",
        EvidenceKind::ConfigFunction => "config-function",
        EvidenceKind::StructureProximity => "structure-proximity",
        EvidenceKind::Similarity => "similarity",
    }
}

impl Report {
    /// Sorts, deduplicates and summarizes findings into a report.
    /// Duplicate key is (option, message, file, line); order is
    /// (option, file, line, message).
    pub fn new(params: RunParams, mut findings: Vec<ConstraintFinding>) -> Report {
        findings.sort_by(|a, b| {
            (&a.option, &a.file, a.line, &a.message).cmp(&(&b.option, &b.file, b.line, &b.message))
        });
        findings.dedup_by(|a, b| {
            a.option == b.option && a.message == b.message && a.file == b.file && a.line == b.line
        });
        let stats = Report::stats_of(&findings);
        Report {
            version: env!("CARGO_PKG_VERSION").to_string(),
            params,
            findings,
            stats,
        }
    }

    pub fn stats_of(findings: &[ConstraintFinding]) -> ReportStats {
        let mut stats = ReportStats {
            findings: findings.len(),
            ..ReportStats::default()
        };
        for f in findings {
            *stats
                .by_evidence
                .entry(kind_label(f.evidence.kind).to_string())
                .or_insert(0) += 1;
            *stats.by_pattern.entry(f.pattern.to_string()).or_insert(0) += 1;
        }
        stats
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("report serializes");
        out.push('\n');
        out
    }

    /// Tab-separated rows under a '#'-prefixed header.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from(
            "#option\tmessage\tpattern\tevidence_kind\tscore\twitness\tevidence_file\tevidence_line\tfile\tline\n",
        );
        for f in &self.findings {
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
                f.option,
                f.message,
                f.pattern,
                kind_label(f.evidence.kind),
                f.evidence.score,
                f.evidence.witness,
                f.evidence.file,
                f.evidence.line,
                f.file,
                f.line,
            ));
        }
        out
    }

    /// Human-readable listing, one block per finding.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for f in &self.findings {
            out.push_str(&format!(
                "{}:{}: {} \"{}\"\n    pattern {} via {} ({}, score {:.2})\n",
                f.file,
                f.line,
                f.option,
                f.message,
                f.pattern,
                kind_label(f.evidence.kind),
                f.evidence.witness,
                f.evidence.score,
            ));
        }
        out.push_str(&format!("{} finding(s)\n", self.findings.len()));
        out
    }
}
