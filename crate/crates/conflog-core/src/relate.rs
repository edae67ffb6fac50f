//! Relating a message candidate to the options it talks about.
//!
//! Four sources of evidence, strongest first: the option's own name in the
//! message text, a sliced variable bound to an option, a sliced function
//! bound to an option, proximity inside a registration structure, and as a
//! last resort name similarity between sliced variables and option names.
//! A candidate related by a stronger source never falls through to a
//! weaker one.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::bindings::{structure_top, BindingSet};
use crate::ingest::{MessageCandidate, MessageStyle};
use crate::lexicon::{segment_identifier, OptionLexicon};
use crate::similarity::IdfTable;
use crate::slice::{backward_slice, Slice};
use crate::syntax::SourceLocation;
use crate::SourceCorpus;

/// How a message was tied to an option.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EvidenceKind {
    DirectName,
    ConfigVariable,
    ConfigFunction,
    StructureProximity,
    Similarity,
}

/// One piece of evidence tying a message to an option.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RelationEvidence {
    pub kind: EvidenceKind,
    /// 1.0 for every kind except `Similarity`, which carries its score.
    pub score: f64,
    /// The matched name: option name, variable or function spelling.
    pub witness: String,
    pub location: SourceLocation,
}

/// A (candidate, option) pair the relater accepted.
#[derive(Debug, Clone, PartialEq)]
pub struct Relation {
    /// Index into the lexicon's option list.
    pub option: usize,
    pub evidence: RelationEvidence,
}

/// Relates one candidate, trying evidence sources strongest-first and
/// stopping at the first source that produces anything.
pub fn relate_candidate(
    corpus: &SourceCorpus,
    candidate: &MessageCandidate,
    lexicon: &OptionLexicon,
    bindings: &BindingSet,
    idf: &IdfTable,
    threshold: f64,
) -> Vec<Relation> {
    let direct = relate_by_name(candidate, lexicon);
    if !direct.is_empty() {
        return direct;
    }
    if candidate.style == MessageStyle::InStructure {
        return relate_by_structure(corpus, candidate, lexicon);
    }
    let Ok(slice) = backward_slice(corpus, candidate) else {
        return Vec::new();
    };
    let sliced = relate_by_slice(&slice, bindings);
    if !sliced.is_empty() {
        return sliced;
    }
    relate_by_similarity(&slice, lexicon, bindings, idf, threshold)
}

/// Options whose name the message text itself spells out.
pub fn relate_by_name(candidate: &MessageCandidate, lexicon: &OptionLexicon) -> Vec<Relation> {
    (0..lexicon.len())
        .filter(|&i| lexicon.get(i).match_direct(&candidate.text))
        .map(|i| Relation {
            option: i,
            evidence: RelationEvidence {
                kind: EvidenceKind::DirectName,
                score: 1.0,
                witness: lexicon.get(i).raw_name.clone(),
                location: candidate.location.clone(),
            },
        })
        .collect()
}

/// Options bound to a variable or function the slice reached, ordered by
/// slice position, one evidence entry per option.
pub fn relate_by_slice(slice: &Slice, bindings: &BindingSet) -> Vec<Relation> {
    let mut out: Vec<Relation> = Vec::new();
    let mut related: BTreeSet<usize> = BTreeSet::new();
    for r in &slice.refs {
        let (matches, kind) = if r.is_function {
            (
                bindings.function_matches(&r.key),
                EvidenceKind::ConfigFunction,
            )
        } else {
            (
                bindings.variable_matches(&r.key),
                EvidenceKind::ConfigVariable,
            )
        };
        for &entry in matches {
            let option = bindings.entries[entry].option;
            if related.insert(option) {
                out.push(Relation {
                    option,
                    evidence: RelationEvidence {
                        kind,
                        score: 1.0,
                        witness: r.name.clone(),
                        location: r.location.clone(),
                    },
                });
            }
        }
    }
    out
}

/// For a structure-style candidate, walks ancestors from the message
/// literal and scans each newly visible subtree in document order for an
/// option-name literal. The first hit wins; the walk never leaves the
/// enclosing structure.
pub fn relate_by_structure(
    corpus: &SourceCorpus,
    candidate: &MessageCandidate,
    lexicon: &OptionLexicon,
) -> Vec<Relation> {
    let tree = &corpus.units[candidate.unit];
    let top = structure_top(tree, candidate.origin);
    let mut visited: BTreeSet<crate::NodeId> = tree.descendants(candidate.origin).collect();
    for anc in tree.ancestors(candidate.origin) {
        for n in tree.descendants(anc) {
            if !visited.insert(n) {
                continue;
            }
            let Some(value) = tree.literal(n) else {
                continue;
            };
            if let Some(option) = lexicon.index_of(value) {
                return vec![Relation {
                    option,
                    evidence: RelationEvidence {
                        kind: EvidenceKind::StructureProximity,
                        score: 1.0,
                        witness: value.to_string(),
                        location: tree.location(n),
                    },
                }];
            }
        }
        if anc == top {
            break;
        }
    }
    Vec::new()
}

/// Last-resort fallback: sliced variable names scored against option names.
/// Only options with no bound variable are eligible; pairs at or above the
/// threshold are kept, highest score first per variable.
pub fn relate_by_similarity(
    slice: &Slice,
    lexicon: &OptionLexicon,
    bindings: &BindingSet,
    idf: &IdfTable,
    threshold: f64,
) -> Vec<Relation> {
    let mut out: Vec<Relation> = Vec::new();
    let mut related: BTreeSet<usize> = BTreeSet::new();
    for r in slice.variables() {
        let var_words = segment_identifier(&r.key);
        if var_words.is_empty() {
            continue;
        }
        let mut scored: Vec<(f64, usize)> = (0..lexicon.len())
            .filter(|&i| !bindings.option_has_variables(i))
            .map(|i| (idf.similarity(&lexicon.get(i).words, &var_words), i))
            .filter(|&(score, _)| score >= threshold)
            .collect();
        scored.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap().then(a.1.cmp(&b.1)));
        for (score, option) in scored {
            if related.insert(option) {
                out.push(Relation {
                    option,
                    evidence: RelationEvidence {
                        kind: EvidenceKind::Similarity,
                        score,
                        witness: r.name.clone(),
                        location: r.location.clone(),
                    },
                });
            }
        }
    }
    out
}
