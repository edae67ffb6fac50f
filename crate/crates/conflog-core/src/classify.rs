//! Constraint classification over tagged message text.
//!
//! A message describes a constraint when its normalized tag sequence
//! contains one of five fixed patterns. Normalization collapses the
//! related option's name into one marked noun, marks error-status nouns,
//! drops determiners and symbols, and merges runs of equal nouns or
//! adjectives so the patterns see one token per phrase.

use std::collections::BTreeSet;
use std::io;
use std::path::Path;

use crate::lexicon::ConfigOption;
use crate::postag::{pos_tag, Marker, PosTag, TagToken, NEGATIONS};

/// Lemmas that name an error condition.
#[derive(Debug, Clone)]
pub struct ErrorLexicon {
    words: BTreeSet<String>,
}

impl Default for ErrorLexicon {
    fn default() -> ErrorLexicon {
        ErrorLexicon::parse(include_str!("../data/error_words.txt"))
            .expect("bundled error lexicon is non-empty")
    }
}

impl ErrorLexicon {
    fn parse(raw: &str) -> Option<ErrorLexicon> {
        let words: BTreeSet<String> = raw
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(str::to_lowercase)
            .collect();
        if words.is_empty() {
            None
        } else {
            Some(ErrorLexicon { words })
        }
    }

    pub fn from_file(path: &Path) -> io::Result<ErrorLexicon> {
        let raw = std::fs::read_to_string(path)?;
        ErrorLexicon::parse(&raw).ok_or_else(|| {
            io::Error::new(
                io::ErrorKind::InvalidData,
                format!("error lexicon {} holds no words", path.display()),
            )
        })
    }

    /// Membership check with a naive plural fallback, so "errors" and
    /// "failures" count as their singular lemmas.
    pub fn contains(&self, word: &str) -> bool {
        if self.words.contains(word) {
            return true;
        }
        word.strip_suffix("es")
            .into_iter()
            .chain(word.strip_suffix('s'))
            .any(|stem| self.words.contains(stem))
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

/// One slot of a pattern. Word constraints compare against the token's
/// base-form word; plain noun slots accept any marker, marked slots
/// require theirs.
#[derive(Debug, Clone, Copy)]
enum Slot {
    Noun,
    NounMarked(Marker),
    Modal(&'static [&'static str]),
    Verb(&'static [&'static str]),
    Adjective(&'static [&'static str]),
    /// Optional: consumes one negation token or none.
    Negation,
}

/// A registered tag-sequence pattern.
#[derive(Debug, Clone, Copy)]
pub struct PosPattern {
    pub id: u8,
    pub description: &'static str,
    slots: &'static [Slot],
}

const VALIDITY_ADJECTIVES: &[&str] = &[
    "acceptable",
    "valid",
    "invalid",
    "legal",
    "illegal",
    "allowed",
];

/// The five patterns, in matching order.
pub static PATTERNS: [PosPattern; 5] = [
    PosPattern {
        id: 1,
        description: "noun obliged by a modal verb",
        slots: &[
            Slot::Noun,
            Slot::Modal(&["must", "should", "need", "shall", "have to"]),
            Slot::Negation,
            Slot::Verb(&["be", "have"]),
        ],
    },
    PosPattern {
        id: 2,
        description: "noun that accepts or requires an object",
        slots: &[
            Slot::Noun,
            Slot::Verb(&["accept", "require", "expect", "allow", "support", "take"]),
            Slot::Noun,
        ],
    },
    PosPattern {
        id: 3,
        description: "validity adjective ahead of its noun",
        slots: &[
            Slot::Adjective(VALIDITY_ADJECTIVES),
            Slot::Noun,
            Slot::Verb(&["be"]),
        ],
    },
    PosPattern {
        id: 4,
        description: "noun judged by a validity adjective",
        slots: &[
            Slot::Noun,
            Slot::Verb(&["be"]),
            Slot::Negation,
            Slot::Adjective(VALIDITY_ADJECTIVES),
        ],
    },
    PosPattern {
        id: 5,
        description: "error noun comparing an option's value",
        slots: &[
            Slot::NounMarked(Marker::ErrorStatus),
            Slot::NounMarked(Marker::Config),
            Slot::Verb(&["be", "have"]),
            Slot::Adjective(&["less", "greater", "larger", "smaller", "lower", "higher"]),
        ],
    },
];

/// Rewrites a tagged sequence into the compact form the patterns consume.
///
/// In order: collapse the option's name to one CONFIG noun, mark
/// error-status nouns, drop determiners / symbols / comma / colon and
/// boundary punctuation, merge equal-tag noun and adjective runs, turn
/// numbers into nouns, and merge once more so fresh nouns join their
/// neighbours. The result is stable under a second pass.
pub fn normalize(
    tokens: Vec<TagToken>,
    option: Option<&ConfigOption>,
    errors: &ErrorLexicon,
) -> Vec<TagToken> {
    let mut toks = match option {
        Some(opt) => collapse_config(tokens, opt),
        None => tokens,
    };
    for t in &mut toks {
        if t.tag == PosTag::NN && t.marker.is_none() && errors.contains(&t.word) {
            t.marker = Some(Marker::ErrorStatus);
        }
    }
    let mut kept: Vec<TagToken> = toks
        .into_iter()
        .filter(|t| match t.tag {
            PosTag::DT | PosTag::SYM => false,
            PosTag::PUNCT => !matches!(t.word.as_str(), "," | ":"),
            _ => true,
        })
        .collect();
    while kept.first().is_some_and(|t| t.tag == PosTag::PUNCT) {
        kept.remove(0);
    }
    while kept.last().is_some_and(|t| t.tag == PosTag::PUNCT) {
        kept.pop();
    }
    let mut merged = merge_runs(kept);
    for t in &mut merged {
        if t.tag == PosTag::CD {
            t.tag = PosTag::NN;
        }
    }
    merge_runs(merged)
}

/// Replaces every token span spelling the option's name with a single
/// CONFIG-marked noun. Longest span wins at each position, scanning left
/// to right.
fn collapse_config(tokens: Vec<TagToken>, option: &ConfigOption) -> Vec<TagToken> {
    const MAX_SPAN: usize = 8;
    let mut out = Vec::with_capacity(tokens.len());
    let mut i = 0;
    while i < tokens.len() {
        let mut joined = String::new();
        let mut end = None;
        for (j, tok) in tokens.iter().enumerate().skip(i).take(MAX_SPAN) {
            if j > i {
                joined.push(' ');
            }
            joined.push_str(&tok.surface);
            if option.matches_span(&joined) {
                end = Some(j + 1);
            }
        }
        match end {
            Some(end) => {
                let surface: Vec<&str> =
                    tokens[i..end].iter().map(|t| t.surface.as_str()).collect();
                let surface = surface.join(" ");
                out.push(TagToken {
                    word: surface.clone(),
                    surface,
                    tag: PosTag::NN,
                    marker: Some(Marker::Config),
                });
                i = end;
            }
            None => {
                out.push(tokens[i].clone());
                i += 1;
            }
        }
    }
    out
}

/// Merges adjacent nouns with equal marker status, and adjacent
/// adjectives, joining their words with spaces. Other tags never merge.
fn merge_runs(tokens: Vec<TagToken>) -> Vec<TagToken> {
    let mut out: Vec<TagToken> = Vec::with_capacity(tokens.len());
    for t in tokens {
        if let Some(prev) = out.last_mut() {
            let mergeable = matches!(t.tag, PosTag::NN | PosTag::JJ)
                && prev.tag == t.tag
                && prev.marker == t.marker;
            if mergeable {
                prev.word.push(' ');
                prev.word.push_str(&t.word);
                prev.surface.push(' ');
                prev.surface.push_str(&t.surface);
                continue;
            }
        }
        out.push(t);
    }
    out
}

/// Returns the id of the first pattern that occurs as a contiguous
/// subsequence of the normalized tokens, in registration order.
pub fn match_patterns(tokens: &[TagToken]) -> Option<u8> {
    PATTERNS
        .iter()
        .find(|p| (0..tokens.len()).any(|start| matches_at(tokens, start, p.slots)))
        .map(|p| p.id)
}

fn matches_at(tokens: &[TagToken], pos: usize, slots: &[Slot]) -> bool {
    let Some((slot, rest)) = slots.split_first() else {
        return true;
    };
    if let Slot::Negation = slot {
        if tokens.get(pos).is_some_and(is_negation) && matches_at(tokens, pos + 1, rest) {
            return true;
        }
        return matches_at(tokens, pos, rest);
    }
    let Some(tok) = tokens.get(pos) else {
        return false;
    };
    slot_accepts(slot, tok) && matches_at(tokens, pos + 1, rest)
}

fn is_negation(tok: &TagToken) -> bool {
    tok.tag == PosTag::OTHER && NEGATIONS.contains(&tok.word.as_str())
}

fn slot_accepts(slot: &Slot, tok: &TagToken) -> bool {
    match slot {
        Slot::Noun => tok.tag == PosTag::NN,
        Slot::NounMarked(m) => tok.tag == PosTag::NN && tok.marker == Some(*m),
        Slot::Modal(words) => tok.tag == PosTag::MD && words.contains(&tok.word.as_str()),
        Slot::Verb(words) => tok.tag == PosTag::VB && words.contains(&tok.word.as_str()),
        Slot::Adjective(words) => tok.tag == PosTag::JJ && words.contains(&tok.word.as_str()),
        Slot::Negation => unreachable!("negation handled by matches_at"),
    }
}

/// Tags, normalizes and matches in one step.
pub fn classify(text: &str, option: Option<&ConfigOption>, errors: &ErrorLexicon) -> Option<u8> {
    let normalized = normalize(pos_tag(text), option, errors);
    match_patterns(&normalized)
}
