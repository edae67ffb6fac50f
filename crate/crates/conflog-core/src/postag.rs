//! Rule-based part-of-speech tagging over log-message text.
//!
//! The tagset is deliberately coarse: the downstream patterns only care
//! about nouns, verbs, modals, adjectives and a handful of closed classes.
//! Closed-class words are table-driven; verbs resolve through a bundled
//! base-form lexicon plus suffix stripping; adjectives through a lexicon
//! plus suffix rules; everything else defaults to noun.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use crate::assemble::VARIABLE_TOKEN;

/// Coarse part-of-speech tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PosTag {
    /// Noun (the default class).
    NN,
    /// Verb, any inflection; the token's word holds the base form.
    VB,
    /// Modal.
    MD,
    /// Adjective.
    JJ,
    /// Coordinating conjunction.
    CC,
    /// Preposition.
    IN,
    /// Cardinal number.
    CD,
    /// Determiner.
    DT,
    /// Non-sentence symbol: quotes, parentheses, operators.
    SYM,
    /// Sentence punctuation: . , ; : ! ?
    PUNCT,
    /// Words outside every class above, currently negations.
    OTHER,
}

/// Semantic marker attached to a noun token.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Marker {
    /// The token span spells a configuration option's name.
    Config,
    /// The word belongs to the error lexicon.
    ErrorStatus,
    /// The token is a scrubbed placeholder for runtime data.
    Variable,
}

/// One tagged token.
#[derive(Debug, Clone, PartialEq)]
pub struct TagToken {
    /// Matching form: verb base for VB, lowercased surface otherwise.
    pub word: String,
    /// Lowercased original spelling.
    pub surface: String,
    pub tag: PosTag,
    pub marker: Option<Marker>,
}

impl TagToken {
    fn new(word: impl Into<String>, surface: impl Into<String>, tag: PosTag) -> TagToken {
        TagToken {
            word: word.into(),
            surface: surface.into(),
            tag,
            marker: None,
        }
    }
}

const DETERMINERS: [&str; 8] = ["a", "an", "the", "this", "that", "these", "those", "no"];
const MODALS: [&str; 10] = [
    "must", "should", "shall", "may", "might", "can", "could", "will", "would", "need",
];
const CONJUNCTIONS: [&str; 4] = ["and", "or", "but", "nor"];
const PREPOSITIONS: [&str; 23] = [
    "of", "in", "on", "at", "by", "for", "with", "from", "to", "into", "between", "than", "as",
    "under", "over", "within", "without", "before", "after", "during", "against", "per", "via",
];
/// Words that satisfy a pattern's optional negation slot.
pub const NEGATIONS: [&str; 3] = ["not", "never", "n't"];

const QUOTE_CHARS: [char; 3] = ['\'', '"', '`'];
const SENTENCE_PUNCT: [char; 6] = ['.', ',', ';', ':', '!', '?'];

fn verb_bases() -> &'static BTreeSet<&'static str> {
    static SET: OnceLock<BTreeSet<&'static str>> = OnceLock::new();
    SET.get_or_init(|| word_list(include_str!("../data/verbs.txt")))
}

fn adjective_lexicon() -> &'static BTreeSet<&'static str> {
    static SET: OnceLock<BTreeSet<&'static str>> = OnceLock::new();
    SET.get_or_init(|| word_list(include_str!("../data/adjectives.txt")))
}

fn word_list(raw: &'static str) -> BTreeSet<&'static str> {
    raw.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .collect()
}

/// Irregular verb surfaces that suffix stripping cannot reduce.
fn irregular_verb(lower: &str) -> Option<&'static str> {
    Some(match lower {
        "is" | "are" | "was" | "were" | "been" | "being" | "am" => "be",
        "has" | "had" => "have",
        "does" | "did" | "done" => "do",
        "got" | "gotten" => "get",
        "made" => "make",
        "took" | "taken" => "take",
        "found" => "find",
        "gave" | "given" => "give",
        "ran" => "run",
        "kept" => "keep",
        "let" => "let",
        "said" => "say",
        "saw" | "seen" => "see",
        "sent" => "send",
        "read" => "read",
        "wrote" | "written" => "write",
        _ => return None,
    })
}

/// Reduces a surface to a known verb base, if any inflection rule lands on
/// one.
fn verb_lemma(lower: &str) -> Option<String> {
    if let Some(base) = irregular_verb(lower) {
        return Some(base.to_string());
    }
    let bases = verb_bases();
    if bases.contains(lower) {
        return Some(lower.to_string());
    }
    let candidates: [Option<String>; 7] = [
        lower.strip_suffix("ies").map(|s| format!("{s}y")),
        lower.strip_suffix("es").map(str::to_string),
        lower.strip_suffix('s').map(str::to_string),
        lower.strip_suffix("ed").map(str::to_string),
        lower.strip_suffix('d').map(str::to_string),
        lower.strip_suffix("ing").map(str::to_string),
        lower.strip_suffix("ing").map(|s| format!("{s}e")),
    ];
    candidates
        .into_iter()
        .flatten()
        .find(|c| c.len() > 1 && bases.contains(c.as_str()))
}

fn is_adjective(lower: &str) -> bool {
    if adjective_lexicon().contains(lower) {
        return true;
    }
    if lower.starts_with("non-") {
        return true;
    }
    // -ive and -ic are left out on purpose: too many config nouns end in
    // them (directive, statistic) and the lexicon lists the real ones.
    ["able", "ible", "ous", "ful"]
        .iter()
        .any(|suf| lower.len() > suf.len() + 2 && lower.ends_with(suf))
}

#[derive(Debug, PartialEq)]
enum RawToken {
    Word(String),
    Number(String),
    Punct(char),
    Sym(char),
}

/// Splits text into words, numbers, punctuation and symbols. Internal '.'
/// and '-' stay inside a word or number when flanked by alphanumerics, so
/// dotted identifiers and hyphenated adjectives survive as one token.
fn tokenize(text: &str) -> Vec<RawToken> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_alphabetic() || c == '_' {
            let mut word = String::new();
            while i < chars.len() {
                let c = chars[i];
                let internal_sep = (c == '.' || c == '-')
                    && chars
                        .get(i + 1)
                        .is_some_and(|n| n.is_ascii_alphanumeric() || *n == '_');
                if c.is_ascii_alphanumeric() || c == '_' || internal_sep {
                    word.push(c);
                    i += 1;
                } else {
                    break;
                }
            }
            out.push(RawToken::Word(word));
        } else if c.is_ascii_digit() {
            let mut num = String::new();
            while i < chars.len() {
                let c = chars[i];
                let internal_dot = c == '.' && chars.get(i + 1).is_some_and(char::is_ascii_digit);
                if c.is_ascii_digit() || internal_dot {
                    num.push(c);
                    i += 1;
                } else {
                    break;
                }
            }
            out.push(RawToken::Number(num));
        } else if SENTENCE_PUNCT.contains(&c) {
            out.push(RawToken::Punct(c));
            i += 1;
        } else {
            out.push(RawToken::Sym(c));
            i += 1;
        }
    }
    out
}

/// Tags message text deterministically.
///
/// Placeholder tokens become marked nouns; a word wrapped in quote symbols
/// is forced to noun (quoted literals name values, whatever the word);
/// closed classes are checked before the verb and adjective lexicons, and
/// anything left over is a noun.
pub fn pos_tag(text: &str) -> Vec<TagToken> {
    let raw = tokenize(text);
    let mut out = Vec::with_capacity(raw.len());
    for (i, tok) in raw.iter().enumerate() {
        let token = match tok {
            RawToken::Number(n) => TagToken::new(n.clone(), n.clone(), PosTag::CD),
            RawToken::Punct(c) => TagToken::new(*c, *c, PosTag::PUNCT),
            RawToken::Sym(c) => TagToken::new(*c, *c, PosTag::SYM),
            RawToken::Word(w) => {
                if w == VARIABLE_TOKEN {
                    let mut t = TagToken::new(w.clone(), w.to_lowercase(), PosTag::NN);
                    t.marker = Some(Marker::Variable);
                    t
                } else if quoted(&raw, i) {
                    TagToken::new(w.to_lowercase(), w.to_lowercase(), PosTag::NN)
                } else {
                    classify_word(w)
                }
            }
        };
        out.push(token);
    }
    out
}

fn quoted(raw: &[RawToken], i: usize) -> bool {
    let is_quote =
        |t: Option<&RawToken>| matches!(t, Some(RawToken::Sym(c)) if QUOTE_CHARS.contains(c));
    i > 0 && is_quote(raw.get(i - 1)) && is_quote(raw.get(i + 1))
}

fn classify_word(surface: &str) -> TagToken {
    let lower = surface.to_lowercase();
    let tag = if NEGATIONS.contains(&lower.as_str()) {
        PosTag::OTHER
    } else if DETERMINERS.contains(&lower.as_str()) {
        PosTag::DT
    } else if MODALS.contains(&lower.as_str()) {
        PosTag::MD
    } else if CONJUNCTIONS.contains(&lower.as_str()) {
        PosTag::CC
    } else if PREPOSITIONS.contains(&lower.as_str()) {
        PosTag::IN
    } else if let Some(base) = verb_lemma(&lower) {
        return TagToken::new(base, lower, PosTag::VB);
    } else if is_adjective(&lower) {
        PosTag::JJ
    } else {
        PosTag::NN
    };
    TagToken::new(lower.clone(), lower, tag)
}
