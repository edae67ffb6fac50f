//! Configuration option names: how they split into words, how those words
//! are stemmed, and the permissive-delimiter regex used to spot a name
//! spelled out inside a log message.
//!
//! Splitting happens on `_`, `.`, `-` and spaces first, then on camelCase
//! boundaries inside each chunk. Stemming uses the Snowball English stemmer,
//! so "directory" becomes "directori" and "fields" becomes "field" while
//! short words like "use" survive unchanged.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::path::Path;
use std::sync::OnceLock;

use regex::Regex;
use rust_stemmers::{Algorithm, Stemmer};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LexiconError {
    #[error("failed to read options file {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("option name {name:?} reduces to zero tokens")]
    ZeroTokens { name: String },
    #[error("options file {path} contains no option names")]
    Empty { path: String },
}

fn stemmer() -> &'static Stemmer {
    static STEMMER: OnceLock<Stemmer> = OnceLock::new();
    STEMMER.get_or_init(|| Stemmer::create(Algorithm::English))
}

/// Lowercases and stems a single word.
pub fn stem(word: &str) -> String {
    let lower = word.to_lowercase();
    stemmer().stem(&lower).into_owned()
}

/// How two adjacent raw words were separated in the original name. Decides
/// whether the delimiter is required or optional in the name regex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Sep {
    Delimiter,
    CamelCase,
}

fn is_delimiter(c: char) -> bool {
    matches!(c, '_' | '.' | '-' | ' ')
}

/// Splits a raw name into its unstemmed words plus the separator style
/// between each adjacent pair.
fn split_raw(name: &str) -> (Vec<String>, Vec<Sep>) {
    let mut words = Vec::new();
    let mut seps = Vec::new();
    for (i, chunk) in name.split(is_delimiter).enumerate() {
        if chunk.is_empty() {
            continue;
        }
        if i > 0 && !words.is_empty() {
            seps.push(Sep::Delimiter);
        }
        let parts = split_camel(chunk);
        for (j, part) in parts.into_iter().enumerate() {
            if j > 0 {
                seps.push(Sep::CamelCase);
            }
            words.push(part);
        }
    }
    debug_assert!(words.is_empty() || seps.len() == words.len() - 1);
    (words, seps)
}

fn split_camel(chunk: &str) -> Vec<String> {
    let chars: Vec<char> = chunk.chars().collect();
    let mut parts = Vec::new();
    let mut start = 0;
    for i in 1..chars.len() {
        let prev = chars[i - 1];
        let cur = chars[i];
        let lower_to_upper = cur.is_uppercase() && (prev.is_lowercase() || prev.is_ascii_digit());
        let acronym_end = cur.is_uppercase()
            && prev.is_uppercase()
            && chars.get(i + 1).is_some_and(|n| n.is_lowercase());
        if lower_to_upper || acronym_end {
            parts.push(chars[start..i].iter().collect());
            start = i;
        }
    }
    parts.push(chars[start..].iter().collect());
    parts
}

/// Splits, lowercases and stems an option name.
pub fn tokenize_option(raw_name: &str) -> Result<Vec<String>, LexiconError> {
    let (words, _) = split_raw(raw_name);
    let tokens: Vec<String> = words
        .iter()
        .map(|w| stem(w))
        .filter(|w| !w.is_empty())
        .collect();
    if tokens.is_empty() {
        return Err(LexiconError::ZeroTokens {
            name: raw_name.to_string(),
        });
    }
    Ok(tokens)
}

/// Segments an arbitrary identifier (variable or member path) the same way
/// option names are segmented. Unlike [`tokenize_option`] an empty result is
/// fine here.
pub fn segment_identifier(name: &str) -> Vec<String> {
    let (words, _) = split_raw(name);
    words
        .iter()
        .map(|w| stem(w))
        .filter(|w| !w.is_empty())
        .collect()
}

/// Builds the case-insensitive message regex for a raw option name: original
/// words joined by the delimiter class, required where the raw name had a
/// delimiter and optional where the split came from camelCase.
pub fn build_name_regex(raw_name: &str) -> Result<Regex, LexiconError> {
    let (words, seps) = split_raw(raw_name);
    if words.is_empty() {
        return Err(LexiconError::ZeroTokens {
            name: raw_name.to_string(),
        });
    }
    let mut pattern = String::from(r"(?i)\b");
    for (i, word) in words.iter().enumerate() {
        if i > 0 {
            pattern.push_str(match seps[i - 1] {
                Sep::Delimiter => "[ ._-]",
                Sep::CamelCase => "[ ._-]?",
            });
        }
        pattern.push_str(&regex::escape(word));
    }
    pattern.push_str(r"\b");
    Ok(Regex::new(&pattern).expect("escaped words always form a valid pattern"))
}

/// One configuration option: raw spelling, stemmed words and the message
/// regex derived from the raw spelling.
#[derive(Debug, Clone)]
pub struct ConfigOption {
    pub raw_name: String,
    pub words: Vec<String>,
    regex: Regex,
    single_word: bool,
}

const QUOTE_CHARS: [char; 3] = ['\'', '"', '`'];

/// Words that disambiguate a bare single-word option mention.
const MODIFIER_WORDS: [&str; 5] = [
    "configuration",
    "config",
    "option",
    "directive",
    "parameter",
];

fn modifier_regex() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| {
        let alt = MODIFIER_WORDS.join("|");
        Regex::new(&format!(r"(?i)\b(?:{alt})\b")).unwrap()
    })
}

impl ConfigOption {
    pub fn new(raw_name: &str) -> Result<Self, LexiconError> {
        let words = tokenize_option(raw_name)?;
        let regex = build_name_regex(raw_name)?;
        let (raw_words, _) = split_raw(raw_name);
        Ok(ConfigOption {
            raw_name: raw_name.to_string(),
            words,
            regex,
            single_word: raw_words.len() == 1,
        })
    }

    pub fn name_regex(&self) -> &Regex {
        &self.regex
    }

    pub fn is_single_word(&self) -> bool {
        self.single_word
    }

    /// True when the message mentions this option by name. Multi-word names
    /// match on the regex alone. A single-word name additionally needs the
    /// matched word to be quoted, or a config-speak modifier word somewhere
    /// in the message, to keep ordinary prose from matching.
    pub fn match_direct(&self, message: &str) -> bool {
        if !self.single_word {
            return self.regex.is_match(message);
        }
        for m in self.regex.find_iter(message) {
            let before = message[..m.start()].chars().next_back();
            let after = message[m.end()..].chars().next();
            let quoted = before.is_some_and(|c| QUOTE_CHARS.contains(&c))
                && after.is_some_and(|c| QUOTE_CHARS.contains(&c));
            if quoted || modifier_regex().is_match(message) {
                return true;
            }
        }
        false
    }

    /// True when `text` spells this option's name and nothing else.
    pub fn matches_span(&self, text: &str) -> bool {
        self.regex
            .find(text)
            .is_some_and(|m| m.start() == 0 && m.end() == text.len())
    }
}

/// The loaded option list plus document frequencies of stemmed words, in
/// file order.
#[derive(Debug, Clone, Default)]
pub struct OptionLexicon {
    pub options: Vec<ConfigOption>,
    df: BTreeMap<String, usize>,
    by_name: HashMap<String, usize>,
}

impl OptionLexicon {
    pub fn from_names<S: AsRef<str>>(names: &[S]) -> Result<Self, LexiconError> {
        let mut options = Vec::new();
        let mut by_name = HashMap::new();
        for name in names {
            let name = name.as_ref();
            if by_name.contains_key(name) {
                log::debug!("duplicate option name {name:?} ignored");
                continue;
            }
            by_name.insert(name.to_string(), options.len());
            options.push(ConfigOption::new(name)?);
        }
        let mut df = BTreeMap::new();
        for opt in &options {
            let unique: BTreeSet<&String> = opt.words.iter().collect();
            for w in unique {
                *df.entry(w.clone()).or_insert(0) += 1;
            }
        }
        Ok(OptionLexicon {
            options,
            df,
            by_name,
        })
    }

    /// Reads an options file: UTF-8, one name per line, `#` starts a
    /// comment, an optional tab-separated second column is ignored.
    pub fn from_file(path: &Path) -> Result<Self, LexiconError> {
        let text = std::fs::read_to_string(path).map_err(|source| LexiconError::Io {
            path: path.display().to_string(),
            source,
        })?;
        let names: Vec<&str> = text
            .lines()
            .map(|line| {
                let line = line.split('#').next().unwrap_or("");
                line.split('\t').next().unwrap_or("").trim()
            })
            .filter(|name| !name.is_empty())
            .collect();
        Self::from_names(&names)
    }

    pub fn len(&self) -> usize {
        self.options.len()
    }

    pub fn is_empty(&self) -> bool {
        self.options.is_empty()
    }

    pub fn get(&self, idx: usize) -> &ConfigOption {
        &self.options[idx]
    }

    pub fn index_of(&self, raw_name: &str) -> Option<usize> {
        self.by_name.get(raw_name).copied()
    }

    /// Number of options whose word set contains `word` (stemmed form).
    pub fn document_frequency(&self, word: &str) -> usize {
        self.df.get(word).copied().unwrap_or(0)
    }

    pub fn raw_names(&self) -> impl Iterator<Item = &str> {
        self.options.iter().map(|o| o.raw_name.as_str())
    }
}
