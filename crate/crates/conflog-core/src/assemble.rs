//! Turns the string pieces of a logging call into one normalized message.
//!
//! Non-literal arguments spliced between literals become a `_VARIABLE_`
//! placeholder, printf-style conversion specifiers inside literals become
//! the same placeholder, quote characters hugging a placeholder are dropped,
//! and whitespace is collapsed. The result is what the rest of the pipeline
//! treats as "the log message".

/// Placeholder standing in for any runtime value in a message.
pub const VARIABLE_TOKEN: &str = "_VARIABLE_";

/// One piece of a message before assembly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Segment {
    Literal(String),
    Variable,
}

/// Concatenates segments and normalizes the result.
pub fn assemble(segments: &[Segment]) -> String {
    let mut raw = String::new();
    for seg in segments {
        match seg {
            Segment::Literal(text) => raw.push_str(text),
            Segment::Variable => raw.push_str(VARIABLE_TOKEN),
        }
    }
    normalize_text(&raw)
}

/// Normalizes already-concatenated message text.
pub fn normalize_text(raw: &str) -> String {
    let scrubbed = scrub_format(raw);
    let unquoted = strip_placeholder_quotes(&scrubbed);
    collapse_whitespace(&unquoted)
}

// The space and apostrophe printf flags are deliberately not recognized:
// "50% of total" and "100%'s" are prose, and a scanner that accepts them as
// flagged conversions would eat the words that follow.
const FLAG_CHARS: [char; 4] = ['-', '+', '#', '0'];
const CONVERSION_CHARS: &str = "diouxXeEfgGaAcspn";

/// Replaces printf-style conversion specifiers with the placeholder.
/// A literal `%%` is kept verbatim so the function is idempotent, and any
/// `%` that does not start a well-formed specifier passes through unchanged.
pub fn scrub_format(text: &str) -> String {
    let chars: Vec<char> = text.chars().collect();
    let mut out = String::with_capacity(text.len());
    let mut i = 0;
    while i < chars.len() {
        if chars[i] != '%' {
            out.push(chars[i]);
            i += 1;
            continue;
        }
        if chars.get(i + 1) == Some(&'%') {
            out.push_str("%%");
            i += 2;
            continue;
        }
        match specifier_end(&chars, i + 1) {
            Some(end) => {
                out.push_str(VARIABLE_TOKEN);
                i = end;
            }
            None => {
                out.push('%');
                i += 1;
            }
        }
    }
    out
}

/// Parses flags, width, precision, length modifier and conversion starting
/// at `start` (just past the `%`). Returns the index one past the
/// conversion character, or None when no valid specifier is present.
fn specifier_end(chars: &[char], start: usize) -> Option<usize> {
    let mut j = start;
    while chars.get(j).is_some_and(|c| FLAG_CHARS.contains(c)) {
        j += 1;
    }
    if chars.get(j) == Some(&'*') {
        j += 1;
    } else {
        while chars.get(j).is_some_and(|c| c.is_ascii_digit()) {
            j += 1;
        }
    }
    if chars.get(j) == Some(&'.') {
        j += 1;
        if chars.get(j) == Some(&'*') {
            j += 1;
        } else {
            while chars.get(j).is_some_and(|c| c.is_ascii_digit()) {
                j += 1;
            }
        }
    }
    match (chars.get(j), chars.get(j + 1)) {
        (Some('h'), Some('h')) | (Some('l'), Some('l')) => j += 2,
        (Some('h' | 'l' | 'L' | 'z' | 'j' | 't' | 'q'), _) => j += 1,
        _ => {}
    }
    let conv = chars.get(j)?;
    if CONVERSION_CHARS.contains(*conv) {
        Some(j + 1)
    } else {
        None
    }
}

/// Drops runs of quote characters that sit directly against a placeholder,
/// so `'_VARIABLE_'` and `"_VARIABLE_"` read as the bare placeholder.
fn strip_placeholder_quotes(text: &str) -> String {
    use std::sync::OnceLock;
    static BEFORE: OnceLock<regex::Regex> = OnceLock::new();
    static AFTER: OnceLock<regex::Regex> = OnceLock::new();
    let before = BEFORE.get_or_init(|| regex::Regex::new(r#"["'`]+_VARIABLE_"#).unwrap());
    let after = AFTER.get_or_init(|| regex::Regex::new(r#"_VARIABLE_["'`]+"#).unwrap());
    let pass = before.replace_all(text, VARIABLE_TOKEN);
    after.replace_all(&pass, VARIABLE_TOKEN).into_owned()
}

fn collapse_whitespace(text: &str) -> String {
    text.split_whitespace().collect::<Vec<_>>().join(" ")
}

/// Whitespace-token count used for the minimum-length filter.
pub fn word_count(text: &str) -> usize {
    text.split_whitespace().count()
}
