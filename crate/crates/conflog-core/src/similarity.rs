//! Lexical similarity between an option name and a program identifier,
//! weighted by how informative each word is across the whole option list.
//!
//! A word that appears in many option names (say "log") tells us little;
//! a word unique to one option tells us a lot. Weights are the classic
//! inverse document frequency over the option list, and the score is a
//! weighted Jaccard ratio over stemmed word sets.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::lexicon::OptionLexicon;

#[derive(Debug, Error)]
pub enum SimilarityError {
    #[error("cannot build idf weights from an empty option lexicon")]
    EmptyLexicon,
}

/// Frozen idf weights for one option lexicon.
#[derive(Debug, Clone)]
pub struct IdfTable {
    n: f64,
    entries: std::collections::BTreeMap<String, f64>,
}

/// Computes idf weights from the lexicon's document frequencies.
pub fn build_idf(lexicon: &OptionLexicon) -> Result<IdfTable, SimilarityError> {
    if lexicon.is_empty() {
        return Err(SimilarityError::EmptyLexicon);
    }
    let n = lexicon.len() as f64;
    let mut entries = std::collections::BTreeMap::new();
    for opt in &lexicon.options {
        for word in &opt.words {
            if !entries.contains_key(word) {
                let df = lexicon.document_frequency(word) as f64;
                entries.insert(word.clone(), (n / df).ln());
            }
        }
    }
    Ok(IdfTable { n, entries })
}

impl IdfTable {
    /// Weight of one stemmed word. Words never seen in any option name get
    /// the maximum weight, as if they occurred in a single document.
    pub fn weight(&self, word: &str) -> f64 {
        self.entries
            .get(word)
            .copied()
            .unwrap_or_else(|| self.n.ln())
    }

    /// Weighted Jaccard similarity over two stemmed word sets. An empty
    /// union, or a union whose words all carry zero weight, scores zero.
    pub fn similarity(&self, a: &[String], b: &[String]) -> f64 {
        let set_a: BTreeSet<&str> = a.iter().map(String::as_str).collect();
        let set_b: BTreeSet<&str> = b.iter().map(String::as_str).collect();
        let union_weight: f64 = set_a.union(&set_b).map(|w| self.weight(w)).sum();
        if union_weight <= 0.0 {
            return 0.0;
        }
        let inter_weight: f64 = set_a.intersection(&set_b).map(|w| self.weight(w)).sum();
        inter_weight / union_weight
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lexicon::segment_identifier;

    fn toy_lexicon() -> OptionLexicon {
        OptionLexicon::from_names(&["data_directory", "log_directory", "max_connections"]).unwrap()
    }

    #[test]
    fn rejects_empty_lexicon() {
        let lex = OptionLexicon::from_names::<&str>(&[]).unwrap();
        assert!(matches!(
            build_idf(&lex),
            Err(SimilarityError::EmptyLexicon)
        ));
    }

    #[test]
    fn weights_follow_document_frequency() {
        let idf = build_idf(&toy_lexicon()).unwrap();
        assert!((idf.weight("data") - 3.0f64.ln()).abs() < 1e-12);
        assert!((idf.weight("directori") - 1.5f64.ln()).abs() < 1e-12);
        assert!((idf.weight("never_seen") - 3.0f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn hand_computed_score() {
        let lex = toy_lexicon();
        let idf = build_idf(&lex).unwrap();
        let option_words = &lex.get(0).words;
        let var_words = segment_identifier("data_dir_path");
        assert_eq!(var_words, vec!["data", "dir", "path"]);
        let got = idf.similarity(option_words, &var_words);
        let ln3 = 3.0f64.ln();
        let expected = ln3 / (3.0 * ln3 + 1.5f64.ln());
        assert!(
            (got - expected).abs() < 1e-12,
            "got {got}, expected {expected}"
        );
    }

    #[test]
    fn identical_word_sets_score_one() {
        let lex = toy_lexicon();
        let idf = build_idf(&lex).unwrap();
        let words = segment_identifier("max_connections");
        assert!((idf.similarity(&words, &words) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn disjoint_word_sets_score_zero() {
        let idf = build_idf(&toy_lexicon()).unwrap();
        let a = segment_identifier("data_directory");
        let b = segment_identifier("worker_threads");
        assert_eq!(idf.similarity(&a, &b), 0.0);
    }

    #[test]
    fn empty_sets_score_zero() {
        let idf = build_idf(&toy_lexicon()).unwrap();
        assert_eq!(idf.similarity(&[], &[]), 0.0);
    }

    #[test]
    fn duplicates_do_not_change_the_score() {
        let idf = build_idf(&toy_lexicon()).unwrap();
        let a = vec![
            "data".to_string(),
            "data".to_string(),
            "directori".to_string(),
        ];
        let b = vec!["data".to_string()];
        let a_set = vec!["data".to_string(), "directori".to_string()];
        assert_eq!(idf.similarity(&a, &b), idf.similarity(&a_set, &b));
    }
}
