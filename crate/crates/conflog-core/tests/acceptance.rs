//! Release gate. Every test checks one shipping criterion against the
//! bundled golden corpus in fixtures/golden or against randomized inputs,
//! and prints one `PASS <criterion>` line. Tolerances are pinned here.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use proptest::prelude::*;
use proptest::test_runner::{Config, FailurePersistence, TestRunner};

use conflog_core::bindings::{minimal_clean_ancestor, structure_top, BindingSet};
use conflog_core::ingest::SourceCorpus;
use conflog_core::lexicon::segment_identifier;
use conflog_core::relate::relate_by_similarity;
use conflog_core::slice::{Slice, SliceRef};
use conflog_core::syntax::TreeBuilder;
use conflog_core::{
    build_idf, classify, load_labels, normalize, pos_tag, run, tune_threshold, ConfigOption,
    ConstraintFinding, ErrorLexicon, EvidenceKind, LabeledPair, Marker, NodeId, NodeKind,
    OptionLexicon, PosTag, Report, SourceLocation, SyntaxTree, TagToken, ToolConfig,
};

const MAX_GOLDEN_RUNTIME: Duration = Duration::from_secs(2);
const DEFAULT_THRESHOLD: f64 = 0.63;
const F1_TOLERANCE: f64 = 1e-9;
const PROPERTY_CASES: u32 = 1000;

fn fixture_root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures/golden")
}

fn golden() -> &'static (Report, Duration) {
    static CELL: OnceLock<(Report, Duration)> = OnceLock::new();
    CELL.get_or_init(|| {
        let root = fixture_root();
        let started = Instant::now();
        let outcome = run(
            &root.join("src"),
            &root.join("options.txt"),
            &ToolConfig::default(),
        )
        .expect("golden corpus runs");
        let elapsed = started.elapsed();
        assert!(!outcome.degraded, "golden corpus parses cleanly");
        (outcome.report, elapsed)
    })
}

fn finding<'r>(report: &'r Report, option: &str) -> &'r ConstraintFinding {
    let hits: Vec<&ConstraintFinding> = report
        .findings
        .iter()
        .filter(|f| f.option == option)
        .collect();
    assert_eq!(
        hits.len(),
        1,
        "expected exactly one finding for {option}, report:\n{}",
        report.to_json()
    );
    hits[0]
}

#[test]
fn criterion_1_format_string_message_via_config_function() {
    let f = finding(&golden().0, "VirtualDocumentRoot");
    assert_eq!(
        f.message,
        "format string must be an absolute path, or _VARIABLE_"
    );
    assert_eq!(f.evidence.kind, EvidenceKind::ConfigFunction);
    assert_eq!(f.pattern, 1);
    println!("PASS criterion 1: VirtualDocumentRoot via config-function, pattern 1");
}

#[test]
fn criterion_2_spliced_message_via_direct_name() {
    let f = finding(&golden().0, "LimitRequestFields");
    assert_eq!(
        f.message,
        "LimitRequestFields must be a non-negative integer (0 = no limit)"
    );
    assert_eq!(f.evidence.kind, EvidenceKind::DirectName);
    assert_eq!(f.pattern, 1);
    println!("PASS criterion 2: LimitRequestFields via direct-name, pattern 1");
}

#[test]
fn criterion_3_bound_variable_evidence() {
    let f = finding(&golden().0, "disable_symlinks");
    assert_eq!(f.evidence.kind, EvidenceKind::ConfigVariable);
    assert_eq!(f.evidence.witness, "clcf->disable_symlinks");
    println!("PASS criterion 3: disable_symlinks via config-variable");
}

#[test]
fn criterion_4_bound_function_evidence() {
    let f = finding(&golden().0, "AllowEncodedSlashes");
    assert_eq!(f.evidence.kind, EvidenceKind::ConfigFunction);
    assert_eq!(f.evidence.witness, "set_allow2f");
    println!("PASS criterion 4: AllowEncodedSlashes via config-function");
}

#[test]
fn criterion_5_structure_neighbors_stay_separate() {
    let report = &golden().0;
    let charset = finding(report, "AddDefaultCharset");
    assert_eq!(charset.message, "The default charset must be a valid name");
    assert_eq!(charset.evidence.kind, EvidenceKind::StructureProximity);
    let pathinfo = finding(report, "AcceptPathInfo");
    assert_eq!(
        pathinfo.message,
        "This directive accepts the values on, off, and default"
    );
    assert_eq!(pathinfo.evidence.kind, EvidenceKind::StructureProximity);
    assert_ne!(charset.message, pathinfo.message, "no cross-contamination");
    println!("PASS criterion 5: AddDefaultCharset and AcceptPathInfo each keep their own message");
}

#[test]
fn criterion_6_similarity_fallback_at_default_threshold() {
    let f = finding(&golden().0, "default_tablespace");
    assert_eq!(f.evidence.kind, EvidenceKind::Similarity);
    assert_eq!(f.evidence.witness, "default_tablespaces");
    assert!(
        f.evidence.score >= DEFAULT_THRESHOLD,
        "score {} clears the {} threshold",
        f.evidence.score,
        DEFAULT_THRESHOLD
    );
    println!(
        "PASS criterion 6: default_tablespaces relates to default_tablespace at score {:.4}",
        f.evidence.score
    );
}

#[test]
fn criterion_7_golden_run_is_exact_and_fast() {
    let (report, elapsed) = golden();
    let options: Vec<&str> = report.findings.iter().map(|f| f.option.as_str()).collect();
    assert_eq!(
        options,
        vec![
            "AcceptPathInfo",
            "AddDefaultCharset",
            "AllowEncodedSlashes",
            "LimitRequestFields",
            "VirtualDocumentRoot",
            "default_tablespace",
            "disable_symlinks",
        ],
        "exact finding set, report:\n{}",
        report.to_json()
    );
    assert!(
        *elapsed < MAX_GOLDEN_RUNTIME,
        "golden run took {elapsed:?}, limit {MAX_GOLDEN_RUNTIME:?}"
    );
    println!(
        "PASS criterion 7: {} findings in {elapsed:?}",
        report.findings.len()
    );
}

#[test]
fn criterion_8_sentence_pattern_regression() {
    let errors = ErrorLexicon::default();
    let rows: [(&str, Option<&str>, Option<u8>); 7] = [
        ("This value must be greater than 0.", None, Some(1)),
        (
            "operationProfiling.slowOpSampleRate accepts values between 0 and 1.",
            None,
            Some(2),
        ),
        (
            "Valid options are 'ALWAYS', 'NEVER', and 'ONCE'.",
            None,
            Some(3),
        ),
        ("Negative value or 0 are invalid values...", None, Some(4)),
        (
            "Error: olcIdleTimeout is less than 0.",
            Some("olcIdleTimeout"),
            Some(5),
        ),
        ("invalid value", None, None),
        (
            "Symbolic link is not allowed or link target not accessible",
            None,
            None,
        ),
    ];
    for (text, option_name, expected) in rows {
        let option = option_name.map(|n| ConfigOption::new(n).unwrap());
        let got = classify(text, option.as_ref(), &errors);
        assert_eq!(got, expected, "sentence {text:?}");
    }
    println!("PASS criterion 8: 5 positive and 2 negative sentences classify exactly");
}

#[test]
fn criterion_9_tuning_matches_brute_force() {
    let lexicon = OptionLexicon::from_names(&[
        "data_directory",
        "log_directory",
        "max_connections",
        "listen_backlog",
    ])
    .unwrap();
    let pair = |option: &str, variable: &str, related: bool| LabeledPair {
        option: option.to_string(),
        variable: variable.to_string(),
        related,
    };
    let pairs = vec![
        pair("data_directory", "data_directory", true),
        pair("data_directory", "data_dir_path", true),
        pair("log_directory", "log_dir", true),
        pair("log_directory", "directory_mode", true),
        pair("max_connections", "conn_limit", true),
        pair("max_connections", "data_dir_path", false),
        pair("log_directory", "conn_count", false),
        pair("listen_backlog", "page_cache", false),
        pair("listen_backlog", "listen_backlog_depth", true),
        pair("data_directory", "tty_name", false),
    ];
    let result = tune_threshold(&pairs, &lexicon).unwrap();

    let idf = build_idf(&lexicon).unwrap();
    let scored: Vec<(f64, bool)> = pairs
        .iter()
        .map(|p| {
            let idx = lexicon.index_of(&p.option).unwrap();
            let words = segment_identifier(&p.variable);
            (idf.similarity(&lexicon.get(idx).words, &words), p.related)
        })
        .collect();
    let mut best = (f64::NAN, -1.0f64);
    for i in 40..=80u32 {
        let mu = f64::from(i) / 100.0;
        let tp = scored.iter().filter(|(s, r)| *s >= mu && *r).count() as f64;
        let fp = scored.iter().filter(|(s, r)| *s >= mu && !*r).count() as f64;
        let fnn = scored.iter().filter(|(s, r)| *s < mu && *r).count() as f64;
        let precision = if tp + fp > 0.0 { tp / (tp + fp) } else { 0.0 };
        let recall = if tp + fnn > 0.0 { tp / (tp + fnn) } else { 0.0 };
        let f1 = if precision + recall > 0.0 {
            2.0 * precision * recall / (precision + recall)
        } else {
            0.0
        };
        if f1 > best.1 {
            best = (mu, f1);
        }
    }
    assert_eq!(result.best_threshold, best.0, "argmax threshold");
    assert!((result.best_f1 - best.1).abs() <= F1_TOLERANCE, "argmax F1");
    for point in &result.curve {
        let recomputed = if point.precision + point.recall > 0.0 {
            2.0 * point.precision * point.recall / (point.precision + point.recall)
        } else {
            0.0
        };
        assert!(
            (point.f1 - recomputed).abs() <= F1_TOLERANCE,
            "F1 at threshold {} within {F1_TOLERANCE}",
            point.threshold
        );
    }
    println!(
        "PASS criterion 9: tuning picks {} (F1 {:.4}), matching brute force",
        result.best_threshold, result.best_f1
    );
}

#[test]
fn criterion_10_name_regex_contract() {
    let names = [
        "WorkerLimit",
        "MaxConnections",
        "VirtualDocumentRoot",
        "LimitRequestFields",
        "AddDefaultCharset",
        "AcceptPathInfo",
        "AllowEncodedSlashes",
        "disable_symlinks",
        "default_tablespace",
        "log_directory",
        "KeepAliveTimeout",
        "ServerTokens",
        "proxy_read_timeout",
        "client_max_body_size",
        "enable_profiling",
        "olcIdleTimeout",
        "slowOpSampleRate",
        "DocumentRoot",
        "ErrorLogFormat",
        "listen_backlog",
    ];
    assert_eq!(names.len(), 20);
    let mut accepted = 0;
    for name in names {
        let option = ConfigOption::new(name).unwrap();
        let words = plain_words(name);
        assert!(words.len() >= 2, "{name} splits into at least two words");
        for sep in [" ", ".", "_", "-"] {
            let variant = words.join(sep);
            assert!(option.matches_span(&variant), "{name} matches {variant:?}");
            accepted += 1;
        }
        assert!(
            option.matches_span(name),
            "{name} matches its verbatim form"
        );
        accepted += 1;
    }

    let near_misses = [
        ("WorkerLimit", "worker limits"),
        ("WorkerLimit", "limit worker"),
        ("MaxConnections", "max connection"),
        ("VirtualDocumentRoot", "virtual document"),
        ("LimitRequestFields", "limit request field"),
        ("AddDefaultCharset", "add default charsets"),
        ("AcceptPathInfo", "accept path information"),
        ("AllowEncodedSlashes", "allow slashes"),
        ("disable_symlinks", "disable symlink"),
        ("default_tablespace", "default table space"),
        ("log_directory", "log dir"),
        ("KeepAliveTimeout", "keep alive time"),
        ("ServerTokens", "server token"),
        ("proxy_read_timeout", "proxy write timeout"),
        ("client_max_body_size", "client max body"),
        ("enable_profiling", "enable profile"),
        ("olcIdleTimeout", "olc idle time out"),
        ("slowOpSampleRate", "slow op sample rates"),
        ("DocumentRoot", "documents root"),
        ("listen_backlog", "listen back log"),
    ];
    assert_eq!(near_misses.len(), 20);
    for (name, miss) in near_misses {
        let option = ConfigOption::new(name).unwrap();
        assert!(!option.matches_span(miss), "{name} rejects {miss:?}");
    }
    println!("PASS criterion 10: 20 names x {accepted} accepted variants, 20 near-misses rejected");
}

/// Splits an option name into its words without stemming: delimiter
/// boundaries plus lower-to-upper camelCase boundaries.
fn plain_words(name: &str) -> Vec<String> {
    let mut words = Vec::new();
    let mut current = String::new();
    let mut prev_lower = false;
    for ch in name.chars() {
        if matches!(ch, '_' | '-' | '.' | ' ') {
            if !current.is_empty() {
                words.push(std::mem::take(&mut current));
            }
            prev_lower = false;
            continue;
        }
        if ch.is_uppercase() && prev_lower && !current.is_empty() {
            words.push(std::mem::take(&mut current));
        }
        prev_lower = ch.is_lowercase();
        current.extend(ch.to_lowercase());
    }
    if !current.is_empty() {
        words.push(current);
    }
    words
}

fn property_config() -> Config {
    Config {
        cases: PROPERTY_CASES,
        failure_persistence: None::<Box<dyn FailurePersistence>>,
        ..Config::default()
    }
}

fn check_property<S: Strategy>(
    name: &str,
    strategy: S,
    check: impl Fn(S::Value) -> Result<(), TestCaseError>,
) {
    let mut runner = TestRunner::new(property_config());
    runner
        .run(&strategy, check)
        .unwrap_or_else(|e| panic!("property {name} failed: {e}"));
    println!("PASS {name}: {PROPERTY_CASES} randomized cases");
}

const ANCESTOR_OPTIONS: [&str; 4] = ["alpha_mode", "beta_level", "gamma_path", "delta_size"];

fn naive_clean_ancestor(
    tree: &SyntaxTree,
    literal: NodeId,
    lexicon: &OptionLexicon,
    option: usize,
) -> Option<NodeId> {
    let top = structure_top(tree, literal);
    let mut chain = Vec::new();
    for anc in tree.ancestors(literal) {
        chain.push(anc);
        if anc == top {
            break;
        }
    }
    chain.into_iter().rev().find(|&anc| {
        tree.descendants(anc).all(|n| {
            tree.kind(n) != NodeKind::StringLiteral
                || tree
                    .literal(n)
                    .and_then(|text| lexicon.index_of(text))
                    .is_none_or(|other| other == option)
        })
    })
}

#[test]
fn criterion_11_property_minimal_ancestor_matches_naive_search() {
    let node_spec = (any::<u16>(), any::<u8>());
    let strategy = proptest::collection::vec(node_spec, 1..50);
    check_property(
        "criterion 11 (minimal ancestor = naive search)",
        strategy,
        |layout| {
            let lexicon = OptionLexicon::from_names(&ANCESTOR_OPTIONS).unwrap();
            let mut builder = TreeBuilder::new("prop.c");
            let mut ids = vec![builder.root()];
            for &(parent_seed, kind_sel) in &layout[1..] {
                let parent = ids[parent_seed as usize % ids.len()];
                let id = match kind_sel % 8 {
                    0..=2 => builder.add(parent, NodeKind::Other, "x"),
                    3 => builder.add(parent, NodeKind::InitializerList, "{}"),
                    4 => builder.add(parent, NodeKind::CallExpr, "f()"),
                    5 => builder.add(parent, NodeKind::StringLiteral, "noise text"),
                    k => builder.add(
                        parent,
                        NodeKind::StringLiteral,
                        ANCESTOR_OPTIONS[k as usize % ANCESTOR_OPTIONS.len()],
                    ),
                };
                ids.push(id);
            }
            let (parent_seed, option_sel) = layout[0];
            let subject_parent = ids[parent_seed as usize % ids.len()];
            let option = option_sel as usize % ANCESTOR_OPTIONS.len();
            let subject = builder.add(
                subject_parent,
                NodeKind::StringLiteral,
                ANCESTOR_OPTIONS[option],
            );
            let tree = builder.finish();

            let got = minimal_clean_ancestor(&tree, subject, &lexicon, option);
            let expected = naive_clean_ancestor(&tree, subject, &lexicon, option);
            prop_assert_eq!(got, expected);
            Ok(())
        },
    );
}

const VOCAB: [&str; 12] = [
    "alpha", "beta", "gamma", "delta", "omega", "sigma", "node", "path", "disk", "pool", "queue",
    "shard",
];

fn vocab_lexicon(option_specs: &[Vec<usize>]) -> Option<OptionLexicon> {
    let names: BTreeSet<String> = option_specs
        .iter()
        .map(|idxs| {
            let mut words: Vec<&str> = idxs.iter().map(|&i| VOCAB[i % VOCAB.len()]).collect();
            words.dedup();
            words.join("_")
        })
        .collect();
    let names: Vec<String> = names.into_iter().collect();
    OptionLexicon::from_names(&names)
        .ok()
        .filter(|l| !l.is_empty())
}

fn stems(idxs: &[usize]) -> Vec<String> {
    let joined: Vec<&str> = idxs.iter().map(|&i| VOCAB[i % VOCAB.len()]).collect();
    segment_identifier(&joined.join("_"))
}

#[test]
fn criterion_12_property_similarity_axioms() {
    let option_specs =
        proptest::collection::vec(proptest::collection::vec(0usize..VOCAB.len(), 1..=3), 2..6);
    let word_set = proptest::collection::vec(0usize..VOCAB.len(), 0..=4);
    let strategy = (
        option_specs,
        word_set.clone(),
        word_set,
        0usize..VOCAB.len(),
    );
    check_property(
        "criterion 12 (similarity symmetry, bounds, monotonicity; idf ordering)",
        strategy,
        |(specs, a_idx, b_idx, shared)| {
            let Some(lexicon) = vocab_lexicon(&specs) else {
                return Ok(());
            };
            let idf = build_idf(&lexicon).unwrap();
            let a = stems(&a_idx);
            let b = stems(&b_idx);

            let ab = idf.similarity(&a, &b);
            let ba = idf.similarity(&b, &a);
            prop_assert_eq!(ab, ba, "symmetry");
            prop_assert!((0.0..=1.0).contains(&ab), "bounds: {}", ab);

            let shared_stem = stems(&[shared]);
            let mut a2 = a.clone();
            let mut b2 = b.clone();
            a2.extend(shared_stem.iter().cloned());
            b2.extend(shared_stem.iter().cloned());
            let grown = idf.similarity(&a2, &b2);
            prop_assert!(
                grown + 1e-9 >= ab,
                "shared word never lowers similarity: {} -> {}",
                ab,
                grown
            );

            for i in 0..VOCAB.len() {
                for j in 0..VOCAB.len() {
                    let (wi, wj) = (&stems(&[i])[0], &stems(&[j])[0]);
                    let (di, dj) = (
                        lexicon.document_frequency(wi),
                        lexicon.document_frequency(wj),
                    );
                    if di > 0 && dj > 0 && di < dj {
                        prop_assert!(
                            idf.weight(wi) + 1e-12 >= idf.weight(wj),
                            "rarer word {} outweighs common word {}",
                            wi,
                            wj
                        );
                    }
                }
            }
            Ok(())
        },
    );
}

#[test]
fn criterion_13_property_threshold_monotonicity() {
    let option_specs =
        proptest::collection::vec(proptest::collection::vec(0usize..VOCAB.len(), 1..=3), 2..6);
    let var_specs =
        proptest::collection::vec(proptest::collection::vec(0usize..VOCAB.len(), 1..=3), 1..4);
    let strategy = (option_specs, var_specs, 0.0f64..=1.0, 0.0f64..=1.0);
    check_property(
        "criterion 13 (lower threshold relates a superset)",
        strategy,
        |(specs, vars, t1, t2)| {
            let Some(lexicon) = vocab_lexicon(&specs) else {
                return Ok(());
            };
            let idf = build_idf(&lexicon).unwrap();
            let empty_corpus = SourceCorpus {
                root: PathBuf::from("."),
                units: Vec::new(),
                failures: Vec::new(),
            };
            let bindings =
                BindingSet::build(&empty_corpus, &lexicon, &BTreeSet::new(), &BTreeSet::new());
            let here = SourceLocation {
                file: PathBuf::from("p.c"),
                line: 1,
                column: 1,
            };
            let slice = Slice {
                seed: TreeBuilder::new("p.c").root(),
                statements: Vec::new(),
                refs: vars
                    .iter()
                    .map(|idxs| {
                        let name: Vec<&str> =
                            idxs.iter().map(|&i| VOCAB[i % VOCAB.len()]).collect();
                        let name = name.join("_");
                        SliceRef {
                            key: name.clone(),
                            name,
                            is_function: false,
                            location: here.clone(),
                        }
                    })
                    .collect(),
                enclosing_function: None,
            };
            let (low, high) = if t1 <= t2 { (t1, t2) } else { (t2, t1) };
            let at = |mu: f64| -> BTreeSet<usize> {
                relate_by_similarity(&slice, &lexicon, &bindings, &idf, mu)
                    .into_iter()
                    .map(|r| r.option)
                    .collect()
            };
            let wide = at(low);
            let narrow = at(high);
            prop_assert!(
                narrow.is_subset(&wide),
                "relations at {} must be a subset of relations at {}",
                high,
                low
            );
            Ok(())
        },
    );
}

const SENTENCE_POOL: [&str; 24] = [
    "the",
    "a",
    "value",
    "path",
    "must",
    "should",
    "be",
    "have",
    "not",
    "valid",
    "invalid",
    "error",
    "and",
    "or",
    "than",
    "greater",
    "0",
    "3.5",
    "'never'",
    "worker",
    "limit",
    "directory,",
    "set.",
    "fails",
];

#[test]
fn criterion_14_property_normalize_idempotent() {
    let strategy = (
        proptest::collection::vec(0usize..SENTENCE_POOL.len(), 1..12),
        proptest::option::of(0usize..3),
    );
    let option_names = ["WorkerLimit", "data_directory", "KeepAliveTimeout"];
    check_property(
        "criterion 14 (normalize is idempotent and postconditions hold)",
        strategy,
        |(word_idx, opt_sel)| {
            let errors = ErrorLexicon::default();
            let text: Vec<&str> = word_idx.iter().map(|&i| SENTENCE_POOL[i]).collect();
            let text = text.join(" ");
            let option = opt_sel.map(|i| ConfigOption::new(option_names[i]).unwrap());

            let once = normalize(pos_tag(&text), option.as_ref(), &errors);
            let twice = normalize(once.clone(), option.as_ref(), &errors);
            let shape = |ts: &[TagToken]| -> Vec<(PosTag, String, Option<Marker>)> {
                ts.iter()
                    .map(|t| (t.tag, t.word.clone(), t.marker))
                    .collect()
            };
            prop_assert_eq!(shape(&twice), shape(&once), "idempotence on {}", text);

            for t in &once {
                prop_assert!(t.tag != PosTag::DT, "determiner slipped through {}", text);
                prop_assert!(t.tag != PosTag::SYM, "symbol slipped through {}", text);
            }
            for pair in once.windows(2) {
                let same_nn = pair[0].tag == PosTag::NN
                    && pair[1].tag == PosTag::NN
                    && pair[0].marker == pair[1].marker;
                prop_assert!(!same_nn, "unmerged noun run in {}", text);
                let same_jj = pair[0].tag == PosTag::JJ && pair[1].tag == PosTag::JJ;
                prop_assert!(!same_jj, "unmerged adjective run in {}", text);
            }
            Ok(())
        },
    );
}

#[test]
fn criterion_15_property_end_to_end_determinism() {
    let name_idx = 0usize..VOCAB.len();
    let strategy = (name_idx.clone(), name_idx.clone(), name_idx, 1u32..100);
    let scratch = tempfile::TempDir::new().expect("scratch dir");
    let src = scratch.path().join("src");
    std::fs::create_dir(&src).expect("src dir");
    let options_path = scratch.path().join("options.txt");
    check_property(
        "criterion 15 (two runs are byte-identical)",
        strategy,
        move |(a, b, v, bound)| {
            let first = VOCAB[a];
            let second = VOCAB[b];
            let var = format!("{}_{}", VOCAB[v], first);
            std::fs::write(&options_path, format!("{first}_mode\n{second}_depth\n")).unwrap();
            std::fs::write(
                src.join("bind.c"),
                format!(
                    r#"
static void apply(conf *cf, const char *name, const char *value)
{{
    if (strcmp(name, "{first}_mode") == 0) {{
        cf->{first}_mode = atoi(value);
    }}
}}
"#
                ),
            )
            .unwrap();
            std::fs::write(
                src.join("use.c"),
                format!(
                    r#"
static void guard(conf *cf)
{{
    if (cf->{var} < {bound}) {{
        log_error("the {second} setting must be valid here");
    }}
}}
"#
                ),
            )
            .unwrap();
            let config = ToolConfig::default();
            let one = run(&src, &options_path, &config).unwrap();
            let two = run(&src, &options_path, &config).unwrap();
            prop_assert_eq!(one.report.to_json(), two.report.to_json());
            prop_assert_eq!(one.report.to_tsv(), two.report.to_tsv());
            Ok(())
        },
    );
}

#[test]
fn labels_file_round_trip_feeds_tuning() {
    let dir = tempfile::TempDir::new().unwrap();
    let labels = dir.path().join("labels.tsv");
    std::fs::write(
        &labels,
        "# option\tvariable\trelated\n\
         data_directory\tdata_directory_path\t1\n\
         max_connections\tdata_dir_path\t0\n",
    )
    .unwrap();
    let pairs = load_labels(&labels).unwrap();
    let lexicon =
        OptionLexicon::from_names(&["data_directory", "log_directory", "max_connections"]).unwrap();
    let result = tune_threshold(&pairs, &lexicon).unwrap();
    assert!(result.best_f1 > 0.0);
}
