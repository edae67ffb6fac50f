//! Source intake: walk a directory of C/C++ files, parse each one into the
//! arena tree, and harvest every string constant as a candidate log message.
//!
//! Parsing is per-file and failures never abort the corpus; a file that
//! cannot be read or decoded is recorded and skipped. Messages built from
//! several pieces (string concatenation calls, adjacent literals) are merged
//! before emission, but only inside function bodies: a file-scope macro call
//! is a data-table row whose literals are independent fields.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use thiserror::Error;
use walkdir::WalkDir;

use crate::assemble::{assemble, word_count, Segment};
use crate::syntax::{NodeData, NodeId, NodeKind, SourceLocation, SyntaxTree};

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("cannot read source root {path}: {source}")]
    RootDir {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

/// File name patterns scanned by default.
pub const DEFAULT_FILE_GLOBS: [&str; 4] = ["*.c", "*.h", "*.cc", "*.cpp"];

/// A file that was discovered but produced no syntax tree.
#[derive(Debug, Clone)]
pub struct FileFailure {
    pub path: PathBuf,
    pub reason: String,
}

/// All parsed translation units under one root, in lexicographic path
/// order, plus the per-file failures.
#[derive(Debug)]
pub struct SourceCorpus {
    pub root: PathBuf,
    pub units: Vec<SyntaxTree>,
    pub failures: Vec<FileFailure>,
}

impl SourceCorpus {
    /// Files discovered by the walk, parsed or not.
    pub fn discovered(&self) -> usize {
        self.units.len() + self.failures.len()
    }
}

/// Where a harvested message sits syntactically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MessageStyle {
    InLogStmt,
    InReturnStmt,
    InAssignStmt,
    InStructure,
}

impl MessageStyle {
    pub fn label(self) -> &'static str {
        match self {
            MessageStyle::InLogStmt => "log-stmt",
            MessageStyle::InReturnStmt => "return-stmt",
            MessageStyle::InAssignStmt => "assign-stmt",
            MessageStyle::InStructure => "structure",
        }
    }
}

/// One assembled candidate log message.
#[derive(Debug, Clone)]
pub struct MessageCandidate {
    /// Index into `SourceCorpus::units`.
    pub unit: usize,
    /// The first string literal of the message, inside that unit.
    pub origin: NodeId,
    pub text: String,
    pub style: MessageStyle,
    pub location: SourceLocation,
    pub enclosing_function: Option<String>,
}

#[derive(Debug, Clone)]
pub struct HarvestOptions {
    /// Candidates with fewer whitespace-separated words are dropped.
    pub min_words: usize,
    /// Exact callee names treated as logging calls, on top of the built-in
    /// substring heuristic.
    pub log_functions: BTreeSet<String>,
}

impl Default for HarvestOptions {
    fn default() -> Self {
        HarvestOptions {
            min_words: 2,
            log_functions: BTreeSet::new(),
        }
    }
}

fn language_for(path: &Path) -> tree_sitter::Language {
    match path.extension().and_then(|e| e.to_str()) {
        Some("cc" | "cpp" | "cxx" | "hpp" | "hh" | "hxx" | "C") => tree_sitter_cpp::LANGUAGE.into(),
        _ => tree_sitter_c::LANGUAGE.into(),
    }
}

/// Parses one source text. The path picks the grammar (C by default, C++
/// for the usual C++ extensions) and becomes the tree's file label.
pub fn parse_source(source: &str, path: impl Into<PathBuf>) -> Result<SyntaxTree, String> {
    let path = path.into();
    let mut parser = tree_sitter::Parser::new();
    parser
        .set_language(&language_for(&path))
        .map_err(|e| format!("grammar setup failed: {e}"))?;
    let Some(ts_tree) = parser.parse(source, None) else {
        return Err("parser produced no syntax tree".to_string());
    };
    Ok(convert(&ts_tree, source, path))
}

/// Walks `root`, parses every file whose name matches one of `globs`, and
/// returns the units in lexicographic order of their root-relative paths.
pub fn parse_corpus(root: &Path, globs: &[String]) -> Result<SourceCorpus, IngestError> {
    std::fs::read_dir(root).map_err(|source| IngestError::RootDir {
        path: root.display().to_string(),
        source,
    })?;

    let mut files: Vec<(PathBuf, PathBuf)> = Vec::new();
    let mut failures: Vec<FileFailure> = Vec::new();
    for entry in WalkDir::new(root).follow_links(false) {
        let entry = match entry {
            Ok(e) => e,
            Err(err) => {
                let path = err.path().unwrap_or(root).to_path_buf();
                failures.push(FileFailure {
                    path,
                    reason: err.to_string(),
                });
                continue;
            }
        };
        if !entry.file_type().is_file() {
            continue;
        }
        let name = entry.file_name().to_string_lossy();
        if !globs.iter().any(|g| glob_match(g, &name)) {
            continue;
        }
        let abs = entry.into_path();
        let rel = abs.strip_prefix(root).unwrap_or(&abs).to_path_buf();
        files.push((rel, abs));
    }
    files.sort_by(|a, b| a.0.cmp(&b.0));

    let mut units = Vec::new();
    for (rel, abs) in files {
        let bytes = match std::fs::read(&abs) {
            Ok(b) => b,
            Err(err) => {
                failures.push(FileFailure {
                    path: rel,
                    reason: err.to_string(),
                });
                continue;
            }
        };
        let text = match String::from_utf8(bytes) {
            Ok(t) => t,
            Err(_) => {
                failures.push(FileFailure {
                    path: rel,
                    reason: "file is not valid UTF-8".to_string(),
                });
                continue;
            }
        };
        match parse_source(&text, rel.clone()) {
            Ok(tree) => units.push(tree),
            Err(reason) => failures.push(FileFailure { path: rel, reason }),
        }
    }
    Ok(SourceCorpus {
        root: root.to_path_buf(),
        units,
        failures,
    })
}

/// Minimal `*`/`?` matcher applied to file names.
fn glob_match(pattern: &str, name: &str) -> bool {
    fn rec(p: &[char], n: &[char]) -> bool {
        match p.first() {
            None => n.is_empty(),
            Some('*') => rec(&p[1..], n) || (!n.is_empty() && rec(p, &n[1..])),
            Some('?') => !n.is_empty() && rec(&p[1..], &n[1..]),
            Some(c) => n.first() == Some(c) && rec(&p[1..], &n[1..]),
        }
    }
    let p: Vec<char> = pattern.chars().collect();
    let n: Vec<char> = name.chars().collect();
    rec(&p, &n)
}

const STMT_KINDS: [&str; 12] = [
    "expression_statement",
    "return_statement",
    "if_statement",
    "declaration",
    "while_statement",
    "for_statement",
    "do_statement",
    "switch_statement",
    "case_statement",
    "labeled_statement",
    "goto_statement",
    "break_statement",
];

fn map_kind(raw: &str) -> NodeKind {
    match raw {
        "function_definition" => NodeKind::FunctionDef,
        "call_expression" => NodeKind::CallExpr,
        "return_statement" => NodeKind::ReturnStmt,
        "assignment_expression" | "init_declarator" => NodeKind::AssignStmt,
        "if_statement" => NodeKind::IfStmt,
        "string_literal" => NodeKind::StringLiteral,
        "identifier" => NodeKind::Identifier,
        "field_expression" => NodeKind::MemberAccess,
        "initializer_list" => NodeKind::InitializerList,
        "binary_expression" => NodeKind::BinaryOp,
        _ => NodeKind::Other,
    }
}

/// Lowers a tree-sitter tree into the arena form. Children kept are the
/// named nodes plus any token that carries a field name (binary operators),
/// in document order.
fn convert(ts_tree: &tree_sitter::Tree, source: &str, path: PathBuf) -> SyntaxTree {
    let shared: Arc<str> = Arc::from(source);
    let mut nodes: Vec<NodeData> = Vec::new();
    let mut stack: Vec<(tree_sitter::Node, Option<NodeId>, Option<&'static str>)> =
        vec![(ts_tree.root_node(), None, None)];
    while let Some((n, parent, field)) = stack.pop() {
        let id = NodeId(nodes.len() as u32);
        if let Some(p) = parent {
            nodes[p.index()].children.push(id);
        }
        let raw = n.kind();
        let pos = n.start_position();
        nodes.push(NodeData {
            kind: map_kind(raw),
            raw: raw.into(),
            field: field.map(Into::into),
            parent,
            children: Vec::new(),
            start_byte: n.start_byte(),
            end_byte: n.end_byte(),
            line: pos.row as u32 + 1,
            column: pos.column as u32 + 1,
            literal: (raw == "string_literal")
                .then(|| unescape_string_literal(n, source).into_boxed_str()),
            is_stmt: STMT_KINDS.contains(&raw),
            owned_text: None,
        });
        let mut kept: Vec<(tree_sitter::Node, Option<&'static str>)> = Vec::new();
        let mut cursor = n.walk();
        if cursor.goto_first_child() {
            loop {
                let child = cursor.node();
                let child_field = cursor.field_name();
                if child.is_named() || child_field.is_some() {
                    kept.push((child, child_field));
                }
                if !cursor.goto_next_sibling() {
                    break;
                }
            }
        }
        for (child, child_field) in kept.into_iter().rev() {
            stack.push((child, Some(id), child_field));
        }
    }
    SyntaxTree::new(path, shared, nodes)
}

fn unescape_string_literal(n: tree_sitter::Node, source: &str) -> String {
    let mut out = String::new();
    let mut cursor = n.walk();
    if cursor.goto_first_child() {
        loop {
            let c = cursor.node();
            match c.kind() {
                "string_content" => out.push_str(&source[c.byte_range()]),
                "escape_sequence" => out.push_str(&unescape_sequence(&source[c.byte_range()])),
                _ => {}
            }
            if !cursor.goto_next_sibling() {
                break;
            }
        }
    }
    out
}

fn unescape_sequence(seq: &str) -> String {
    let body = seq.strip_prefix('\\').unwrap_or(seq);
    let mut chars = body.chars();
    let Some(first) = chars.next() else {
        return String::new();
    };
    match first {
        'n' => "\n".to_string(),
        't' => "\t".to_string(),
        'r' => "\r".to_string(),
        'a' => "\u{7}".to_string(),
        'b' => "\u{8}".to_string(),
        'f' => "\u{c}".to_string(),
        'v' => "\u{b}".to_string(),
        'x' => {
            let digits: String = chars.take_while(|c| c.is_ascii_hexdigit()).collect();
            u32::from_str_radix(&digits, 16)
                .ok()
                .and_then(char::from_u32)
                .map(String::from)
                .unwrap_or_default()
        }
        d @ '0'..='7' => {
            let mut digits = String::from(d);
            digits.extend(chars.take_while(|c| ('0'..='7').contains(c)));
            u32::from_str_radix(&digits, 8)
                .ok()
                .and_then(char::from_u32)
                .map(String::from)
                .unwrap_or_default()
        }
        other => other.to_string(),
    }
}

/// True for the node shapes that carry message text directly.
fn is_stringish(tree: &SyntaxTree, id: NodeId) -> bool {
    tree.kind(id) == NodeKind::StringLiteral || tree.raw(id) == "concatenated_string"
}

/// Message pieces of a string-ish node: a literal is itself, adjacent
/// literals join in order, and any non-literal part (a token pasted in by a
/// macro) stands in as a variable.
fn literal_segments(tree: &SyntaxTree, id: NodeId) -> Option<Vec<Segment>> {
    match tree.kind(id) {
        NodeKind::StringLiteral => Some(vec![Segment::Literal(
            tree.literal(id).unwrap_or_default().to_string(),
        )]),
        _ if tree.raw(id) == "concatenated_string" => Some(
            tree.children(id)
                .iter()
                .map(|&c| match tree.kind(c) {
                    NodeKind::StringLiteral => {
                        Segment::Literal(tree.literal(c).unwrap_or_default().to_string())
                    }
                    _ => Segment::Variable,
                })
                .collect(),
        ),
        _ => None,
    }
}

fn origin_literal(tree: &SyntaxTree, id: NodeId) -> NodeId {
    if tree.kind(id) == NodeKind::StringLiteral {
        return id;
    }
    tree.children(id)
        .iter()
        .copied()
        .find(|&c| tree.kind(c) == NodeKind::StringLiteral)
        .unwrap_or(id)
}

fn consume_subtree(tree: &SyntaxTree, id: NodeId, consumed: &mut [bool]) {
    for d in tree.descendants(id) {
        consumed[d.index()] = true;
    }
}

/// Callee names hinting at a logging routine when no exact list entry hits.
const LOG_NAME_HINTS: [&str; 5] = ["log", "err", "warn", "debug", "print"];

fn callee_name(tree: &SyntaxTree, call: NodeId) -> Option<String> {
    let callee = tree.child_by_field(call, "function")?;
    let text = tree.text(callee);
    let tail = text.rsplit(['.', '>', ':']).next().unwrap_or(text).trim();
    Some(tail.to_string())
}

fn is_log_call(tree: &SyntaxTree, call: NodeId, log_functions: &BTreeSet<String>) -> bool {
    let Some(name) = callee_name(tree, call) else {
        return false;
    };
    if log_functions.contains(&name) {
        return true;
    }
    let lower = name.to_lowercase();
    LOG_NAME_HINTS.iter().any(|h| lower.contains(h))
}

/// Nearest enclosing context decides the style. Outside any function the
/// message is a structure field when an initializer list encloses it;
/// inside a function the first logging call, return statement or assignment
/// on the ancestor chain wins, defaulting to a plain log statement.
pub fn classify_style(
    tree: &SyntaxTree,
    origin: NodeId,
    log_functions: &BTreeSet<String>,
) -> MessageStyle {
    if tree.enclosing_function(origin).is_none() {
        let in_init = tree
            .ancestors(origin)
            .any(|a| tree.kind(a) == NodeKind::InitializerList);
        return if in_init {
            MessageStyle::InStructure
        } else {
            MessageStyle::InLogStmt
        };
    }
    for anc in tree.ancestors(origin) {
        match tree.kind(anc) {
            NodeKind::CallExpr if is_log_call(tree, anc, log_functions) => {
                return MessageStyle::InLogStmt;
            }
            NodeKind::ReturnStmt => return MessageStyle::InReturnStmt,
            NodeKind::AssignStmt => return MessageStyle::InAssignStmt,
            NodeKind::FunctionDef => return MessageStyle::InLogStmt,
            _ => {}
        }
    }
    MessageStyle::InLogStmt
}

/// Extracts every candidate message from the corpus, sorted by source
/// position. Each string literal feeds at most one candidate: a
/// concatenation call inside a function merges its literal span into a
/// single message, everything else stands alone.
pub fn harvest_candidates(
    corpus: &SourceCorpus,
    options: &HarvestOptions,
) -> Vec<MessageCandidate> {
    let mut out = Vec::new();
    for (unit, tree) in corpus.units.iter().enumerate() {
        if tree.is_empty() {
            continue;
        }
        let mut consumed = vec![false; tree.len()];
        for node in tree.descendants(tree.root()) {
            if consumed[node.index()] {
                continue;
            }
            if tree.kind(node) == NodeKind::CallExpr && tree.enclosing_function(node).is_some() {
                harvest_call(tree, node, unit, options, &mut consumed, &mut out);
            } else if is_stringish(tree, node) {
                let segments = literal_segments(tree, node).expect("string-ish node");
                consume_subtree(tree, node, &mut consumed);
                emit(
                    tree,
                    unit,
                    origin_literal(tree, node),
                    &segments,
                    options,
                    &mut out,
                );
            }
        }
    }
    out.sort_by(|a, b| {
        (&a.location.file, a.location.line, a.location.column).cmp(&(
            &b.location.file,
            b.location.line,
            b.location.column,
        ))
    });
    out
}

fn harvest_call(
    tree: &SyntaxTree,
    call: NodeId,
    unit: usize,
    options: &HarvestOptions,
    consumed: &mut [bool],
    out: &mut Vec<MessageCandidate>,
) {
    let Some(arg_list) = tree.child_by_field(call, "arguments") else {
        return;
    };
    let args: Vec<NodeId> = tree.children(arg_list).to_vec();
    let string_pos: Vec<usize> = args
        .iter()
        .enumerate()
        .filter(|(_, &a)| is_stringish(tree, a))
        .map(|(i, _)| i)
        .collect();
    match string_pos.len() {
        0 => {}
        1 => {
            let arg = args[string_pos[0]];
            let segments = literal_segments(tree, arg).expect("string-ish arg");
            consume_subtree(tree, arg, consumed);
            emit(
                tree,
                unit,
                origin_literal(tree, arg),
                &segments,
                options,
                out,
            );
        }
        _ => {
            let first = string_pos[0];
            let last = *string_pos.last().expect("non-empty");
            let mut segments = Vec::new();
            for &arg in &args[first..=last] {
                match literal_segments(tree, arg) {
                    Some(mut segs) => segments.append(&mut segs),
                    None => segments.push(Segment::Variable),
                }
                consume_subtree(tree, arg, consumed);
            }
            emit(
                tree,
                unit,
                origin_literal(tree, args[first]),
                &segments,
                options,
                out,
            );
        }
    }
}

fn emit(
    tree: &SyntaxTree,
    unit: usize,
    origin: NodeId,
    segments: &[Segment],
    options: &HarvestOptions,
    out: &mut Vec<MessageCandidate>,
) {
    let text = assemble(segments);
    if text.is_empty() || word_count(&text) < options.min_words {
        return;
    }
    let style = classify_style(tree, origin, &options.log_functions);
    let enclosing_function = tree
        .enclosing_function(origin)
        .and_then(|f| tree.function_name(f))
        .map(str::to_string);
    out.push(MessageCandidate {
        unit,
        origin,
        text,
        style,
        location: tree.location(origin),
        enclosing_function,
    });
}
