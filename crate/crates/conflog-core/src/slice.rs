//! Backward slicing from a message's home statement.
//!
//! The slice is intra-procedural and purely syntactic: names read by the
//! seed statement, names in every condition controlling it, and the
//! right-hand sides feeding any sliced variable, gathered to a fixed point.
//! Called functions appear by name but are not entered; the enclosing
//! function's own name is appended last, since a constraint message often
//! lives directly inside the option's handler.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::bindings::variable_key;
use crate::ingest::MessageCandidate;
use crate::syntax::{NodeId, NodeKind, SourceLocation, SyntaxTree};
use crate::SourceCorpus;

#[derive(Debug, Error)]
pub enum SliceError {
    #[error("message at {0} has no enclosing function; structure relation applies instead")]
    StructureContext(SourceLocation),
}

/// One name the slice reached.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SliceRef {
    /// Spelling at the reference site, e.g. `cmd->pool`.
    pub name: String,
    /// Matching identity: member path for variables, plain name for
    /// functions.
    pub key: String,
    pub is_function: bool,
    pub location: SourceLocation,
}

/// Ordered result of one backward slice.
#[derive(Debug, Clone)]
pub struct Slice {
    /// The statement the message lives in; first element of `statements`.
    pub seed: NodeId,
    pub statements: Vec<NodeId>,
    /// Every reference in discovery order, nearest dependency first.
    pub refs: Vec<SliceRef>,
    pub enclosing_function: Option<String>,
}

impl Slice {
    pub fn variables(&self) -> impl Iterator<Item = &SliceRef> {
        self.refs.iter().filter(|r| !r.is_function)
    }

    pub fn functions(&self) -> impl Iterator<Item = &SliceRef> {
        self.refs.iter().filter(|r| r.is_function)
    }
}

/// Computes the backward slice for a candidate inside a function.
pub fn backward_slice(
    corpus: &SourceCorpus,
    candidate: &MessageCandidate,
) -> Result<Slice, SliceError> {
    let tree = &corpus.units[candidate.unit];
    let Some(function) = tree.enclosing_function(candidate.origin) else {
        return Err(SliceError::StructureContext(candidate.location.clone()));
    };
    let seed = tree
        .ancestors(candidate.origin)
        .find(|&a| tree.is_stmt(a))
        .unwrap_or(candidate.origin);

    let mut refs: Vec<SliceRef> = Vec::new();
    let mut seen: BTreeSet<(bool, String)> = BTreeSet::new();
    let mut statements = vec![seed];

    collect_refs(tree, seed, &mut refs, &mut seen);
    for cond_owner in controlling_statements(tree, seed, function) {
        if let Some(cond) = tree.child_by_field(cond_owner, "condition") {
            statements.push(cond_owner);
            collect_refs(tree, cond, &mut refs, &mut seen);
        }
    }
    data_fixpoint(tree, function, &mut refs, &mut seen, &mut statements);

    if let Some(name) = tree.function_name(function) {
        push_ref(
            &mut refs,
            &mut seen,
            SliceRef {
                name: name.to_string(),
                key: name.to_string(),
                is_function: true,
                location: tree.location(function),
            },
        );
    }
    Ok(Slice {
        seed,
        statements,
        refs,
        enclosing_function: tree.function_name(function).map(str::to_string),
    })
}

/// Condition-bearing ancestors of `from`, innermost first, stopping at the
/// function boundary.
fn controlling_statements(tree: &SyntaxTree, from: NodeId, function: NodeId) -> Vec<NodeId> {
    let mut out = Vec::new();
    for anc in tree.ancestors(from) {
        if anc == function {
            break;
        }
        if matches!(
            tree.raw(anc),
            "if_statement"
                | "while_statement"
                | "do_statement"
                | "for_statement"
                | "switch_statement"
        ) {
            out.push(anc);
        }
    }
    out
}

/// Repeatedly pulls in the right-hand sides (and their controlling
/// conditions) of any assignment whose target is already sliced, scanning
/// the function body in document order each round.
fn data_fixpoint(
    tree: &SyntaxTree,
    function: NodeId,
    refs: &mut Vec<SliceRef>,
    seen: &mut BTreeSet<(bool, String)>,
    statements: &mut Vec<NodeId>,
) {
    let Some(body) = tree.child_by_field(function, "body") else {
        return;
    };
    let mut processed: BTreeSet<NodeId> = BTreeSet::new();
    loop {
        let sliced_keys: BTreeSet<String> = refs
            .iter()
            .filter(|r| !r.is_function)
            .map(|r| r.key.clone())
            .collect();
        let mut changed = false;
        for node in tree.descendants(body) {
            if tree.kind(node) != NodeKind::AssignStmt || processed.contains(&node) {
                continue;
            }
            let (lhs, rhs) = match tree.raw(node) {
                "assignment_expression" => (
                    tree.child_by_field(node, "left"),
                    tree.child_by_field(node, "right"),
                ),
                "init_declarator" => (
                    tree.child_by_field(node, "declarator"),
                    tree.child_by_field(node, "value"),
                ),
                _ => (None, None),
            };
            let (Some(lhs), Some(rhs)) = (lhs, rhs) else {
                continue;
            };
            let lhs_key = variable_key(tree.text(lhs));
            if !sliced_keys.contains(&lhs_key) {
                continue;
            }
            processed.insert(node);
            changed = true;
            if let Some(stmt) = statement_of(tree, node) {
                statements.push(stmt);
            }
            collect_refs(tree, rhs, refs, seen);
            for cond_owner in controlling_statements(tree, node, function) {
                if let Some(cond) = tree.child_by_field(cond_owner, "condition") {
                    statements.push(cond_owner);
                    collect_refs(tree, cond, refs, seen);
                }
            }
        }
        if !changed {
            break;
        }
    }
}

fn statement_of(tree: &SyntaxTree, node: NodeId) -> Option<NodeId> {
    if tree.is_stmt(node) {
        return Some(node);
    }
    tree.ancestors(node).find(|&a| tree.is_stmt(a))
}

fn push_ref(refs: &mut Vec<SliceRef>, seen: &mut BTreeSet<(bool, String)>, r: SliceRef) {
    if seen.insert((r.is_function, r.key.clone())) {
        refs.push(r);
    }
}

/// Collects the names a subtree reads, in document order: call callees as
/// function references, outermost member expressions and plain identifiers
/// as variable references. Assignment targets, ALL_CAPS constants, nulls
/// and literals are not reads.
fn collect_refs(
    tree: &SyntaxTree,
    root: NodeId,
    refs: &mut Vec<SliceRef>,
    seen: &mut BTreeSet<(bool, String)>,
) {
    let mut skipped: BTreeSet<NodeId> = BTreeSet::new();
    for n in tree.descendants(root) {
        if skipped.contains(&n) {
            continue;
        }
        match tree.kind(n) {
            NodeKind::AssignStmt => {
                let target = match tree.raw(n) {
                    "assignment_expression" => tree.child_by_field(n, "left"),
                    "init_declarator" => tree.child_by_field(n, "declarator"),
                    _ => None,
                };
                if let Some(t) = target {
                    for d in tree.descendants(t) {
                        skipped.insert(d);
                    }
                }
            }
            NodeKind::CallExpr => {
                if let Some(callee) = tree.child_by_field(n, "function") {
                    let name = tree.text(callee).trim().to_string();
                    for d in tree.descendants(callee) {
                        skipped.insert(d);
                    }
                    if has_lowercase(&name) && !is_caps_constant(&name) {
                        push_ref(
                            refs,
                            seen,
                            SliceRef {
                                key: name.clone(),
                                name,
                                is_function: true,
                                location: tree.location(callee),
                            },
                        );
                    }
                }
            }
            NodeKind::MemberAccess => {
                let spelling = tree.text(n).trim().to_string();
                for d in tree.descendants(n) {
                    skipped.insert(d);
                }
                push_ref(
                    refs,
                    seen,
                    SliceRef {
                        key: variable_key(&spelling),
                        name: spelling,
                        is_function: false,
                        location: tree.location(n),
                    },
                );
            }
            NodeKind::Identifier => {
                skipped.insert(n);
                let name = tree.text(n).trim().to_string();
                if !has_lowercase(&name) || is_caps_constant(&name) {
                    continue;
                }
                push_ref(
                    refs,
                    seen,
                    SliceRef {
                        key: name.clone(),
                        name,
                        is_function: false,
                        location: tree.location(n),
                    },
                );
            }
            _ => {}
        }
    }
}

fn is_caps_constant(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_uppercase() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_uppercase() || c.is_ascii_digit() || c == '_')
}

fn has_lowercase(name: &str) -> bool {
    name.chars().any(|c| c.is_ascii_lowercase())
}
