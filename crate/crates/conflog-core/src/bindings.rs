//! Configuration bindings: which program variables and functions stand for
//! which option. Three interface styles feed the set.
//!
//! Structure: an option name spelled as a literal inside a file-scope table
//! claims the largest enclosing subtree that touches no other option's name,
//! and the variables/functions in that subtree bind to the option.
//! Container: a known getter called with the option name binds the variable
//! the result is assigned to. Comparison: an equality check against the
//! option name binds the assignment targets of the short guarded block.

use std::collections::{BTreeSet, HashMap};

use crate::lexicon::OptionLexicon;
use crate::syntax::{NodeId, NodeKind, SourceLocation, SyntaxTree};
use crate::SourceCorpus;

/// Which interface style produced a binding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum BindingProvenance {
    StructureInterface,
    ContainerInterface,
    ComparisonInterface,
}

/// Whether a bound name is a variable or a function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum BindingRole {
    Variable,
    Function,
}

/// One name bound to one option.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundName {
    /// Index into the lexicon's option list.
    pub option: usize,
    pub role: BindingRole,
    /// The name as written at the binding site, e.g. `cf->workers`.
    pub spelling: String,
    /// Identity used for matching: member path without its base for
    /// variables, the plain name for functions.
    pub key: String,
    pub provenance: BindingProvenance,
    pub location: SourceLocation,
}

/// All bindings over a corpus, with lookup maps by key.
#[derive(Debug, Default)]
pub struct BindingSet {
    pub entries: Vec<BoundName>,
    by_variable_key: HashMap<String, Vec<usize>>,
    by_function_name: HashMap<String, Vec<usize>>,
    options_with_variables: BTreeSet<usize>,
}

/// Names treated as string-comparison functions when the user supplies none.
pub const DEFAULT_COMPARISON_FNS: [&str; 4] = ["strcmp", "strcasecmp", "strncmp", "strncasecmp"];

/// Guarded blocks longer than this never produce comparison bindings.
const MAX_GUARDED_STATEMENTS: usize = 3;

impl BindingSet {
    pub fn build(
        corpus: &SourceCorpus,
        lexicon: &OptionLexicon,
        getter_names: &BTreeSet<String>,
        comparison_fns: &BTreeSet<String>,
    ) -> BindingSet {
        let mut entries = Vec::new();
        entries.extend(collect_structure_bindings(corpus, lexicon));
        entries.extend(collect_container_bindings(corpus, lexicon, getter_names));
        entries.extend(collect_comparison_bindings(corpus, lexicon, comparison_fns));
        entries.sort_by(|a, b| {
            (
                a.option,
                &a.location.file,
                a.location.line,
                a.location.column,
                &a.key,
            )
                .cmp(&(
                    b.option,
                    &b.location.file,
                    b.location.line,
                    b.location.column,
                    &b.key,
                ))
        });
        entries.dedup_by(|a, b| {
            a.option == b.option && a.role == b.role && a.key == b.key && a.location == b.location
        });

        let mut set = BindingSet {
            entries,
            ..BindingSet::default()
        };
        for (i, entry) in set.entries.iter().enumerate() {
            match entry.role {
                BindingRole::Variable => {
                    set.by_variable_key
                        .entry(entry.key.clone())
                        .or_default()
                        .push(i);
                    set.options_with_variables.insert(entry.option);
                }
                BindingRole::Function => {
                    set.by_function_name
                        .entry(entry.key.clone())
                        .or_default()
                        .push(i);
                }
            }
        }
        set
    }

    /// Entry indices whose variable key equals `key`.
    pub fn variable_matches(&self, key: &str) -> &[usize] {
        self.by_variable_key
            .get(key)
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    /// Entry indices whose function name equals `name`.
    pub fn function_matches(&self, name: &str) -> &[usize] {
        self.by_function_name
            .get(name)
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    /// True when at least one variable is bound to the option. Options with
    /// a bound variable never enter the similarity fallback.
    pub fn option_has_variables(&self, option: usize) -> bool {
        self.options_with_variables.contains(&option)
    }
}

/// Identity of a variable spelling: a member chain keeps the member path
/// and drops the base object, so `cf->workers` and `conf->workers` both
/// key as `workers`, while `r->connection->log` keys as `connection.log`.
pub fn variable_key(spelling: &str) -> String {
    let trimmed = spelling
        .trim()
        .trim_start_matches(['&', '*', '('])
        .trim_end_matches(')');
    let segments: Vec<&str> = trimmed
        .split("->")
        .flat_map(|s| s.split('.'))
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect();
    match segments.len() {
        0 => trimmed.to_string(),
        1 => segments[0].to_string(),
        _ => segments[1..].join("."),
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

fn option_of_literal(tree: &SyntaxTree, node: NodeId, lexicon: &OptionLexicon) -> Option<usize> {
    if tree.kind(node) != NodeKind::StringLiteral {
        return None;
    }
    lexicon.index_of(tree.literal(node)?)
}

/// Top of the structure expression a literal sits in: the outermost
/// enclosing initializer or call chain, stopping at the first ancestor that
/// is neither.
pub fn structure_top(tree: &SyntaxTree, literal: NodeId) -> NodeId {
    let mut top = literal;
    for anc in tree.ancestors(literal) {
        let pass_through = matches!(
            tree.kind(anc),
            NodeKind::InitializerList | NodeKind::CallExpr
        ) || matches!(
            tree.raw(anc),
            "argument_list" | "initializer_pair" | "concatenated_string"
        );
        if !pass_through {
            break;
        }
        top = anc;
    }
    top
}

/// The highest ancestor of `literal`, bounded by [`structure_top`], whose
/// subtree contains no other option's name literal. Returns None when even
/// the immediate parent sees another option (two names sharing every
/// ancestor cannot be separated).
pub fn minimal_clean_ancestor(
    tree: &SyntaxTree,
    literal: NodeId,
    lexicon: &OptionLexicon,
    option: usize,
) -> Option<NodeId> {
    let top = structure_top(tree, literal);
    let mut best = None;
    for anc in tree.ancestors(literal) {
        let dirty = tree
            .descendants(anc)
            .any(|n| option_of_literal(tree, n, lexicon).is_some_and(|o| o != option));
        if dirty {
            break;
        }
        best = Some(anc);
        if anc == top {
            break;
        }
    }
    best
}

/// True for the i18n wrapper shape `fn("text")`: a call with exactly one
/// argument that is a string literal marks text for translation and its
/// callee is not a configuration function.
fn is_wrapped_literal_call(tree: &SyntaxTree, call: NodeId) -> bool {
    let Some(arg_list) = tree.child_by_field(call, "arguments") else {
        return false;
    };
    let args = tree.children(arg_list);
    args.len() == 1 && tree.kind(args[0]) == NodeKind::StringLiteral
}

pub fn collect_structure_bindings(
    corpus: &SourceCorpus,
    lexicon: &OptionLexicon,
) -> Vec<BoundName> {
    let mut out = Vec::new();
    for tree in &corpus.units {
        if tree.is_empty() {
            continue;
        }
        for node in tree.descendants(tree.root()) {
            let Some(option) = option_of_literal(tree, node, lexicon) else {
                continue;
            };
            if tree.enclosing_function(node).is_some() {
                continue;
            }
            let in_structure = tree
                .ancestors(node)
                .any(|a| matches!(tree.kind(a), NodeKind::InitializerList | NodeKind::CallExpr));
            if !in_structure {
                continue;
            }
            match minimal_clean_ancestor(tree, node, lexicon, option) {
                Some(subtree) => collect_structure_elements(tree, subtree, node, option, &mut out),
                None => log::debug!(
                    "no separating subtree for option {:?} at {}",
                    lexicon.get(option).raw_name,
                    tree.location(node)
                ),
            }
        }
    }
    out
}

/// Walks the claimed subtree and classifies its leaves. Outermost member
/// expressions win (their parts are claimed), address-of operands are
/// variables, callees and lowercase bare identifiers are functions.
fn collect_structure_elements(
    tree: &SyntaxTree,
    subtree: NodeId,
    option_literal: NodeId,
    option: usize,
    out: &mut Vec<BoundName>,
) {
    let mut claimed: BTreeSet<NodeId> = BTreeSet::new();
    let claim = |tree: &SyntaxTree, id: NodeId, claimed: &mut BTreeSet<NodeId>| {
        for d in tree.descendants(id) {
            claimed.insert(d);
        }
    };
    let push = |role: BindingRole, spelling: &str, at: NodeId, out: &mut Vec<BoundName>| {
        let key = match role {
            BindingRole::Variable => variable_key(spelling),
            BindingRole::Function => spelling.to_string(),
        };
        out.push(BoundName {
            option,
            role,
            spelling: spelling.to_string(),
            key,
            provenance: BindingProvenance::StructureInterface,
            location: tree.location(at),
        });
    };

    for n in tree.descendants(subtree) {
        if claimed.contains(&n) || n == option_literal {
            continue;
        }
        match tree.kind(n) {
            NodeKind::CallExpr => {
                let Some(callee) = tree.child_by_field(n, "function") else {
                    continue;
                };
                let name = tree.text(callee).trim().to_string();
                claim(tree, callee, &mut claimed);
                if !is_caps_constant(&name)
                    && has_lowercase(&name)
                    && !is_wrapped_literal_call(tree, n)
                {
                    push(BindingRole::Function, &name, callee, out);
                }
            }
            NodeKind::MemberAccess => {
                push(BindingRole::Variable, tree.text(n).trim(), n, out);
                claim(tree, n, &mut claimed);
            }
            NodeKind::Identifier => {
                let name = tree.text(n).trim().to_string();
                claimed.insert(n);
                if is_caps_constant(&name) || !has_lowercase(&name) {
                    continue;
                }
                if address_of_operand(tree, n) {
                    push(BindingRole::Variable, &name, n, out);
                } else {
                    push(BindingRole::Function, &name, n, out);
                }
            }
            _ if tree.raw(n) == "pointer_expression" => {
                let operator = tree
                    .child_by_field(n, "operator")
                    .map(|op| tree.text(op))
                    .unwrap_or("");
                if operator == "&" {
                    if let Some(arg) = tree.child_by_field(n, "argument") {
                        push(BindingRole::Variable, tree.text(arg).trim(), arg, out);
                    }
                    claim(tree, n, &mut claimed);
                }
            }
            _ => {}
        }
    }
}

fn address_of_operand(tree: &SyntaxTree, id: NodeId) -> bool {
    tree.parent(id).is_some_and(|p| {
        tree.raw(p) == "pointer_expression"
            && tree.child_by_field(p, "operator").map(|op| tree.text(op)) == Some("&")
    })
}

pub fn collect_container_bindings(
    corpus: &SourceCorpus,
    lexicon: &OptionLexicon,
    getter_names: &BTreeSet<String>,
) -> Vec<BoundName> {
    let mut out = Vec::new();
    if getter_names.is_empty() {
        return out;
    }
    for tree in &corpus.units {
        if tree.is_empty() {
            continue;
        }
        for node in tree.descendants(tree.root()) {
            if tree.kind(node) != NodeKind::CallExpr {
                continue;
            }
            let callee = tree
                .child_by_field(node, "function")
                .map(|c| tree.text(c).trim().to_string())
                .unwrap_or_default();
            if !getter_names.contains(&callee) {
                continue;
            }
            let Some(option) = call_option_argument(tree, node, lexicon) else {
                continue;
            };
            let Some(lhs) = assignment_target(tree, node) else {
                continue;
            };
            let spelling = tree
                .text(lhs)
                .trim()
                .trim_start_matches(['*', '&'])
                .to_string();
            out.push(BoundName {
                option,
                role: BindingRole::Variable,
                key: variable_key(&spelling),
                spelling,
                provenance: BindingProvenance::ContainerInterface,
                location: tree.location(lhs),
            });
        }
    }
    out
}

/// First direct argument that spells an option name.
fn call_option_argument(tree: &SyntaxTree, call: NodeId, lexicon: &OptionLexicon) -> Option<usize> {
    let arg_list = tree.child_by_field(call, "arguments")?;
    tree.children(arg_list)
        .iter()
        .find_map(|&a| option_of_literal(tree, a, lexicon))
}

/// The left-hand side when `call` is exactly the value of an assignment or
/// an initialized declaration; None for bare or nested uses.
fn assignment_target(tree: &SyntaxTree, call: NodeId) -> Option<NodeId> {
    let parent = tree.parent(call)?;
    if tree.kind(parent) != NodeKind::AssignStmt {
        return None;
    }
    match tree.raw(parent) {
        "assignment_expression" => (tree.child_by_field(parent, "right") == Some(call))
            .then(|| tree.child_by_field(parent, "left"))
            .flatten(),
        "init_declarator" => (tree.child_by_field(parent, "value") == Some(call))
            .then(|| tree.child_by_field(parent, "declarator"))
            .flatten(),
        _ => None,
    }
}

pub fn collect_comparison_bindings(
    corpus: &SourceCorpus,
    lexicon: &OptionLexicon,
    comparison_fns: &BTreeSet<String>,
) -> Vec<BoundName> {
    let mut out = Vec::new();
    for tree in &corpus.units {
        if tree.is_empty() {
            continue;
        }
        for node in tree.descendants(tree.root()) {
            if tree.kind(node) != NodeKind::IfStmt {
                continue;
            }
            let Some(condition) = tree.child_by_field(node, "condition") else {
                continue;
            };
            let mut options: Vec<usize> = Vec::new();
            for n in tree.descendants(condition) {
                if let Some(opt) = compared_option(tree, n, lexicon, comparison_fns) {
                    if !options.contains(&opt) {
                        options.push(opt);
                    }
                }
            }
            if options.is_empty() {
                continue;
            }
            let Some(consequence) = tree.child_by_field(node, "consequence") else {
                continue;
            };
            let stmts = direct_statements(tree, consequence);
            if stmts.len() > MAX_GUARDED_STATEMENTS {
                continue;
            }
            for stmt in stmts {
                for lhs in assignment_lhs_of(tree, stmt) {
                    let spelling = tree
                        .text(lhs)
                        .trim()
                        .trim_start_matches(['*', '&'])
                        .to_string();
                    for &option in &options {
                        out.push(BoundName {
                            option,
                            role: BindingRole::Variable,
                            key: variable_key(&spelling),
                            spelling: spelling.clone(),
                            provenance: BindingProvenance::ComparisonInterface,
                            location: tree.location(lhs),
                        });
                    }
                }
            }
        }
    }
    out
}

/// An option compared at `node`: either a comparison-function call with the
/// option name as an argument, or an equality operator against the name.
fn compared_option(
    tree: &SyntaxTree,
    node: NodeId,
    lexicon: &OptionLexicon,
    comparison_fns: &BTreeSet<String>,
) -> Option<usize> {
    match tree.kind(node) {
        NodeKind::CallExpr => {
            let callee = tree.child_by_field(node, "function")?;
            if !comparison_fns.contains(tree.text(callee).trim()) {
                return None;
            }
            call_option_argument(tree, node, lexicon)
        }
        NodeKind::BinaryOp => {
            let op = tree
                .child_by_field(node, "operator")
                .map(|o| tree.text(o))?;
            if op != "==" && op != "!=" {
                return None;
            }
            let left = tree.child_by_field(node, "left")?;
            let right = tree.child_by_field(node, "right")?;
            option_of_literal(tree, left, lexicon)
                .or_else(|| option_of_literal(tree, right, lexicon))
        }
        _ => None,
    }
}

/// The statements directly inside a branch: the children of a compound
/// block, or the single statement itself.
fn direct_statements(tree: &SyntaxTree, branch: NodeId) -> Vec<NodeId> {
    if tree.raw(branch) == "compound_statement" {
        tree.children(branch)
            .iter()
            .copied()
            .filter(|&c| tree.is_stmt(c) || tree.raw(c) == "compound_statement")
            .collect()
    } else {
        vec![branch]
    }
}

/// Left-hand sides assigned directly by one statement.
fn assignment_lhs_of(tree: &SyntaxTree, stmt: NodeId) -> Vec<NodeId> {
    let mut out = Vec::new();
    match tree.raw(stmt) {
        "expression_statement" => {
            for &c in tree.children(stmt) {
                if tree.raw(c) == "assignment_expression" {
                    if let Some(lhs) = tree.child_by_field(c, "left") {
                        out.push(lhs);
                    }
                }
            }
        }
        "declaration" => {
            for &c in tree.children(stmt) {
                if tree.raw(c) == "init_declarator" {
                    if let Some(lhs) = tree.child_by_field(c, "declarator") {
                        out.push(lhs);
                    }
                }
            }
        }
        _ => {}
    }
    out
}
