//! Arena-backed syntax trees shared by the parser, the binding collectors and
//! the slicer. Nodes keep a coarse kind plus the raw grammar kind string, so
//! passes that only care about "is this a call" stay cheap while the few that
//! need grammar detail (statement classes, field names) still have them.

use std::fmt;
use std::path::PathBuf;
use std::sync::Arc;

use serde::Serialize;

/// Coarse node classification. Anything the pipeline has no opinion on maps
/// to `Other` with the raw grammar kind preserved.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NodeKind {
    FunctionDef,
    CallExpr,
    ReturnStmt,
    AssignStmt,
    IfStmt,
    StringLiteral,
    Identifier,
    MemberAccess,
    InitializerList,
    BinaryOp,
    Other,
}

/// Index of a node inside its tree's arena.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId(pub(crate) u32);

impl NodeId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// File position of a node, 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SourceLocation {
    pub file: PathBuf,
    pub line: u32,
    pub column: u32,
}

impl fmt::Display for SourceLocation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.file.display(), self.line, self.column)
    }
}

#[derive(Debug, Clone)]
pub(crate) struct NodeData {
    pub kind: NodeKind,
    pub raw: Box<str>,
    pub field: Option<Box<str>>,
    pub parent: Option<NodeId>,
    pub children: Vec<NodeId>,
    pub start_byte: usize,
    pub end_byte: usize,
    pub line: u32,
    pub column: u32,
    /// Unescaped value, present exactly on string literals.
    pub literal: Option<Box<str>>,
    pub is_stmt: bool,
    /// Text for synthetic nodes that have no backing source span.
    pub owned_text: Option<Box<str>>,
}

/// One parsed translation unit. The path is stored relative to the corpus
/// root so reports stay stable across machines.
#[derive(Debug, Clone)]
pub struct SyntaxTree {
    pub path: PathBuf,
    source: Arc<str>,
    nodes: Vec<NodeData>,
}

impl SyntaxTree {
    pub(crate) fn new(path: PathBuf, source: Arc<str>, nodes: Vec<NodeData>) -> Self {
        debug_assert!(!nodes.is_empty(), "a tree always has a root");
        SyntaxTree {
            path,
            source,
            nodes,
        }
    }

    pub fn root(&self) -> NodeId {
        NodeId(0)
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub(crate) fn node(&self, id: NodeId) -> &NodeData {
        &self.nodes[id.index()]
    }

    pub fn kind(&self, id: NodeId) -> NodeKind {
        self.node(id).kind
    }

    pub fn raw(&self, id: NodeId) -> &str {
        &self.node(id).raw
    }

    pub fn field(&self, id: NodeId) -> Option<&str> {
        self.node(id).field.as_deref()
    }

    pub fn parent(&self, id: NodeId) -> Option<NodeId> {
        self.node(id).parent
    }

    pub fn children(&self, id: NodeId) -> &[NodeId] {
        &self.node(id).children
    }

    pub fn child_by_field(&self, id: NodeId, field: &str) -> Option<NodeId> {
        self.children(id)
            .iter()
            .copied()
            .find(|&c| self.field(c) == Some(field))
    }

    pub fn is_stmt(&self, id: NodeId) -> bool {
        self.node(id).is_stmt
    }

    /// Source excerpt for the node. Synthetic nodes fall back to the text the
    /// builder supplied.
    pub fn text(&self, id: NodeId) -> &str {
        let n = self.node(id);
        if let Some(t) = &n.owned_text {
            return t;
        }
        self.source.get(n.start_byte..n.end_byte).unwrap_or("")
    }

    /// Unescaped value of a string literal node.
    pub fn literal(&self, id: NodeId) -> Option<&str> {
        self.node(id).literal.as_deref()
    }

    pub fn location(&self, id: NodeId) -> SourceLocation {
        let n = self.node(id);
        SourceLocation {
            file: self.path.clone(),
            line: n.line,
            column: n.column,
        }
    }

    /// Walks from `id` to the root, excluding `id` itself.
    pub fn ancestors(&self, id: NodeId) -> Ancestors<'_> {
        Ancestors {
            tree: self,
            cur: self.parent(id),
        }
    }

    /// Pre-order (document order) walk of the subtree rooted at `id`,
    /// including `id`.
    pub fn descendants(&self, id: NodeId) -> Descendants<'_> {
        Descendants {
            tree: self,
            stack: vec![id],
        }
    }

    /// True when `ancestor` is `id` or lies on `id`'s parent chain.
    pub fn is_within(&self, id: NodeId, ancestor: NodeId) -> bool {
        let mut cur = Some(id);
        while let Some(c) = cur {
            if c == ancestor {
                return true;
            }
            cur = self.parent(c);
        }
        false
    }

    /// Nearest enclosing function definition, if any.
    pub fn enclosing_function(&self, id: NodeId) -> Option<NodeId> {
        self.ancestors(id)
            .find(|&a| self.kind(a) == NodeKind::FunctionDef)
    }

    /// Name of a function definition node, resolved through the declarator
    /// chain (pointers and qualifiers included).
    pub fn function_name(&self, def: NodeId) -> Option<&str> {
        debug_assert_eq!(self.kind(def), NodeKind::FunctionDef);
        let declarator = self.child_by_field(def, "declarator")?;
        let fn_decl = self
            .descendants(declarator)
            .find(|&n| self.raw(n) == "function_declarator")?;
        let inner = self.child_by_field(fn_decl, "declarator")?;
        self.descendants(inner)
            .find(|&n| self.kind(n) == NodeKind::Identifier)
            .map(|n| self.text(n))
    }

    #[cfg(test)]
    pub(crate) fn check_links(&self) {
        for (i, n) in self.nodes.iter().enumerate() {
            for &c in &n.children {
                assert_eq!(self.node(c).parent, Some(NodeId(i as u32)));
            }
        }
    }
}

pub struct Ancestors<'t> {
    tree: &'t SyntaxTree,
    cur: Option<NodeId>,
}

impl Iterator for Ancestors<'_> {
    type Item = NodeId;

    fn next(&mut self) -> Option<NodeId> {
        let id = self.cur?;
        self.cur = self.tree.parent(id);
        Some(id)
    }
}

pub struct Descendants<'t> {
    tree: &'t SyntaxTree,
    stack: Vec<NodeId>,
}

impl Iterator for Descendants<'_> {
    type Item = NodeId;

    fn next(&mut self) -> Option<NodeId> {
        let id = self.stack.pop()?;
        self.stack
            .extend(self.tree.children(id).iter().rev().copied());
        Some(id)
    }
}

/// Builds trees without a parser behind them. Production trees come out of
/// the ingest module; this exists for unit and property tests that need
/// precise shapes.
pub struct TreeBuilder {
    path: PathBuf,
    nodes: Vec<NodeData>,
}

impl TreeBuilder {
    pub fn new(label: impl Into<PathBuf>) -> Self {
        let root = NodeData {
            kind: NodeKind::Other,
            raw: "synthetic_root".into(),
            field: None,
            parent: None,
            children: Vec::new(),
            start_byte: 0,
            end_byte: 0,
            line: 1,
            column: 1,
            literal: None,
            is_stmt: false,
            owned_text: None,
        };
        TreeBuilder {
            path: label.into(),
            nodes: vec![root],
        }
    }

    pub fn root(&self) -> NodeId {
        NodeId(0)
    }

    pub fn add(&mut self, parent: NodeId, kind: NodeKind, text: &str) -> NodeId {
        let id = NodeId(self.nodes.len() as u32);
        let line = self.nodes.len() as u32; // distinct fake positions
        self.nodes.push(NodeData {
            kind,
            raw: "synthetic".into(),
            field: None,
            parent: Some(parent),
            children: Vec::new(),
            start_byte: 0,
            end_byte: 0,
            line,
            column: 1,
            literal: if kind == NodeKind::StringLiteral {
                Some(text.into())
            } else {
                None
            },
            is_stmt: false,
            owned_text: Some(text.into()),
        });
        self.nodes[parent.index()].children.push(id);
        id
    }

    pub fn mark_stmt(&mut self, id: NodeId) {
        self.nodes[id.index()].is_stmt = true;
    }

    pub fn set_field(&mut self, id: NodeId, field: &str) {
        self.nodes[id.index()].field = Some(field.into());
    }

    pub fn finish(self) -> SyntaxTree {
        SyntaxTree::new(self.path, Arc::from(""), self.nodes)
    }
}
