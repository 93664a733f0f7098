//! Plane trees and the structures built on them.
//!
//! A [`PlaneTree`] is a rooted tree whose children are linearly ordered. Its
//! text form is the balanced-parenthesis word read off a left-to-right
//! preorder walk: every edge contributes `(` when it is first descended and
//! `)` when it is climbed back. The single-vertex tree is the empty word.
//!
//! Vertices are addressed by [`VertexId`], the sequence of child indices from
//! the root, so that "is an ancestor of" is the strict-prefix relation.
//!
//! Throughout the crate a *leaf* is a non-root vertex without children; the
//! lone vertex of the empty tree is not a leaf. With this convention the
//! external edges of a tree are exactly the edges ending in a leaf.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde_json::Value;

use crate::error::{ButterflyError, Result};
use crate::limits::Limits;

/// A rooted tree with ordered children.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct PlaneTree {
    children: Vec<PlaneTree>,
    edges: usize,
}

impl PlaneTree {
    /// The tree with a single vertex and no edges.
    pub fn single_vertex() -> Self {
        PlaneTree::default()
    }

    pub fn from_children(children: Vec<PlaneTree>) -> Self {
        let edges = children.iter().map(|c| c.edges + 1).sum();
        PlaneTree { children, edges }
    }

    /// A path with `n` edges hanging from the root.
    pub fn path(n: usize) -> Self {
        (0..n).fold(PlaneTree::single_vertex(), |t, _| t.planted())
    }

    /// A root with `n` leaf children.
    pub fn star(n: usize) -> Self {
        PlaneTree::from_children(vec![PlaneTree::single_vertex(); n])
    }

    /// Adds a new root above the current one.
    pub fn planted(self) -> Self {
        PlaneTree::from_children(vec![self])
    }

    pub fn children(&self) -> &[PlaneTree] {
        &self.children
    }

    pub fn into_children(self) -> Vec<PlaneTree> {
        self.children
    }

    pub fn edge_count(&self) -> usize {
        self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.edges + 1
    }

    /// True when this vertex has no children.
    pub fn is_childless(&self) -> bool {
        self.children.is_empty()
    }

    pub fn leaf_count(&self) -> usize {
        self.children
            .iter()
            .map(|c| if c.is_childless() { 1 } else { c.leaf_count() })
            .sum()
    }

    /// Length of the longest root-to-vertex path, in edges.
    pub fn depth(&self) -> usize {
        self.children
            .iter()
            .map(|c| c.depth() + 1)
            .max()
            .unwrap_or(0)
    }

    pub fn subtree(&self, v: &VertexId) -> Option<&PlaneTree> {
        v.0.iter().try_fold(self, |node, &i| node.children.get(i))
    }

    pub fn contains(&self, v: &VertexId) -> bool {
        self.subtree(v).is_some()
    }

    /// True when `v` is a non-root vertex without children.
    pub fn is_leaf(&self, v: &VertexId) -> bool {
        !v.is_root() && self.subtree(v).is_some_and(PlaneTree::is_childless)
    }

    /// All vertices in left-to-right preorder.
    pub fn vertices(&self) -> Vec<VertexId> {
        let mut out = Vec::with_capacity(self.vertex_count());
        let mut path = Vec::new();
        collect_preorder(self, &mut path, &mut out);
        out
    }

    /// All leaves in left-to-right preorder.
    pub fn leaves(&self) -> Vec<VertexId> {
        self.vertices()
            .into_iter()
            .filter(|v| self.is_leaf(v))
            .collect()
    }

    /// The balanced-parenthesis word of the tree.
    pub fn to_parens(&self) -> String {
        let mut s = String::with_capacity(2 * self.edges);
        write_parens(self, &mut s);
        s
    }

    /// Nested child lists: the single vertex is `[]`, a single edge `[[]]`.
    pub fn to_json(&self) -> Value {
        Value::Array(self.children.iter().map(PlaneTree::to_json).collect())
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        match value {
            Value::Array(items) => Ok(PlaneTree::from_children(
                items
                    .iter()
                    .map(PlaneTree::from_json)
                    .collect::<Result<_>>()?,
            )),
            other => Err(ButterflyError::domain(format!(
                "tree JSON must be nested arrays, found {other}"
            ))),
        }
    }

    /// Builds a tree from a word over `true = (` and `false = )`.
    pub(crate) fn from_word(word: &[bool]) -> Self {
        let mut stack: Vec<Vec<PlaneTree>> = vec![Vec::new()];
        for &open in word {
            if open {
                stack.push(Vec::new());
            } else {
                let children = stack.pop().expect("balanced word");
                stack
                    .last_mut()
                    .expect("balanced word")
                    .push(PlaneTree::from_children(children));
            }
        }
        debug_assert_eq!(stack.len(), 1);
        PlaneTree::from_children(stack.pop().unwrap_or_default())
    }
}

fn collect_preorder(t: &PlaneTree, path: &mut Vec<usize>, out: &mut Vec<VertexId>) {
    out.push(VertexId(path.clone()));
    for (i, c) in t.children.iter().enumerate() {
        path.push(i);
        collect_preorder(c, path, out);
        path.pop();
    }
}

fn write_parens(t: &PlaneTree, s: &mut String) {
    for c in &t.children {
        s.push('(');
        write_parens(c, s);
        s.push(')');
    }
}

impl fmt::Display for PlaneTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_parens())
    }
}

impl FromStr for PlaneTree {
    type Err = ButterflyError;

    fn from_str(s: &str) -> Result<Self> {
        parse_tree(s)
    }
}

/// Parses a balanced-parenthesis word.
pub fn parse_tree(text: &str) -> Result<PlaneTree> {
    let mut word = Vec::with_capacity(text.len());
    let mut depth = 0usize;
    for (offset, ch) in text.char_indices() {
        match ch {
            '(' => {
                depth += 1;
                word.push(true);
            }
            ')' => {
                if depth == 0 {
                    return Err(ButterflyError::parse(offset, "unmatched ')'"));
                }
                depth -= 1;
                word.push(false);
            }
            other => {
                return Err(ButterflyError::parse(
                    offset,
                    format!("unexpected character {other:?}"),
                ))
            }
        }
    }
    if depth != 0 {
        return Err(ButterflyError::parse(
            text.len(),
            format!("{depth} unclosed '('"),
        ));
    }
    Ok(PlaneTree::from_word(&word))
}

/// Address of a vertex: child indices from the root, 0-based.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct VertexId(Vec<usize>);

impl VertexId {
    pub fn root() -> Self {
        VertexId(Vec::new())
    }

    pub fn new(path: Vec<usize>) -> Self {
        VertexId(path)
    }

    pub fn path(&self) -> &[usize] {
        &self.0
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    pub fn is_root(&self) -> bool {
        self.0.is_empty()
    }

    pub fn child(&self, i: usize) -> Self {
        let mut p = self.0.clone();
        p.push(i);
        VertexId(p)
    }

    pub fn parent(&self) -> Option<Self> {
        let (_, init) = self.0.split_last()?;
        Some(VertexId(init.to_vec()))
    }

    /// Ancestor of depth `d`; `d` must not exceed the depth of `self`.
    pub fn ancestor_at(&self, d: usize) -> Self {
        VertexId(self.0[..d].to_vec())
    }

    /// Strict ancestor test.
    pub fn is_ancestor_of(&self, other: &VertexId) -> bool {
        self.0.len() < other.0.len() && other.0.starts_with(&self.0)
    }

    pub fn is_comparable(&self, other: &VertexId) -> bool {
        self == other || self.is_ancestor_of(other) || other.is_ancestor_of(self)
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("ε");
        }
        for (i, idx) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("/")?;
            }
            write!(f, "{idx}")?;
        }
        Ok(())
    }
}

impl FromStr for VertexId {
    type Err = ButterflyError;

    fn from_str(s: &str) -> Result<Self> {
        if s == "ε" || s.is_empty() {
            return Ok(VertexId::root());
        }
        let mut path = Vec::new();
        let mut offset = 0;
        for part in s.split('/') {
            let idx = part
                .parse::<usize>()
                .map_err(|_| ButterflyError::parse(offset, format!("bad child index {part:?}")))?;
            path.push(idx);
            offset += part.len() + 1;
        }
        Ok(VertexId(path))
    }
}

/// Iterator over all plane trees with a fixed number of edges, in
/// lexicographic order of their parenthesis words with `(` before `)`.
#[derive(Clone, Debug)]
pub struct Trees {
    word: Option<Vec<bool>>,
}

impl Trees {
    fn new(n: usize) -> Self {
        let mut word = vec![true; n];
        word.extend(std::iter::repeat_n(false, n));
        Trees { word: Some(word) }
    }
}

impl Iterator for Trees {
    type Item = PlaneTree;

    fn next(&mut self) -> Option<PlaneTree> {
        let word = self.word.as_mut()?;
        let tree = PlaneTree::from_word(word);
        if !next_balanced_word(word) {
            self.word = None;
        }
        Some(tree)
    }
}

/// Advances `word` to its lexicographic successor among balanced words of
/// the same length. Returns false when `word` was the last one.
pub(crate) fn next_balanced_word(word: &mut [bool]) -> bool {
    let n = word.len() / 2;
    let mut balance_before = Vec::with_capacity(word.len());
    let mut opens_before = Vec::with_capacity(word.len());
    let (mut bal, mut opens) = (0usize, 0usize);
    for &open in word.iter() {
        balance_before.push(bal);
        opens_before.push(opens);
        if open {
            bal += 1;
            opens += 1;
        } else {
            bal -= 1;
        }
    }
    for i in (0..word.len()).rev() {
        if word[i] && balance_before[i] >= 1 {
            word[i] = false;
            let remaining = n - opens_before[i];
            for (j, slot) in word[i + 1..].iter_mut().enumerate() {
                *slot = j < remaining;
            }
            return true;
        }
    }
    false
}

/// All plane trees with `n` edges, guarded by the default [`Limits`].
pub fn enumerate_trees(n: usize) -> Result<Trees> {
    enumerate_trees_with(n, &Limits::default())
}

pub fn enumerate_trees_with(n: usize, limits: &Limits) -> Result<Trees> {
    limits.check_trees(n)?;
    Ok(Trees::new(n))
}

/// Vertices in right-to-left preorder: the root, then the subtrees of the
/// root from the rightmost to the leftmost. Position in the result is the
/// vertex label.
pub fn rl_preorder(tree: &PlaneTree) -> Vec<VertexId> {
    fn walk(t: &PlaneTree, path: &mut Vec<usize>, out: &mut Vec<VertexId>) {
        out.push(VertexId(path.clone()));
        for (i, c) in t.children.iter().enumerate().rev() {
            path.push(i);
            walk(c, path, out);
            path.pop();
        }
    }
    let mut out = Vec::with_capacity(tree.vertex_count());
    walk(tree, &mut Vec::new(), &mut out);
    out
}

pub fn rl_preorder_labels(tree: &PlaneTree) -> BTreeMap<VertexId, usize> {
    rl_preorder(tree)
        .into_iter()
        .enumerate()
        .map(|(label, v)| (v, label))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Visit {
    First,
    Second,
}

/// One traversal of an edge during a left-to-right preorder walk.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EdgeEvent {
    /// The edge, named by its lower endpoint.
    pub edge: VertexId,
    pub visit: Visit,
    /// Whether the lower endpoint is a leaf.
    pub external: bool,
}

/// The `2n` edge visits of a left-to-right preorder walk.
pub fn lr_preorder_events(tree: &PlaneTree) -> Vec<EdgeEvent> {
    fn walk(t: &PlaneTree, path: &mut Vec<usize>, out: &mut Vec<EdgeEvent>) {
        for (i, c) in t.children.iter().enumerate() {
            path.push(i);
            let edge = VertexId(path.clone());
            let external = c.is_childless();
            out.push(EdgeEvent {
                edge: edge.clone(),
                visit: Visit::First,
                external,
            });
            walk(c, path, out);
            out.push(EdgeEvent {
                edge,
                visit: Visit::Second,
                external,
            });
            path.pop();
        }
    }
    let mut out = Vec::with_capacity(2 * tree.edge_count());
    walk(tree, &mut Vec::new(), &mut out);
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EdgeKind {
    Internal,
    External,
}

/// Every edge (keyed by its lower endpoint) tagged external iff it ends in a leaf.
pub fn classify_edges(tree: &PlaneTree) -> BTreeMap<VertexId, EdgeKind> {
    tree.vertices()
        .into_iter()
        .filter(|v| !v.is_root())
        .map(|v| {
            let kind = if tree.is_leaf(&v) {
                EdgeKind::External
            } else {
                EdgeKind::Internal
            };
            (v, kind)
        })
        .collect()
}

/// A plane tree with a second, distinguished vertex.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct DoublyRootedTree {
    tree: PlaneTree,
    distinguished: VertexId,
}

impl DoublyRootedTree {
    pub fn new(tree: PlaneTree, distinguished: VertexId) -> Result<Self> {
        if !tree.contains(&distinguished) {
            return Err(ButterflyError::domain(format!(
                "vertex {distinguished} does not exist in tree {tree}"
            )));
        }
        Ok(DoublyRootedTree {
            tree,
            distinguished,
        })
    }

    /// The tree with its root distinguished.
    pub fn rooted(tree: PlaneTree) -> Self {
        DoublyRootedTree {
            tree,
            distinguished: VertexId::root(),
        }
    }

    pub fn tree(&self) -> &PlaneTree {
        &self.tree
    }

    pub fn distinguished(&self) -> &VertexId {
        &self.distinguished
    }

    pub fn edge_count(&self) -> usize {
        self.tree.edge_count()
    }

    pub fn into_parts(self) -> (PlaneTree, VertexId) {
        (self.tree, self.distinguished)
    }
}

impl fmt::Display for DoublyRootedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};{}", self.tree, self.distinguished)
    }
}

impl FromStr for DoublyRootedTree {
    type Err = ButterflyError;

    fn from_str(s: &str) -> Result<Self> {
        let (tree, vertex) = s
            .split_once(';')
            .ok_or_else(|| ButterflyError::parse(s.len(), "expected `tree;vertex`"))?;
        let tree = parse_tree(tree)?;
        let vertex = vertex
            .parse()
            .map_err(|e| shift_offset(e, tree.edge_count() * 2 + 1))?;
        DoublyRootedTree::new(tree, vertex)
    }
}

fn shift_offset(e: ButterflyError, by: usize) -> ButterflyError {
    match e {
        ButterflyError::Parse { offset, message } => ButterflyError::Parse {
            offset: offset + by,
            message,
        },
        other => other,
    }
}

/// Distinguishes the vertex carrying right-to-left preorder label `m`.
pub fn distinguish_by_label(tree: &PlaneTree, m: usize) -> Result<DoublyRootedTree> {
    let order = rl_preorder(tree);
    let vertex = order.get(m).cloned().ok_or_else(|| {
        ButterflyError::domain(format!(
            "label {m} out of range for a tree with {} edges",
            tree.edge_count()
        ))
    })?;
    Ok(DoublyRootedTree {
        tree: tree.clone(),
        distinguished: vertex,
    })
}

/// All doubly rooted trees with `n` edges: every tree with every vertex.
pub fn enumerate_doubly_rooted(n: usize) -> Result<impl Iterator<Item = DoublyRootedTree>> {
    enumerate_doubly_rooted_with(n, &Limits::default())
}

pub fn enumerate_doubly_rooted_with(
    n: usize,
    limits: &Limits,
) -> Result<impl Iterator<Item = DoublyRootedTree>> {
    limits.check_paths(n)?;
    Ok(Trees::new(n).flat_map(|t| {
        t.vertices().into_iter().map(move |v| DoublyRootedTree {
            tree: t.clone(),
            distinguished: v,
        })
    }))
}

/// A plane tree whose root children each carry one of `k` colors.
///
/// For `k = 2` color 0 is black and 1 is white; for `k = 3` color 2 is red.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct KColoredTree {
    tree: PlaneTree,
    k: usize,
    colors: Vec<usize>,
}

pub const BLACK: usize = 0;
pub const WHITE: usize = 1;
pub const RED: usize = 2;

impl KColoredTree {
    pub fn new(tree: PlaneTree, k: usize, root_child_colors: Vec<usize>) -> Result<Self> {
        if k == 0 {
            return Err(ButterflyError::domain("number of colors must be positive"));
        }
        if root_child_colors.len() != tree.children().len() {
            return Err(ButterflyError::domain(format!(
                "{} colors given for {} root children",
                root_child_colors.len(),
                tree.children().len()
            )));
        }
        if let Some(c) = root_child_colors.iter().find(|&&c| c >= k) {
            return Err(ButterflyError::domain(format!(
                "color {c} is not below {k}"
            )));
        }
        Ok(KColoredTree {
            tree,
            k,
            colors: root_child_colors,
        })
    }

    /// Builds the tree whose root children are the given colored subtrees.
    pub fn from_colored_children(k: usize, children: Vec<(usize, PlaneTree)>) -> Result<Self> {
        let (colors, subtrees): (Vec<_>, Vec<_>) = children.into_iter().unzip();
        KColoredTree::new(PlaneTree::from_children(subtrees), k, colors)
    }

    pub fn tree(&self) -> &PlaneTree {
        &self.tree
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn root_child_colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn edge_count(&self) -> usize {
        self.tree.edge_count()
    }

    /// Root children paired with their colors, left to right.
    pub fn colored_children(&self) -> impl Iterator<Item = (usize, &PlaneTree)> {
        self.colors.iter().copied().zip(self.tree.children())
    }

    pub fn count_color(&self, color: usize) -> usize {
        self.colors.iter().filter(|&&c| c == color).count()
    }

    /// Parses `tree;c1,c2,...`.
    pub fn parse(text: &str, k: usize) -> Result<Self> {
        let (tree, colors) = text
            .split_once(';')
            .ok_or_else(|| ButterflyError::parse(text.len(), "expected `tree;colors`"))?;
        let tree = parse_tree(tree)?;
        let mut offset = tree.edge_count() * 2 + 1;
        let mut parsed = Vec::new();
        if !colors.is_empty() {
            for part in colors.split(',') {
                parsed.push(
                    part.parse::<usize>().map_err(|_| {
                        ButterflyError::parse(offset, format!("bad color {part:?}"))
                    })?,
                );
                offset += part.len() + 1;
            }
        }
        KColoredTree::new(tree, k, parsed)
    }
}

impl fmt::Display for KColoredTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};", self.tree)?;
        for (i, c) in self.colors.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// All `k`-colored plane trees with `n` edges.
pub fn enumerate_kcolored(n: usize, k: usize) -> Result<impl Iterator<Item = KColoredTree>> {
    enumerate_kcolored_with(n, k, &Limits::default())
}

pub fn enumerate_kcolored_with(
    n: usize,
    k: usize,
    limits: &Limits,
) -> Result<impl Iterator<Item = KColoredTree>> {
    if k == 0 {
        return Err(ButterflyError::domain("number of colors must be positive"));
    }
    if k <= 2 {
        limits.check_paths(n)?;
    } else {
        limits.check_chains(n)?;
    }
    Ok(Trees::new(n).flat_map(move |t| {
        let degree = t.children().len();
        colorings(degree, k).map(move |colors| KColoredTree {
            tree: t.clone(),
            k,
            colors,
        })
    }))
}

/// All words of length `len` over `0..k`, in lexicographic order.
fn colorings(len: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = k.pow(len as u32);
    (0..total).map(move |mut code| {
        let mut word = vec![0; len];
        for slot in word.iter_mut().rev() {
            *slot = code % k;
            code /= k;
        }
        word
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LeafColor {
    Red,
    Blue,
}

impl LeafColor {
    pub fn symbol(self) -> char {
        match self {
            LeafColor::Red => 'R',
            LeafColor::Blue => 'B',
        }
    }
}

/// A plane tree with red/blue leaves and an optional distinguished vertex,
/// which carries no color even when it is a leaf.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct LeafColoredTree {
    tree: PlaneTree,
    leaf_colors: BTreeMap<VertexId, LeafColor>,
    distinguished: Option<VertexId>,
}

impl LeafColoredTree {
    pub fn new(
        tree: PlaneTree,
        leaf_colors: BTreeMap<VertexId, LeafColor>,
        distinguished: Option<VertexId>,
    ) -> Result<Self> {
        if let Some(w) = &distinguished {
            if !tree.contains(w) {
                return Err(ButterflyError::domain(format!(
                    "distinguished vertex {w} does not exist"
                )));
            }
            if leaf_colors.contains_key(w) {
                return Err(ButterflyError::domain(format!(
                    "distinguished vertex {w} must not be colored"
                )));
            }
        }
        for v in leaf_colors.keys() {
            if !tree.is_leaf(v) {
                return Err(ButterflyError::domain(format!(
                    "vertex {v} is colored but is not a leaf"
                )));
            }
        }
        for v in tree.leaves() {
            if Some(&v) != distinguished.as_ref() && !leaf_colors.contains_key(&v) {
                return Err(ButterflyError::domain(format!("leaf {v} has no color")));
            }
        }
        Ok(LeafColoredTree {
            tree,
            leaf_colors,
            distinguished,
        })
    }

    /// Colors the colorable leaves, in left-to-right preorder, from `colors`.
    pub fn from_color_sequence(
        tree: PlaneTree,
        colors: &[LeafColor],
        distinguished: Option<VertexId>,
    ) -> Result<Self> {
        let leaves: Vec<VertexId> = tree
            .leaves()
            .into_iter()
            .filter(|v| Some(v) != distinguished.as_ref())
            .collect();
        if leaves.len() != colors.len() {
            return Err(ButterflyError::domain(format!(
                "{} colors given for {} colorable leaves",
                colors.len(),
                leaves.len()
            )));
        }
        let leaf_colors = leaves.into_iter().zip(colors.iter().copied()).collect();
        LeafColoredTree::new(tree, leaf_colors, distinguished)
    }

    pub fn tree(&self) -> &PlaneTree {
        &self.tree
    }

    pub fn leaf_colors(&self) -> &BTreeMap<VertexId, LeafColor> {
        &self.leaf_colors
    }

    pub fn color(&self, v: &VertexId) -> Option<LeafColor> {
        self.leaf_colors.get(v).copied()
    }

    pub fn distinguished(&self) -> Option<&VertexId> {
        self.distinguished.as_ref()
    }

    pub fn edge_count(&self) -> usize {
        self.tree.edge_count()
    }

    /// The colors of the colored leaves in left-to-right preorder.
    pub fn color_sequence(&self) -> Vec<LeafColor> {
        self.tree
            .leaves()
            .iter()
            .filter_map(|v| self.color(v))
            .collect()
    }

    /// The underlying doubly rooted tree, when a vertex is distinguished.
    pub fn doubly_rooted(&self) -> Option<DoublyRootedTree> {
        self.distinguished.as_ref().map(|w| DoublyRootedTree {
            tree: self.tree.clone(),
            distinguished: w.clone(),
        })
    }
}

impl fmt::Display for LeafColoredTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};", self.tree)?;
        for c in self.color_sequence() {
            write!(f, "{}", c.symbol())?;
        }
        if let Some(w) = &self.distinguished {
            write!(f, ";{w}")?;
        }
        Ok(())
    }
}

impl FromStr for LeafColoredTree {
    type Err = ButterflyError;

    /// Parses `tree;RB...` or `tree;RB...;vertex`.
    fn from_str(s: &str) -> Result<Self> {
        let mut parts = s.splitn(3, ';');
        let tree = parse_tree(parts.next().unwrap_or(""))?;
        let base = tree.edge_count() * 2 + 1;
        let color_text = parts
            .next()
            .ok_or_else(|| ButterflyError::parse(s.len(), "expected `tree;colors`"))?;
        let colors = color_text
            .char_indices()
            .map(|(i, ch)| match ch {
                'R' => Ok(LeafColor::Red),
                'B' => Ok(LeafColor::Blue),
                other => Err(ButterflyError::parse(
                    base + i,
                    format!("bad leaf color {other:?}"),
                )),
            })
            .collect::<Result<Vec<_>>>()?;
        let distinguished = parts
            .next()
            .map(|v| v.parse::<VertexId>())
            .transpose()
            .map_err(|e| shift_offset(e, base + color_text.len() + 1))?;
        LeafColoredTree::from_color_sequence(tree, &colors, distinguished)
    }
}

fn color_words(len: usize) -> impl Iterator<Item = Vec<LeafColor>> {
    colorings(len, 2).map(|w| {
        w.into_iter()
            .map(|c| {
                if c == 0 {
                    LeafColor::Red
                } else {
                    LeafColor::Blue
                }
            })
            .collect()
    })
}

/// All plane trees with `n` edges whose leaves are each red or blue.
pub fn enumerate_leaf_colored(n: usize) -> Result<impl Iterator<Item = LeafColoredTree>> {
    enumerate_leaf_colored_with(n, &Limits::default())
}

pub fn enumerate_leaf_colored_with(
    n: usize,
    limits: &Limits,
) -> Result<impl Iterator<Item = LeafColoredTree>> {
    limits.check_paths(n)?;
    Ok(Trees::new(n).flat_map(|t| {
        let leaves = t.leaves();
        color_words(leaves.len()).map(move |colors| LeafColoredTree {
            tree: t.clone(),
            leaf_colors: leaves.iter().cloned().zip(colors).collect(),
            distinguished: None,
        })
    }))
}

/// All leaf-colored doubly rooted trees with `n` edges.
pub fn enumerate_leaf_colored_doubly_rooted(
    n: usize,
) -> Result<impl Iterator<Item = LeafColoredTree>> {
    enumerate_leaf_colored_doubly_rooted_with(n, &Limits::default())
}

pub fn enumerate_leaf_colored_doubly_rooted_with(
    n: usize,
    limits: &Limits,
) -> Result<impl Iterator<Item = LeafColoredTree>> {
    limits.check_paths(n)?;
    Ok(Trees::new(n).flat_map(|t| {
        t.vertices().into_iter().flat_map(move |w| {
            let leaves: Vec<VertexId> = t.leaves().into_iter().filter(|v| *v != w).collect();
            let t = t.clone();
            color_words(leaves.len()).map(move |colors| LeafColoredTree {
                tree: t.clone(),
                leaf_colors: leaves.iter().cloned().zip(colors).collect(),
                distinguished: Some(w.clone()),
            })
        })
    }))
}

/// A nonempty set of pairwise comparable vertices.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Chain {
    tree: PlaneTree,
    members: BTreeSet<VertexId>,
}

impl Chain {
    pub fn new(tree: PlaneTree, members: BTreeSet<VertexId>) -> Result<Self> {
        if members.is_empty() {
            return Err(ButterflyError::domain(
                "a chain must have at least one vertex",
            ));
        }
        if let Some(v) = members.iter().find(|v| !tree.contains(v)) {
            return Err(ButterflyError::domain(format!("vertex {v} does not exist")));
        }
        let deepest = members.iter().max_by_key(|v| v.depth()).expect("nonempty");
        if let Some(v) = members.iter().find(|v| !v.is_comparable(deepest)) {
            return Err(ButterflyError::domain(format!(
                "vertices {v} and {deepest} are not comparable"
            )));
        }
        Ok(Chain { tree, members })
    }

    pub fn tree(&self) -> &PlaneTree {
        &self.tree
    }

    pub fn members(&self) -> &BTreeSet<VertexId> {
        &self.members
    }

    pub fn size(&self) -> usize {
        self.members.len()
    }

    /// The member furthest from the root; every other member is its ancestor.
    pub fn deepest(&self) -> &VertexId {
        // BTreeSet order on index paths puts a prefix before its extensions.
        self.members
            .iter()
            .next_back()
            .expect("chains are nonempty")
    }

    pub fn contains(&self, v: &VertexId) -> bool {
        self.members.contains(v)
    }
}

fn write_members<'a>(
    f: &mut fmt::Formatter<'_>,
    members: impl Iterator<Item = (&'a VertexId, Option<usize>)>,
) -> fmt::Result {
    for (i, (v, color)) in members.enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{v}")?;
        if let Some(c) = color {
            write!(f, ":{c}")?;
        }
    }
    Ok(())
}

impl fmt::Display for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};", self.tree)?;
        write_members(f, self.members.iter().map(|v| (v, None)))
    }
}

fn parse_members(text: &str, base: usize) -> Result<Vec<(VertexId, Option<usize>)>> {
    if text.is_empty() {
        return Err(ButterflyError::parse(base, "expected at least one vertex"));
    }
    let mut out = Vec::new();
    let mut offset = base;
    for part in text.split(',') {
        let (vertex, color) = match part.split_once(':') {
            Some((v, c)) => {
                let c = c.parse::<usize>().map_err(|_| {
                    ButterflyError::parse(offset + v.len() + 1, format!("bad color {c:?}"))
                })?;
                (v, Some(c))
            }
            None => (part, None),
        };
        let vertex = vertex
            .parse::<VertexId>()
            .map_err(|e| shift_offset(e, offset))?;
        out.push((vertex, color));
        offset += part.len() + 1;
    }
    Ok(out)
}

impl FromStr for Chain {
    type Err = ButterflyError;

    /// Parses `tree;v1,v2,...` with vertices written as `ε` or `i/j/k`.
    fn from_str(s: &str) -> Result<Self> {
        let (tree, members) = s
            .split_once(';')
            .ok_or_else(|| ButterflyError::parse(s.len(), "expected `tree;members`"))?;
        let tree = parse_tree(tree)?;
        let members = parse_members(members, tree.edge_count() * 2 + 1)?;
        if members.iter().any(|(_, c)| c.is_some()) {
            return Err(ButterflyError::domain("plain chains carry no colors"));
        }
        Chain::new(tree, members.into_iter().map(|(v, _)| v).collect())
    }
}

/// A chain whose members other than the deepest carry one of `palette`
/// colors.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ColoredChain {
    chain: Chain,
    palette: usize,
    colors: BTreeMap<VertexId, usize>,
}

impl ColoredChain {
    pub fn new(chain: Chain, palette: usize, colors: BTreeMap<VertexId, usize>) -> Result<Self> {
        if palette == 0 {
            return Err(ButterflyError::domain("palette must be nonempty"));
        }
        let deepest = chain.deepest();
        if colors.contains_key(deepest) {
            return Err(ButterflyError::domain(format!(
                "the deepest member {deepest} carries no color"
            )));
        }
        for v in chain.members() {
            if v == deepest {
                continue;
            }
            match colors.get(v) {
                None => {
                    return Err(ButterflyError::domain(format!(
                        "chain member {v} is uncolored"
                    )))
                }
                Some(&c) if c >= palette => {
                    return Err(ButterflyError::domain(format!(
                        "color {c} of {v} is not below {palette}"
                    )))
                }
                _ => {}
            }
        }
        if let Some(v) = colors.keys().find(|v| !chain.contains(v)) {
            return Err(ButterflyError::domain(format!(
                "colored vertex {v} is not a chain member"
            )));
        }
        Ok(ColoredChain {
            chain,
            palette,
            colors,
        })
    }

    pub fn chain(&self) -> &Chain {
        &self.chain
    }

    pub fn palette(&self) -> usize {
        self.palette
    }

    pub fn color(&self, v: &VertexId) -> Option<usize> {
        self.colors.get(v).copied()
    }

    /// Parses `tree;v1:c1,v2:c2,...,w` where only the deepest member `w` is bare.
    pub fn parse(text: &str, palette: usize) -> Result<Self> {
        let (tree, members) = text
            .split_once(';')
            .ok_or_else(|| ButterflyError::parse(text.len(), "expected `tree;members`"))?;
        let tree = parse_tree(tree)?;
        let members = parse_members(members, tree.edge_count() * 2 + 1)?;
        let colors = members
            .iter()
            .filter_map(|(v, c)| c.map(|c| (v.clone(), c)))
            .collect();
        let chain = Chain::new(tree, members.into_iter().map(|(v, _)| v).collect())?;
        ColoredChain::new(chain, palette, colors)
    }
}

impl fmt::Display for ColoredChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};", self.chain.tree)?;
        write_members(f, self.chain.members.iter().map(|v| (v, self.color(v))))
    }
}

/// Every chain of `tree`: for each vertex `w` and each subset of the proper
/// ancestors of `w`, the chain made of `w` and that subset.
pub fn enumerate_chains(tree: &PlaneTree) -> impl Iterator<Item = Chain> + '_ {
    tree.vertices().into_iter().flat_map(move |w| {
        let depth = w.depth();
        (0u64..1 << depth).map(move |mask| {
            let mut members: BTreeSet<VertexId> = (0..depth)
                .filter(|d| mask >> d & 1 == 1)
                .map(|d| w.ancestor_at(d))
                .collect();
            members.insert(w.clone());
            Chain {
                tree: tree.clone(),
                members,
            }
        })
    })
}

/// Every chain in every plane tree with `n` edges.
pub fn enumerate_all_chains(n: usize) -> Result<impl Iterator<Item = Chain>> {
    enumerate_all_chains_with(n, &Limits::default())
}

pub fn enumerate_all_chains_with(n: usize, limits: &Limits) -> Result<impl Iterator<Item = Chain>> {
    limits.check_chains(n)?;
    Ok(Trees::new(n).flat_map(|t| enumerate_chains(&t).collect::<Vec<_>>()))
}

/// Every chain in every plane tree with `n` edges, with every coloring of
/// its non-deepest members from a palette of `palette` colors.
pub fn enumerate_colored_chains(
    n: usize,
    palette: usize,
) -> Result<impl Iterator<Item = ColoredChain>> {
    enumerate_colored_chains_with(n, palette, &Limits::default())
}

pub fn enumerate_colored_chains_with(
    n: usize,
    palette: usize,
    limits: &Limits,
) -> Result<impl Iterator<Item = ColoredChain>> {
    if palette == 0 {
        return Err(ButterflyError::domain("palette must be nonempty"));
    }
    Ok(
        enumerate_all_chains_with(n, limits)?.flat_map(move |chain| {
            let colored: Vec<VertexId> = chain
                .members
                .iter()
                .filter(|v| *v != chain.deepest())
                .cloned()
                .collect();
            colorings(colored.len(), palette).map(move |word| ColoredChain {
                chain: chain.clone(),
                palette,
                colors: colored.iter().cloned().zip(word).collect(),
            })
        }),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> PlaneTree {
        s.parse().unwrap()
    }

    fn v(s: &str) -> VertexId {
        s.parse().unwrap()
    }

    /// Brute force: every word over `(`/`)` of length 2n filtered for balance.
    fn balanced_words(n: usize) -> Vec<String> {
        let mut out = Vec::new();
        for bits in 0u32..1 << (2 * n) {
            let word: String = (0..2 * n)
                .rev()
                .map(|i| if bits >> i & 1 == 0 { '(' } else { ')' })
                .collect();
            if parse_tree(&word).is_ok() {
                out.push(word);
            }
        }
        out
    }

    #[test]
    fn parse_examples() {
        assert_eq!(t("").edge_count(), 0);
        assert_eq!(t("()").edge_count(), 1);
        let tree = t("(())()");
        assert_eq!(tree.children().len(), 2);
        assert_eq!(tree.children()[0].children().len(), 1);
        assert!(tree.children()[1].is_childless());
    }

    #[test]
    fn parse_errors_report_offsets() {
        assert_eq!(
            parse_tree("())"),
            Err(ButterflyError::parse(2, "unmatched ')'"))
        );
        assert!(matches!(
            parse_tree("(()"),
            Err(ButterflyError::Parse { offset: 3, .. })
        ));
        assert!(matches!(
            parse_tree("(x)"),
            Err(ButterflyError::Parse { offset: 1, .. })
        ));
    }

    #[test]
    fn enumeration_matches_brute_force_order() {
        for n in 0..=6 {
            let got: Vec<String> = enumerate_trees(n).unwrap().map(|t| t.to_parens()).collect();
            assert_eq!(got, balanced_words(n), "n = {n}");
        }
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_trees(0).unwrap().count(), 1);
        assert_eq!(enumerate_trees(3).unwrap().count(), 5);
        assert_eq!(enumerate_trees(10).unwrap().count(), 16796);
    }

    #[test]
    fn enumeration_is_guarded() {
        assert_eq!(
            enumerate_trees(15).err(),
            Some(ButterflyError::Capacity {
                requested: 15,
                max: 14
            })
        );
        assert!(enumerate_trees_with(15, &Limits::uniform(15)).is_ok());
    }

    #[test]
    fn rl_labels() {
        let single = rl_preorder_labels(&t(""));
        assert_eq!(single.len(), 1);
        assert_eq!(single[&VertexId::root()], 0);

        let labels = rl_preorder_labels(&t("()()"));
        assert_eq!(labels[&v("ε")], 0);
        assert_eq!(labels[&v("1")], 1);
        assert_eq!(labels[&v("0")], 2);
    }

    #[test]
    fn rl_label_order_property() {
        // Each vertex precedes its own subtree, and a right sibling's whole
        // subtree precedes the left sibling.
        for tree in enumerate_trees(6).unwrap() {
            let labels = rl_preorder_labels(&tree);
            let mut seen: Vec<_> = labels.values().copied().collect();
            seen.sort_unstable();
            assert_eq!(seen, (0..=tree.edge_count()).collect::<Vec<_>>());
            for (a, la) in &labels {
                for (b, lb) in &labels {
                    if a.is_ancestor_of(b) {
                        assert!(la < lb);
                    }
                }
            }
        }
    }

    #[test]
    fn lr_events() {
        use Visit::*;
        let kinds = |s: &str| -> Vec<(Visit, bool)> {
            lr_preorder_events(&t(s))
                .into_iter()
                .map(|e| (e.visit, e.external))
                .collect()
        };
        assert_eq!(kinds("()"), vec![(First, true), (Second, true)]);
        assert_eq!(
            kinds("(())"),
            vec![
                (First, false),
                (First, true),
                (Second, true),
                (Second, false)
            ]
        );
        assert_eq!(
            kinds("()()"),
            vec![(First, true), (Second, true), (First, true), (Second, true)]
        );
    }

    #[test]
    fn external_edge_visits_are_adjacent() {
        for tree in enumerate_trees(6).unwrap() {
            let events = lr_preorder_events(&tree);
            assert_eq!(events.len(), 2 * tree.edge_count());
            for (i, e) in events.iter().enumerate() {
                if e.external && e.visit == Visit::First {
                    assert_eq!(events[i + 1].edge, e.edge);
                    assert_eq!(events[i + 1].visit, Visit::Second);
                }
            }
        }
    }

    #[test]
    fn edge_classes() {
        let single = classify_edges(&t("()"));
        assert_eq!(
            single.values().collect::<Vec<_>>(),
            vec![&EdgeKind::External]
        );
        let path = classify_edges(&t("(())"));
        assert_eq!(path[&v("0")], EdgeKind::Internal);
        assert_eq!(path[&v("0/0")], EdgeKind::External);
        let cherry = classify_edges(&t("()()"));
        assert!(cherry.values().all(|k| *k == EdgeKind::External));
        for tree in enumerate_trees(6).unwrap() {
            let external = classify_edges(&tree)
                .values()
                .filter(|k| **k == EdgeKind::External)
                .count();
            assert_eq!(external, tree.leaf_count());
        }
    }

    #[test]
    fn chains_of_small_trees() {
        assert_eq!(enumerate_chains(&t("")).count(), 1);
        assert_eq!(enumerate_chains(&t("(())")).count(), 7);
        assert_eq!(enumerate_chains(&t("()()")).count(), 5);
        assert_eq!(enumerate_all_chains(2).unwrap().count(), 12);
        assert_eq!(enumerate_all_chains(3).unwrap().count(), 51);
    }

    /// Brute force over every vertex subset.
    fn chains_by_subsets(tree: &PlaneTree) -> BTreeSet<BTreeSet<VertexId>> {
        let vs = tree.vertices();
        let mut out = BTreeSet::new();
        for mask in 1u32..1 << vs.len() {
            let set: Vec<&VertexId> = (0..vs.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| &vs[i])
                .collect();
            if set.iter().all(|a| set.iter().all(|b| a.is_comparable(b))) {
                out.insert(set.into_iter().cloned().collect());
            }
        }
        out
    }

    #[test]
    fn chain_enumeration_matches_subset_brute_force() {
        for n in 0..=5 {
            for tree in enumerate_trees(n).unwrap() {
                let fast: Vec<BTreeSet<VertexId>> =
                    enumerate_chains(&tree).map(|c| c.members).collect();
                let unique: BTreeSet<_> = fast.iter().cloned().collect();
                assert_eq!(unique.len(), fast.len(), "duplicate chain in {tree}");
                assert_eq!(unique, chains_by_subsets(&tree));
                let count = fast.len();
                assert!(count > 2 * n && count < 1 << (n + 1));
            }
        }
    }

    #[test]
    fn distinguish_by_label_edges() {
        let tree = t("(())()");
        assert!(distinguish_by_label(&tree, 0)
            .unwrap()
            .distinguished()
            .is_root());
        // Label n is the last vertex visited: the deepest vertex of the
        // leftmost branch.
        assert_eq!(
            distinguish_by_label(&tree, 3).unwrap().distinguished(),
            &v("0/0")
        );
        assert!(matches!(
            distinguish_by_label(&tree, 4),
            Err(ButterflyError::Domain(_))
        ));
    }

    #[test]
    fn text_forms_round_trip() {
        let drt: DoublyRootedTree = "(())();0/0".parse().unwrap();
        assert_eq!(drt.to_string(), "(())();0/0");
        assert!("(())();1/0".parse::<DoublyRootedTree>().is_err());

        let chain: Chain = "(())();ε,0/0".parse().unwrap();
        assert_eq!(chain.size(), 2);
        assert_eq!(chain.deepest(), &v("0/0"));
        assert_eq!(chain.to_string(), "(())();ε,0/0");
        assert!("()();0,1".parse::<Chain>().is_err());
        assert!("()();".parse::<Chain>().is_err());

        let colored = KColoredTree::parse("(())();1,0", 2).unwrap();
        assert_eq!(colored.to_string(), "(())();1,0");
        assert!(KColoredTree::parse("(())();2,0", 2).is_err());
        assert!(KColoredTree::parse("(())();1", 2).is_err());

        let leafy: LeafColoredTree = "(()())();RBR".parse().unwrap();
        assert_eq!(leafy.to_string(), "(()())();RBR");
        let leafy: LeafColoredTree = "(()())();RB;0/1".parse().unwrap();
        assert_eq!(leafy.distinguished(), Some(&v("0/1")));
        assert!("(()())();RB".parse::<LeafColoredTree>().is_err());

        let cc = ColoredChain::parse("(());ε:1,0/0", 2).unwrap();
        assert_eq!(cc.to_string(), "(());ε:1,0/0");
        assert!(ColoredChain::parse("(());ε,0/0", 2).is_err());
        assert!(ColoredChain::parse("(());ε:0,0/0:1", 2).is_err());
    }

    #[test]
    fn json_form() {
        let tree = t("(())()");
        assert_eq!(tree.to_json().to_string(), "[[[]],[]]");
        assert_eq!(PlaneTree::from_json(&tree.to_json()).unwrap(), tree);
    }

    #[test]
    fn leaf_colored_invariants() {
        let tree = t("()()");
        let mut colors = BTreeMap::new();
        colors.insert(v("0"), LeafColor::Red);
        assert!(LeafColoredTree::new(tree.clone(), colors.clone(), None).is_err());
        assert!(LeafColoredTree::new(tree.clone(), colors.clone(), Some(v("1"))).is_ok());
        colors.insert(v("ε"), LeafColor::Blue);
        assert!(LeafColoredTree::new(tree, colors, Some(v("1"))).is_err());
    }
}
