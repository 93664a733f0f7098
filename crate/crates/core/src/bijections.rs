//! Constructive correspondences built on the butterfly decomposition.
//!
//! Let `w` be the distinguished vertex of a doubly rooted tree and
//! `v_1 v_2 ... v_k w` the stem, the path from the root to `w`. Cutting the
//! tree along the stem leaves, for every `v_i`, the part `L_i` hanging to the
//! left of the stem and the part `R_i` hanging to the right (both rooted at
//! `v_i`), together with the subtree `T'` rooted at `w`. The stem edge below
//! `v_i` joins `L_i` and `R_i` into the butterfly `U_i`.
//!
//! Most maps in this module encode the pieces as paths or colored root
//! subtrees and concatenate them in the order `L_1 R_1 L_2 R_2 ... T'`.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{ButterflyError, Result};
use crate::lattice_paths::{decompose, LatticePath, SegmentKind, Step};
use crate::trees::{
    rl_preorder_labels, Chain, ColoredChain, DoublyRootedTree, KColoredTree, LeafColor,
    LeafColoredTree, PlaneTree, VertexId, BLACK, RED, WHITE,
};

/// The stem edge below `v_i` with what hangs left and right of it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Butterfly {
    pub left: PlaneTree,
    pub right: PlaneTree,
}

impl Butterfly {
    pub fn edge_count(&self) -> usize {
        self.left.edge_count() + self.right.edge_count() + 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ButterflyDecomposition {
    pub butterflies: Vec<Butterfly>,
    pub tail: PlaneTree,
}

impl ButterflyDecomposition {
    pub fn edge_count(&self) -> usize {
        self.butterflies
            .iter()
            .map(Butterfly::edge_count)
            .sum::<usize>()
            + self.tail.edge_count()
    }
}

pub fn butterfly_decompose(drt: &DoublyRootedTree) -> ButterflyDecomposition {
    let mut node = drt.tree();
    let mut butterflies = Vec::with_capacity(drt.distinguished().depth());
    for &c in drt.distinguished().path() {
        let children = node.children();
        butterflies.push(Butterfly {
            left: PlaneTree::from_children(children[..c].to_vec()),
            right: PlaneTree::from_children(children[c + 1..].to_vec()),
        });
        node = &children[c];
    }
    ButterflyDecomposition {
        butterflies,
        tail: node.clone(),
    }
}

pub fn butterfly_compose(d: &ButterflyDecomposition) -> DoublyRootedTree {
    let mut node = d.tail.clone();
    let mut path = Vec::with_capacity(d.butterflies.len());
    for b in d.butterflies.iter().rev() {
        let mut children = b.left.children().to_vec();
        path.push(children.len());
        children.push(node);
        children.extend_from_slice(b.right.children());
        node = PlaneTree::from_children(children);
    }
    path.reverse();
    DoublyRootedTree::new(node, VertexId::new(path)).expect("composed stem addresses a vertex")
}

/// Preorder word of a tree: `U` on the way down an edge, `D` on the way up.
pub fn glove_tree_to_dyck(tree: &PlaneTree) -> LatticePath {
    fn walk(t: &PlaneTree, out: &mut Vec<Step>) {
        for c in t.children() {
            out.push(Step::Up);
            walk(c, out);
            out.push(Step::Down);
        }
    }
    let mut out = Vec::with_capacity(2 * tree.edge_count());
    walk(tree, &mut out);
    LatticePath::new(out)
}

pub fn glove_dyck_to_tree(path: &LatticePath) -> Result<PlaneTree> {
    if path.has_horiz() || !path.is_free() || !path.is_nonnegative() {
        return Err(ButterflyError::domain(format!("{path} is not a Dyck path")));
    }
    let word: Vec<bool> = path.steps().iter().map(|&s| s == Step::Up).collect();
    Ok(PlaneTree::from_word(&word))
}

/// Positive part, negative part, positive part, ... of a free path: the
/// Dyck or Schröder words `P_1, ..., P_{k+1}` sitting between the flaw
/// blocks, and the flaw blocks themselves reflected and with their first and
/// last steps removed.
struct StemSplit {
    positives: Vec<LatticePath>,
    blocks: Vec<LatticePath>,
}

fn split_at_flaw_blocks(path: &LatticePath) -> Result<StemSplit> {
    let mut positives = Vec::new();
    let mut blocks = Vec::new();
    let mut current = Vec::new();
    for seg in decompose(path)?.into_segments() {
        match seg.kind {
            SegmentKind::Negative => {
                positives.push(LatticePath::new(std::mem::take(&mut current)));
                let inner = seg.path.reflect().into_steps();
                blocks.push(LatticePath::new(inner[1..inner.len() - 1].to_vec()));
            }
            SegmentKind::Positive | SegmentKind::AxisHoriz => current.extend(seg.path.into_steps()),
        }
    }
    positives.push(LatticePath::new(current));
    Ok(StemSplit { positives, blocks })
}

fn interleave(positives: Vec<LatticePath>, blocks: Vec<LatticePath>) -> LatticePath {
    debug_assert_eq!(positives.len(), blocks.len() + 1);
    let mut parts = Vec::with_capacity(positives.len() + blocks.len());
    let mut blocks = blocks.into_iter();
    for p in positives {
        parts.push(p);
        if let Some(q) = blocks.next() {
            parts.push(q.elevate().reflect());
        }
    }
    LatticePath::concat(parts)
}

/// Doubly rooted trees with `n` edges to free Dyck paths of semilength `n`.
///
/// `L_i` and `T'` are encoded by the glove map above the axis; each `R_i`
/// gets a new edge above its root and the resulting elevated path is
/// reflected below the axis. The number of flaw blocks is the stem size.
pub fn drt_to_free_dyck(drt: &DoublyRootedTree) -> LatticePath {
    let d = butterfly_decompose(drt);
    let positives = d
        .butterflies
        .iter()
        .map(|b| glove_tree_to_dyck(&b.left))
        .chain(std::iter::once(glove_tree_to_dyck(&d.tail)))
        .collect();
    let blocks = d
        .butterflies
        .iter()
        .map(|b| glove_tree_to_dyck(&b.right))
        .collect();
    interleave(positives, blocks)
}

pub fn free_dyck_to_drt(path: &LatticePath) -> Result<DoublyRootedTree> {
    if path.has_horiz() {
        return Err(ButterflyError::domain(format!(
            "{path} uses horizontal steps; expected a free Dyck path"
        )));
    }
    let split = split_at_flaw_blocks(path)?;
    let mut lefts = split
        .positives
        .iter()
        .map(glove_dyck_to_tree)
        .collect::<Result<Vec<_>>>()?;
    let tail = lefts.pop().expect("at least one positive part");
    let butterflies = lefts
        .into_iter()
        .zip(&split.blocks)
        .map(|(left, q)| {
            Ok(Butterfly {
                left,
                right: glove_dyck_to_tree(q)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(butterfly_compose(&ButterflyDecomposition {
        butterflies,
        tail,
    }))
}

/// Each black root subtree becomes a flaw block, each white one an elevated
/// segment above the axis, in left-to-right order.
pub fn bicolored_to_free_dyck(t: &KColoredTree) -> Result<LatticePath> {
    if t.k() != 2 {
        return Err(ButterflyError::domain(format!(
            "expected a bicolored tree, found {} colors",
            t.k()
        )));
    }
    Ok(LatticePath::concat(t.colored_children().map(
        |(color, sub)| {
            let elevated = glove_tree_to_dyck(sub).elevate();
            if color == BLACK {
                elevated.reflect()
            } else {
                elevated
            }
        },
    )))
}

pub fn free_dyck_to_bicolored(path: &LatticePath) -> Result<KColoredTree> {
    if path.has_horiz() {
        return Err(ButterflyError::domain(format!(
            "{path} uses horizontal steps; expected a free Dyck path"
        )));
    }
    let children = decompose(path)?
        .into_segments()
        .into_iter()
        .map(|seg| {
            let (color, up) = match seg.kind {
                SegmentKind::Negative => (BLACK, seg.path.reflect()),
                _ => (WHITE, seg.path),
            };
            let steps = up.into_steps();
            let inner = LatticePath::new(steps[1..steps.len() - 1].to_vec());
            Ok((color, glove_dyck_to_tree(&inner)?))
        })
        .collect::<Result<Vec<_>>>()?;
    KColoredTree::from_colored_children(2, children)
}

/// Root subtrees `L_1 T_1 L_2 T_2 ... L_k T_k T'` where the children of each
/// `L_i` and of `T'` are colored `left_color` and each planted `R_i` (the
/// tree `T_i`) is colored by `planted_color(i)`.
fn stem_to_colored_children(
    d: &ButterflyDecomposition,
    left_color: usize,
    planted_color: impl Fn(usize) -> usize,
) -> Vec<(usize, PlaneTree)> {
    let mut children = Vec::new();
    for (i, b) in d.butterflies.iter().enumerate() {
        children.extend(b.left.children().iter().map(|c| (left_color, c.clone())));
        children.push((planted_color(i), b.right.clone()));
    }
    children.extend(d.tail.children().iter().map(|c| (left_color, c.clone())));
    children
}

/// Inverse of [`stem_to_colored_children`]: every root child not colored
/// `left_color` closes a butterfly. Returns the decomposition and the color
/// of each planted subtree.
fn colored_children_to_stem(
    t: &KColoredTree,
    left_color: usize,
) -> (ButterflyDecomposition, Vec<usize>) {
    let mut butterflies = Vec::new();
    let mut planted_colors = Vec::new();
    let mut pending = Vec::new();
    for (color, sub) in t.colored_children() {
        if color == left_color {
            pending.push(sub.clone());
        } else {
            butterflies.push(Butterfly {
                left: PlaneTree::from_children(std::mem::take(&mut pending)),
                right: sub.clone(),
            });
            planted_colors.push(color);
        }
    }
    let tail = PlaneTree::from_children(pending);
    (ButterflyDecomposition { butterflies, tail }, planted_colors)
}

/// Direct correspondence between doubly rooted and bicolored trees: the
/// children of every `L_i` and of `T'` are black, every planted `R_i` white.
pub fn drt_to_bicolored(drt: &DoublyRootedTree) -> KColoredTree {
    let d = butterfly_decompose(drt);
    KColoredTree::from_colored_children(2, stem_to_colored_children(&d, BLACK, |_| WHITE))
        .expect("two colors")
}

pub fn bicolored_to_drt(t: &KColoredTree) -> Result<DoublyRootedTree> {
    if t.k() != 2 {
        return Err(ButterflyError::domain(format!(
            "expected a bicolored tree, found {} colors",
            t.k()
        )));
    }
    let (d, _) = colored_children_to_stem(t, BLACK);
    Ok(butterfly_compose(&d))
}

/// Swaps black and white.
pub fn complement_bicolored(t: &KColoredTree) -> KColoredTree {
    let colors = t
        .root_child_colors()
        .iter()
        .map(|&c| 1 - c.min(1))
        .collect();
    KColoredTree::new(t.tree().clone(), t.k(), colors).expect("same shape")
}

/// Leaf colors of a standalone tree, keyed by vertex ids relative to its root.
type LocalColors = BTreeMap<VertexId, LeafColor>;

fn schroder_word(tree: &PlaneTree, colors: &LocalColors) -> Result<LatticePath> {
    fn walk(
        t: &PlaneTree,
        path: &mut Vec<usize>,
        colors: &LocalColors,
        out: &mut Vec<Step>,
    ) -> Result<()> {
        for (i, c) in t.children().iter().enumerate() {
            path.push(i);
            if c.is_childless() {
                let v = VertexId::new(path.clone());
                match colors.get(&v) {
                    Some(LeafColor::Red) => out.extend([Step::Up, Step::Down]),
                    Some(LeafColor::Blue) => out.push(Step::Horiz),
                    None => return Err(ButterflyError::domain(format!("leaf {v} has no color"))),
                }
            } else {
                out.push(Step::Up);
                walk(c, path, colors, out)?;
                out.push(Step::Down);
            }
            path.pop();
        }
        Ok(())
    }
    let mut out = Vec::new();
    walk(tree, &mut Vec::new(), colors, &mut out)?;
    Ok(LatticePath::new(out))
}

fn schroder_word_to_tree(path: &LatticePath) -> Result<(PlaneTree, LocalColors)> {
    fn parse_forest(
        steps: &[Step],
        pos: &mut usize,
        path: &mut Vec<usize>,
        colors: &mut LocalColors,
    ) -> Result<Vec<PlaneTree>> {
        let mut children = Vec::new();
        while let Some(&step) = steps.get(*pos) {
            path.push(children.len());
            match step {
                Step::Down => {
                    path.pop();
                    break;
                }
                Step::Horiz => {
                    *pos += 1;
                    colors.insert(VertexId::new(path.clone()), LeafColor::Blue);
                    children.push(PlaneTree::single_vertex());
                }
                Step::Up if steps.get(*pos + 1) == Some(&Step::Down) => {
                    *pos += 2;
                    colors.insert(VertexId::new(path.clone()), LeafColor::Red);
                    children.push(PlaneTree::single_vertex());
                }
                Step::Up => {
                    *pos += 1;
                    let grand = parse_forest(steps, pos, path, colors)?;
                    if steps.get(*pos) != Some(&Step::Down) {
                        return Err(ButterflyError::domain("unbalanced Schröder word"));
                    }
                    *pos += 1;
                    children.push(PlaneTree::from_children(grand));
                }
            }
            path.pop();
        }
        Ok(children)
    }
    if !path.is_free() || !path.is_nonnegative() {
        return Err(ButterflyError::domain(format!(
            "{path} is not a Schröder path"
        )));
    }
    let mut colors = LocalColors::new();
    let mut pos = 0;
    let children = parse_forest(path.steps(), &mut pos, &mut Vec::new(), &mut colors)?;
    debug_assert_eq!(pos, path.len());
    Ok((PlaneTree::from_children(children), colors))
}

/// Leaf-colored plane trees to Schröder paths along a left-to-right
/// preorder walk: an internal edge gives `U` going down and `D` coming back,
/// an edge to a red leaf gives `UD`, an edge to a blue leaf gives `H`.
pub fn leafcolored_to_schroder(t: &LeafColoredTree) -> Result<LatticePath> {
    if let Some(w) = t.distinguished() {
        return Err(ButterflyError::domain(format!(
            "tree has distinguished vertex {w}; use the doubly rooted map"
        )));
    }
    schroder_word(t.tree(), t.leaf_colors())
}

pub fn schroder_to_leafcolored(path: &LatticePath) -> Result<LeafColoredTree> {
    let (tree, colors) = schroder_word_to_tree(path)?;
    LeafColoredTree::new(tree, colors, None)
}

/// Where a vertex of a doubly rooted tree lands in its butterfly decomposition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Piece {
    Left(usize),
    Right(usize),
    Tail,
}

/// Locates a non-stem vertex: its piece and its id relative to that piece.
fn locate(stem: &[usize], v: &VertexId) -> Option<(Piece, VertexId)> {
    let p = v.path();
    let common = stem.iter().zip(p).take_while(|(a, b)| a == b).count();
    if common == stem.len() {
        return Some((Piece::Tail, VertexId::new(p[common..].to_vec())));
    }
    let idx = *p.get(common)?;
    let c = stem[common];
    if idx < c {
        Some((Piece::Left(common), VertexId::new(p[common..].to_vec())))
    } else {
        let mut local = vec![idx - c - 1];
        local.extend_from_slice(&p[common + 1..]);
        Some((Piece::Right(common), VertexId::new(local)))
    }
}

fn globalize(stem: &[usize], piece: Piece, local: &VertexId) -> VertexId {
    let l = local.path();
    let mut out;
    match piece {
        Piece::Tail => {
            out = stem.to_vec();
            out.extend_from_slice(l);
        }
        Piece::Left(i) => {
            out = stem[..i].to_vec();
            out.extend_from_slice(l);
        }
        Piece::Right(i) => {
            out = stem[..i].to_vec();
            out.push(l[0] + stem[i] + 1);
            out.extend_from_slice(&l[1..]);
        }
    }
    VertexId::new(out)
}

/// Leaf-colored doubly rooted trees to free Schröder paths. Same layout as
/// [`drt_to_free_dyck`] with the leaf-colored preorder word in place of the
/// glove word; the edge added above each `R_i` is always internal.
pub fn leafcolored_drt_to_free_schroder(t: &LeafColoredTree) -> Result<LatticePath> {
    let drt = t.doubly_rooted().ok_or_else(|| {
        ButterflyError::domain("tree has no distinguished vertex; use the plain map")
    })?;
    let stem = drt.distinguished().path().to_vec();
    let d = butterfly_decompose(&drt);
    let k = d.butterflies.len();
    let mut left_colors = vec![LocalColors::new(); k];
    let mut right_colors = vec![LocalColors::new(); k];
    let mut tail_colors = LocalColors::new();
    for (v, &color) in t.leaf_colors() {
        let (piece, local) = locate(&stem, v).expect("colored vertices are off the stem");
        let bucket = match piece {
            Piece::Left(i) => &mut left_colors[i],
            Piece::Right(i) => &mut right_colors[i],
            Piece::Tail => &mut tail_colors,
        };
        bucket.insert(local, color);
    }
    let mut positives = Vec::with_capacity(k + 1);
    let mut blocks = Vec::with_capacity(k);
    for (i, b) in d.butterflies.iter().enumerate() {
        positives.push(schroder_word(&b.left, &left_colors[i])?);
        blocks.push(schroder_word(&b.right, &right_colors[i])?);
    }
    positives.push(schroder_word(&d.tail, &tail_colors)?);
    Ok(interleave(positives, blocks))
}

pub fn free_schroder_to_leafcolored_drt(path: &LatticePath) -> Result<LeafColoredTree> {
    let split = split_at_flaw_blocks(path)?;
    let mut lefts = split
        .positives
        .iter()
        .map(schroder_word_to_tree)
        .collect::<Result<Vec<_>>>()?;
    let (tail, tail_colors) = lefts.pop().expect("at least one positive part");
    let rights = split
        .blocks
        .iter()
        .map(schroder_word_to_tree)
        .collect::<Result<Vec<_>>>()?;
    let mut butterflies = Vec::with_capacity(rights.len());
    let mut piece_colors = Vec::new();
    for (i, ((left, lc), (right, rc))) in lefts.into_iter().zip(rights).enumerate() {
        piece_colors.push((Piece::Left(i), lc));
        piece_colors.push((Piece::Right(i), rc));
        butterflies.push(Butterfly { left, right });
    }
    piece_colors.push((Piece::Tail, tail_colors));
    let drt = butterfly_compose(&ButterflyDecomposition { butterflies, tail });
    let stem = drt.distinguished().path().to_vec();
    let colors = piece_colors
        .iter()
        .flat_map(|(piece, local)| {
            local
                .iter()
                .map(|(v, &c)| (globalize(&stem, *piece, v), c))
                .collect::<Vec<_>>()
        })
        .collect();
    let (tree, w) = drt.into_parts();
    LeafColoredTree::new(tree, colors, Some(w))
}

/// Chains to tricolored trees. The deepest member `w` is distinguished; the
/// children of each `L_i` and of `T'` are red, each planted `R_i` is white
/// when `v_i` belongs to the chain and black otherwise.
pub fn chain_to_tricolored(c: &Chain) -> KColoredTree {
    let w = c.deepest();
    let drt = DoublyRootedTree::new(c.tree().clone(), w.clone()).expect("chain members exist");
    let d = butterfly_decompose(&drt);
    let children = stem_to_colored_children(&d, RED, |i| {
        if c.contains(&w.ancestor_at(i)) {
            WHITE
        } else {
            BLACK
        }
    });
    KColoredTree::from_colored_children(3, children).expect("three colors")
}

pub fn tricolored_to_chain(t: &KColoredTree) -> Result<Chain> {
    if t.k() != 3 {
        return Err(ButterflyError::domain(format!(
            "expected a tricolored tree, found {} colors",
            t.k()
        )));
    }
    let (d, planted) = colored_children_to_stem(t, RED);
    let drt = butterfly_compose(&d);
    let w = drt.distinguished().clone();
    let mut members: BTreeSet<VertexId> = planted
        .iter()
        .enumerate()
        .filter(|(_, &color)| color == WHITE)
        .map(|(i, _)| w.ancestor_at(i))
        .collect();
    members.insert(w);
    Chain::new(drt.into_parts().0, members)
}

/// Colored chains with a palette of `t` colors to `(t + 2)`-colored trees.
/// Color 0 marks planted subtrees off the chain, `1 + c` planted subtrees
/// whose stem vertex has chain color `c`, and `t + 1` the children of the
/// `L_i` and of `T'`.
pub fn colored_chain_to_kcolored(c: &ColoredChain) -> KColoredTree {
    let chain = c.chain();
    let w = chain.deepest();
    let k = c.palette() + 2;
    let drt = DoublyRootedTree::new(chain.tree().clone(), w.clone()).expect("chain members exist");
    let d = butterfly_decompose(&drt);
    let children = stem_to_colored_children(&d, k - 1, |i| match c.color(&w.ancestor_at(i)) {
        Some(color) => 1 + color,
        None => BLACK,
    });
    KColoredTree::from_colored_children(k, children).expect("colors below k")
}

pub fn kcolored_to_colored_chain(t: &KColoredTree) -> Result<ColoredChain> {
    if t.k() < 3 {
        return Err(ButterflyError::domain(format!(
            "colored chains need at least three tree colors, found {}",
            t.k()
        )));
    }
    let palette = t.k() - 2;
    let (d, planted) = colored_children_to_stem(t, t.k() - 1);
    let drt = butterfly_compose(&d);
    let w = drt.distinguished().clone();
    let colors: BTreeMap<VertexId, usize> = planted
        .iter()
        .enumerate()
        .filter(|(_, &color)| color != BLACK)
        .map(|(i, &color)| (w.ancestor_at(i), color - 1))
        .collect();
    let mut members: BTreeSet<VertexId> = colors.keys().cloned().collect();
    members.insert(w);
    let chain = Chain::new(drt.into_parts().0, members)?;
    ColoredChain::new(chain, palette, colors)
}

/// Number of edges on the path from the root to the distinguished vertex.
pub fn stem_size(drt: &DoublyRootedTree) -> usize {
    drt.distinguished().depth()
}

/// Edges on the stem or to the right of it, counted structurally.
pub fn prefix_edge_count(drt: &DoublyRootedTree) -> usize {
    let stem = drt.distinguished();
    drt.tree()
        .vertices()
        .iter()
        .filter(|v| !v.is_root())
        .filter(|v| {
            v.is_ancestor_of(stem)
                || *v == stem
                || matches!(locate(stem.path(), v), Some((Piece::Right(_), _)))
        })
        .count()
}

/// Prefix edges by label: edges whose lower vertex has a right-to-left
/// preorder label not exceeding that of the distinguished vertex.
pub fn prefix_edge_count_by_label(drt: &DoublyRootedTree) -> usize {
    let labels = rl_preorder_labels(drt.tree());
    let bound = labels[drt.distinguished()];
    labels
        .iter()
        .filter(|(v, &label)| !v.is_root() && label <= bound)
        .count()
}

/// Fully leaf-colored tree plus a label: distinguish the vertex with that
/// right-to-left preorder label, drop its color if it is a leaf, and map to
/// a free Schröder path.
pub fn leafcolored_label_image(t: &LeafColoredTree, m: usize) -> Result<LatticePath> {
    if t.distinguished().is_some() {
        return Err(ButterflyError::domain(
            "expected a tree without distinguished vertex",
        ));
    }
    let drt = crate::trees::distinguish_by_label(t.tree(), m)?;
    let (tree, w) = drt.into_parts();
    let mut colors = t.leaf_colors().clone();
    colors.remove(&w);
    let marked = LeafColoredTree::new(tree, colors, Some(w))?;
    leafcolored_drt_to_free_schroder(&marked)
}
