//! The rooted binary tree, its finitary automorphisms and the semidirect
//! product `F(T) ⋊ Aut(T)`.
//!
//! Nodes double as free generators: [`TreeNode::index`] numbers nodes in
//! canonical order (length, then lexicographic with `0 < 1`), which is the
//! heap numbering `root = 0`, `left(p) = 2p+1`, `right(p) = 2p+2`. A word over
//! node generators is therefore an ordinary [`Word`].

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use crate::group::word::{Alphabet, Word};

/// Deepest node representable as a `u32` generator index.
pub const MAX_DEPTH: u8 = 31;

/// A finite bit path from the root. `path` holds the bits with the first
/// step in the most significant position.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TreeNode {
    len: u8,
    path: u64,
}

impl TreeNode {
    pub const ROOT: TreeNode = TreeNode { len: 0, path: 0 };

    pub fn from_bits(bits: &[bool]) -> Option<TreeNode> {
        if bits.len() > MAX_DEPTH as usize {
            return None;
        }
        let path = bits.iter().fold(0u64, |acc, &b| (acc << 1) | b as u64);
        Some(TreeNode { len: bits.len() as u8, path })
    }

    pub fn depth(self) -> usize {
        self.len as usize
    }

    pub fn bit(self, i: usize) -> bool {
        debug_assert!(i < self.depth());
        (self.path >> (self.len as usize - 1 - i)) & 1 == 1
    }

    pub fn bits(self) -> Vec<bool> {
        (0..self.depth()).map(|i| self.bit(i)).collect()
    }

    /// `self ⌢ bit`
    pub fn child(self, bit: bool) -> TreeNode {
        assert!(self.len < MAX_DEPTH, "tree depth limit exceeded");
        TreeNode { len: self.len + 1, path: (self.path << 1) | bit as u64 }
    }

    pub fn left(self) -> TreeNode {
        self.child(false)
    }

    pub fn right(self) -> TreeNode {
        self.child(true)
    }

    pub fn parent(self) -> Option<TreeNode> {
        (self.len > 0).then(|| TreeNode { len: self.len - 1, path: self.path >> 1 })
    }

    /// The ancestor of length `i` (`i ≤ depth`).
    pub fn prefix(self, i: usize) -> TreeNode {
        debug_assert!(i <= self.depth());
        TreeNode { len: i as u8, path: self.path >> (self.depth() - i) }
    }

    pub fn index(self) -> u32 {
        ((1u64 << self.len) - 1 + self.path) as u32
    }

    pub fn from_index(index: u32) -> TreeNode {
        let n = index as u64 + 1;
        let len = 63 - n.leading_zeros();
        TreeNode { len: len as u8, path: n - (1u64 << len) }
    }

    /// All nodes of depth `≤ depth` in canonical order.
    pub fn up_to_depth(depth: usize) -> impl Iterator<Item = TreeNode> {
        (0..(1u32 << (depth + 1)) - 1).map(TreeNode::from_index)
    }
}

impl fmt::Display for TreeNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for b in self.bits() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        f.write_str("]")
    }
}

/// A finitary automorphism given by its portrait: the set of nodes whose
/// swap label is 1. A node's label decides whether the two subtrees below it
/// are exchanged.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct TreeAut {
    labels: BTreeSet<TreeNode>,
}

impl TreeAut {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn swap<I: IntoIterator<Item = TreeNode>>(nodes: I) -> Self {
        TreeAut { labels: nodes.into_iter().collect() }
    }

    pub fn is_identity(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &BTreeSet<TreeNode> {
        &self.labels
    }

    pub fn label(&self, node: TreeNode) -> bool {
        self.labels.contains(&node)
    }

    /// Bit `i` of the image is bit `i` of `t` flipped by the label at the
    /// length-`i` prefix of `t`.
    pub fn apply(&self, t: TreeNode) -> TreeNode {
        if self.labels.is_empty() {
            return t;
        }
        let mut path = 0u64;
        for i in 0..t.depth() {
            let bit = t.bit(i) ^ self.label(t.prefix(i));
            path = (path << 1) | bit as u64;
        }
        TreeNode { len: t.len, path }
    }

    pub fn apply_inverse(&self, y: TreeNode) -> TreeNode {
        if self.labels.is_empty() {
            return y;
        }
        let mut t = TreeNode::ROOT;
        for i in 0..y.depth() {
            t = t.child(y.bit(i) ^ self.label(t));
        }
        t
    }

    /// `self ∘ g`, i.e. apply `g` first.
    pub fn compose(&self, g: &TreeAut) -> TreeAut {
        let candidates: BTreeSet<TreeNode> = g
            .labels
            .iter()
            .copied()
            .chain(self.labels.iter().map(|&s| g.apply_inverse(s)))
            .collect();
        let labels = candidates
            .into_iter()
            .filter(|&s| g.label(s) ^ self.label(g.apply(s)))
            .collect();
        TreeAut { labels }
    }

    pub fn inverse(&self) -> TreeAut {
        TreeAut { labels: self.labels.iter().map(|&s| self.apply(s)).collect() }
    }

    /// The canonically smallest labelled node. Its left child is a moved node
    /// of minimal height.
    pub fn minimal_labeled_node(&self) -> Option<TreeNode> {
        self.labels.first().copied()
    }

    pub fn max_label_depth(&self) -> Option<usize> {
        self.labels.last().map(|n| n.depth())
    }

    /// The induced automorphism of the free group over the nodes.
    pub fn act_word(&self, w: &Word) -> Word {
        if self.labels.is_empty() {
            return w.clone();
        }
        w.map_generators(|g| self.apply(TreeNode::from_index(g)).index())
    }
}

impl Ord for TreeAut {
    /// Enumeration order: deepest label, then number of labels, then the
    /// sorted label lists lexicographically.
    fn cmp(&self, other: &Self) -> Ordering {
        let depth = |a: &TreeAut| a.max_label_depth().map_or(-1, |d| d as i64);
        depth(self)
            .cmp(&depth(other))
            .then(self.labels.len().cmp(&other.labels.len()))
            .then_with(|| self.labels.iter().cmp(other.labels.iter()))
    }
}

impl PartialOrd for TreeAut {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for TreeAut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.labels.is_empty() {
            return f.write_str("id");
        }
        f.write_str("swap{")?;
        for (i, n) in self.labels.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{n}")?;
        }
        f.write_str("}")
    }
}

/// An element `(w, f)` of `F(T) ⋊ Aut(T)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SdElement {
    pub word: Word,
    pub aut: TreeAut,
}

impl SdElement {
    pub fn new(word: Word, aut: TreeAut) -> Self {
        SdElement { word, aut }
    }

    pub fn identity() -> Self {
        Self::default()
    }

    pub fn from_word(word: Word) -> Self {
        SdElement { word, aut: TreeAut::identity() }
    }

    pub fn from_aut(aut: TreeAut) -> Self {
        SdElement { word: Word::identity(), aut }
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_identity() && self.aut.is_identity()
    }

    /// `(w,f)·(u,g) = (w·f(u), f∘g)`
    pub fn mul(&self, other: &SdElement) -> SdElement {
        SdElement {
            word: self.word.mul(&self.aut.act_word(&other.word)),
            aut: self.aut.compose(&other.aut),
        }
    }

    /// `(w,f)⁻¹ = (f⁻¹(w⁻¹), f⁻¹)`
    pub fn inverse(&self) -> SdElement {
        let inv = self.aut.inverse();
        SdElement { word: inv.act_word(&self.word.inverse()), aut: inv }
    }
}

impl fmt::Display for SdElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({};{})", self.word.display(Alphabet::Node), self.aut)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn node(s: &str) -> TreeNode {
        TreeNode::from_bits(&s.chars().map(|c| c == '1').collect::<Vec<_>>()).unwrap()
    }

    fn nw(nodes: &[(&str, i64)]) -> Word {
        Word::reduce(nodes.iter().map(|&(s, e)| (node(s).index(), e)))
    }

    #[test]
    fn node_indexing() {
        assert_eq!(TreeNode::ROOT.index(), 0);
        assert_eq!(node("0").index(), 1);
        assert_eq!(node("1").index(), 2);
        assert_eq!(node("00").index(), 3);
        assert_eq!(node("11").index(), 6);
        for i in 0..200 {
            let n = TreeNode::from_index(i);
            assert_eq!(n.index(), i);
            if let Some(p) = n.parent() {
                assert_eq!(p.index(), (i - 1) / 2);
            }
        }
        assert!(node("1") < node("00"));
        assert_eq!(node("0110").to_string(), "[0110]");
    }

    #[test]
    fn apply_examples() {
        let root = TreeAut::swap([TreeNode::ROOT]);
        assert_eq!(root.apply(node("0")), node("1"));
        assert_eq!(root.apply(node("01")), node("11"));
        assert_eq!(TreeAut::swap([node("1")]).apply(node("0")), node("0"));
    }

    #[test]
    fn compose_examples() {
        let root = TreeAut::swap([TreeNode::ROOT]);
        assert!(root.compose(&root).is_identity());
        let f = TreeAut::swap([node("0"), node("10")]);
        assert_eq!(f.compose(&TreeAut::identity()), f);
        let c = root.compose(&TreeAut::swap([node("0")]));
        assert_eq!(c, TreeAut::swap([TreeNode::ROOT, node("0")]));
    }

    #[test]
    fn inverse_examples() {
        let root = TreeAut::swap([TreeNode::ROOT]);
        assert_eq!(root.inverse(), root);
        assert!(TreeAut::identity().inverse().is_identity());
        let f = TreeAut::swap([TreeNode::ROOT, node("0"), node("11")]);
        assert!(f.compose(&f.inverse()).is_identity());
        assert!(f.inverse().compose(&f).is_identity());
    }

    #[test]
    fn minimal_node_examples() {
        assert_eq!(TreeAut::swap([node("0"), node("1")]).minimal_labeled_node(), Some(node("0")));
        assert_eq!(TreeAut::identity().minimal_labeled_node(), None);
        assert_eq!(TreeAut::swap([node("11"), node("0")]).minimal_labeled_node(), Some(node("0")));
    }

    #[test]
    fn act_word_examples() {
        let f = TreeAut::swap([TreeNode::ROOT]);
        assert_eq!(f.act_word(&nw(&[("", 1), ("0", 1)])), nw(&[("", 1), ("1", 1)]));
        let w = nw(&[("01", 2), ("", -1)]);
        assert_eq!(TreeAut::identity().act_word(&w), w);
        assert_eq!(f.act_word(&nw(&[("0", -1)])), nw(&[("1", -1)]));
    }

    #[test]
    fn sd_examples() {
        let f = TreeAut::swap([TreeNode::ROOT]);
        let x = SdElement::from_aut(f.clone()).mul(&SdElement::from_word(nw(&[("0", 1)])));
        assert_eq!(x, SdElement::new(nw(&[("1", 1)]), f.clone()));
        let (w, u) = (nw(&[("0", 1)]), nw(&[("1", 2)]));
        assert_eq!(
            SdElement::from_word(w.clone()).mul(&SdElement::from_word(u.clone())),
            SdElement::from_word(w.mul(&u))
        );
        let g = TreeAut::swap([node("1")]);
        assert_eq!(
            SdElement::from_aut(f.clone()).mul(&SdElement::from_aut(g.clone())),
            SdElement::from_aut(f.compose(&g))
        );
        assert_eq!(SdElement::from_word(w.clone()).inverse(), SdElement::from_word(w.inverse()));
        assert_eq!(SdElement::from_aut(f.clone()).inverse(), SdElement::from_aut(f));
        assert_eq!(x.to_string(), "(n[1];swap{[]})");
    }
}
