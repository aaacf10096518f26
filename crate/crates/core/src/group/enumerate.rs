//! Deterministic, duplicate-free enumeration of backend elements.
//!
//! Enumeration proceeds in stages. Stage `s` emits every element of weight
//! `≤ s` over the generators admitted at stage `s` that an earlier stage did
//! not emit, ordered by weight and then lexicographically on unit letters.
//! Free backends admit `g0..gs`; tree words admit nodes of depth `≤ s`.
//! Index 0 is always the identity.

use itertools::Itertools;

use super::abelian::{AbelianElement, Moduli};
use super::word::{Unit, Word};
use super::{Backend, Element, Rank};
use crate::tree::{SdElement, TreeAut, TreeNode, MAX_DEPTH};

/// Which generators each stage admits.
#[derive(Clone, Copy, Debug)]
pub enum Schedule {
    Free(Rank),
    /// Nodes of depth `≤ s`.
    Tree,
}

impl Schedule {
    fn generators_at(self, stage: usize) -> u32 {
        match self {
            Schedule::Free(Rank::Finite(r)) => (stage as u32 + 1).min(r),
            Schedule::Free(Rank::Omega) => stage as u32 + 1,
            Schedule::Tree => {
                let depth = stage.min(MAX_DEPTH as usize - 1);
                (1u32 << (depth + 1)) - 1
            }
        }
    }
}

/// Caching enumerator of reduced words.
#[derive(Clone, Debug)]
pub struct WordEnumerator {
    schedule: Schedule,
    next_stage: usize,
    cache: Vec<Word>,
}

impl WordEnumerator {
    pub fn new(schedule: Schedule) -> Self {
        WordEnumerator { schedule, next_stage: 0, cache: Vec::new() }
    }

    /// Words over the tree nodes, the enumeration of `F(T)`.
    pub fn tree() -> Self {
        Self::new(Schedule::Tree)
    }

    pub fn get(&mut self, i: usize) -> &Word {
        while self.cache.len() <= i {
            self.run_stage();
        }
        &self.cache[i]
    }

    /// Position of `w` if it occurs among the first `limit` words.
    pub fn position(&mut self, w: &Word, limit: usize) -> Option<usize> {
        (0..limit).find(|&i| self.get(i) == w)
    }

    fn run_stage(&mut self) {
        let s = self.next_stage;
        self.next_stage += 1;
        if s == 0 {
            self.cache.push(Word::identity());
            return;
        }
        let old = self.schedule.generators_at(s - 1);
        let gens = self.schedule.generators_at(s);
        let mut buf = Vec::with_capacity(s);
        for weight in 1..=s {
            let must_use_new = weight < s;
            if must_use_new && gens == old {
                continue;
            }
            extend_words(&mut buf, weight, gens, old, must_use_new, &mut self.cache);
        }
    }
}

/// Appends, in lexicographic order, every reduced word with exactly `weight`
/// unit letters over `gens` generators (using one of index `≥ old` if asked).
fn extend_words(buf: &mut Vec<Unit>, weight: usize, gens: u32, old: u32, must_use_new: bool, out: &mut Vec<Word>) {
    if buf.len() == weight {
        if !must_use_new || buf.iter().any(|&(g, _)| g >= old) {
            out.push(Word::from_units(buf.iter().copied()));
        }
        return;
    }
    for gen in 0..gens {
        for inv in [false, true] {
            if let Some(&(g, i)) = buf.last() {
                if g == gen && i != inv {
                    continue;
                }
            }
            buf.push((gen, inv));
            extend_words(buf, weight, gens, old, must_use_new, out);
            buf.pop();
        }
    }
}

#[derive(Clone, Debug)]
pub struct AbelianEnumerator {
    moduli: Moduli,
    next_stage: usize,
    cache: Vec<AbelianElement>,
    exhausted: bool,
}

impl AbelianEnumerator {
    pub fn new(moduli: Moduli) -> Self {
        AbelianEnumerator { moduli, next_stage: 0, cache: Vec::new(), exhausted: false }
    }

    fn indices_at(&self, stage: usize) -> u32 {
        let n = stage as u32 + 1;
        self.moduli.summands().map_or(n, |c| n.min(c))
    }

    fn max_weight(&self) -> Option<u64> {
        match &self.moduli {
            Moduli::List(ms) if self.moduli.is_finite_group() => Some(ms.iter().map(|m| m - 1).sum()),
            _ => None,
        }
    }

    pub fn get(&mut self, i: usize) -> Option<&AbelianElement> {
        while self.cache.len() <= i && !self.exhausted {
            self.run_stage();
        }
        self.cache.get(i)
    }

    fn run_stage(&mut self) {
        let s = self.next_stage;
        self.next_stage += 1;
        if s == 0 {
            self.cache.push(AbelianElement::identity());
            return;
        }
        if let (Some(maxw), Some(count)) = (self.max_weight(), self.moduli.summands()) {
            if s as u64 > maxw && s >= count as usize {
                self.exhausted = true;
                return;
            }
        }
        let old = self.indices_at(s - 1);
        let n = self.indices_at(s);
        for weight in 1..=s {
            let must_use_new = weight < s;
            let mut batch = Vec::new();
            let mut exps = Vec::new();
            self.extend(&mut exps, 0, n, weight as u64, &mut batch);
            batch.retain(|a: &AbelianElement| !must_use_new || a.support().any(|i| i >= old));
            batch.sort();
            self.cache.extend(batch);
        }
    }

    fn extend(&self, exps: &mut Vec<(u32, i64)>, index: u32, n: u32, remaining: u64, out: &mut Vec<AbelianElement>) {
        if remaining == 0 {
            out.push(self.moduli.element(exps.iter().copied()));
            return;
        }
        if index == n {
            return;
        }
        self.extend(exps, index + 1, n, remaining, out);
        let choices: Vec<i64> = match self.moduli.modulus(index) {
            Some(0) => (1..=remaining as i64).flat_map(|e| [e, -e]).collect(),
            Some(m) => (1..(m as i64).min(remaining as i64 + 1)).collect(),
            None => Vec::new(),
        };
        for e in choices {
            exps.push((index, e));
            self.extend(exps, index + 1, n, remaining - e.unsigned_abs(), out);
            exps.pop();
        }
    }
}

/// Finitary automorphisms ordered by deepest label, label count, then the
/// sorted label list; index 0 is the identity.
#[derive(Clone, Debug)]
pub struct AutEnumerator {
    cache: Vec<TreeAut>,
    level: usize,
    size: usize,
}

impl Default for AutEnumerator {
    fn default() -> Self {
        Self::new()
    }
}

impl AutEnumerator {
    pub fn new() -> Self {
        AutEnumerator { cache: vec![TreeAut::identity()], level: 0, size: 1 }
    }

    pub fn get(&mut self, i: usize) -> &TreeAut {
        while self.cache.len() <= i {
            self.run_block();
        }
        &self.cache[i]
    }

    /// Emits all label sets of the current size whose deepest node sits at
    /// the current level.
    fn run_block(&mut self) {
        let level = self.level;
        let nodes: Vec<TreeNode> = TreeNode::up_to_depth(level).collect();
        let size = self.size;
        if size == 1 {
            self.cache
                .extend(nodes.iter().filter(|n| n.depth() == level).map(|&n| TreeAut::swap([n])));
        } else {
            // the deepest node is the last one in canonical order
            self.cache.extend(
                nodes
                    .iter()
                    .copied()
                    .combinations(size)
                    .filter(|c| c.last().is_some_and(|n| n.depth() == level))
                    .map(TreeAut::swap),
            );
        }
        if size == nodes.len() {
            self.level += 1;
            self.size = 1;
        } else {
            self.size += 1;
        }
    }
}

/// Cantor pairing of `F(T)` word indices with automorphism indices.
#[derive(Clone, Debug)]
pub struct SdEnumerator {
    words: WordEnumerator,
    auts: AutEnumerator,
}

impl Default for SdEnumerator {
    fn default() -> Self {
        Self::new()
    }
}

impl SdEnumerator {
    pub fn new() -> Self {
        SdEnumerator { words: WordEnumerator::tree(), auts: AutEnumerator::new() }
    }

    /// `(word index, automorphism index)` for position `i`.
    pub fn unpair(i: usize) -> (usize, usize) {
        let mut d = (((8.0 * i as f64 + 1.0).sqrt() - 1.0) / 2.0) as usize;
        while d * (d + 1) / 2 > i {
            d -= 1;
        }
        while (d + 1) * (d + 2) / 2 <= i {
            d += 1;
        }
        let t = i - d * (d + 1) / 2;
        (d - t, t)
    }

    pub fn get(&mut self, i: usize) -> SdElement {
        let (j, k) = Self::unpair(i);
        let word = self.words.get(j).clone();
        SdElement::new(word, self.auts.get(k).clone())
    }
}

#[derive(Clone, Debug)]
pub enum Enumerator {
    Word(WordEnumerator, usize),
    Abelian(AbelianEnumerator, usize),
    Sd(Box<SdEnumerator>, usize),
}

impl Enumerator {
    pub fn new(backend: &Backend) -> Self {
        match backend {
            Backend::Free(rank) => Enumerator::Word(WordEnumerator::new(Schedule::Free(*rank)), 0),
            Backend::Abelian(m) => Enumerator::Abelian(AbelianEnumerator::new(m.clone()), 0),
            Backend::TreeSd => Enumerator::Sd(Box::default(), 0),
        }
    }

    /// Element at position `i`; `None` only past the end of a finite group.
    pub fn element_at(&mut self, i: usize) -> Option<Element> {
        match self {
            Enumerator::Word(e, _) => Some(Element::Free(e.get(i).clone())),
            Enumerator::Abelian(e, _) => e.get(i).cloned().map(Element::Abelian),
            Enumerator::Sd(e, _) => Some(Element::Sd(e.get(i))),
        }
    }
}

impl Iterator for Enumerator {
    type Item = Element;

    fn next(&mut self) -> Option<Element> {
        let i = match self {
            Enumerator::Word(_, i) | Enumerator::Abelian(_, i) | Enumerator::Sd(_, i) => {
                *i += 1;
                *i - 1
            }
        };
        self.element_at(i)
    }
}

/// The `i`-th element of the backend's canonical enumeration.
pub fn enumerate_elements(backend: &Backend, i: usize) -> Option<Element> {
    Enumerator::new(backend).element_at(i)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn free_prefix() {
        let b = Backend::free(2);
        let got: Vec<String> = b.enumerator().take(6).map(|e| e.to_string()).collect();
        assert_eq!(got, ["1", "g0", "g0^-1", "g1", "g1^-1", "g0^2"]);
        assert_eq!(enumerate_elements(&b, 1).unwrap().to_string(), "g0");
    }

    #[test]
    fn tree_prefix() {
        let mut e = WordEnumerator::tree();
        assert!(e.get(0).is_identity());
        assert_eq!(e.get(1).to_literal(crate::group::Alphabet::Node), "n[]");
        assert_eq!(e.get(3).to_literal(crate::group::Alphabet::Node), "n[0]");
    }

    #[test]
    fn stage_growth_is_duplicate_free() {
        for b in [Backend::free(2), Backend::free_omega(), Backend::abelian(3), Backend::TreeSd] {
            let seen: HashSet<Element> = b.enumerator().take(2000).collect();
            assert_eq!(seen.len(), 2000, "{b}");
        }
    }

    #[test]
    fn finite_abelian_is_exhaustive() {
        let b: Backend = "abelian:[2,3]".parse().unwrap();
        let all: Vec<Element> = b.enumerator().collect();
        assert_eq!(all.len(), 6);
        assert!(all[0].is_identity());
        let distinct: HashSet<_> = all.iter().collect();
        assert_eq!(distinct.len(), 6);
    }

    #[test]
    fn aut_order() {
        let mut e = AutEnumerator::new();
        let got: Vec<String> = (0..9).map(|i| e.get(i).to_string()).collect();
        assert_eq!(
            got,
            [
                "id",
                "swap{[]}",
                "swap{[0]}",
                "swap{[1]}",
                "swap{[],[0]}",
                "swap{[],[1]}",
                "swap{[0],[1]}",
                "swap{[],[0],[1]}",
                "swap{[00]}",
            ]
        );
        // 1 + 1 + 6 + 120 automorphisms with labels up to depth 2
        let level2: Vec<TreeAut> = (0..128).map(|i| e.get(i).clone()).collect();
        assert!(level2.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(e.get(128).max_label_depth(), Some(3));
    }

    #[test]
    fn sd_pairing() {
        assert_eq!(SdEnumerator::unpair(0), (0, 0));
        assert_eq!(SdEnumerator::unpair(1), (1, 0));
        assert_eq!(SdEnumerator::unpair(2), (0, 1));
        assert_eq!(SdEnumerator::unpair(3), (2, 0));
        let mut seen = HashSet::new();
        for i in 0..5000 {
            assert!(seen.insert(SdEnumerator::unpair(i)));
        }
        let mut e = SdEnumerator::new();
        assert!(e.get(0).is_identity());
        let first_pure_aut = (1..50).map(|i| e.get(i)).find(|x| x.word.is_identity()).unwrap();
        assert_eq!(first_pure_aut.to_string(), "(1;swap{[]})");
    }
}
