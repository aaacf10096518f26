//! The countable sets `A, B ⊂ F(T)` and the conjugation witnesses showing
//! that `{1} = ⋂ Z_w` for `W = {x a x⁻¹ b⁻¹ : a ∈ A, b ∈ B}` in
//! `G = F(T) ⋊ Aut(T)`.
//!
//! `L` holds the words `n[p] n[p0]` and `R` the words `n[p] n[p1]`.
//! `A = L^{F(T)} ∪ {aₙ}` and `B = R^{F(T)} ∪ {bₙ}` where `bₙ = wₙ aₙ wₙ⁻¹` and
//! `(wₙ)` enumerates `F(T) ∖ {1}`. Both sets are infinite, so they are kept
//! as a closure predicate plus the built prefix of `(aₙ, bₙ)`.

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::group::enumerate::{SdEnumerator, WordEnumerator};
use crate::group::word::core_span;
use crate::group::{Alphabet, Backend, Element, Letter, Word};
use crate::monomial::{Monomial, Sign};
use crate::tree::{SdElement, TreeNode};

/// Default cap on candidates inspected while searching for one `aₙ`.
pub const DEFAULT_SEARCH_CAP: usize = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LrClass {
    /// Conjugate to `n[p] n[p0]` for some node `p`.
    LeftClosure,
    /// Conjugate to `n[p] n[p1]` for some node `p`.
    RightClosure,
    Neither,
}

/// Classifies a reduced word over node generators by its cyclic core.
pub fn lr_classify(w: &Word) -> LrClass {
    lr_classify_letters(w.letters())
}

/// [`lr_classify`] on a freely reduced syllable list.
pub fn lr_classify_letters(letters: &[Letter]) -> LrClass {
    let (lo, hi, head, tail) = core_span(letters);
    if hi - lo != 2 || head != 1 || tail != 1 {
        return LrClass::Neither;
    }
    let (u, v) = (letters[lo].gen, letters[hi - 1].gen);
    let child = if u > 0 && (u - 1) / 2 == v {
        u
    } else if v > 0 && (v - 1) / 2 == u {
        v
    } else {
        return LrClass::Neither;
    };
    if child % 2 == 1 {
        LrClass::LeftClosure
    } else {
        LrClass::RightClosure
    }
}

/// `n[p] n[p⌢bit]`
pub fn successor_word(p: TreeNode, right: bool) -> Word {
    Word::from_units([(p.index(), false), (p.child(right).index(), false)])
}

/// The constructed prefix of `(wₙ, aₙ, bₙ)`.
#[derive(Clone, Debug)]
pub struct ABPairs {
    w: Vec<Word>,
    a: Vec<Word>,
    b: Vec<Word>,
    w_index: HashMap<Word, usize>,
    a_set: HashSet<Word>,
    b_set: HashSet<Word>,
    words: WordEnumerator,
    search_cap: usize,
}

impl ABPairs {
    pub fn empty(search_cap: usize) -> Self {
        ABPairs {
            w: Vec::new(),
            a: Vec::new(),
            b: Vec::new(),
            w_index: HashMap::new(),
            a_set: HashSet::new(),
            b_set: HashSet::new(),
            words: WordEnumerator::tree(),
            search_cap,
        }
    }

    pub fn count(&self) -> usize {
        self.w.len()
    }

    pub fn w(&self) -> &[Word] {
        &self.w
    }

    pub fn a(&self) -> &[Word] {
        &self.a
    }

    pub fn b(&self) -> &[Word] {
        &self.b
    }

    /// Extends the prefix until it holds `count` pairs. Each `aₙ` is the
    /// first word of the `F(T)` enumeration meeting all five conditions.
    pub fn extend_to(&mut self, count: usize) -> Result<()> {
        while self.w.len() < count {
            let n = self.w.len();
            let wn = self.words.get(n + 1).clone();
            let mut found = None;
            for idx in 0..self.search_cap {
                let cand = self.words.get(idx);
                if lr_classify(cand) != LrClass::Neither {
                    continue;
                }
                let b = cand.conjugate_by(&wn);
                if b == *cand || self.b_set.contains(cand) || self.a_set.contains(&b) {
                    continue;
                }
                found = Some((cand.clone(), b));
                break;
            }
            let (a, b) = found.ok_or(Error::BudgetExhausted { budget: self.search_cap })?;
            self.w_index.insert(wn.clone(), n);
            self.w.push(wn);
            self.a_set.insert(a.clone());
            self.b_set.insert(b.clone());
            self.a.push(a);
            self.b.push(b);
        }
        Ok(())
    }

    /// Index `n` with `wₙ = w`, if built.
    pub fn index_of(&self, w: &Word) -> Option<usize> {
        self.w_index.get(w).copied()
    }

    /// Checks every bullet condition on the built prefix, returning the first
    /// violation.
    pub fn check_invariants(&self) -> std::result::Result<(), String> {
        for n in 0..self.count() {
            let (w, a, b) = (&self.w[n], &self.a[n], &self.b[n]);
            let show = |x: &Word| x.to_literal(Alphabet::Node);
            if w.is_identity() {
                return Err(format!("w[{n}] is the identity"));
            }
            if a.conjugate_by(w) != *b {
                return Err(format!("b[{n}] = {} is not w a w^-1", show(b)));
            }
            if let Some(i) = (0..=n).find(|&i| self.b[i] == *a) {
                return Err(format!("a[{n}] = {} equals b[{i}]", show(a)));
            }
            if let Some(i) = (0..=n).find(|&i| self.a[i] == *b) {
                return Err(format!("b[{n}] = {} equals a[{i}]", show(b)));
            }
            if lr_classify(a) != LrClass::Neither {
                return Err(format!("a[{n}] = {} lies in a closure", show(a)));
            }
            if lr_classify(b) == LrClass::LeftClosure {
                return Err(format!("b[{n}] = {} lies in the left closure", show(b)));
            }
        }
        Ok(())
    }

    /// Membership in `A = L^{F(T)} ∪ {aₙ}`.
    pub fn in_a(&self, g: &Word) -> Result<bool> {
        match lr_classify(g) {
            LrClass::LeftClosure => Ok(true),
            LrClass::RightClosure => Ok(false),
            LrClass::Neither if self.a_set.contains(g) => Ok(true),
            LrClass::Neither if self.b_set.contains(g) => Ok(false),
            LrClass::Neither => Err(Error::UndecidableBeyondPrefix(g.to_literal(Alphabet::Node))),
        }
    }

    /// Membership in `B = R^{F(T)} ∪ {bₙ}`.
    pub fn in_b(&self, g: &Word) -> Result<bool> {
        match lr_classify(g) {
            LrClass::RightClosure => Ok(true),
            LrClass::LeftClosure => Ok(false),
            LrClass::Neither if self.b_set.contains(g) => Ok(true),
            LrClass::Neither if self.a_set.contains(g) => Ok(false),
            LrClass::Neither => Err(Error::UndecidableBeyondPrefix(g.to_literal(Alphabet::Node))),
        }
    }

    /// The first `len` known members of `A`: the built `aₙ`, then conjugates
    /// of `L` dovetailed over (conjugator index, node index).
    pub fn a_prefix(&mut self, len: usize) -> Vec<Word> {
        let seeds = self.a.clone();
        self.closure_prefix(seeds, false, len)
    }

    /// The first `len` known members of `B`, built like [`Self::a_prefix`].
    pub fn b_prefix(&mut self, len: usize) -> Vec<Word> {
        let seeds = self.b.clone();
        self.closure_prefix(seeds, true, len)
    }

    fn closure_prefix(&mut self, seeds: Vec<Word>, right: bool, len: usize) -> Vec<Word> {
        let mut seen = HashSet::new();
        let mut out: Vec<Word> = seeds.into_iter().filter(|s| seen.insert(s.clone())).take(len).collect();
        let mut diagonal = 0usize;
        while out.len() < len {
            for j in 0..=diagonal {
                let conj = self.words.get(j).clone();
                let target = successor_word(TreeNode::from_index((diagonal - j) as u32), right);
                let x = target.conjugate_by(&conj);
                if out.len() < len && seen.insert(x.clone()) {
                    out.push(x);
                }
            }
            diagonal += 1;
        }
        out
    }
}

pub fn build_ab_pairs(count: usize) -> Result<ABPairs> {
    if count == 0 {
        return Err(Error::Precondition("at least one pair is required".into()));
    }
    let mut pairs = ABPairs::empty(DEFAULT_SEARCH_CAP);
    pairs.extend_to(count)?;
    Ok(pairs)
}

/// Returns `(a, b)` with `a ∈ A`, `b ∈ B` and `x·a·x⁻¹ = b`.
///
/// For `x = (w, id)` this is the pair `(aₙ, bₙ)` with `wₙ = w`. Otherwise the
/// automorphism moves some node; with `p` its smallest label, `a = n[p] n[p0]`
/// is sent to `n[p] n[p1]` and `b = w · n[p] n[p1] · w⁻¹`.
pub fn ex1_witness(x: &SdElement, pairs: &ABPairs) -> Result<(Word, Word)> {
    if x.is_identity() {
        return Err(Error::Precondition("the identity has no witness".into()));
    }
    match x.aut.minimal_labeled_node() {
        None => {
            let n = pairs.index_of(&x.word).ok_or_else(|| Error::PrefixTooShort {
                word: x.word.to_literal(Alphabet::Node),
                built: pairs.count(),
            })?;
            Ok((pairs.a[n].clone(), pairs.b[n].clone()))
        }
        Some(p) => {
            let a = successor_word(p, false);
            let b = x.aut.act_word(&a).conjugate_by(&x.word);
            Ok((a, b))
        }
    }
}

/// The member `x a x⁻¹ b⁻¹` of `W`, as a monomial over the tree backend.
pub fn ex1_monomial(a: &Word, b: &Word) -> Monomial {
    let backend = Backend::TreeSd;
    Monomial::new(
        &backend,
        vec![
            backend.identity(),
            Element::Sd(SdElement::from_word(a.clone())),
            Element::Sd(SdElement::from_word(b.inverse())),
        ],
        vec![Sign::Pos, Sign::Neg],
    )
    .expect("well-formed monomial")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ex1Item {
    pub index: usize,
    pub x: SdElement,
    pub a: Word,
    pub b: Word,
    /// `x·(a,id)·x⁻¹` computed directly.
    pub conjugate: SdElement,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ex1Report {
    pub items: Vec<Ex1Item>,
    pub prefix_len: usize,
    /// A word found in both prefixes, if any.
    pub common: Option<Word>,
    /// A prefix element whose classification contradicts its set.
    pub misclassified: Option<Word>,
}

impl Ex1Report {
    pub fn failures(&self) -> usize {
        self.items.iter().filter(|i| !i.passed).count()
    }

    pub fn disjoint(&self) -> bool {
        self.common.is_none() && self.misclassified.is_none()
    }

    pub fn passed(&self) -> bool {
        self.failures() == 0 && self.disjoint()
    }
}

/// Checks the witness for every non-identity element among the first
/// `x_budget` enumerated elements of `G`, extending the pairs when an
/// `F(T)` element lies beyond the prefix, then checks that the
/// `x_budget`-element prefixes of `A` and `B` are disjoint.
pub fn verify_ex1(pairs: &mut ABPairs, x_budget: usize) -> Result<Ex1Report> {
    let mut sd = SdEnumerator::new();
    let mut items = Vec::new();
    for i in 0..x_budget {
        let x = sd.get(i);
        if x.is_identity() {
            continue;
        }
        if x.aut.is_identity() {
            // the word part sits at F(T) index j, i.e. it is w[j-1]
            let (j, _) = SdEnumerator::unpair(i);
            pairs.extend_to(j)?;
        }
        let (a, b) = ex1_witness(&x, pairs)?;
        let conjugate = x.mul(&SdElement::from_word(a.clone())).mul(&x.inverse());
        let vanishes = ex1_monomial(&a, &b)
            .eval(&Element::Sd(x.clone()))
            .map(|v| v.is_identity())
            .unwrap_or(false);
        let passed = conjugate == SdElement::from_word(b.clone())
            && vanishes
            && pairs.in_a(&a) == Ok(true)
            && pairs.in_b(&b) == Ok(true);
        items.push(Ex1Item { index: i, x, a, b, conjugate, passed });
    }

    let a_prefix = pairs.a_prefix(x_budget);
    let b_prefix = pairs.b_prefix(x_budget);
    let a_set: HashSet<&Word> = a_prefix.iter().collect();
    let common = b_prefix.iter().find(|b| a_set.contains(b)).cloned();
    let misclassified = a_prefix
        .iter()
        .find(|g| pairs.in_a(g) != Ok(true) || pairs.in_b(g) != Ok(false))
        .or_else(|| b_prefix.iter().find(|g| pairs.in_b(g) != Ok(true) || pairs.in_a(g) != Ok(false)))
        .cloned();
    Ok(Ex1Report { items, prefix_len: x_budget, common, misclassified })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::literal::{parse_sd, parse_word};

    fn nw(s: &str) -> Word {
        parse_word(s, Alphabet::Node).unwrap()
    }

    #[test]
    fn classify_examples() {
        assert_eq!(lr_classify(&nw("n[] n[0]")), LrClass::LeftClosure);
        assert_eq!(lr_classify(&nw("n[0] n[]")), LrClass::LeftClosure);
        let conj = nw("n[] n[0]").conjugate_by(&nw("n[1]"));
        assert_eq!(lr_classify(&conj), LrClass::LeftClosure);
        assert_eq!(lr_classify(&nw("n[] n[1]")), LrClass::RightClosure);
        assert_eq!(lr_classify(&nw("n[0]")), LrClass::Neither);
        assert_eq!(lr_classify(&nw("n[]^-1 n[0]^-1")), LrClass::Neither);
        assert_eq!(lr_classify(&nw("n[0] n[1]")), LrClass::Neither);
        assert_eq!(lr_classify(&nw("n[]^2")), LrClass::Neither);
        assert_eq!(lr_classify(&nw("n[01] n[011]")), LrClass::RightClosure);
    }

    #[test]
    fn first_pairs() {
        let p = build_ab_pairs(1).unwrap();
        assert_eq!(p.w()[0], nw("n[]"));
        assert_eq!(p.a()[0], nw("n[0]"));
        assert_eq!(p.b()[0], nw("n[] n[0] n[]^-1"));
        assert!(build_ab_pairs(0).is_err());
    }

    #[test]
    fn membership() {
        let p = build_ab_pairs(4).unwrap();
        assert_eq!(p.in_a(&nw("n[10] n[100]").conjugate_by(&nw("n[1]^3"))), Ok(true));
        assert_eq!(p.in_b(&p.b()[0]), Ok(true));
        assert_eq!(p.in_b(&p.a()[0]), Ok(false));
        assert!(matches!(p.in_a(&nw("n[0110]^5")), Err(Error::UndecidableBeyondPrefix(_))));
    }

    #[test]
    fn witness_examples() {
        let p = build_ab_pairs(4).unwrap();
        let x = parse_sd("(n[];id)").unwrap();
        assert_eq!(ex1_witness(&x, &p).unwrap(), (p.a()[0].clone(), p.b()[0].clone()));
        let x = parse_sd("(1;swap{[]})").unwrap();
        assert_eq!(ex1_witness(&x, &p).unwrap(), (nw("n[] n[0]"), nw("n[] n[1]")));
        let x = parse_sd("(n[0];swap{[1]})").unwrap();
        let (a, b) = ex1_witness(&x, &p).unwrap();
        assert_eq!(a, nw("n[1] n[10]"));
        assert_eq!(b, nw("n[0] n[1] n[11] n[0]^-1"));
        assert_eq!(lr_classify(&b), LrClass::RightClosure);
        assert_eq!(x.mul(&SdElement::from_word(a)).mul(&x.inverse()), SdElement::from_word(b));
        assert!(ex1_witness(&SdElement::identity(), &p).is_err());
        let far = parse_sd("(n[0110]^3;id)").unwrap();
        assert!(matches!(ex1_witness(&far, &p), Err(Error::PrefixTooShort { .. })));
    }

    #[test]
    fn small_verification_run() {
        let mut p = build_ab_pairs(8).unwrap();
        let report = verify_ex1(&mut p, 60).unwrap();
        assert_eq!(report.items.len(), 59);
        assert!(report.passed(), "{report:?}");
        assert!(p.check_invariants().is_ok());
    }
}
