//! Reduced words in free groups.
//!
//! A [`Word`] is stored in syllable form: a list of `(generator, exponent)`
//! pairs where neighbours carry distinct generators and no exponent is zero.
//! Generators are plain indices; how an index is spelled (`g3`, `n[01]`) is
//! decided by the [`Alphabet`] used for formatting.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::tree::TreeNode;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub gen: u32,
    pub exp: i32,
}

/// A unit letter `g^{+1}` or `g^{-1}`; the second field is `true` for the inverse.
pub type Unit = (u32, bool);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Alphabet {
    /// `g0, g1, ...`
    Free,
    /// `e0, e1, ...`
    Abelian,
    /// `n[], n[0], n[1], n[00], ...` in canonical node order.
    Node,
}

impl Alphabet {
    pub fn format_gen(self, gen: u32) -> String {
        match self {
            Alphabet::Free => format!("g{gen}"),
            Alphabet::Abelian => format!("e{gen}"),
            Alphabet::Node => format!("n{}", TreeNode::from_index(gen)),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity() -> Self {
        Word { letters: Vec::new() }
    }

    pub fn generator(gen: u32) -> Self {
        Word { letters: vec![Letter { gen, exp: 1 }] }
    }

    pub fn power_of(gen: u32, exp: i32) -> Self {
        let mut w = Word::identity();
        w.push(gen, exp);
        w
    }

    /// Freely reduces an arbitrary list of `(generator, exponent)` pairs.
    pub fn reduce<I>(raw: I) -> Self
    where
        I: IntoIterator<Item = (u32, i64)>,
    {
        let mut w = Word::identity();
        for (gen, exp) in raw {
            let exp = i32::try_from(exp).expect("exponent out of range");
            w.push(gen, exp);
        }
        w
    }

    pub fn from_units<I: IntoIterator<Item = Unit>>(units: I) -> Self {
        let mut w = Word::identity();
        for (gen, inv) in units {
            w.push(gen, if inv { -1 } else { 1 });
        }
        w
    }

    /// Right-multiplies by `gen^exp`, cancelling against the tail.
    pub fn push(&mut self, gen: u32, exp: i32) {
        if exp == 0 {
            return;
        }
        match self.letters.last_mut() {
            Some(last) if last.gen == gen => {
                last.exp += exp;
                if last.exp == 0 {
                    self.letters.pop();
                }
            }
            _ => self.letters.push(Letter { gen, exp }),
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    /// Number of unit letters, i.e. the sum of absolute exponents.
    pub fn weight(&self) -> usize {
        self.letters.iter().map(|l| l.exp.unsigned_abs() as usize).sum()
    }

    pub fn units(&self) -> impl Iterator<Item = Unit> + '_ {
        self.letters
            .iter()
            .flat_map(|l| std::iter::repeat((l.gen, l.exp < 0)).take(l.exp.unsigned_abs() as usize))
    }

    pub fn generators(&self) -> impl Iterator<Item = u32> + '_ {
        self.letters.iter().map(|l| l.gen)
    }

    pub fn mul(&self, other: &Word) -> Word {
        let mut out = self.clone();
        for l in &other.letters {
            out.push(l.gen, l.exp);
        }
        out
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self
                .letters
                .iter()
                .rev()
                .map(|l| Letter { gen: l.gen, exp: -l.exp })
                .collect(),
        }
    }

    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::identity();
        for _ in 0..k.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// `g · self · g⁻¹`
    pub fn conjugate_by(&self, g: &Word) -> Word {
        g.mul(self).mul(&g.inverse())
    }

    pub fn commutes_with(&self, other: &Word) -> bool {
        self.mul(other) == other.mul(self)
    }

    /// Renames every generator through `f`; `f` must be injective.
    pub fn map_generators(&self, mut f: impl FnMut(u32) -> u32) -> Word {
        let mut out = Word::identity();
        for l in &self.letters {
            out.push(f(l.gen), l.exp);
        }
        out
    }

    /// The prefix consisting of the first `n` unit letters.
    pub fn unit_prefix(&self, n: usize) -> Word {
        Word::from_units(self.units().take(n))
    }

    pub fn display(&self, alphabet: Alphabet) -> WordDisplay<'_> {
        WordDisplay { word: self, alphabet }
    }

    pub fn to_literal(&self, alphabet: Alphabet) -> String {
        self.display(alphabet).to_string()
    }
}

impl Ord for Word {
    /// Canonical order: weight first, then lexicographic on unit letters with
    /// generators ascending and `g` before `g^-1`.
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then_with(|| self.units().cmp(other.units()))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub struct WordDisplay<'a> {
    word: &'a Word,
    alphabet: Alphabet,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_identity() {
            return f.write_str("1");
        }
        for (i, l) in self.word.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str(&self.alphabet.format_gen(l.gen))?;
            if l.exp != 1 {
                write!(f, "^{}", l.exp)?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.display(Alphabet::Free).fmt(f)
    }
}

/// Bounds of the cyclic core inside a syllable list: the core is
/// `letters[lo..hi]` with the first exponent replaced by `head` and the last
/// by `tail` (equal when a single syllable remains).
pub(crate) fn core_span(letters: &[Letter]) -> (usize, usize, i32, i32) {
    let (mut lo, mut hi) = (0usize, letters.len());
    if hi == 0 {
        return (0, 0, 0, 0);
    }
    let mut head = letters[lo].exp;
    let mut tail = letters[hi - 1].exp;
    while hi - lo >= 2
        && letters[lo].gen == letters[hi - 1].gen
        && (head > 0) != (tail > 0)
    {
        let m = head.abs().min(tail.abs());
        head -= m * head.signum();
        tail -= m * tail.signum();
        match (head == 0, tail == 0) {
            (true, true) => {
                lo += 1;
                hi -= 1;
                if lo < hi {
                    head = letters[lo].exp;
                    tail = letters[hi - 1].exp;
                }
            }
            (true, false) => {
                lo += 1;
                head = if lo == hi - 1 { tail } else { letters[lo].exp };
            }
            (false, true) => {
                hi -= 1;
                tail = if lo == hi - 1 { head } else { letters[hi - 1].exp };
            }
            (false, false) => unreachable!("one side is exhausted by the minimum"),
        }
    }
    (lo, hi, head, tail)
}

/// Splits `w` as `conjugator · core · conjugator⁻¹` with a cyclically reduced core.
pub fn cyclic_reduce(w: &Word) -> (Word, Word) {
    let (lo, hi, head, tail) = core_span(&w.letters);
    let mut core = Word::identity();
    if lo < hi {
        if hi - lo == 1 {
            core.push(w.letters[lo].gen, head);
        } else {
            core.push(w.letters[lo].gen, head);
            for l in &w.letters[lo + 1..hi - 1] {
                core.push(l.gen, l.exp);
            }
            core.push(w.letters[hi - 1].gen, tail);
        }
    }
    let conj = w.unit_prefix((w.weight() - core.weight()) / 2);
    (core, conj)
}

fn rotate_units(units: &[Unit], by: usize) -> impl Iterator<Item = Unit> + '_ {
    units[by..].iter().chain(units[..by].iter()).copied()
}

/// Finds the canonical `g` with `g·u·g⁻¹ = v`: shortest, ties broken by the
/// canonical word order. Returns `None` when `u` and `v` are not conjugate.
pub fn conjugacy_solve(u: &Word, v: &Word) -> Option<Word> {
    if u.is_identity() || v.is_identity() {
        return (u.is_identity() && v.is_identity()).then(Word::identity);
    }
    let (core_u, conj_u) = cyclic_reduce(u);
    let (core_v, conj_v) = cyclic_reduce(v);
    let units_u: Vec<Unit> = core_u.units().collect();
    let units_v: Vec<Unit> = core_v.units().collect();
    if units_u.len() != units_v.len() {
        return None;
    }
    let shift = (0..units_u.len()).find(|&i| rotate_units(&units_u, i).eq(units_v.iter().copied()))?;
    // core_v = P⁻¹ · core_u · P where P is the first `shift` units of core_u
    let p = Word::from_units(units_u[..shift].iter().copied());
    let base = conj_v.mul(&p.inverse()).mul(&conj_u.inverse());
    debug_assert_eq!(u.conjugate_by(&base), *v);

    // every solution is base·z^k with z the root of u; |base·z^k| > |base| once |k| > 2|base|
    let (z, _) = word_root(u).expect("u is not the identity");
    let bound = 2 * base.weight() as i64 + 1;
    (-bound..=bound)
        .map(|k| base.mul(&z.pow(k)))
        .min()
}

/// Writes `w = r^k` with `r` not a proper power and `k ≥ 1`.
pub fn word_root(w: &Word) -> Result<(Word, u32)> {
    if w.is_identity() {
        return Err(Error::IdentityInput("word_root"));
    }
    let (core, conj) = cyclic_reduce(w);
    let units: Vec<Unit> = core.units().collect();
    let n = units.len();
    let period = (1..=n)
        .find(|&p| n % p == 0 && (p..n).all(|i| units[i] == units[i - p]))
        .expect("n is always a period");
    let primitive = Word::from_units(units[..period].iter().copied());
    Ok((primitive.conjugate_by(&conj), (n / period) as u32))
}

/// True iff `y` lies in the cyclic subgroup generated by the primitive word `r`.
pub fn in_cyclic_subgroup(y: &Word, r: &Word) -> bool {
    if y.is_identity() {
        return true;
    }
    let (root, _) = word_root(y).expect("non-identity");
    root == *r || root == r.inverse()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(raw: &[(u32, i64)]) -> Word {
        Word::reduce(raw.iter().copied())
    }

    #[test]
    fn reduce_examples() {
        assert!(w(&[(0, 1), (0, -1)]).is_identity());
        assert_eq!(w(&[(0, 1), (1, 1), (1, -1), (0, 1)]), Word::power_of(0, 2));
        assert_eq!(w(&[(0, 2), (0, -1)]), Word::generator(0));
    }

    #[test]
    fn inverse_and_display() {
        let g = w(&[(0, 1), (1, 1)]);
        assert_eq!(g.inverse().to_string(), "g1^-1 g0^-1");
        assert_eq!(Word::identity().inverse().to_string(), "1");
        assert!(g.mul(&g.inverse()).is_identity());
    }

    #[test]
    fn cyclic_reduce_examples() {
        let (core, conj) = cyclic_reduce(&w(&[(0, 1), (1, 1), (0, -1)]));
        assert_eq!((core, conj), (Word::generator(1), Word::generator(0)));
        let (core, conj) = cyclic_reduce(&w(&[(0, 1), (1, 1)]));
        assert_eq!((core, conj), (w(&[(0, 1), (1, 1)]), Word::identity()));
        let (core, conj) = cyclic_reduce(&w(&[(0, 1), (1, 2), (0, -1)]));
        assert_eq!((core, conj), (Word::power_of(1, 2), Word::generator(0)));
    }

    #[test]
    fn cyclic_reduce_partial_syllables() {
        // g0^2 g1 g0^-1 = g0 · (g0 g1) · g0^-1
        let word = w(&[(0, 2), (1, 1), (0, -1)]);
        let (core, conj) = cyclic_reduce(&word);
        assert_eq!(core, w(&[(0, 1), (1, 1)]));
        assert_eq!(conj, Word::generator(0));
        // g0^3 g0... single syllable after peeling: g0 g1^5 g0^-1
        let word = w(&[(0, -2), (1, 3), (2, 1), (1, -3), (0, 2)]);
        let (core, conj) = cyclic_reduce(&word);
        assert_eq!(core, Word::generator(2));
        assert_eq!(core.conjugate_by(&conj), word);
    }

    #[test]
    fn conjugacy_examples() {
        let g = conjugacy_solve(&w(&[(0, 1), (1, 1)]), &w(&[(1, 1), (0, 1)])).unwrap();
        assert_eq!(g, Word::power_of(0, -1));
        assert_eq!(conjugacy_solve(&Word::generator(0), &Word::generator(1)), None);
        assert_eq!(conjugacy_solve(&Word::identity(), &Word::identity()), Some(Word::identity()));
        assert_eq!(conjugacy_solve(&Word::identity(), &Word::generator(0)), None);
    }

    #[test]
    fn conjugacy_picks_shortest_in_coset() {
        // u = g0, v = g0: every power of g0 works, the identity is shortest
        assert_eq!(conjugacy_solve(&Word::generator(0), &Word::generator(0)), Some(Word::identity()));
        let u = w(&[(0, 1), (1, 1)]);
        let v = u.conjugate_by(&w(&[(1, 1), (0, 1), (1, 1)]));
        let g = conjugacy_solve(&u, &v).unwrap();
        assert_eq!(u.conjugate_by(&g), v);
        assert!(g.weight() <= 3);
    }

    #[test]
    fn root_examples() {
        assert_eq!(word_root(&Word::power_of(0, 4)).unwrap(), (Word::generator(0), 4));
        let ab = w(&[(0, 1), (1, 1)]);
        assert_eq!(word_root(&ab).unwrap(), (ab.clone(), 1));
        let cubed = w(&[(0, 1), (1, 1), (0, 1), (1, 1), (0, 1), (1, 1)]);
        assert_eq!(word_root(&cubed).unwrap(), (ab.clone(), 3));
        assert_eq!(ab.pow(3), cubed);
        assert_eq!(word_root(&Word::identity()), Err(Error::IdentityInput("word_root")));
    }

    #[test]
    fn root_of_conjugated_power() {
        let c = w(&[(2, 1), (1, -1)]);
        let r = w(&[(0, 1), (1, 1)]).conjugate_by(&c);
        let (root, k) = word_root(&r.pow(-2)).unwrap();
        assert_eq!(k, 2);
        assert_eq!(root, r.inverse());
        assert!(in_cyclic_subgroup(&r.pow(5), &r));
        assert!(!in_cyclic_subgroup(&Word::generator(0), &r));
    }

    #[test]
    fn canonical_order() {
        let g0 = Word::generator(0);
        let g0i = g0.inverse();
        let g1 = Word::generator(1);
        assert!(Word::identity() < g0);
        assert!(g0 < g0i);
        assert!(g0i < g1);
        assert!(g1 < Word::power_of(0, 2));
    }
}
