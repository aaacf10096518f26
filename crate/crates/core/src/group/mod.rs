//! Concrete group backends: free groups of finite or countable rank, direct
//! sums of cyclic groups, and the tree semidirect product.

pub mod abelian;
pub mod enumerate;
pub mod literal;
pub mod word;

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::tree::{SdElement, TreeAut};

pub use abelian::{AbelianElement, Moduli};
pub use enumerate::{enumerate_elements, Enumerator};
pub use word::{conjugacy_solve, cyclic_reduce, in_cyclic_subgroup, word_root, Alphabet, Letter, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rank {
    Finite(u32),
    Omega,
}

impl Rank {
    pub fn contains(self, gen: u32) -> bool {
        match self {
            Rank::Finite(r) => gen < r,
            Rank::Omega => true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Backend {
    Free(Rank),
    Abelian(Moduli),
    /// `F(T) ⋊ Aut(T)` over the binary tree.
    TreeSd,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Element {
    Free(Word),
    Abelian(AbelianElement),
    Sd(SdElement),
}

impl Element {
    pub fn is_identity(&self) -> bool {
        match self {
            Element::Free(w) => w.is_identity(),
            Element::Abelian(a) => a.is_identity(),
            Element::Sd(x) => x.is_identity(),
        }
    }

    pub fn as_word(&self) -> Option<&Word> {
        match self {
            Element::Free(w) => Some(w),
            _ => None,
        }
    }

    pub fn as_abelian(&self) -> Option<&AbelianElement> {
        match self {
            Element::Abelian(a) => Some(a),
            _ => None,
        }
    }

    pub fn as_sd(&self) -> Option<&SdElement> {
        match self {
            Element::Sd(x) => Some(x),
            _ => None,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            Element::Free(_) => "free word",
            Element::Abelian(_) => "abelian element",
            Element::Sd(_) => "tree-sd element",
        }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Free(w) => w.display(Alphabet::Free).fmt(f),
            Element::Abelian(a) => a.fmt(f),
            Element::Sd(x) => x.fmt(f),
        }
    }
}

impl Backend {
    pub fn free(rank: u32) -> Self {
        Backend::Free(Rank::Finite(rank))
    }

    pub fn free_omega() -> Self {
        Backend::Free(Rank::Omega)
    }

    /// `count` infinite cyclic summands.
    pub fn abelian(count: usize) -> Self {
        Backend::Abelian(Moduli::List(vec![0; count]))
    }

    pub fn alphabet(&self) -> Alphabet {
        match self {
            Backend::Free(_) => Alphabet::Free,
            Backend::Abelian(_) => Alphabet::Abelian,
            Backend::TreeSd => Alphabet::Node,
        }
    }

    pub fn identity(&self) -> Element {
        match self {
            Backend::Free(_) => Element::Free(Word::identity()),
            Backend::Abelian(_) => Element::Abelian(AbelianElement::identity()),
            Backend::TreeSd => Element::Sd(SdElement::identity()),
        }
    }

    /// Checks that `e` is a well-formed element of this backend.
    pub fn check(&self, e: &Element) -> Result<()> {
        let ok = match (self, e) {
            (Backend::Free(rank), Element::Free(w)) => {
                if let Some(g) = w.generators().find(|&g| !rank.contains(g)) {
                    return Err(Error::UnknownGenerator(Alphabet::Free.format_gen(g)));
                }
                true
            }
            (Backend::Abelian(m), Element::Abelian(a)) => {
                if let Some(i) = a.support().find(|&i| m.modulus(i).is_none()) {
                    return Err(Error::UnknownGenerator(Alphabet::Abelian.format_gen(i)));
                }
                m.contains(a)
            }
            (Backend::TreeSd, Element::Sd(_)) => true,
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::BackendMismatch { expected: self.to_string(), found: e.kind().to_string() })
        }
    }

    /// Product without membership checks; both operands must already belong
    /// to this backend.
    pub(crate) fn op(&self, a: &Element, b: &Element) -> Element {
        match (self, a, b) {
            (Backend::Free(_), Element::Free(u), Element::Free(v)) => Element::Free(u.mul(v)),
            (Backend::Abelian(m), Element::Abelian(u), Element::Abelian(v)) => Element::Abelian(m.mul(u, v)),
            (Backend::TreeSd, Element::Sd(u), Element::Sd(v)) => Element::Sd(u.mul(v)),
            _ => panic!("operands do not belong to backend {self}"),
        }
    }

    pub(crate) fn inv_unchecked(&self, a: &Element) -> Element {
        match (self, a) {
            (Backend::Free(_), Element::Free(u)) => Element::Free(u.inverse()),
            (Backend::Abelian(m), Element::Abelian(u)) => Element::Abelian(m.inv(u)),
            (Backend::TreeSd, Element::Sd(u)) => Element::Sd(u.inverse()),
            _ => panic!("operand does not belong to backend {self}"),
        }
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Result<Element> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.op(a, b))
    }

    pub fn inv(&self, a: &Element) -> Result<Element> {
        self.check(a)?;
        Ok(self.inv_unchecked(a))
    }

    /// `g · a · g⁻¹`
    pub fn conjugate(&self, a: &Element, g: &Element) -> Result<Element> {
        let ga = self.mul(g, a)?;
        Ok(self.op(&ga, &self.inv_unchecked(g)))
    }

    pub fn commutes(&self, a: &Element, b: &Element) -> Result<bool> {
        Ok(self.mul(a, b)? == self.op(b, a))
    }

    /// Whether `y` lies in the centralizer of `a`.
    pub fn centralizer_member(&self, y: &Element, a: &Element) -> Result<bool> {
        self.commutes(y, a)
    }

    pub fn parse_element(&self, text: &str) -> Result<Element> {
        let e = literal::parse_element(self, text)?;
        self.check(&e)?;
        Ok(e)
    }

    pub fn enumerator(&self) -> Enumerator {
        Enumerator::new(self)
    }

    /// Number of generators, when finite.
    pub fn rank(&self) -> Option<u32> {
        match self {
            Backend::Free(Rank::Finite(r)) => Some(*r),
            Backend::Free(Rank::Omega) | Backend::TreeSd => None,
            Backend::Abelian(m) => m.summands(),
        }
    }

    pub fn sd(word: Word, aut: TreeAut) -> Element {
        Element::Sd(SdElement::new(word, aut))
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Backend::Free(Rank::Finite(r)) => write!(f, "free:{r}"),
            Backend::Free(Rank::Omega) => f.write_str("free:w"),
            Backend::Abelian(m) => write!(f, "abelian:{m}"),
            Backend::TreeSd => f.write_str("tree-sd"),
        }
    }
}

impl FromStr for Backend {
    type Err = Error;

    /// Accepts `free:<r>`, `free:w`, `abelian:[m0,m1,...]`, `abelian:<count>`,
    /// `abelian:w` and `tree-sd`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = |reason: &str| Error::Syntax { input: s.to_string(), reason: reason.to_string() };
        if s == "tree-sd" {
            return Ok(Backend::TreeSd);
        }
        let (kind, arg) = s.split_once(':').ok_or_else(|| bad("expected <kind>:<argument>"))?;
        match kind {
            "free" => {
                if arg == "w" {
                    return Ok(Backend::free_omega());
                }
                let r: u32 = arg.parse().map_err(|_| bad("rank must be a natural number or w"))?;
                if r == 0 {
                    return Err(bad("rank must be at least 1"));
                }
                Ok(Backend::free(r))
            }
            "abelian" => {
                if arg == "w" {
                    return Ok(Backend::Abelian(Moduli::Omega));
                }
                if let Some(inner) = arg.strip_prefix('[').and_then(|a| a.strip_suffix(']')) {
                    let ms = inner
                        .split(',')
                        .map(|m| m.trim().parse::<u64>().map_err(|_| bad("moduli must be natural numbers")))
                        .collect::<Result<Vec<_>>>()?;
                    if ms.is_empty() || ms.contains(&1) {
                        return Err(bad("moduli must be 0 (infinite) or at least 2"));
                    }
                    return Ok(Backend::Abelian(Moduli::List(ms)));
                }
                let n: usize = arg.parse().map_err(|_| bad("expected a summand count, w, or a moduli list"))?;
                if n == 0 {
                    return Err(bad("at least one summand is required"));
                }
                Ok(Backend::abelian(n))
            }
            _ => Err(bad("unknown backend kind")),
        }
    }
}
