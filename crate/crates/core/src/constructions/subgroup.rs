//! Large subgroups inside `⋂_{w∈W} Z_w` for abelian and free backends.
//!
//! Abelian: every `w(x)` equals `w(1)·xᵏ`, so the summands outside the
//! support of `W(1)` span a subgroup on which no `w` vanishes. Free: the
//! letters absent from every coefficient generate a free factor that embeds
//! `⟨x⟩`, so no `w` with `w(1) ≠ 1` vanishes there.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::group::{Backend, Element, Rank, Word};
use crate::monomial::WitnessFamily;

/// A set of generator (or summand) indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IndexSet {
    Finite(BTreeSet<u32>),
    /// Every index except the listed ones.
    Cofinite(BTreeSet<u32>),
}

impl IndexSet {
    pub fn contains(&self, i: u32) -> bool {
        match self {
            IndexSet::Finite(s) => s.contains(&i),
            IndexSet::Cofinite(excluded) => !excluded.contains(&i),
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, IndexSet::Finite(s) if s.is_empty())
    }

    /// Up to `limit` members in increasing order.
    pub fn first(&self, limit: usize) -> Vec<u32> {
        match self {
            IndexSet::Finite(s) => s.iter().copied().take(limit).collect(),
            IndexSet::Cofinite(excluded) => (0u32..).filter(|i| !excluded.contains(i)).take(limit).collect(),
        }
    }

    fn sample_pool(&self) -> Vec<u32> {
        match self {
            IndexSet::Finite(s) => s.iter().copied().collect(),
            IndexSet::Cofinite(excluded) => {
                let top = excluded.last().map_or(0, |&m| m + 1) + 8;
                (0..top).filter(|i| !excluded.contains(i)).collect()
            }
        }
    }
}

impl std::fmt::Display for IndexSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let list = |s: &BTreeSet<u32>| s.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
        match self {
            IndexSet::Finite(s) => write!(f, "{{{}}}", list(s)),
            IndexSet::Cofinite(s) => write!(f, "all except {{{}}}", list(s)),
        }
    }
}

fn values_at_identity(family: &WitnessFamily) -> Result<Vec<Element>> {
    let one = family.backend().identity();
    family
        .members()
        .iter()
        .map(|m| {
            let v = m.eval(&one)?;
            if v.is_identity() {
                Err(Error::Precondition(format!("`{m}` vanishes at 1")))
            } else {
                Ok(v)
            }
        })
        .collect()
}

fn complement(within: Option<u32>, forbidden: BTreeSet<u32>) -> IndexSet {
    match within {
        Some(n) => IndexSet::Finite((0..n).filter(|i| !forbidden.contains(i)).collect()),
        None => IndexSet::Cofinite(forbidden),
    }
}

/// Summand indices outside the support of `W(1)`.
pub fn t2_abelian_h(family: &WitnessFamily) -> Result<IndexSet> {
    let Backend::Abelian(moduli) = family.backend() else {
        return Err(Error::BackendMismatch { expected: "abelian".into(), found: family.backend().to_string() });
    };
    let forbidden: BTreeSet<u32> = values_at_identity(family)?
        .iter()
        .filter_map(Element::as_abelian)
        .flat_map(|v| v.support().collect::<Vec<_>>())
        .collect();
    Ok(complement(moduli.summands(), forbidden))
}

/// Generator indices used by no coefficient of any member.
pub fn t2_free_h(family: &WitnessFamily) -> Result<IndexSet> {
    let Backend::Free(rank) = family.backend() else {
        return Err(Error::BackendMismatch { expected: "free".into(), found: family.backend().to_string() });
    };
    values_at_identity(family)?;
    let forbidden: BTreeSet<u32> = family.members().iter().flat_map(|m| m.coefficient_generators()).collect();
    let within = match rank {
        Rank::Finite(r) => Some(*r),
        Rank::Omega => None,
    };
    let h = complement(within, forbidden);
    if h.is_empty() {
        return Err(Error::SaturatedAlphabet);
    }
    Ok(h)
}

/// A random non-identity element of the subgroup spanned by `h`.
pub fn sample_h_element<R: Rng>(backend: &Backend, h: &IndexSet, rng: &mut R) -> Option<Element> {
    let pool = h.sample_pool();
    if pool.is_empty() {
        return None;
    }
    loop {
        let e = match backend {
            Backend::Abelian(moduli) => {
                let k = rng.gen_range(1..=3);
                let raw: Vec<(u32, i64)> = (0..k)
                    .map(|_| (*pool.choose(rng).expect("nonempty"), rng.gen_range(-5i64..=5)))
                    .collect();
                Element::Abelian(moduli.element(raw))
            }
            Backend::Free(_) => {
                let len = rng.gen_range(1..=6);
                let units: Vec<(u32, bool)> =
                    (0..len).map(|_| (*pool.choose(rng).expect("nonempty"), rng.gen_bool(0.5))).collect();
                Element::Free(Word::from_units(units))
            }
            Backend::TreeSd => return None,
        };
        if !e.is_identity() {
            return Some(e);
        }
    }
}
