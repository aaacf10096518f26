//! Separation witnesses: points other than 1 inside `⋂_{w∈W} Z_w` for a
//! finite family `W` whose co-zero sets all contain 1.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::group::{Backend, Element, Rank, Word};
use crate::monomial::WitnessFamily;

fn require_identity_member(family: &WitnessFamily) -> Result<()> {
    let one = family.backend().identity();
    if family.intersection_member(&one)? {
        Ok(())
    } else {
        Err(Error::Precondition("1 is not in the intersection of the co-zero sets".into()))
    }
}

/// Finds `x ∉ exclude ∪ {1}` lying in every co-zero set of `family`.
///
/// Over `free:w` the first generator absent from every coefficient is
/// returned: `w(1) ≠ 1` forces the free-product normal form of `w` to be
/// nontrivial, so substituting a fresh free letter cannot give 1. Every other
/// backend scans the canonical enumeration for at most `budget` elements.
pub fn separation_witness(family: &WitnessFamily, exclude: &[Element], budget: usize) -> Result<Element> {
    match family.backend() {
        Backend::Free(Rank::Omega) => fresh_letter_witness(family, exclude),
        _ => separation_witness_generic(family, exclude, budget),
    }
}

/// Enumerate-and-test search.
pub fn separation_witness_generic(family: &WitnessFamily, exclude: &[Element], budget: usize) -> Result<Element> {
    require_identity_member(family)?;
    let mut candidates = family.backend().enumerator();
    for i in 0..budget {
        let Some(x) = candidates.element_at(i) else { break };
        if x.is_identity() || exclude.contains(&x) {
            continue;
        }
        if family.intersection_member(&x)? {
            return Ok(x);
        }
    }
    Err(Error::BudgetExhausted { budget })
}

/// Fresh-letter rule for free groups of infinite rank.
pub fn fresh_letter_witness(family: &WitnessFamily, exclude: &[Element]) -> Result<Element> {
    if !matches!(family.backend(), Backend::Free(Rank::Omega)) {
        return Err(Error::BackendMismatch { expected: "free:w".into(), found: family.backend().to_string() });
    }
    require_identity_member(family)?;
    let used: BTreeSet<u32> = family.members().iter().flat_map(|m| m.coefficient_generators()).collect();
    let x = (0u32..)
        .filter(|g| !used.contains(g))
        .map(|g| Element::Free(Word::generator(g)))
        .find(|x| !exclude.contains(x))
        .expect("infinitely many generators");
    debug_assert!(family.intersection_member(&x).unwrap_or(false));
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::Monomial;

    fn family(backend: &Backend, lines: &[&str]) -> WitnessFamily {
        let ms = lines.iter().map(|l| Monomial::parse(l, backend).unwrap()).collect();
        WitnessFamily::from_members(backend, ms).unwrap()
    }

    #[test]
    fn generic_path() {
        let b = Backend::free(2);
        let w = family(&b, &["x g0 x^-1 g1^-1"]);
        let one = b.identity();
        assert_eq!(separation_witness(&w, &[one], 100).unwrap(), b.parse_element("g0").unwrap());
    }

    #[test]
    fn constant_family_on_abelian() {
        let b = Backend::abelian(2);
        let w = family(&b, &["e0 x e0^-1 x^-1 e1"]);
        let x = separation_witness(&w, &[], 10).unwrap();
        assert_eq!(x, b.enumerator().nth(1).unwrap());
    }

    #[test]
    fn fresh_letter_path() {
        let b = Backend::free_omega();
        let w = family(&b, &["g0 x g1 x^-1 g2", "g3 x^-1 g4 x"]);
        assert_eq!(separation_witness(&w, &[], 0).unwrap(), b.parse_element("g5").unwrap());
        let g5 = b.parse_element("g5").unwrap();
        assert_eq!(separation_witness(&w, &[g5], 0).unwrap(), b.parse_element("g6").unwrap());
    }

    #[test]
    fn errors() {
        let b = Backend::free(2);
        let w = family(&b, &["x g0 x^-1 g0^-1"]);
        assert!(matches!(separation_witness(&w, &[], 10), Err(Error::Precondition(_))));
        // x g0 x^-1 g1^-1 never vanishes, but the budget allows no candidate
        let w = family(&b, &["x g0 x^-1 g1^-1"]);
        assert_eq!(separation_witness(&w, &[], 1), Err(Error::BudgetExhausted { budget: 1 }));
    }
}
