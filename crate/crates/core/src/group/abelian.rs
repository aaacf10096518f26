//! Direct sums of cyclic groups.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use super::word::{Alphabet, Unit, Word};

/// Per-summand moduli: `0` is an infinite cyclic summand, `m ≥ 2` is `Z/m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Moduli {
    /// Finitely many summands with the listed moduli.
    List(Vec<u64>),
    /// Countably many infinite cyclic summands.
    Omega,
}

impl Moduli {
    pub fn modulus(&self, index: u32) -> Option<u64> {
        match self {
            Moduli::List(ms) => ms.get(index as usize).copied(),
            Moduli::Omega => Some(0),
        }
    }

    pub fn summands(&self) -> Option<u32> {
        match self {
            Moduli::List(ms) => Some(ms.len() as u32),
            Moduli::Omega => None,
        }
    }

    pub fn is_finite_group(&self) -> bool {
        matches!(self, Moduli::List(ms) if ms.iter().all(|&m| m > 0))
    }

    /// Brings an exponent into canonical range for summand `index`.
    pub fn normalize_exp(&self, index: u32, exp: i64) -> i64 {
        match self.modulus(index) {
            Some(m) if m > 0 => exp.rem_euclid(m as i64),
            _ => exp,
        }
    }

    pub fn element<I: IntoIterator<Item = (u32, i64)>>(&self, raw: I) -> AbelianElement {
        let mut exps = BTreeMap::new();
        for (i, e) in raw {
            *exps.entry(i).or_insert(0i64) += e;
        }
        let exps = exps
            .into_iter()
            .map(|(i, e)| (i, self.normalize_exp(i, e)))
            .filter(|&(_, e)| e != 0)
            .collect();
        AbelianElement { exps }
    }

    pub fn mul(&self, a: &AbelianElement, b: &AbelianElement) -> AbelianElement {
        self.element(a.exps.iter().chain(b.exps.iter()).map(|(&i, &e)| (i, e)))
    }

    pub fn inv(&self, a: &AbelianElement) -> AbelianElement {
        self.element(a.exps.iter().map(|(&i, &e)| (i, -e)))
    }

    pub fn pow(&self, a: &AbelianElement, k: i64) -> AbelianElement {
        self.element(a.exps.iter().map(|(&i, &e)| (i, e * k)))
    }

    pub fn contains(&self, a: &AbelianElement) -> bool {
        a.exps.iter().all(|(&i, &e)| match self.modulus(i) {
            None => false,
            Some(0) => e != 0,
            Some(m) => e > 0 && (e as u64) < m,
        })
    }
}

impl fmt::Display for Moduli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Moduli::Omega => f.write_str("w"),
            Moduli::List(ms) => {
                let parts: Vec<String> = ms.iter().map(u64::to_string).collect();
                write!(f, "[{}]", parts.join(","))
            }
        }
    }
}

/// Finite-support exponent vector; exponents are nonzero and already reduced
/// modulo the owning [`Moduli`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct AbelianElement {
    exps: BTreeMap<u32, i64>,
}

impl AbelianElement {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn is_identity(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn support(&self) -> impl Iterator<Item = u32> + '_ {
        self.exps.keys().copied()
    }

    pub fn exponent(&self, index: u32) -> i64 {
        self.exps.get(&index).copied().unwrap_or(0)
    }

    pub fn exponents(&self) -> impl Iterator<Item = (u32, i64)> + '_ {
        self.exps.iter().map(|(&i, &e)| (i, e))
    }

    pub fn weight(&self) -> u64 {
        self.exps.values().map(|e| e.unsigned_abs()).sum()
    }

    pub fn units(&self) -> impl Iterator<Item = Unit> + '_ {
        self.exps
            .iter()
            .flat_map(|(&i, &e)| std::iter::repeat((i, e < 0)).take(e.unsigned_abs() as usize))
    }

    /// Same letters read as a free word; only used for formatting.
    fn as_word(&self) -> Word {
        Word::reduce(self.exps.iter().map(|(&i, &e)| (i, e)))
    }
}

impl Ord for AbelianElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then_with(|| self.units().cmp(other.units()))
    }
}

impl PartialOrd for AbelianElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for AbelianElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.as_word().display(Alphabet::Abelian).fmt(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let z = Moduli::Omega;
        let a = z.element([(0, 2)]);
        assert!(z.mul(&a, &z.element([(0, -2)])).is_identity());
        assert_eq!(z.inv(&z.element([(1, 3)])).to_string(), "e1^-3");
        let m = Moduli::List(vec![6, 0]);
        let x = m.element([(0, -1), (1, -1)]);
        assert_eq!(x.to_string(), "e0^5 e1^-1");
        assert!(m.mul(&x, &m.inv(&x)).is_identity());
        assert!(m.contains(&x));
        assert!(!m.contains(&z.element([(2, 1)])));
    }
}
