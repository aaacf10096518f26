//! Infinite symmetric sets `X = X⁻¹ ∋ 1` with `1 ∉ A₀XA₁X⋯XAₙ`, built one
//! point at a time as separation witnesses for growing monomial families.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::group::{Backend, Element, Rank, Word};
use crate::monomial::{monomial_count, monomials_over, Monomial, WitnessFamily};

use super::separation::separation_witness_generic;

/// All products of exactly `n` factors from `c`.
pub fn set_power(backend: &Backend, c: &BTreeSet<Element>, n: usize) -> Result<BTreeSet<Element>> {
    if n == 0 {
        return Err(Error::Precondition("set_power needs n ≥ 1".into()));
    }
    let mut acc = c.clone();
    for _ in 1..n {
        let mut next = BTreeSet::new();
        for p in &acc {
            for q in c {
                next.insert(backend.mul(p, q)?);
            }
        }
        acc = next;
    }
    Ok(acc)
}

/// `S₀·S₁·…·Sₘ`.
pub fn product_set(backend: &Backend, sets: &[Vec<Element>]) -> Result<BTreeSet<Element>> {
    let mut acc = BTreeSet::from([backend.identity()]);
    for s in sets {
        let mut next = BTreeSet::new();
        for p in &acc {
            for q in s {
                next.insert(backend.mul(p, q)?);
            }
        }
        acc = next;
    }
    Ok(acc)
}

fn with_inverses(backend: &Backend, c: &mut BTreeSet<Element>) -> Result<()> {
    let inverses = c.iter().map(|e| backend.inv(e)).collect::<Result<Vec<_>>>()?;
    c.extend(inverses);
    Ok(())
}

/// The coefficient set `Cₖ` of one step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoefficientSet {
    Explicit(BTreeSet<Element>),
    /// Generator letters spanning a free factor that contains `Cₖ`; used on
    /// `free:w`, where `Cₖ` itself is far too large to list.
    Letters(BTreeSet<u32>),
}

impl CoefficientSet {
    pub fn len_hint(&self) -> usize {
        match self {
            CoefficientSet::Explicit(c) => c.len(),
            CoefficientSet::Letters(l) => l.len(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SymmetricSetState {
    backend: Backend,
    sets: Vec<Vec<Element>>,
    x: Vec<Element>,
    coefficients: Vec<CoefficientSet>,
}

/// Outcome of the exhaustive check of `1 ∉ A₀XA₁X⋯XAₙ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductCheck {
    pub products: u64,
    pub counterexample: Option<Vec<Element>>,
}

impl SymmetricSetState {
    pub fn backend(&self) -> &Backend {
        &self.backend
    }

    pub fn degree(&self) -> usize {
        self.sets.len() - 1
    }

    pub fn sets(&self) -> &[Vec<Element>] {
        &self.sets
    }

    /// `x₀ = 1, x₁, …`
    pub fn points(&self) -> &[Element] {
        &self.x
    }

    pub fn coefficients(&self) -> &[CoefficientSet] {
        &self.coefficients
    }

    pub fn steps(&self) -> usize {
        self.x.len()
    }

    /// `X = {xₖ, xₖ⁻¹}` in canonical order.
    pub fn symmetric_points(&self) -> BTreeSet<Element> {
        let mut out: BTreeSet<Element> = self.x.iter().cloned().collect();
        out.extend(self.x.iter().map(|e| self.backend.inv_unchecked(e)));
        out
    }

    /// Every product `a₀y₁a₁⋯yₙaₙ` with `aᵢ ∈ Aᵢ`, `yᵢ ∈ X`; stops at the first identity.
    pub fn product_check(&self) -> ProductCheck {
        let xs: Vec<Element> = self.symmetric_points().into_iter().collect();
        let mut check = ProductCheck { products: 0, counterexample: None };
        let mut trail = Vec::with_capacity(2 * self.sets.len());
        for a0 in &self.sets[0] {
            trail.push(a0.clone());
            if self.descend(a0, 1, &xs, &mut trail, &mut check) {
                break;
            }
            trail.pop();
        }
        check
    }

    fn descend(&self, prefix: &Element, i: usize, xs: &[Element], trail: &mut Vec<Element>, check: &mut ProductCheck) -> bool {
        if i == self.sets.len() {
            check.products += 1;
            if prefix.is_identity() {
                check.counterexample = Some(trail.clone());
                return true;
            }
            return false;
        }
        for y in xs {
            let py = self.backend.op(prefix, y);
            trail.push(y.clone());
            for a in &self.sets[i] {
                trail.push(a.clone());
                if self.descend(&self.backend.op(&py, a), i + 1, xs, trail, check) {
                    return true;
                }
                trail.pop();
            }
            trail.pop();
        }
        false
    }

    /// Asserts conditions (1)–(4) on the built prefix.
    pub fn check_conditions(&self) -> std::result::Result<(), String> {
        let b = &self.backend;
        let n = self.degree();
        if !self.x.first().is_some_and(Element::is_identity) {
            return Err("x₀ is not 1".into());
        }
        let distinct: BTreeSet<&Element> = self.x.iter().collect();
        if distinct.len() != self.x.len() {
            return Err("the points are not pairwise distinct".into());
        }
        if self.coefficients.len() != self.x.len() {
            return Err("one coefficient set per point is required".into());
        }
        let seed = initial_coefficients(b, &self.sets).map_err(|e| e.to_string())?;
        for (k, (ck, xk)) in self.coefficients.iter().zip(&self.x).enumerate() {
            match ck {
                CoefficientSet::Explicit(c) => {
                    let expected = if k == 0 {
                        seed.clone()
                    } else {
                        let CoefficientSet::Explicit(prev) = &self.coefficients[k - 1] else {
                            return Err(format!("C{k} mixes representations"));
                        };
                        next_explicit(b, prev, &self.x[k - 1], n).map_err(|e| e.to_string())?
                    };
                    if *c != expected {
                        return Err(format!("C{k} does not follow its recursion"));
                    }
                    if c.iter().any(|e| !c.contains(&b.inv_unchecked(e))) {
                        return Err(format!("C{k} is not symmetric"));
                    }
                    let family = nonvanishing_family(b, c, n).map_err(|e| e.to_string())?;
                    for w in family.members() {
                        if !w.cozero_contains(xk).map_err(|e| e.to_string())? {
                            return Err(format!("w = {w} vanishes at x{k} = {xk}"));
                        }
                    }
                }
                CoefficientSet::Letters(letters) => {
                    let expected = if k == 0 {
                        letters_of(seed.iter())
                    } else {
                        let CoefficientSet::Letters(prev) = &self.coefficients[k - 1] else {
                            return Err(format!("C{k} mixes representations"));
                        };
                        let mut l = prev.clone();
                        l.extend(letters_of(std::iter::once(&self.x[k - 1])));
                        l
                    };
                    if *letters != expected {
                        return Err(format!("letters of C{k} do not follow the recursion"));
                    }
                    if k > 0 {
                        let fresh = xk
                            .as_word()
                            .and_then(|w| (w.weight() == 1).then(|| w.letters()[0].gen))
                            .filter(|g| !letters.contains(g));
                        if fresh.is_none() {
                            return Err(format!("x{k} = {xk} is not a letter outside C{k}"));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

fn letters_of<'a>(elems: impl Iterator<Item = &'a Element>) -> BTreeSet<u32> {
    elems.filter_map(Element::as_word).flat_map(|w| w.generators().collect::<Vec<_>>()).collect()
}

fn initial_coefficients(backend: &Backend, sets: &[Vec<Element>]) -> Result<BTreeSet<Element>> {
    let mut c: BTreeSet<Element> = sets.iter().flatten().cloned().collect();
    c.insert(backend.identity());
    with_inverses(backend, &mut c)?;
    Ok(c)
}

fn next_explicit(backend: &Backend, prev: &BTreeSet<Element>, x: &Element, n: usize) -> Result<BTreeSet<Element>> {
    let mut base = prev.clone();
    base.insert(backend.identity());
    base.insert(x.clone());
    base.insert(backend.inv(x)?);
    set_power(backend, &base, n)
}

/// `Wₖ = {w ∈ Cₖⁿ[x] : w(1) ≠ 1}`.
fn nonvanishing_family(backend: &Backend, c: &BTreeSet<Element>, n: usize) -> Result<WitnessFamily> {
    let coeffs: Vec<Element> = c.iter().cloned().collect();
    let one = backend.identity();
    let members = monomials_over(backend, &coeffs, n)?
        .into_iter()
        .map(|w| Ok((w.cozero_contains(&one)?, w)))
        .filter_map(|r: Result<(bool, Monomial)>| match r {
            Ok((true, w)) => Some(Ok(w)),
            Ok((false, _)) => None,
            Err(e) => Some(Err(e)),
        })
        .collect::<Result<Vec<_>>>()?;
    WitnessFamily::new(backend, n, members)
}

fn validate(backend: &Backend, sets: &[Vec<Element>]) -> Result<()> {
    if sets.len() < 2 {
        return Err(Error::Precondition("need at least two sets A₀, A₁".into()));
    }
    if sets.iter().any(Vec::is_empty) {
        return Err(Error::Precondition("every Aᵢ must be nonempty".into()));
    }
    for e in sets.iter().flatten() {
        backend.check(e)?;
    }
    if product_set(backend, sets)?.iter().any(Element::is_identity) {
        return Err(Error::Precondition("1 ∈ A₀A₁⋯Aₙ".into()));
    }
    Ok(())
}

/// Builds `count` points `x₀ = 1, x₁, …`. Over `free:w` each point is the
/// first letter outside the coefficient alphabet; elsewhere the generic
/// construction runs.
pub fn symmetric_set_build(backend: &Backend, sets: &[Vec<Element>], count: usize, budget: usize) -> Result<SymmetricSetState> {
    match backend {
        Backend::Free(Rank::Omega) => symmetric_set_build_fresh(backend, sets, count),
        _ => symmetric_set_build_generic(backend, sets, count, budget),
    }
}

fn symmetric_set_build_fresh(backend: &Backend, sets: &[Vec<Element>], count: usize) -> Result<SymmetricSetState> {
    validate(backend, sets)?;
    let mut letters = letters_of(initial_coefficients(backend, sets)?.iter());
    let mut state = SymmetricSetState { backend: backend.clone(), sets: sets.to_vec(), x: Vec::new(), coefficients: Vec::new() };
    for k in 0..count {
        if k > 0 {
            letters.extend(letters_of(std::iter::once(&state.x[k - 1])));
        }
        let x = if k == 0 {
            backend.identity()
        } else {
            let g = (0u32..).find(|g| !letters.contains(g)).expect("infinitely many generators");
            Element::Free(Word::generator(g))
        };
        state.coefficients.push(CoefficientSet::Letters(letters.clone()));
        state.x.push(x);
    }
    Ok(state)
}

/// Materialises every `Cₖ` and `Wₖ`. `budget` caps both the size of `Wₖ`
/// and the number of enumerated candidates per step.
pub fn symmetric_set_build_generic(backend: &Backend, sets: &[Vec<Element>], count: usize, budget: usize) -> Result<SymmetricSetState> {
    validate(backend, sets)?;
    let n = sets.len() - 1;
    let mut state = SymmetricSetState { backend: backend.clone(), sets: sets.to_vec(), x: Vec::new(), coefficients: Vec::new() };
    let mut c = initial_coefficients(backend, sets)?;
    for k in 0..count {
        if k > 0 {
            c = next_explicit(backend, &c, &state.x[k - 1], n)?;
        }
        let x = if k == 0 {
            backend.identity()
        } else {
            if monomial_count(c.len(), n) > budget as u128 {
                return Err(Error::BudgetExhausted { budget });
            }
            let family = nonvanishing_family(backend, &c, n)?;
            separation_witness_generic(&family, &state.x, budget)?
        };
        state.coefficients.push(CoefficientSet::Explicit(c.clone()));
        state.x.push(x);
    }
    Ok(state)
}
