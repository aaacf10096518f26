//! Avoidance sets for families of the shape `b x a x⁻¹ c`, `b x⁻¹ a x c` over
//! free groups, and elements `x` with `xAx⁻¹ ∩ B = ∅`.

use std::collections::BTreeSet;

use rand::Rng;

use crate::error::{Error, Result};
use crate::group::{conjugacy_solve, in_cyclic_subgroup, word_root, Backend, Element, Rank, Word};
use crate::monomial::{Monomial, Sign, WitnessFamily};

/// A subgroup of the free group in the centralizer chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubgroupDesc {
    Whole,
    /// `⟨r⟩` for a primitive `r`.
    Cyclic(Word),
}

impl SubgroupDesc {
    pub fn contains(&self, y: &Word) -> bool {
        match self {
            SubgroupDesc::Whole => true,
            SubgroupDesc::Cyclic(r) => in_cyclic_subgroup(y, r),
        }
    }
}

impl std::fmt::Display for SubgroupDesc {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SubgroupDesc::Whole => f.write_str("G"),
            SubgroupDesc::Cyclic(r) => write!(f, "<{r}>"),
        }
    }
}

/// One member `b x^{±1} a x^{∓1} c` of the family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct P1Monomial {
    /// Position of `a` in the A-list, 1-based.
    pub k: usize,
    pub b: Word,
    pub c: Word,
    /// `b⁻¹ c⁻¹`
    pub d: Word,
    /// The `b x⁻¹ a x c` shape.
    pub inverted: bool,
}

/// `{x ∈ G : x a_k x⁻¹ = d} = base·⟨period⟩`, or empty when `base` is `None`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionCoset {
    pub k: usize,
    pub d: Word,
    pub base: Option<Word>,
    pub period: Word,
}

impl SolutionCoset {
    pub fn contains(&self, y: &Word) -> bool {
        self.base.as_ref().is_some_and(|g| in_cyclic_subgroup(&g.inverse().mul(y), &self.period))
    }
}

fn free_word<'a>(backend: &Backend, e: &'a Element) -> Result<&'a Word> {
    backend.check(e)?;
    e.as_word()
        .ok_or_else(|| Error::BackendMismatch { expected: "free".into(), found: backend.to_string() })
}

/// Reads a member in the shape `b x a x⁻¹ c` or `b x⁻¹ a x c` with `a` in the A-list.
pub fn p1_shape(m: &Monomial, a_list: &[Word]) -> Result<P1Monomial> {
    let shape_err = || Error::Shape(format!("`{m}` is not of the form b x a x^-1 c or b x^-1 a x c"));
    let (coeffs, signs) = (m.coefficients(), m.signs());
    if signs.len() != 2 || signs[0] == signs[1] {
        return Err(shape_err());
    }
    let word = |i: usize| coeffs[i].as_word().cloned().ok_or_else(shape_err);
    let (b, a, c) = (word(0)?, word(1)?, word(2)?);
    let k = a_list
        .iter()
        .position(|x| *x == a)
        .ok_or_else(|| Error::Shape(format!("the middle coefficient of `{m}` is not in the A-list")))?
        + 1;
    let d = b.inverse().mul(&c.inverse());
    Ok(P1Monomial { k, b, c, d, inverted: signs[0] == Sign::Neg })
}

/// The data of the avoidance construction for an A-list and a family `V`.
#[derive(Clone, Debug)]
pub struct AvoidanceContext {
    backend: Backend,
    a_list: Vec<Word>,
    members: Vec<P1Monomial>,
    /// `D_1..D_n`
    d_sets: Vec<BTreeSet<Word>>,
    /// `G_0..G_n`
    chain: Vec<SubgroupDesc>,
    k_set: BTreeSet<usize>,
    cosets: Vec<SolutionCoset>,
}

impl AvoidanceContext {
    pub fn new(backend: &Backend, a_list: &[Element], family: &WitnessFamily) -> Result<Self> {
        if !matches!(backend, Backend::Free(_)) {
            return Err(Error::BackendMismatch { expected: "free".into(), found: backend.to_string() });
        }
        if family.backend() != backend {
            return Err(Error::BackendMismatch { expected: backend.to_string(), found: family.backend().to_string() });
        }
        let a_list: Vec<Word> = a_list.iter().map(|e| free_word(backend, e).cloned()).collect::<Result<_>>()?;
        let members = family.members().iter().map(|m| p1_shape(m, &a_list)).collect::<Result<Vec<_>>>()?;
        let n = a_list.len();
        let mut d_sets = vec![BTreeSet::new(); n];
        for v in &members {
            if v.d == a_list[v.k - 1] {
                return Err(Error::Precondition(format!("a = d = {} for a member, so 1 is not in its co-zero set", v.d)));
            }
            d_sets[v.k - 1].insert(v.d.clone());
        }

        let mut chain = vec![SubgroupDesc::Whole];
        let mut k_set = BTreeSet::new();
        for (i, a) in a_list.iter().enumerate() {
            let prev = chain[i].clone();
            let next = match &prev {
                SubgroupDesc::Whole if a.is_identity() => SubgroupDesc::Whole,
                SubgroupDesc::Whole => SubgroupDesc::Cyclic(word_root(a)?.0),
                SubgroupDesc::Cyclic(r) if r.commutes_with(a) => prev.clone(),
                SubgroupDesc::Cyclic(_) => {
                    // the centralizer of a in ⟨r⟩ is trivial
                    k_set.insert(i + 1);
                    prev.clone()
                }
            };
            chain.push(next);
        }

        let mut cosets = Vec::new();
        for &k in &k_set {
            let a = &a_list[k - 1];
            let period = word_root(a)?.0;
            for d in &d_sets[k - 1] {
                cosets.push(SolutionCoset { k, d: d.clone(), base: conjugacy_solve(a, d), period: period.clone() });
            }
        }
        Ok(AvoidanceContext { backend: backend.clone(), a_list, members, d_sets, chain, k_set, cosets })
    }

    pub fn backend(&self) -> &Backend {
        &self.backend
    }

    pub fn a_list(&self) -> &[Word] {
        &self.a_list
    }

    pub fn members(&self) -> &[P1Monomial] {
        &self.members
    }

    /// `D_k`, 1-based.
    pub fn d_set(&self, k: usize) -> &BTreeSet<Word> {
        &self.d_sets[k - 1]
    }

    pub fn chain(&self) -> &[SubgroupDesc] {
        &self.chain
    }

    pub fn g_n(&self) -> &SubgroupDesc {
        self.chain.last().expect("G_0 is always present")
    }

    pub fn k_set(&self) -> &BTreeSet<usize> {
        &self.k_set
    }

    pub fn cosets(&self) -> &[SolutionCoset] {
        &self.cosets
    }

    pub fn in_g_n(&self, y: &Word) -> bool {
        self.g_n().contains(y)
    }

    /// `y ∈ X_k` for some `k ∈ K`.
    pub fn excluded(&self, y: &Word) -> bool {
        let y_inv = y.inverse();
        self.cosets.iter().any(|c| c.contains(y) || c.contains(&y_inv))
    }

    /// `y ∈ Y = G_n ∖ ⋃_{k∈K} X_k`.
    pub fn contains(&self, y: &Word) -> bool {
        self.in_g_n(y) && !self.excluded(y)
    }

    /// A random element of `G_n` of moderate length.
    pub fn sample_g_n<R: Rng>(&self, rng: &mut R) -> Word {
        match self.g_n() {
            SubgroupDesc::Cyclic(r) => r.pow(rng.gen_range(-6i64..=6)),
            SubgroupDesc::Whole => {
                let gens = match self.backend {
                    Backend::Free(Rank::Finite(r)) => r,
                    _ => 4,
                };
                let len = rng.gen_range(0..=8);
                Word::from_units((0..len).map(|_| (rng.gen_range(0..gens), rng.gen_bool(0.5))))
            }
        }
    }

    /// A random member of `Y`, drawing from `G_n` until the finite `X_k` are missed.
    pub fn sample_y<R: Rng>(&self, rng: &mut R) -> Word {
        loop {
            let y = self.sample_g_n(rng);
            if !self.excluded(&y) {
                return y;
            }
        }
    }
}

/// Membership in the avoidance set `Y` built from `a_list` and `family`.
pub fn p1_y_member(y: &Element, a_list: &[Element], family: &WitnessFamily) -> Result<bool> {
    let backend = family.backend();
    let ctx = AvoidanceContext::new(backend, a_list, family)?;
    Ok(ctx.contains(free_word(backend, y)?))
}

/// The first `count` enumerated `x` with `x a x⁻¹ ∉ B` for every `a ∈ A`.
pub fn find_avoiders(backend: &Backend, a: &[Element], b: &[Element], count: usize, budget: usize) -> Result<Vec<Element>> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::Precondition("A and B must be nonempty".into()));
    }
    for e in a.iter().chain(b) {
        backend.check(e)?;
    }
    if let Some(common) = a.iter().find(|e| b.contains(e)) {
        return Err(Error::Precondition(format!("A and B share {common}")));
    }
    let b: BTreeSet<&Element> = b.iter().collect();
    let mut found = Vec::with_capacity(count);
    let mut candidates = backend.enumerator();
    for i in 0..budget {
        if found.len() == count {
            break;
        }
        let Some(x) = candidates.element_at(i) else { break };
        let mut avoids = true;
        for ai in a {
            if b.contains(&backend.conjugate(ai, &x)?) {
                avoids = false;
                break;
            }
        }
        if avoids {
            found.push(x);
        }
    }
    if found.len() < count {
        return Err(Error::BudgetExhausted { budget });
    }
    Ok(found)
}
