//! Monomials `a₀ x^ε₁ a₁ ⋯ x^εₙ aₙ` in `G[x] = G * ⟨x⟩`.
//!
//! Monomials are syntactic: coefficients equal to 1 are kept and nothing is
//! cancelled until [`Monomial::normalize`] is called. The grammar is
//!
//! ```text
//! monomial := factor (" " factor)*
//! factor   := "x" ("^" int)? | term | "1" | "(" sd-literal ")"
//! ```
//!
//! Adjacent non-`x` factors fold into one coefficient and `x^k` expands to
//! `|k|` letters separated by unit coefficients.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::group::literal::tokenize;
use crate::group::{Backend, Element};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }

    pub fn as_i32(self) -> i32 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    backend: Backend,
    coeffs: Vec<Element>,
    signs: Vec<Sign>,
}

impl Monomial {
    pub fn new(backend: &Backend, coeffs: Vec<Element>, signs: Vec<Sign>) -> Result<Self> {
        if coeffs.len() != signs.len() + 1 {
            return Err(Error::Precondition(format!(
                "a monomial of degree {} needs {} coefficients, got {}",
                signs.len(),
                signs.len() + 1,
                coeffs.len()
            )));
        }
        coeffs.iter().try_for_each(|c| backend.check(c))?;
        Ok(Monomial { backend: backend.clone(), coeffs, signs })
    }

    pub fn constant(backend: &Backend, a: Element) -> Result<Self> {
        Self::new(backend, vec![a], Vec::new())
    }

    /// The monomial `x`.
    pub fn variable(backend: &Backend) -> Self {
        Monomial { backend: backend.clone(), coeffs: vec![backend.identity(); 2], signs: vec![Sign::Pos] }
    }

    pub fn parse(text: &str, backend: &Backend) -> Result<Self> {
        let tokens = tokenize(text)?;
        if tokens.is_empty() {
            return Err(Error::Syntax { input: text.to_string(), reason: "empty monomial".into() });
        }
        let mut coeffs = vec![backend.identity()];
        let mut signs = Vec::new();
        for tok in tokens {
            if let Some(rest) = tok.strip_prefix('x') {
                let k: i64 = match rest {
                    "" => 1,
                    r => r
                        .strip_prefix('^')
                        .and_then(|e| e.parse().ok())
                        .ok_or_else(|| Error::Syntax { input: text.to_string(), reason: format!("bad factor `{tok}`") })?,
                };
                let sign = if k < 0 { Sign::Neg } else { Sign::Pos };
                for _ in 0..k.unsigned_abs() {
                    signs.push(sign);
                    coeffs.push(backend.identity());
                }
            } else {
                let a = backend.parse_element(tok)?;
                let last = coeffs.last_mut().expect("at least one coefficient");
                *last = backend.op(last, &a);
            }
        }
        Ok(Monomial { backend: backend.clone(), coeffs, signs })
    }

    pub fn backend(&self) -> &Backend {
        &self.backend
    }

    pub fn degree(&self) -> usize {
        self.signs.len()
    }

    pub fn coefficients(&self) -> &[Element] {
        &self.coeffs
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    /// `w(g)`: substitute `x ↦ g` and multiply out.
    pub fn eval(&self, g: &Element) -> Result<Element> {
        self.backend.check(g)?;
        let b = &self.backend;
        let g_inv = b.inv_unchecked(g);
        let mut acc = self.coeffs[0].clone();
        for (sign, c) in self.signs.iter().zip(&self.coeffs[1..]) {
            let xg = match sign {
                Sign::Pos => g,
                Sign::Neg => &g_inv,
            };
            acc = b.op(&b.op(&acc, xg), c);
        }
        Ok(acc)
    }

    /// Membership of `g` in the co-zero set `{g : w(g) ≠ 1}`.
    pub fn cozero_contains(&self, g: &Element) -> Result<bool> {
        Ok(!self.eval(g)?.is_identity())
    }

    fn same_backend(&self, other: &Monomial) -> Result<()> {
        if self.backend == other.backend {
            Ok(())
        } else {
            Err(Error::BackendMismatch { expected: self.backend.to_string(), found: other.backend.to_string() })
        }
    }

    /// Product in `G[x]`; the seam coefficients are multiplied together.
    pub fn concat(&self, other: &Monomial) -> Result<Monomial> {
        self.same_backend(other)?;
        let mut coeffs = self.coeffs.clone();
        let seam = self.backend.op(coeffs.last().expect("nonempty"), &other.coeffs[0]);
        *coeffs.last_mut().expect("nonempty") = seam;
        coeffs.extend(other.coeffs[1..].iter().cloned());
        let mut signs = self.signs.clone();
        signs.extend(other.signs.iter().copied());
        Ok(Monomial { backend: self.backend.clone(), coeffs, signs })
    }

    /// Free-product normal form: cancels every `x^ε · 1 · x^-ε`.
    pub fn normalize(&self) -> Monomial {
        let b = &self.backend;
        let mut coeffs = vec![self.coeffs[0].clone()];
        let mut signs: Vec<Sign> = Vec::new();
        for (&s, c) in self.signs.iter().zip(&self.coeffs[1..]) {
            let cancels = signs.last() == Some(&s.flip()) && coeffs.last().is_some_and(Element::is_identity);
            if cancels {
                signs.pop();
                coeffs.pop();
                let last = coeffs.last_mut().expect("coefficient before the cancelled letter");
                *last = b.op(last, c);
            } else {
                signs.push(s);
                coeffs.push(c.clone());
            }
        }
        Monomial { backend: b.clone(), coeffs, signs }
    }

    /// The substitution `x ↦ b·x`.
    pub fn shift(&self, b: &Element) -> Result<Monomial> {
        self.backend.check(b)?;
        let be = &self.backend;
        let b_inv = be.inv_unchecked(b);
        let mut coeffs = self.coeffs.clone();
        for (i, s) in self.signs.iter().enumerate() {
            match s {
                Sign::Pos => coeffs[i] = be.op(&coeffs[i], b),
                Sign::Neg => coeffs[i + 1] = be.op(&b_inv, &coeffs[i + 1]),
            }
        }
        Ok(Monomial { backend: be.clone(), coeffs, signs: self.signs.clone() })
    }

    /// The substitution `x ↦ x⁻¹`.
    pub fn invert_var(&self) -> Monomial {
        Monomial {
            backend: self.backend.clone(),
            coeffs: self.coeffs.clone(),
            signs: self.signs.iter().map(|s| s.flip()).collect(),
        }
    }

    /// Every generator index occurring in a coefficient (free backends).
    pub fn coefficient_generators(&self) -> impl Iterator<Item = u32> + '_ {
        self.coeffs.iter().filter_map(Element::as_word).flat_map(|w| w.generators())
    }
}

impl fmt::Display for Monomial {
    /// Canonical form: unit coefficients are omitted, runs `x x ⋯` with unit
    /// coefficients between them are merged into `x^k`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        let mut run: Option<(Sign, i64)> = None;
        let flush = |run: &mut Option<(Sign, i64)>, parts: &mut Vec<String>| {
            if let Some((s, k)) = run.take() {
                let e = s.as_i32() as i64 * k;
                parts.push(if e == 1 { "x".to_string() } else { format!("x^{e}") });
            }
        };
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_identity() {
                flush(&mut run, &mut parts);
                parts.push(c.to_string());
            }
            if let Some(&s) = self.signs.get(i) {
                match &mut run {
                    // a non-unit coefficient has already flushed the run
                    Some((rs, k)) if *rs == s => *k += 1,
                    _ => {
                        flush(&mut run, &mut parts);
                        run = Some((s, 1));
                    }
                }
            }
        }
        flush(&mut run, &mut parts);
        if parts.is_empty() {
            return f.write_str("1");
        }
        f.write_str(&parts.join(" "))
    }
}

/// `Aⁿ[x]`: all syntactic monomials of degree `≤ n` with coefficients from
/// `a`, built by `A⁰ = A`, `Aᵏ⁺¹ = Aᵏ ∪ {w x a, w x⁻¹ a}`.
pub fn monomials_over(backend: &Backend, a: &[Element], n: usize) -> Result<Vec<Monomial>> {
    if a.is_empty() {
        return Err(Error::Precondition("the coefficient set A is empty".into()));
    }
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for c in a {
        let m = Monomial::constant(backend, c.clone())?;
        if seen.insert(m.clone()) {
            out.push(m);
        }
    }
    for _ in 0..n {
        let previous = out.clone();
        for w in &previous {
            for sign in [Sign::Pos, Sign::Neg] {
                for c in a {
                    let mut m = w.clone();
                    m.signs.push(sign);
                    m.coeffs.push(c.clone());
                    if seen.insert(m.clone()) {
                        out.push(m);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// `Σ_{k=0..n} |A|^{k+1} 2^k`, the size of `Aⁿ[x]` for distinct coefficients.
pub fn monomial_count(a: usize, n: usize) -> u128 {
    (0..=n as u32).map(|k| (a as u128).pow(k + 1) << k).sum()
}

/// A finite family `W ⊂ Gⁿ[x]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessFamily {
    backend: Backend,
    degree: usize,
    members: Vec<Monomial>,
}

impl WitnessFamily {
    pub fn new(backend: &Backend, degree: usize, members: Vec<Monomial>) -> Result<Self> {
        for m in &members {
            if m.backend != *backend {
                return Err(Error::BackendMismatch { expected: backend.to_string(), found: m.backend.to_string() });
            }
            if m.degree() > degree {
                return Err(Error::Precondition(format!("`{m}` has degree {} > {degree}", m.degree())));
            }
        }
        Ok(WitnessFamily { backend: backend.clone(), degree, members })
    }

    /// Family whose degree bound is the largest member degree.
    pub fn from_members(backend: &Backend, members: Vec<Monomial>) -> Result<Self> {
        let degree = members.iter().map(Monomial::degree).max().unwrap_or(0);
        Self::new(backend, degree, members)
    }

    pub fn backend(&self) -> &Backend {
        &self.backend
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn members(&self) -> &[Monomial] {
        &self.members
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// `g ∈ ⋂_{w∈W} Z_w`; true for the empty family.
    pub fn intersection_member(&self, g: &Element) -> Result<bool> {
        self.backend.check(g)?;
        for m in &self.members {
            if !m.cozero_contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Parses the file format: a `backend: <descriptor>` header followed by
    /// one monomial per line. Blank lines and `#` comments are skipped.
    pub fn parse_file(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or_else(|| Error::Syntax {
            input: text.to_string(),
            reason: "missing `backend:` header".into(),
        })?;
        let descriptor = header.strip_prefix("backend:").ok_or_else(|| Error::Syntax {
            input: header.to_string(),
            reason: "first line must be `backend: <descriptor>`".into(),
        })?;
        let backend: Backend = descriptor.trim().parse()?;
        let members = lines.map(|l| Monomial::parse(l, &backend)).collect::<Result<Vec<_>>>()?;
        Self::from_members(&backend, members)
    }

    pub fn to_file(&self) -> String {
        let mut out = format!("backend: {}\n", self.backend);
        for m in &self.members {
            out.push_str(&m.to_string());
            out.push('\n');
        }
        out
    }
}
