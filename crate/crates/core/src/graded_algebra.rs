//! Sparse arithmetic in finitely presented graded-commutative algebras over F_p.
//!
//! A presentation is a tensor product of truncated polynomial algebras
//! `F_p[x]/(x^s)`, exterior algebras `Λ(y)` and (only together with a global
//! degree cap) free polynomial algebras, optionally with every class above a
//! fixed total degree set to zero. Monomials that leave the presentation are
//! dropped during multiplication, so an [`Element`] is always in normal form.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::modp_arith::{require_prime, ArithError, ModPInt};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("elements belong to different presentations")]
    MismatchedPresentation,
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("monomial not representable: {0}")]
    InvalidMonomial(String),
    #[error("element has zero constant term and is not a unit")]
    NotAUnit,
    #[error("height is only defined for non-units")]
    UnitHeight,
    #[error(transparent)]
    Arith(#[from] ArithError),
}

pub type Result<T> = std::result::Result<T, AlgebraError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GeneratorKind {
    /// `x` with `x^exponent = 0`.
    Truncated { exponent: u32 },
    /// Square-zero odd generator.
    Exterior,
    /// No relation; only allowed when the presentation has a degree cap.
    Polynomial,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    pub degree: u32,
    pub kind: GeneratorKind,
}

impl Generator {
    fn max_exponent(&self) -> Option<u32> {
        match self.kind {
            GeneratorKind::Truncated { exponent } => Some(exponent - 1),
            GeneratorKind::Exterior => Some(1),
            GeneratorKind::Polynomial => None,
        }
    }

    pub fn is_odd(&self) -> bool {
        self.degree % 2 == 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AlgebraPresentation {
    p: u64,
    generators: Vec<Generator>,
    degree_cap: Option<u32>,
}

impl AlgebraPresentation {
    pub fn builder(p: u64) -> PresentationBuilder {
        PresentationBuilder { p, generators: Vec::new(), degree_cap: None }
    }

    pub fn new(p: u64, generators: Vec<Generator>, degree_cap: Option<u32>) -> Result<Arc<Self>> {
        require_prime(p)?;
        let mut seen = std::collections::HashSet::new();
        for g in &generators {
            if !seen.insert(g.name.as_str()) {
                return Err(AlgebraError::InvalidPresentation(format!(
                    "duplicate generator name `{}`",
                    g.name
                )));
            }
            if g.degree == 0 {
                return Err(AlgebraError::InvalidPresentation(format!(
                    "generator `{}` must have positive degree",
                    g.name
                )));
            }
            match g.kind {
                GeneratorKind::Truncated { exponent } if exponent < 2 => {
                    return Err(AlgebraError::InvalidPresentation(format!(
                        "truncation exponent of `{}` must be at least 2",
                        g.name
                    )));
                }
                GeneratorKind::Exterior if p == 2 => {
                    return Err(AlgebraError::InvalidPresentation(format!(
                        "exterior generator `{}` in characteristic 2; declare it truncated with exponent 2",
                        g.name
                    )));
                }
                GeneratorKind::Exterior if !g.is_odd() => {
                    return Err(AlgebraError::InvalidPresentation(format!(
                        "exterior generator `{}` must have odd degree",
                        g.name
                    )));
                }
                GeneratorKind::Truncated { .. } | GeneratorKind::Polynomial
                    if p != 2 && g.is_odd() =>
                {
                    return Err(AlgebraError::InvalidPresentation(format!(
                        "odd-degree generator `{}` squares to zero for odd p; declare it exterior",
                        g.name
                    )));
                }
                GeneratorKind::Polynomial if degree_cap.is_none() => {
                    return Err(AlgebraError::InvalidPresentation(format!(
                        "free polynomial generator `{}` needs a degree cap",
                        g.name
                    )));
                }
                _ => {}
            }
        }
        Ok(Arc::new(Self { p, generators, degree_cap }))
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn degree_cap(&self) -> Option<u32> {
        self.degree_cap
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn monomial_degree(&self, m: &Monomial) -> u64 {
        m.0.iter()
            .zip(&self.generators)
            .map(|(&e, g)| e as u64 * g.degree as u64)
            .sum()
    }

    /// An upper bound on the nilpotency index of any element with zero
    /// constant term.
    pub fn nilpotency_bound(&self) -> u64 {
        let from_relations: Option<u64> = self
            .generators
            .iter()
            .map(|g| g.max_exponent().map(u64::from))
            .sum();
        match (self.degree_cap, from_relations) {
            (Some(cap), Some(r)) => (cap as u64).min(r) + 1,
            (Some(cap), None) => cap as u64 + 1,
            (None, Some(r)) => r + 1,
            (None, None) => unreachable!("validated at construction"),
        }
    }

    /// Default iteration cap for [`element_height`]: four times the largest
    /// truncation exponent, but never below the nilpotency bound.
    pub fn default_height_cap(&self) -> u32 {
        let max_trunc = self
            .generators
            .iter()
            .map(|g| match g.kind {
                GeneratorKind::Truncated { exponent } => exponent,
                _ => 2,
            })
            .max()
            .unwrap_or(1);
        let bound = self.nilpotency_bound().min(u32::MAX as u64) as u32;
        (4 * max_trunc).max(bound)
    }

    /// Product of two monomials with its Koszul sign, or `None` when the
    /// product is zero in this presentation.
    pub(crate) fn mul_monomials(&self, a: &Monomial, b: &Monomial) -> Option<(Monomial, bool)> {
        let mut exps = Vec::with_capacity(self.generators.len());
        let mut degree = 0u64;
        for ((&ea, &eb), g) in a.0.iter().zip(&b.0).zip(&self.generators) {
            let e = ea + eb;
            if let Some(max) = g.max_exponent() {
                if e > max {
                    return None;
                }
            }
            degree += e as u64 * g.degree as u64;
            exps.push(e);
        }
        if let Some(cap) = self.degree_cap {
            if degree > cap as u64 {
                return None;
            }
        }
        let negative = self.p != 2 && self.koszul_negative(a, b);
        Some((Monomial(exps), negative))
    }

    /// Parity of odd-generator crossings when moving `b`'s factors past the
    /// higher-indexed factors of `a`.
    fn koszul_negative(&self, a: &Monomial, b: &Monomial) -> bool {
        let mut odd_a_above = 0u64;
        let mut parity = 0u64;
        for j in (0..self.generators.len()).rev() {
            if self.generators[j].is_odd() {
                parity += b.0[j] as u64 * odd_a_above;
                odd_a_above += a.0[j] as u64;
            }
        }
        parity % 2 == 1
    }

    fn graded_cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.monomial_degree(a)
            .cmp(&self.monomial_degree(b))
            .then_with(|| b.0.cmp(&a.0))
    }
}

pub struct PresentationBuilder {
    p: u64,
    generators: Vec<Generator>,
    degree_cap: Option<u32>,
}

impl PresentationBuilder {
    pub fn truncated(mut self, name: impl Into<String>, degree: u32, exponent: u32) -> Self {
        self.generators.push(Generator {
            name: name.into(),
            degree,
            kind: GeneratorKind::Truncated { exponent },
        });
        self
    }

    pub fn exterior(mut self, name: impl Into<String>, degree: u32) -> Self {
        self.generators.push(Generator { name: name.into(), degree, kind: GeneratorKind::Exterior });
        self
    }

    pub fn polynomial(mut self, name: impl Into<String>, degree: u32) -> Self {
        self.generators.push(Generator {
            name: name.into(),
            degree,
            kind: GeneratorKind::Polynomial,
        });
        self
    }

    pub fn degree_cap(mut self, cap: u32) -> Self {
        self.degree_cap = Some(cap);
        self
    }

    pub fn build(self) -> Result<Arc<AlgebraPresentation>> {
        AlgebraPresentation::new(self.p, self.generators, self.degree_cap)
    }
}

/// Exponent vector over the generators of a presentation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(n_generators: usize) -> Self {
        Monomial(vec![0; n_generators])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub(crate) fn from_exponents(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }
}

/// `x_1^2*x_2`-style rendering; the empty monomial renders as `1`.
pub(crate) fn format_monomial(pres: &AlgebraPresentation, m: &Monomial) -> String {
    let factors: Vec<String> = m
        .0
        .iter()
        .zip(&pres.generators)
        .filter(|(&e, _)| e > 0)
        .map(|(&e, g)| if e == 1 { g.name.clone() } else { format!("{}^{}", g.name, e) })
        .collect();
    if factors.is_empty() {
        "1".to_string()
    } else {
        factors.join("*")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Element {
    pres: Arc<AlgebraPresentation>,
    terms: BTreeMap<Monomial, u64>,
}

impl Element {
    pub fn zero(pres: &Arc<AlgebraPresentation>) -> Self {
        Self { pres: Arc::clone(pres), terms: BTreeMap::new() }
    }

    pub fn one(pres: &Arc<AlgebraPresentation>) -> Self {
        Self::scalar(pres, 1)
    }

    pub fn scalar(pres: &Arc<AlgebraPresentation>, c: i64) -> Self {
        let mut e = Self::zero(pres);
        e.add_term(Monomial::one(pres.generators.len()), ModPInt::from_i64(c, pres.p).value());
        e
    }

    pub fn generator(pres: &Arc<AlgebraPresentation>, name: &str) -> Result<Self> {
        let idx = pres
            .generator_index(name)
            .ok_or_else(|| AlgebraError::UnknownGenerator(name.to_string()))?;
        Ok(Self::generator_at(pres, idx))
    }

    pub fn generator_at(pres: &Arc<AlgebraPresentation>, idx: usize) -> Self {
        let mut exps = vec![0; pres.generators.len()];
        exps[idx] = 1;
        let mut e = Self::zero(pres);
        // a generator can only vanish through the degree cap
        e.insert_checked(Monomial(exps), 1);
        e
    }

    /// `c * prod g_i^{e_i}`; exponents beyond a relation or the degree cap
    /// give zero, while a wrong-length vector is an error.
    pub fn monomial(pres: &Arc<AlgebraPresentation>, exps: &[u32], c: i64) -> Result<Self> {
        if exps.len() != pres.generators.len() {
            return Err(AlgebraError::InvalidMonomial(format!(
                "expected {} exponents, got {}",
                pres.generators.len(),
                exps.len()
            )));
        }
        let mut e = Self::zero(pres);
        e.insert_checked(Monomial(exps.to_vec()), ModPInt::from_i64(c, pres.p).value());
        Ok(e)
    }

    fn insert_checked(&mut self, m: Monomial, c: u64) {
        let one = Monomial::one(self.pres.generators.len());
        if self.pres.mul_monomials(&m, &one).is_some() {
            self.add_term(m, c);
        }
    }

    fn add_term(&mut self, m: Monomial, c: u64) {
        let p = self.pres.p;
        let c = c % p;
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = (*o.get() + c) % p;
                if s == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn presentation(&self) -> &Arc<AlgebraPresentation> {
        &self.pres
    }

    /// Builds an element from raw `(monomial, coefficient)` pairs, combining
    /// repeats. Monomials must already be valid in `pres`.
    pub(crate) fn from_terms(
        pres: &Arc<AlgebraPresentation>,
        terms: impl IntoIterator<Item = (Monomial, u64)>,
    ) -> Self {
        let mut e = Self::zero(pres);
        for (m, c) in terms {
            e.add_term(m, c);
        }
        e
    }

    /// Stored terms in map order (not the canonical display order).
    pub(crate) fn raw_terms(&self) -> impl Iterator<Item = (&Monomial, u64)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> ModPInt {
        ModPInt::reduce(self.terms.get(m).copied().unwrap_or(0), self.pres.p)
    }

    pub fn coefficient_of(&self, exps: &[u32]) -> ModPInt {
        self.coefficient(&Monomial(exps.to_vec()))
    }

    pub fn constant_term(&self) -> ModPInt {
        self.coefficient(&Monomial::one(self.pres.generators.len()))
    }

    /// Terms in the canonical order: ascending total degree, then
    /// lexicographically descending exponent vectors.
    pub fn terms(&self) -> Vec<(&Monomial, ModPInt)> {
        let mut out: Vec<_> = self
            .terms
            .iter()
            .map(|(m, &c)| (m, ModPInt::reduce(c, self.pres.p)))
            .collect();
        out.sort_by(|a, b| self.pres.graded_cmp(a.0, b.0));
        out
    }

    /// Homogeneous component of the given total degree.
    pub fn component(&self, degree: u64) -> Element {
        Element {
            pres: Arc::clone(&self.pres),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| self.pres.monomial_degree(m) == degree)
                .map(|(m, &c)| (m.clone(), c))
                .collect(),
        }
    }

    /// Largest total degree of a nonzero term, `None` for zero.
    pub fn top_degree(&self) -> Option<u64> {
        self.terms.keys().map(|m| self.pres.monomial_degree(m)).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(|m| self.pres.monomial_degree(m));
        match degrees.next() {
            None => true,
            Some(d) => degrees.all(|e| e == d),
        }
    }

    fn same_presentation(&self, other: &Element) -> Result<()> {
        if Arc::ptr_eq(&self.pres, &other.pres) || self.pres == other.pres {
            Ok(())
        } else {
            Err(AlgebraError::MismatchedPresentation)
        }
    }

    pub fn add(&self, other: &Element) -> Result<Element> {
        self.same_presentation(other)?;
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Element) -> Result<Element> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Element {
        self.scale(ModPInt::from_i64(-1, self.pres.p))
    }

    pub fn scale(&self, c: ModPInt) -> Element {
        let p = self.pres.p;
        if c.is_zero() {
            return Element::zero(&self.pres);
        }
        Element {
            pres: Arc::clone(&self.pres),
            terms: self
                .terms
                .iter()
                .map(|(m, &v)| (m.clone(), (v as u128 * c.value() as u128 % p as u128) as u64))
                .collect(),
        }
    }

    /// The product in the presentation, with Koszul signs on odd generators.
    pub fn multiply(&self, other: &Element) -> Result<Element> {
        self.same_presentation(other)?;
        let p = self.pres.p;
        let mut acc: BTreeMap<Monomial, u64> = BTreeMap::new();
        for (ma, &ca) in &self.terms {
            for (mb, &cb) in &other.terms {
                if let Some((m, negative)) = self.pres.mul_monomials(ma, mb) {
                    let mut c = (ca as u128 * cb as u128 % p as u128) as u64;
                    if negative {
                        c = p - c;
                    }
                    let slot = acc.entry(m).or_insert(0);
                    *slot = (*slot + c) % p;
                }
            }
        }
        acc.retain(|_, c| *c != 0);
        Ok(Element { pres: Arc::clone(&self.pres), terms: acc })
    }

    pub fn pow(&self, mut n: u64) -> Element {
        let mut result = Element::one(&self.pres);
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                result = result.multiply(&base).expect("same presentation");
            }
            n >>= 1;
            if n > 0 {
                base = base.multiply(&base).expect("same presentation");
                if base.is_zero() && n > 0 {
                    return Element::zero(&self.pres);
                }
            }
        }
        result
    }

    /// Canonical text form, e.g. `1 + 2*t + t^2`.
    pub fn to_canonical_string(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            match (m.is_one(), c.value()) {
                (true, v) => write!(f, "{v}")?,
                (false, 1) => f.write_str(&format_monomial(&self.pres, m))?,
                (false, v) => write!(f, "{v}*{}", format_monomial(&self.pres, m))?,
            }
        }
        Ok(())
    }
}

/// Inverse of an element with invertible constant term `a0`, summed as
/// `a0^{-1} * sum_n (-1)^n (a0^{-1} a - 1)^n` until the nilpotent part dies.
pub fn invert_unit(a: &Element) -> Result<Element> {
    let pres = a.presentation();
    let a0_inv = a.constant_term().inv().ok_or(AlgebraError::NotAUnit)?;
    let u = a.scale(a0_inv).sub(&Element::one(pres))?;
    let minus_u = u.neg();
    let mut sum = Element::one(pres);
    let mut term = Element::one(pres);
    for _ in 0..pres.nilpotency_bound() {
        term = term.multiply(&minus_u)?;
        if term.is_zero() {
            break;
        }
        sum = sum.add(&term)?;
    }
    debug_assert!(term.is_zero(), "nilpotency bound too small");
    Ok(sum.scale(a0_inv))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Height {
    Finite(u32),
    ExceedsCap,
}

/// Least `n <= cap` with `a^n = 0`. Zero has height 1.
pub fn element_height(a: &Element, cap: u32) -> Result<Height> {
    if !a.constant_term().is_zero() {
        return Err(AlgebraError::UnitHeight);
    }
    if a.is_zero() {
        return Ok(Height::Finite(1));
    }
    let mut power = a.clone();
    for n in 2..=cap {
        power = power.multiply(a)?;
        if power.is_zero() {
            return Ok(Height::Finite(n));
        }
    }
    Ok(Height::ExceedsCap)
}

/// `a^(p^t)` where p is the characteristic of the presentation.
pub fn frobenius_power(a: &Element, t: u32) -> Result<Element> {
    let p = a.presentation().prime();
    let exp = p
        .checked_pow(t)
        .ok_or(ArithError::Overflow("p^t in frobenius_power"))?;
    Ok(a.pow(exp))
}
