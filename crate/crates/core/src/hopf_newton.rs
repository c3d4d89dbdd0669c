//! The free graded Hopf algebra on the configuration-space coalgebra.
//!
//! For an odd prime `p` and odd `d ≥ 3` the algebra is generated by classes
//! `x_ℓ` (degree `2(p−1)ℓ`, polynomial) and `y_ℓ` (degree `2(p−1)ℓ−1`,
//! exterior) for `ℓ` in the generator range, with
//!
//! ```text
//! Δ(x_ℓ) = Σ_{i=0}^{ℓ} x_i ⊗ x_{ℓ−i}
//! Δ(y_ℓ) = y_ℓ ⊗ 1 + Σ_{i=1}^{ℓ−1} (x_i ⊗ y_{ℓ−i} + y_{ℓ−i} ⊗ x_i) + 1 ⊗ y_ℓ
//! ```
//!
//! where `x_0 = 1` and generators outside the range are zero. The cofiber
//! variant (with `n`) shifts the lower end of the range to `(n+1)/2`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::RangeInclusive;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::graded_algebra::{
    format_monomial, AlgebraError, AlgebraPresentation, Element, Generator, GeneratorKind,
    Monomial,
};
use crate::modp_arith::{require_odd_prime, ArithError, ModPInt};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HopfError {
    #[error("invalid coalgebra parameters: {0}")]
    InvalidSpec(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("contract violation: {0}")]
    Contract(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

pub type Result<T> = std::result::Result<T, HopfError>;

/// Parameters of the coalgebra: `p`, `d` and, for the cofiber variant, `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct CoalgebraSpec {
    pub p: u64,
    pub d: u64,
    pub n: Option<u64>,
}

impl CoalgebraSpec {
    pub fn plain(p: u64, d: u64) -> Result<Self> {
        let spec = Self { p, d, n: None };
        spec.validate()?;
        Ok(spec)
    }

    pub fn cofiber(p: u64, n: u64, d: u64) -> Result<Self> {
        let spec = Self { p, d, n: Some(n) };
        spec.validate()?;
        Ok(spec)
    }

    fn validate(&self) -> Result<()> {
        require_odd_prime(self.p)?;
        if self.d < 3 || self.d.is_multiple_of(2) {
            return Err(HopfError::InvalidSpec(format!("d = {} must be odd and at least 3", self.d)));
        }
        if let Some(n) = self.n {
            if n < 3 || n % 2 == 0 || n >= self.d {
                return Err(HopfError::InvalidSpec(format!(
                    "n = {n} must be odd, at least 3 and below d = {}",
                    self.d
                )));
            }
        }
        Ok(())
    }

    /// Indices `ℓ` for which `x_ℓ` and `y_ℓ` are nonzero.
    pub fn index_range(&self) -> RangeInclusive<u64> {
        let lo = self.n.map_or(1, |n| n.div_ceil(2));
        lo..=(self.d - 1) / 2
    }

    pub fn x_degree(&self, l: u64) -> u64 {
        2 * (self.p - 1) * l
    }

    pub fn y_degree(&self, l: u64) -> u64 {
        2 * (self.p - 1) * l - 1
    }

    /// Working degree cap: twice the top generator degree times `d − 1`.
    pub fn degree_cap(&self) -> u64 {
        2 * self.x_degree(*self.index_range().end()) * (self.d - 1)
    }

    /// Leading coefficient of `v_ℓ` in the (extended) Newton recursion as an
    /// integer: `ℓ` in the plain case, `⌊2ℓ/(n+1)⌋` in the cofiber case.
    pub fn newton_coefficient(&self, l: u64) -> u64 {
        match self.n {
            None => l,
            Some(n) => 2 * l / (n + 1),
        }
    }
}

impl fmt::Display for CoalgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.n {
            None => write!(f, "p={}, d={}", self.p, self.d),
            Some(n) => write!(f, "p={}, n={}, d={}", self.p, n, self.d),
        }
    }
}

/// The free graded-commutative Hopf algebra over a [`CoalgebraSpec`].
#[derive(Debug, Clone)]
pub struct HopfAlgebra {
    spec: CoalgebraSpec,
    pres: Arc<AlgebraPresentation>,
    lo: u64,
    hi: u64,
    /// Coproduct of each generator, indexed like the presentation.
    generator_coproducts: Vec<TensorSquareElement>,
}

/// Elements of the Hopf algebra are ordinary algebra elements over its
/// presentation.
pub type HopfElement = Element;

impl HopfAlgebra {
    pub fn new(spec: CoalgebraSpec) -> Result<Self> {
        spec.validate()?;
        let range = spec.index_range();
        let (lo, hi) = (*range.start(), *range.end());
        let cap = u32::try_from(spec.degree_cap())
            .map_err(|_| HopfError::InvalidSpec("degree cap exceeds u32".into()))?;
        let mut gens = Vec::new();
        for l in range.clone() {
            gens.push(Generator {
                name: format!("x_{l}"),
                degree: spec.x_degree(l) as u32,
                kind: GeneratorKind::Polynomial,
            });
        }
        for l in range {
            gens.push(Generator {
                name: format!("y_{l}"),
                degree: spec.y_degree(l) as u32,
                kind: GeneratorKind::Exterior,
            });
        }
        let pres = AlgebraPresentation::new(spec.p, gens, Some(cap))?;
        let mut alg = Self { spec, pres, lo, hi, generator_coproducts: Vec::new() };
        let mut coproducts = Vec::new();
        for l in lo..=hi {
            let mut t = TensorSquareElement::zero(&alg.pres);
            for i in 0..=l {
                t = t.add(&TensorSquareElement::tensor(&alg.x(i), &alg.x(l - i)))?;
            }
            coproducts.push(t);
        }
        for l in lo..=hi {
            let one = Element::one(&alg.pres);
            let y = alg.y(l);
            let mut t = TensorSquareElement::tensor(&y, &one)
                .add(&TensorSquareElement::tensor(&one, &y))?;
            for i in 1..l {
                t = t.add(&TensorSquareElement::tensor(&alg.x(i), &alg.y(l - i)))?;
                t = t.add(&TensorSquareElement::tensor(&alg.y(l - i), &alg.x(i)))?;
            }
            coproducts.push(t);
        }
        alg.generator_coproducts = coproducts;
        Ok(alg)
    }

    pub fn spec(&self) -> &CoalgebraSpec {
        &self.spec
    }

    pub fn presentation(&self) -> &Arc<AlgebraPresentation> {
        &self.pres
    }

    fn in_range(&self, l: u64) -> bool {
        (self.lo..=self.hi).contains(&l)
    }

    /// `x_ℓ`, with `x_0 = 1` and zero outside the generator range.
    pub fn x(&self, l: u64) -> HopfElement {
        if l == 0 {
            Element::one(&self.pres)
        } else if self.in_range(l) {
            Element::generator_at(&self.pres, (l - self.lo) as usize)
        } else {
            Element::zero(&self.pres)
        }
    }

    /// `y_ℓ`, zero outside the generator range (including `ℓ = 0`).
    pub fn y(&self, l: u64) -> HopfElement {
        if self.in_range(l) {
            let n = (self.hi - self.lo + 1) as usize;
            Element::generator_at(&self.pres, n + (l - self.lo) as usize)
        } else {
            Element::zero(&self.pres)
        }
    }

    fn check_owned(&self, a: &Element) -> Result<()> {
        if Arc::ptr_eq(a.presentation(), &self.pres) || **a.presentation() == *self.pres {
            Ok(())
        } else {
            Err(HopfError::Contract(format!(
                "element is not over the generators of the coalgebra ({})",
                self.spec
            )))
        }
    }

    /// The algebra morphism extending the generator coproducts.
    pub fn coproduct(&self, a: &HopfElement) -> Result<TensorSquareElement> {
        self.check_owned(a)?;
        let mut out = TensorSquareElement::zero(&self.pres);
        for (m, c) in a.raw_terms() {
            let mut t = TensorSquareElement::unit(&self.pres);
            for (idx, &e) in m.exponents().iter().enumerate() {
                for _ in 0..e {
                    t = t.multiply(&self.generator_coproducts[idx])?;
                }
            }
            out = out.add(&t.scale(ModPInt::new(c, self.spec.p)?))?;
        }
        Ok(out)
    }

    /// `Δ(a) − a⊗1 − 1⊗a`.
    pub fn coproduct_defect(&self, a: &HopfElement) -> Result<TensorSquareElement> {
        let one = Element::one(&self.pres);
        self.coproduct(a)?
            .sub(&TensorSquareElement::tensor(a, &one))?
            .sub(&TensorSquareElement::tensor(&one, a))
    }

    pub fn is_primitive(&self, a: &HopfElement) -> Result<bool> {
        self.check_owned(a)?;
        if !a.constant_term().is_zero() {
            return Err(HopfError::Contract(format!(
                "primitivity is only defined for elements with zero constant term, got {a}"
            )));
        }
        Ok(self.coproduct_defect(a)?.is_zero())
    }

    /// Signed derivation with `∂x_ℓ = y_ℓ` and `∂y_ℓ = 0`.
    pub fn bockstein(&self, a: &HopfElement) -> Result<HopfElement> {
        self.check_owned(a)?;
        let n_x = (self.hi - self.lo + 1) as usize;
        let mut out = Element::zero(&self.pres);
        for (m, c) in a.raw_terms() {
            let exps = m.exponents();
            for j in 0..n_x {
                let e = exps[j];
                if e == 0 {
                    continue;
                }
                // m = prefix · x_j^e · suffix with x_j even, so
                // ∂m = (−1)^{|prefix|} e · prefix · x_j^{e−1} y_j · suffix.
                let mut prefix = vec![0; exps.len()];
                prefix[..j].copy_from_slice(&exps[..j]);
                let mut rest = exps.to_vec();
                rest[..j].iter_mut().for_each(|v| *v = 0);
                rest[j] = e - 1;
                let prefix_m = Monomial::from_exponents(prefix);
                let sign = if self.pres.monomial_degree(&prefix_m) % 2 == 1 { -1 } else { 1 };
                let coeff = ModPInt::from_i64(sign * e as i64, self.spec.p)
                    * ModPInt::new(c, self.spec.p)?;
                let term = Element::from_terms(&self.pres, [(prefix_m, 1)])
                    .multiply(&self.y(self.lo + j as u64))?
                    .multiply(&Element::from_terms(
                        &self.pres,
                        [(Monomial::from_exponents(rest), 1)],
                    ))?;
                out = out.add(&term.scale(coeff))?;
            }
        }
        Ok(out)
    }

    /// `(∂⊗1 + σ⊗∂)` on the tensor square, `σ` being the degree sign.
    pub fn bockstein_tensor(&self, t: &TensorSquareElement) -> Result<TensorSquareElement> {
        let mut out = TensorSquareElement::zero(&self.pres);
        for ((l, r), &c) in &t.terms {
            let coeff = ModPInt::new(c, self.spec.p)?;
            let left = Element::from_terms(&self.pres, [(l.clone(), 1)]);
            let right = Element::from_terms(&self.pres, [(r.clone(), 1)]);
            let a = TensorSquareElement::tensor(&self.bockstein(&left)?, &right);
            let mut b = TensorSquareElement::tensor(&left, &self.bockstein(&right)?);
            if self.pres.monomial_degree(l) % 2 == 1 {
                b = b.neg();
            }
            out = out.add(&a.add(&b)?.scale(coeff))?;
        }
        Ok(out)
    }

    /// Newton polynomials `v_1, …, v_{(d−1)/2}` (entry `i` is `v_{i+1}`).
    /// Requires the plain variant with `d ≤ 2p − 1`.
    pub fn newton_polynomials(&self) -> Result<Vec<HopfElement>> {
        if self.spec.n.is_some() {
            return Err(HopfError::Precondition(
                "plain Newton polynomials need the variant without n".into(),
            ));
        }
        if self.spec.d > 2 * self.spec.p - 1 {
            return Err(HopfError::Precondition(format!(
                "d = {} exceeds 2p − 1 = {}; the leading coefficient of v_{} vanishes mod p",
                self.spec.d,
                2 * self.spec.p - 1,
                self.spec.p
            )));
        }
        self.recursion()
    }

    /// Extended Newton polynomials `v_1, …, v_{(d−1)/2}` for the cofiber
    /// variant. Entries below `(n+1)/2` come out zero. Requires `d < (n+1)p`.
    pub fn extended_newton_polynomials(&self) -> Result<Vec<HopfElement>> {
        let Some(n) = self.spec.n else {
            return Err(HopfError::Precondition(
                "extended Newton polynomials need the cofiber variant (n)".into(),
            ));
        };
        if self.spec.d >= (n + 1) * self.spec.p {
            return Err(HopfError::Precondition(format!(
                "d = {} is not below (n+1)p = {}",
                self.spec.d,
                (n + 1) * self.spec.p
            )));
        }
        self.recursion()
    }

    /// The polynomials appropriate to the variant.
    pub fn newton_sequence(&self) -> Result<Vec<HopfElement>> {
        match self.spec.n {
            None => self.newton_polynomials(),
            Some(_) => self.extended_newton_polynomials(),
        }
    }

    fn recursion(&self) -> Result<Vec<HopfElement>> {
        let mut v: Vec<HopfElement> = Vec::new();
        for l in 1..=self.hi {
            let c = ModPInt::from_i64(self.spec.newton_coefficient(l) as i64, self.spec.p);
            let mut cur = self.x(l).scale(c);
            for i in 1..l {
                let xi = self.x(i);
                if xi.is_zero() {
                    continue;
                }
                cur = cur.sub(&xi.multiply(&v[(l - i - 1) as usize])?)?;
            }
            v.push(cur);
        }
        Ok(v)
    }

    /// Recovers each `x_ℓ` from the Newton polynomials by triangular
    /// back-substitution and compares with the generator.
    pub fn basis_change_check(&self) -> Result<bool> {
        let v = self.newton_sequence()?;
        let mut rec: Vec<HopfElement> = Vec::new();
        for l in 1..=self.hi {
            if !self.in_range(l) {
                rec.push(Element::zero(&self.pres));
                continue;
            }
            let c = ModPInt::from_i64(self.spec.newton_coefficient(l) as i64, self.spec.p);
            let Some(c_inv) = c.inv() else {
                return Ok(false);
            };
            let mut acc = v[(l - 1) as usize].clone();
            for i in 1..l {
                acc = acc.add(&rec[(i - 1) as usize].multiply(&v[(l - i - 1) as usize])?)?;
            }
            let x = acc.scale(c_inv);
            if x != self.x(l) {
                return Ok(false);
            }
            rec.push(x);
        }
        Ok(true)
    }

    /// Runs the full primitivity report for the spec.
    pub fn check(&self) -> Result<NewtonReport> {
        let v = self.newton_sequence()?;
        let mut rows = Vec::new();
        for (i, vl) in v.iter().enumerate() {
            let l = i as u64 + 1;
            let dv = self.bockstein(vl)?;
            let defect = self.coproduct_defect(vl)?;
            let d_defect = self.coproduct_defect(&dv)?;
            let nonzero = !vl.is_zero();
            rows.push(NewtonRow {
                l,
                v: vl.to_string(),
                nonzero,
                expected_nonzero: self.in_range(l),
                defect: defect.to_string(),
                primitive: defect.is_zero(),
                bockstein: dv.to_string(),
                bockstein_defect: d_defect.to_string(),
                bockstein_primitive: d_defect.is_zero(),
            });
        }
        let support_ok = rows.iter().all(|r| r.nonzero == r.expected_nonzero);
        let initial_segment_ok = match self.spec.n {
            None => true,
            Some(n) => (self.lo..=n.min(self.hi)).all(|l| v[(l - 1) as usize] == self.x(l)),
        };
        let basis_change_ok = self.basis_change_check()?;
        let pass = support_ok
            && initial_segment_ok
            && basis_change_ok
            && rows.iter().all(|r| r.primitive && r.bockstein_primitive);
        Ok(NewtonReport {
            spec: self.spec,
            rows,
            support_ok,
            initial_segment_ok,
            basis_change_ok,
            pass,
        })
    }

    /// Counit applied to the left factor: keeps terms whose left side is 1.
    pub fn counit_left(&self, t: &TensorSquareElement) -> HopfElement {
        Element::from_terms(
            &self.pres,
            t.terms.iter().filter(|((l, _), _)| l.is_one()).map(|((_, r), &c)| (r.clone(), c)),
        )
    }

    /// Counit applied to the right factor.
    pub fn counit_right(&self, t: &TensorSquareElement) -> HopfElement {
        Element::from_terms(
            &self.pres,
            t.terms.iter().filter(|((_, r), _)| r.is_one()).map(|((l, _), &c)| (l.clone(), c)),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NewtonRow {
    pub l: u64,
    pub v: String,
    pub nonzero: bool,
    pub expected_nonzero: bool,
    pub defect: String,
    pub primitive: bool,
    pub bockstein: String,
    pub bockstein_defect: String,
    pub bockstein_primitive: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NewtonReport {
    pub spec: CoalgebraSpec,
    pub rows: Vec<NewtonRow>,
    pub support_ok: bool,
    /// `v_ℓ = x_ℓ` for `(n+1)/2 ≤ ℓ ≤ n` (always true in the plain variant).
    pub initial_segment_ok: bool,
    pub basis_change_ok: bool,
    pub pass: bool,
}

/// Sparse element of `A ⊗ A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorSquareElement {
    pres: Arc<AlgebraPresentation>,
    terms: BTreeMap<(Monomial, Monomial), u64>,
}

impl TensorSquareElement {
    pub fn zero(pres: &Arc<AlgebraPresentation>) -> Self {
        Self { pres: pres.clone(), terms: BTreeMap::new() }
    }

    pub fn unit(pres: &Arc<AlgebraPresentation>) -> Self {
        let one = Monomial::one(pres.generators().len());
        let mut t = Self::zero(pres);
        t.terms.insert((one.clone(), one), 1);
        t
    }

    /// `a ⊗ b`, extended bilinearly.
    pub fn tensor(a: &Element, b: &Element) -> Self {
        let p = a.presentation().prime();
        let mut t = Self::zero(a.presentation());
        for (ma, ca) in a.raw_terms() {
            for (mb, cb) in b.raw_terms() {
                t.add_term((ma.clone(), mb.clone()), (ca as u128 * cb as u128 % p as u128) as u64);
            }
        }
        t
    }

    fn add_term(&mut self, key: (Monomial, Monomial), c: u64) {
        let p = self.pres.prime();
        let c = c % p;
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(key.clone()).or_insert(0);
        *entry = (*entry + c) % p;
        if *entry == 0 {
            self.terms.remove(&key);
        }
    }

    fn same(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.pres, &other.pres) || *self.pres == *other.pres {
            Ok(())
        } else {
            Err(AlgebraError::MismatchedPresentation.into())
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, left: &Monomial, right: &Monomial) -> ModPInt {
        let c = self.terms.get(&(left.clone(), right.clone())).copied().unwrap_or(0);
        ModPInt::reduce(c, self.pres.prime())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same(other)?;
        let mut out = self.clone();
        for (k, &c) in &other.terms {
            out.add_term(k.clone(), c);
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        let p = self.pres.prime();
        let mut out = Self::zero(&self.pres);
        for (k, &c) in &self.terms {
            out.terms.insert(k.clone(), p - c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: ModPInt) -> Self {
        let mut out = Self::zero(&self.pres);
        for (k, &v) in &self.terms {
            out.add_term(k.clone(), (v as u128 * c.value() as u128 % self.pres.prime() as u128) as u64);
        }
        out
    }

    /// `(a⊗b)(c⊗d) = (−1)^{|b||c|} ac ⊗ bd`, dropping anything above the
    /// degree cap in total degree.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.same(other)?;
        let p = self.pres.prime();
        let cap = self.pres.degree_cap().map(u64::from);
        let mut out = Self::zero(&self.pres);
        for ((a, b), &x) in &self.terms {
            let deg_b = self.pres.monomial_degree(b);
            for ((c, d), &y) in &other.terms {
                let Some((ac, neg1)) = self.pres.mul_monomials(a, c) else { continue };
                let Some((bd, neg2)) = self.pres.mul_monomials(b, d) else { continue };
                if let Some(cap) = cap {
                    if self.pres.monomial_degree(&ac) + self.pres.monomial_degree(&bd) > cap {
                        continue;
                    }
                }
                let koszul = deg_b % 2 == 1 && self.pres.monomial_degree(c) % 2 == 1;
                let negative = neg1 ^ neg2 ^ koszul;
                let mut v = (x as u128 * y as u128 % p as u128) as u64;
                if negative && v != 0 {
                    v = p - v;
                }
                out.add_term((ac, bd), v);
            }
        }
        Ok(out)
    }

    /// Terms in a stable order: ascending total degree, then by the left and
    /// right monomials.
    fn ordered_terms(&self) -> Vec<(&Monomial, &Monomial, u64)> {
        let mut v: Vec<_> = self.terms.iter().map(|((l, r), &c)| (l, r, c)).collect();
        v.sort_by(|x, y| {
            let dx = (self.pres.monomial_degree(x.0), self.pres.monomial_degree(x.1));
            let dy = (self.pres.monomial_degree(y.0), self.pres.monomial_degree(y.1));
            (dx.0 + dx.1)
                .cmp(&(dy.0 + dy.1))
                .then(dy.0.cmp(&dx.0))
                .then(y.0.cmp(x.0))
                .then(y.1.cmp(x.1))
        });
        v
    }
}

impl fmt::Display for TensorSquareElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (l, r, c)) in self.ordered_terms().into_iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if c != 1 {
                write!(f, "{c}*")?;
            }
            write!(f, "{}⊗{}", format_monomial(&self.pres, l), format_monomial(&self.pres, r))?;
        }
        Ok(())
    }
}
