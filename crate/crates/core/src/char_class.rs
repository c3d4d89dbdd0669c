//! Cohomology models and Chern-class computations.
//!
//! Two models are provided:
//!
//! * [`CyclicModel`]: `F_p[T]/(T^{M+1}) ⊗ Λ(e)` with `deg T = 2`, where
//!   `M = (d-1)(p-1)/2`. This is the image of `H*(BZ/p; F_p)` in the
//!   cohomology of `F(R^d, p)/(Z/p)`; `e` is carried along but never enters
//!   a Chern class.
//! * [`ConfigModel`]: `F_p[c_1, ..., c_{k-1}]/(c_i^d)` with `deg c_i = 2i`,
//!   `d = p^t`, and everything above degree `2(d-1)(k-1)` set to zero.
//!
//! All "degrees" returned by this module are Chern indices, i.e. half the
//! cohomological degree.

use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::graded_algebra::{invert_unit, AlgebraError, AlgebraPresentation, Element};
use crate::modp_arith::{
    p_adic_digits, prime_power_exponent, require_odd_prime, ArithError, ModPInt,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassError {
    #[error("dimension {d} is not a positive power of {p}")]
    NotPrimePower { d: u64, p: u64 },
    #[error("invalid model parameter: {0}")]
    InvalidParameter(String),
    #[error("zero element has no non-vanishing degree")]
    ZeroElement,
    #[error("element has a term of odd cohomological degree")]
    OddDegree,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

pub type Result<T> = std::result::Result<T, ClassError>;

fn u32_param(v: u64, what: &str) -> Result<u32> {
    u32::try_from(v).map_err(|_| ClassError::InvalidParameter(format!("{what} = {v} too large")))
}

#[derive(Debug, Clone)]
pub struct CyclicModel {
    p: u64,
    d: u64,
    truncation: u32,
    pres: Arc<AlgebraPresentation>,
}

impl CyclicModel {
    /// Model for `F(R^d, p)/(Z/p)`, `p` an odd prime, `d >= 1`.
    pub fn new(p: u64, d: u64) -> Result<Self> {
        require_odd_prime(p)?;
        if d == 0 {
            return Err(ClassError::InvalidParameter("d must be at least 1".into()));
        }
        let m = (d - 1)
            .checked_mul(p - 1)
            .ok_or(ArithError::Overflow("(d-1)(p-1)"))?
            / 2;
        let truncation = u32_param(m, "truncation index")?;
        let builder = AlgebraPresentation::builder(p);
        // T^{M+1} = 0; with M = 0 the class T itself vanishes, which a
        // truncation exponent cannot express, so the degree cap does it.
        let pres = if truncation == 0 {
            builder.polynomial("T", 2).exterior("e", 1).degree_cap(1).build()?
        } else {
            builder
                .truncated("T", 2, truncation + 1)
                .exterior("e", 1)
                .build()?
        };
        Ok(Self { p, d, truncation, pres })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn dimension(&self) -> u64 {
        self.d
    }

    /// Largest `i` with `T^i != 0`.
    pub fn truncation_index(&self) -> u32 {
        self.truncation
    }

    /// `floor((d-1)/2) (p-1)`: the Chern index whose inverse class is shown
    /// non-zero for the p-regular bound.
    pub fn criterion_index(&self) -> u64 {
        (self.d - 1) / 2 * (self.p - 1)
    }

    pub fn presentation(&self) -> &Arc<AlgebraPresentation> {
        &self.pres
    }

    /// The class `T` (or zero when the model is trivial).
    pub fn t(&self) -> Element {
        Element::generator_at(&self.pres, 0)
    }

    pub fn e(&self) -> Element {
        Element::generator_at(&self.pres, 1)
    }

    pub fn t_power(&self, i: u32) -> Element {
        Element::monomial(&self.pres, &[i, 0], 1).expect("two generators")
    }

    /// Coefficient of `T^i` in `a`.
    pub fn coefficient(&self, a: &Element, i: u32) -> ModPInt {
        a.coefficient_of(&[i, 0])
    }
}

/// `prod_{j=1}^{p-1} (1 + jT)^mult`, expanded literally.
pub fn total_chern_cyclic(model: &CyclicModel, mult: u64) -> Result<Element> {
    let pres = model.presentation();
    let t = model.t();
    let mut product = Element::one(pres);
    for j in 1..model.p {
        let factor = Element::one(pres).add(&t.scale(ModPInt::reduce(j, model.p)))?;
        product = product.multiply(&factor)?;
    }
    Ok(product.pow(mult))
}

pub fn inverse_chern_cyclic(model: &CyclicModel, mult: u64) -> Result<Element> {
    Ok(invert_unit(&total_chern_cyclic(model, mult)?)?)
}

#[derive(Debug, Clone)]
pub struct ConfigModel {
    p: u64,
    t: u32,
    d: u64,
    k: u64,
    pres: Arc<AlgebraPresentation>,
    uncapped: Arc<AlgebraPresentation>,
}

impl ConfigModel {
    /// Model for `F(C^d, k)/S_k` with `d = p^t`, `t >= 1`, `k >= 2`.
    pub fn new(p: u64, d: u64, k: u64) -> Result<Self> {
        require_odd_prime(p)?;
        let t = prime_power_exponent(d, p).ok_or(ClassError::NotPrimePower { d, p })?;
        if k < 2 {
            return Err(ClassError::InvalidParameter("k must be at least 2".into()));
        }
        let trunc = u32_param(d, "d")?;
        let cap = 2 * (d - 1)
            .checked_mul(k - 1)
            .ok_or(ArithError::Overflow("(d-1)(k-1)"))?;
        let cap = u32_param(cap, "degree cap")?;
        let build = |cap: Option<u32>| -> Result<Arc<AlgebraPresentation>> {
            let mut b = AlgebraPresentation::builder(p);
            for i in 1..k {
                b = b.truncated(format!("c_{i}"), u32_param(2 * i, "deg c_i")?, trunc);
            }
            if let Some(cap) = cap {
                b = b.degree_cap(cap);
            }
            Ok(b.build()?)
        };
        Ok(Self { p, t, d, k, pres: build(Some(cap))?, uncapped: build(None)? })
    }

    pub fn from_exponent(p: u64, t: u32, k: u64) -> Result<Self> {
        let d = p
            .checked_pow(t)
            .ok_or(ArithError::Overflow("p^t"))?;
        Self::new(p, d, k)
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn exponent(&self) -> u32 {
        self.t
    }

    pub fn dimension(&self) -> u64 {
        self.d
    }

    pub fn points(&self) -> u64 {
        self.k
    }

    /// `(d-1)(k-1)`, the Chern index of `c_{k-1}^{d-1}`.
    pub fn top_index(&self) -> u64 {
        (self.d - 1) * (self.k - 1)
    }

    pub fn presentation(&self) -> &Arc<AlgebraPresentation> {
        &self.pres
    }

    /// `c_i` for `1 <= i <= k-1`; zero for `i >= k`.
    pub fn c(&self, i: u64) -> Element {
        if i == 0 {
            Element::one(&self.pres)
        } else if i >= self.k {
            Element::zero(&self.pres)
        } else {
            Element::generator_at(&self.pres, (i - 1) as usize)
        }
    }

    /// `1 + c_1 + ... + c_{k-1}`.
    pub fn total_chern(&self) -> Element {
        total_in(&self.pres)
    }

    /// Exponent vector of `c_{k-1}^{d-1}`.
    fn top_exponents(&self) -> Vec<u32> {
        let mut exps = vec![0u32; (self.k - 1) as usize];
        *exps.last_mut().expect("k >= 2") = (self.d - 1) as u32;
        exps
    }
}

fn total_in(pres: &Arc<AlgebraPresentation>) -> Element {
    let mut total = Element::one(pres);
    for idx in 0..pres.generators().len() {
        total = total
            .add(&Element::generator_at(pres, idx))
            .expect("same presentation");
    }
    total
}

/// `(1 + c_1 + ... + c_{k-1})^{d-1}`, the inverse of the total Chern class
/// given that its d-th power is 1.
pub fn inverse_chern_config(model: &ConfigModel) -> Element {
    model.total_chern().pow(model.d - 1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TopDual {
    /// Coefficient of `c_{k-1}^{d-1}`.
    pub coefficient: ModPInt,
    /// No monomial of Chern weight above `(d-1)(k-1)` survives, checked on
    /// the expansion without the degree cap.
    pub vanishes_above: bool,
}

pub fn top_dual_coefficient(model: &ConfigModel) -> TopDual {
    let expansion = total_in(&model.uncapped).pow(model.d - 1);
    let top = model.top_index();
    let vanishes_above = expansion
        .terms()
        .iter()
        .all(|(m, _)| model.uncapped.monomial_degree(m) / 2 <= top);
    TopDual { coefficient: expansion.coefficient_of(&model.top_exponents()), vanishes_above }
}

/// Largest Chern index (cohomological degree / 2) carrying a non-zero term.
pub fn max_nonvanishing_inverse_degree(elem: &Element) -> Result<u64> {
    let pres = elem.presentation();
    let mut best = None;
    for (m, _) in elem.terms() {
        let deg = pres.monomial_degree(m);
        if deg % 2 == 1 {
            return Err(ClassError::OddDegree);
        }
        best = best.max(Some(deg / 2));
    }
    best.ok_or(ClassError::ZeroElement)
}

/// One p-adic block `p^r` repeated `multiplicity` times in the decomposition
/// of `k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PullbackBlock {
    pub points: u64,
    pub multiplicity: u64,
    pub dual_degree: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PullbackDual {
    pub p: u64,
    pub d: u64,
    pub k: u64,
    pub blocks: Vec<PullbackBlock>,
    /// Top non-vanishing Chern index of the external product of the block
    /// inverse classes.
    pub degree: u64,
    /// Coefficient of the product of the block top classes.
    pub coefficient: ModPInt,
}

/// Pulls the inverse Chern class of `F(C^d, k)/S_k` back along the
/// inclusion of the product of the p-adic blocks of `k`, multiplying the
/// block classes in the tensor product of the block models. The resulting
/// top non-vanishing index is `(d-1)(k - alpha_p(k))`.
pub fn pullback_dual_degree(p: u64, d: u64, k: u64) -> Result<PullbackDual> {
    require_odd_prime(p)?;
    prime_power_exponent(d, p).ok_or(ClassError::NotPrimePower { d, p })?;
    if k == 0 {
        return Err(ClassError::InvalidParameter("k must be at least 1".into()));
    }
    let digits = p_adic_digits(k, p)?;
    let trunc = u32_param(d, "d")?;

    let mut blocks = Vec::new();
    let mut builder = AlgebraPresentation::builder(p);
    let mut cap = 0u64;
    // (first generator index, generator count) for every block copy
    let mut copies: Vec<(usize, usize)> = Vec::new();
    let mut next = 0usize;
    for (r, beta) in digits.nonzero_terms() {
        let points = p.pow(r);
        for copy in 0..beta {
            for i in 1..points {
                builder = builder.truncated(format!("c{r}.{copy}_{i}"), u32_param(2 * i, "deg")?, trunc);
            }
            copies.push((next, (points - 1) as usize));
            next += (points - 1) as usize;
            cap += 2 * (d - 1) * (points - 1);
        }
        blocks.push(PullbackBlock {
            points,
            multiplicity: beta,
            dual_degree: (d - 1) * (points - 1),
        });
    }
    let pres = builder.degree_cap(u32_param(cap, "degree cap")?).build()?;

    let mut product = Element::one(&pres);
    let mut top_exps = vec![0u32; next];
    for &(start, len) in &copies {
        let mut block_total = Element::one(&pres);
        for idx in start..start + len {
            block_total = block_total.add(&Element::generator_at(&pres, idx))?;
        }
        product = product.multiply(&block_total.pow(d - 1))?;
        if len > 0 {
            top_exps[start + len - 1] = (d - 1) as u32;
        }
    }
    let degree = max_nonvanishing_inverse_degree(&product)?;
    Ok(PullbackDual {
        p,
        d,
        k,
        blocks,
        degree,
        coefficient: product.coefficient_of(&top_exps),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded_algebra::{element_height, Height};

    #[test]
    fn cyclic_truncation() {
        let m = CyclicModel::new(3, 5).unwrap();
        assert_eq!(m.truncation_index(), 4);
        assert_eq!(m.criterion_index(), 4);
        assert!(!m.t_power(4).is_zero());
        assert!(m.t_power(5).is_zero());
        let m = CyclicModel::new(5, 4).unwrap();
        assert_eq!(m.truncation_index(), 6);
        assert_eq!(m.criterion_index(), 4);
        let trivial = CyclicModel::new(3, 1).unwrap();
        assert!(trivial.t().is_zero());
        assert!(!trivial.e().is_zero());
        assert!(CyclicModel::new(2, 3).is_err());
    }

    #[test]
    fn cyclic_total_classes() {
        let m = CyclicModel::new(3, 5).unwrap();
        assert_eq!(total_chern_cyclic(&m, 1).unwrap().to_string(), "1 + 2*T^2");
        assert_eq!(total_chern_cyclic(&m, 0).unwrap().to_string(), "1");
        let m5 = CyclicModel::new(5, 5).unwrap();
        assert_eq!(total_chern_cyclic(&m5, 1).unwrap().to_string(), "1 + 4*T^4");
        assert_eq!(inverse_chern_cyclic(&m, 1).unwrap().to_string(), "1 + T^2 + T^4");
    }

    #[test]
    fn cyclic_skew_expansion_low_d() {
        // l = 3, d = 2 seen as R^4: coefficient of T^2 is C(3,2) = 3 = 0 mod 3
        let m = CyclicModel::new(3, 4).unwrap();
        let inv = inverse_chern_cyclic(&m, 3).unwrap();
        assert_eq!(m.coefficient(&inv, 0).value(), 1);
        assert_eq!(m.coefficient(&inv, 2).value(), 0);
        assert_eq!(max_nonvanishing_inverse_degree(&inv).unwrap(), 0);
    }

    #[test]
    fn config_expansions() {
        let m = ConfigModel::from_exponent(3, 1, 2).unwrap();
        assert_eq!(inverse_chern_config(&m).to_string(), "1 + 2*c_1 + c_1^2");
        let m = ConfigModel::from_exponent(3, 1, 3).unwrap();
        let inv = inverse_chern_config(&m);
        assert_eq!(inv.to_string(), "1 + 2*c_1 + c_1^2 + 2*c_2 + 2*c_1*c_2 + c_2^2");
        assert_eq!(max_nonvanishing_inverse_degree(&inv).unwrap(), 4);
        assert!(m.c(3).is_zero());
    }

    #[test]
    fn top_dual_examples() {
        for (p, t, k) in [(3, 1, 2), (3, 1, 9), (3, 2, 2)] {
            let m = ConfigModel::from_exponent(p, t, k).unwrap();
            let top = top_dual_coefficient(&m);
            assert_eq!(top.coefficient.value(), 1, "{p} {t} {k}");
            assert!(top.vanishes_above);
        }
    }

    #[test]
    fn config_rejects_non_powers() {
        assert_eq!(ConfigModel::new(3, 6, 2).unwrap_err(), ClassError::NotPrimePower { d: 6, p: 3 });
        assert!(ConfigModel::new(3, 1, 2).is_err());
        assert!(ConfigModel::new(3, 3, 1).is_err());
    }

    #[test]
    fn max_degree_edge_cases() {
        let m = CyclicModel::new(3, 5).unwrap();
        assert_eq!(max_nonvanishing_inverse_degree(&Element::one(m.presentation())).unwrap(), 0);
        assert_eq!(
            max_nonvanishing_inverse_degree(&Element::zero(m.presentation())),
            Err(ClassError::ZeroElement)
        );
        assert_eq!(max_nonvanishing_inverse_degree(&m.e()), Err(ClassError::OddDegree));
    }

    #[test]
    fn height_of_top_generator() {
        let m = ConfigModel::from_exponent(3, 1, 3).unwrap();
        assert_eq!(element_height(&m.c(2), 20).unwrap(), Height::Finite(3));
    }

    #[test]
    fn pullback_degrees() {
        let pb = pullback_dual_degree(3, 3, 5).unwrap();
        assert_eq!(pb.degree, 2 * (5 - 3));
        assert_eq!(pb.coefficient.value(), 1);
        assert_eq!(pb.blocks.len(), 2);
        let pb = pullback_dual_degree(5, 5, 3).unwrap();
        assert_eq!(pb.degree, 0);
        let pb = pullback_dual_degree(3, 3, 9).unwrap();
        assert_eq!(pb.degree, 16);
    }
}
