//! Closed-form lower bounds for complex k-regular and ℓ-skew embeddings.
//!
//! Every calculator reports the least `N` that the corresponding theorem does
//! not exclude. Parameters named `d_real` are real source dimensions; plain
//! `d` is a complex dimension. The comparison table works with `ℂ^d` sources
//! and passes `d_real = 2d` to the real-source calculators.

use indexmap::IndexMap;
use serde::Serialize;
use thiserror::Error;

use crate::modp_arith::{
    alpha_p, f_dl, prime_power_exponent, primes_up_to, require_odd_prime, ArithError,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

pub type Result<T> = std::result::Result<T, BoundsError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TheoremId {
    KregularReal,
    KregularPrime,
    KregularChisholm,
    Brs,
    SkewReal,
    SkewPrime,
    SkewChisholm,
    CatLower,
    DualClassKregular,
    DualClassSkew,
}

impl TheoremId {
    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::KregularReal => "kregular_real",
            TheoremId::KregularPrime => "kregular_prime",
            TheoremId::KregularChisholm => "kregular_chisholm",
            TheoremId::Brs => "brs",
            TheoremId::SkewReal => "skew_real",
            TheoremId::SkewPrime => "skew_prime",
            TheoremId::SkewChisholm => "skew_chisholm",
            TheoremId::CatLower => "cat_lower",
            TheoremId::DualClassKregular => "dual_class_kregular",
            TheoremId::DualClassSkew => "dual_class_skew",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Intermediate {
    Int(i64),
    List(Vec<i64>),
}

/// Result of a bound calculator. For [`cat_lower`] the "least admissible"
/// value is the least value the category can take.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub theorem_id: TheoremId,
    pub inputs: IndexMap<String, i64>,
    pub least_admissible_n: i64,
    pub excluded_up_to: i64,
    pub intermediates: IndexMap<String, Intermediate>,
    pub notes: Vec<String>,
}

impl BoundReport {
    fn new(theorem_id: TheoremId, inputs: &[(&str, u64)], least: i64) -> Self {
        Self {
            theorem_id,
            inputs: inputs.iter().map(|(k, v)| (k.to_string(), *v as i64)).collect(),
            least_admissible_n: least,
            excluded_up_to: least - 1,
            intermediates: IndexMap::new(),
            notes: Vec::new(),
        }
    }

    fn with(mut self, name: &str, value: i64) -> Self {
        self.intermediates.insert(name.to_string(), Intermediate::Int(value));
        self
    }
}

fn require_positive(name: &str, v: u64) -> Result<()> {
    if v == 0 {
        Err(BoundsError::Domain(format!("{name} must be positive")))
    } else {
        Ok(())
    }
}

fn require_power_of(d: u64, p: u64) -> Result<u32> {
    prime_power_exponent(d, p)
        .ok_or_else(|| BoundsError::Domain(format!("d = {d} is not a positive power of p = {p}")))
}

/// `⌈(d_real(k − α_2(k)) + α_2(k)) / 2⌉`.
pub fn bound_kregular_real(d_real: u64, k: u64) -> Result<BoundReport> {
    require_positive("d_real", d_real)?;
    require_positive("k", k)?;
    let a = alpha_p(k, 2)?;
    let least = (d_real * (k - a) + a).div_ceil(2) as i64;
    Ok(BoundReport::new(TheoremId::KregularReal, &[("d_real", d_real), ("k", k)], least)
        .with("alpha_2", a as i64))
}

/// `⌊(d_real + 1)/2⌋(p − 1) + 1` for a complex p-regular embedding.
pub fn bound_kregular_prime(d_real: u64, p: u64) -> Result<BoundReport> {
    require_positive("d_real", d_real)?;
    require_odd_prime(p)?;
    let half = d_real.div_ceil(2);
    let least = (half * (p - 1) + 1) as i64;
    Ok(BoundReport::new(TheoremId::KregularPrime, &[("d_real", d_real), ("p", p)], least)
        .with("floor_half", half as i64))
}

/// `d(k − α_p(k)) + α_p(k)` for `d = p^t`.
pub fn bound_kregular_chisholm(d: u64, k: u64, p: u64) -> Result<BoundReport> {
    require_odd_prime(p)?;
    require_positive("k", k)?;
    let t = require_power_of(d, p)?;
    let a = alpha_p(k, p)?;
    let least = (d * (k - a) + a) as i64;
    let mut r = BoundReport::new(TheoremId::KregularChisholm, &[("d", d), ("k", k), ("p", p)], least)
        .with("t", t as i64)
        .with(&format!("alpha_{p}"), a as i64)
        .with("D", ((d - 1) * (k - a)) as i64);
    if let Some(note) = printed_discrepancy(d, k, p, least) {
        r.notes.push(note);
    }
    Ok(r)
}

/// Third-column values of the published comparison table.
const PRINTED_CHISHOLM: &[((u64, u64, u64), i64)] = &[((3, 3, 3), 7), ((3, 9, 3), 25), ((3, 8, 3), 18)];

fn printed_discrepancy(d: u64, k: u64, p: u64, computed: i64) -> Option<String> {
    let &(_, printed) = PRINTED_CHISHOLM.iter().find(|(key, _)| *key == (d, k, p))?;
    if printed == computed {
        return None;
    }
    let digits = crate::modp_arith::p_adic_digits(k, p).ok()?;
    let rendered: String = digits.digits().iter().rev().map(|x| x.to_string()).collect();
    Some(format!(
        "published table prints {printed}; alpha_{p}({k}) = {} (base-{p} digits {rendered}) gives {computed}",
        digits.digit_sum()
    ))
}

/// `⌈d_real·k/2⌉ + k` for a complex 2k-regular embedding.
pub fn bound_brs(d_real: u64, k: u64) -> Result<BoundReport> {
    require_positive("d_real", d_real)?;
    require_positive("k", k)?;
    let least = ((d_real * k).div_ceil(2) + k) as i64;
    Ok(BoundReport::new(TheoremId::Brs, &[("d_real", d_real), ("k", k)], least)
        .with("regularity", (2 * k) as i64))
}

/// `γ(d) = ⌊log_2 d⌋ + 1`, the bit length of `d`.
pub fn gamma(d: u64) -> u32 {
    u64::BITS - d.leading_zeros()
}

/// Least integer not below `((2^{γ+1} − 2d − 1)(ℓ − α) + 2(d+1)α − ℓ)/2 − 1`.
pub fn bound_skew_real(d: u64, l: u64) -> Result<BoundReport> {
    require_positive("d", d)?;
    require_positive("l", l)?;
    let g = gamma(d);
    let a = alpha_p(l, 2)? as i128;
    let (d_, l_) = (d as i128, l as i128);
    let x = ((1i128 << (g + 1)) - 2 * d_ - 1) * (l_ - a) + 2 * (d_ + 1) * a - l_;
    // ⌈x/2 − 1⌉ = ⌈(x − 2)/2⌉ = ⌊(x − 1)/2⌋
    let least = (x - 1).div_euclid(2).max(0) as i64;
    Ok(BoundReport::new(TheoremId::SkewReal, &[("d", d), ("l", l)], least)
        .with("gamma", g as i64)
        .with("alpha_2", a as i64)
        .with("twice_threshold_plus_two", x as i64))
}

/// `(ℓ − 1)(d + f(d,ℓ) + 1) + d`.
pub fn bound_skew_prime(d: u64, l: u64) -> Result<BoundReport> {
    require_positive("d", d)?;
    require_odd_prime(l)?;
    let f = f_dl(d, l)?;
    let least = ((l - 1) * (d + f + 1) + d) as i64;
    Ok(BoundReport::new(TheoremId::SkewPrime, &[("d", d), ("l", l)], least).with("f", f as i64))
}

/// `(d − 1)(ℓ − α_p(ℓ)) + (d + 1)ℓ − 1` for `d = p^t`.
pub fn bound_skew_chisholm(d: u64, l: u64, p: u64) -> Result<BoundReport> {
    require_odd_prime(p)?;
    require_positive("l", l)?;
    let t = require_power_of(d, p)?;
    let a = alpha_p(l, p)?;
    let dual = (d - 1) * (l - a);
    let least = (dual + (d + 1) * l - 1) as i64;
    Ok(BoundReport::new(TheoremId::SkewChisholm, &[("d", d), ("l", l), ("p", p)], least)
        .with("t", t as i64)
        .with(&format!("alpha_{p}"), a as i64)
        .with("D", dual as i64))
}

/// `max_p 2(d − 1)(k − α_p(k))` over primes `p ≤ k`.
pub fn cat_lower(d: u64, k: u64) -> Result<BoundReport> {
    require_positive("d", d)?;
    if k < 2 {
        return Err(BoundsError::Domain("k must be at least 2".into()));
    }
    let mut best = 0u64;
    let mut maximizers = Vec::new();
    for p in primes_up_to(k) {
        let v = 2 * (d - 1) * (k - alpha_p(k, p)?);
        if v > best {
            best = v;
            maximizers.clear();
        }
        if v == best {
            maximizers.push(p as i64);
        }
    }
    let mut r = BoundReport::new(TheoremId::CatLower, &[("d", d), ("k", k)], best as i64);
    r.intermediates.insert("maximizing_primes".into(), Intermediate::List(maximizers));
    Ok(r)
}

/// `((2d − 2)(k − 1), (2d − 1)(k − 1))` with `k = p^m`.
pub fn secat_range(d: u64, p: u64, m: u32) -> Result<(u64, u64)> {
    require_positive("d", d)?;
    require_odd_prime(p)?;
    if m == 0 {
        return Err(BoundsError::Domain("m must be positive".into()));
    }
    let k = p
        .checked_pow(m)
        .ok_or_else(|| BoundsError::Domain(format!("{p}^{m} overflows")))?;
    Ok(((2 * d - 2) * (k - 1), (2 * d - 1) * (k - 1)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HeightBound {
    pub d: u64,
    pub p: u64,
    pub t: u32,
    pub value: u64,
    pub notes: Vec<String>,
}

/// `min{2^t : 2^t ≥ d}` for `p = 2`, `min{p^t : 2p^t ≥ d}` for odd `p`.
pub fn height_bound(d: u64, p: u64) -> Result<HeightBound> {
    if d < 2 {
        return Err(BoundsError::Domain("d must be at least 2".into()));
    }
    crate::modp_arith::require_prime(p)?;
    let factor = if p == 2 { 1 } else { 2 };
    let mut t = 0u32;
    let mut value = 1u64;
    while factor * value < d {
        value *= p;
        t += 1;
    }
    let mut notes = Vec::new();
    if factor * value == d && value > 1 {
        notes.push(format!("d = {}{}^{t}: the bound is attained, height = {value}", if p == 2 { "" } else { "2*" }, p));
    }
    if value == 1 {
        notes.push(
            "literal value 1: an algebra of height 1 has no nonzero non-units, so this case carries no information".into(),
        );
    }
    Ok(HeightBound { d, p, t, value, notes })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Criterion {
    /// No k-regular embedding while the dual class in degree `N − k + 1` is
    /// nonzero.
    KRegular { k: u64 },
    /// No ℓ-skew embedding of `ℂ^d` while the dual class in degree
    /// `N − (d+1)ℓ + 2` is nonzero.
    Skew { d: u64, l: u64 },
}

/// Translates the largest non-vanishing dual Chern index `D` into a bound.
pub fn derive_bound_from_dual_class(dual: u64, criterion: Criterion) -> BoundReport {
    match criterion {
        Criterion::KRegular { k } => {
            BoundReport::new(TheoremId::DualClassKregular, &[("D", dual), ("k", k)], (dual + k) as i64)
        }
        Criterion::Skew { d, l } => BoundReport::new(
            TheoremId::DualClassSkew,
            &[("D", dual), ("d", d), ("l", l)],
            (dual + (d + 1) * l - 1) as i64,
        ),
    }
}

/// Known existence results for k-regular maps `ℂ^d → ℂ^N`, as notes.
pub fn known_constructions(d: u64, k: u64) -> Vec<String> {
    let mut notes = vec![format!("k-regular maps exist for N = dk - 1 = {}", (d * k).saturating_sub(1))];
    if k <= 9 {
        notes.push(format!("k-regular maps exist for N = d(k-1)+1 = {} since k <= 9", d * (k.max(1) - 1) + 1));
    }
    notes
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub d: u64,
    pub k: u64,
    pub p: u64,
    pub thm_a: BoundReport,
    pub thm_b: Option<BoundReport>,
    pub thm_c: Option<BoundReport>,
}

impl TableRow {
    pub fn notes(&self) -> Vec<&str> {
        [Some(&self.thm_a), self.thm_b.as_ref(), self.thm_c.as_ref()]
            .into_iter()
            .flatten()
            .flat_map(|r| r.notes.iter().map(String::as_str))
            .collect()
    }
}

/// Comparison of the three k-regular bounds for `ℂ^d` sources.
pub fn comparison_table(rows: &[(u64, u64, u64)]) -> Result<Vec<TableRow>> {
    rows.iter()
        .map(|&(d, k, p)| {
            require_odd_prime(p)?;
            require_positive("d", d)?;
            let thm_a = bound_kregular_real(2 * d, k)?;
            let thm_b = if k == p { Some(bound_kregular_prime(2 * d, p)?) } else { None };
            let thm_c = if prime_power_exponent(d, p).is_some() {
                Some(bound_kregular_chisholm(d, k, p)?)
            } else {
                None
            };
            Ok(TableRow { d, k, p, thm_a, thm_b, thm_c })
        })
        .collect()
}

/// The rows of the published comparison table with `d` fixed at 3.
pub const DEFAULT_TABLE_ROWS: &[(u64, u64, u64)] =
    &[(3, 3, 3), (3, 9, 3), (3, 8, 3), (3, 7, 7), (3, 17, 17)];
