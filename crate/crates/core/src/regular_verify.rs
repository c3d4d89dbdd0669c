//! Exact checks that polynomial maps `ℂ^d → ℂ^N` are k-regular on sampled
//! configurations.
//!
//! Points and coefficients are Gaussian rationals; linear independence is
//! decided by an exact fraction-free elimination over `ℤ[i]`. A failed sample
//! certifies that a map is not k-regular, while passing samples are only
//! evidence.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("sampling failed: {0}")]
    Sampling(String),
    #[error("invalid map: {0}")]
    InvalidMap(String),
}

pub type Result<T> = std::result::Result<T, VerifyError>;

/// `re + im·i` with exact rational parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn from_parts(re_num: i64, re_den: i64, im_num: i64, im_den: i64) -> Result<Self> {
        if re_den == 0 || im_den == 0 {
            return Err(VerifyError::InvalidMap("zero denominator".into()));
        }
        Ok(Self {
            re: BigRational::new(re_num.into(), re_den.into()),
            im: BigRational::new(im_num.into(), im_den.into()),
        })
    }

    pub fn from_int(n: i64) -> Self {
        Self { re: BigRational::from_integer(n.into()), im: BigRational::zero() }
    }

    pub fn i() -> Self {
        Self { re: BigRational::zero(), im: BigRational::one() }
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        Self { re: &self.re + &o.re, im: &self.im + &o.im }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self { re: &self.re - &o.re, im: &self.im - &o.im }
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}i", self.im),
            (false, false) if self.im.is_negative() => write!(f, "{}-{}i", self.re, -&self.im),
            (false, false) => write!(f, "{}+{}i", self.re, self.im),
        }
    }
}

/// A monomial term `c · z_1^{e_1} ⋯ z_d^{e_d}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub coefficient: GaussianRational,
    pub exponents: Vec<u32>,
}

/// Polynomial map `ℂ^arity → ℂ^N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMapC {
    arity: usize,
    components: Vec<Vec<Term>>,
}

impl PolyMapC {
    pub fn new(arity: usize, components: Vec<Vec<Term>>) -> Result<Self> {
        if arity == 0 {
            return Err(VerifyError::InvalidMap("arity must be positive".into()));
        }
        if components.is_empty() {
            return Err(VerifyError::InvalidMap("at least one component required".into()));
        }
        for t in components.iter().flatten() {
            if t.exponents.len() != arity {
                return Err(VerifyError::InvalidMap(format!(
                    "exponent vector of length {} for arity {arity}",
                    t.exponents.len()
                )));
            }
        }
        Ok(Self { arity, components })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn num_components(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Vec<Term>] {
        &self.components
    }

    pub fn evaluate(&self, point: &[GaussianRational]) -> Vec<GaussianRational> {
        self.components
            .iter()
            .map(|comp| {
                comp.iter().fold(GaussianRational::zero(), |acc, t| {
                    let v = t
                        .exponents
                        .iter()
                        .zip(point)
                        .fold(t.coefficient.clone(), |v, (&e, z)| v.mul(&z.pow(e)));
                    acc.add(&v)
                })
            })
            .collect()
    }

    /// Parses the JSON map format: `{"arity": d, "components": [[[[re_num,
    /// re_den, im_num, im_den], [e_1, …, e_d]], …], …]}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: MapFile =
            serde_json::from_str(text).map_err(|e| VerifyError::InvalidMap(e.to_string()))?;
        let components = raw
            .components
            .into_iter()
            .map(|comp| {
                comp.into_terms()
                    .into_iter()
                    .map(|([a, b, c, d], exponents)| {
                        Ok(Term { coefficient: GaussianRational::from_parts(a, b, c, d)?, exponents })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(raw.arity, components)
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct MapFile {
    arity: usize,
    components: Vec<RawComponent>,
}

type RawTerm = ([i64; 4], Vec<u32>);

/// A component is a list of terms; a bare term is accepted as a one-term
/// component.
#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum RawComponent {
    Single(RawTerm),
    Terms(Vec<RawTerm>),
}

impl RawComponent {
    fn into_terms(self) -> Vec<RawTerm> {
        match self {
            RawComponent::Single(t) => vec![t],
            RawComponent::Terms(ts) => ts,
        }
    }
}

/// `z ↦ (1, z, …, z^{k−1})`.
pub fn vandermonde_map(k: usize) -> PolyMapC {
    truncated_vandermonde(k.max(1))
}

/// `z ↦ (1, z, …, z^{n−1})`, also used with `n = k − 1` as a negative
/// control.
pub fn truncated_vandermonde(n: usize) -> PolyMapC {
    let components = (0..n)
        .map(|e| vec![Term { coefficient: GaussianRational::one(), exponents: vec![e as u32] }])
        .collect();
    PolyMapC::new(1, components).expect("at least one component")
}

/// `k` pairwise distinct points of `ℂ^d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigSample {
    points: Vec<Vec<GaussianRational>>,
}

impl ConfigSample {
    pub fn new(points: Vec<Vec<GaussianRational>>) -> Result<Self> {
        if let Some(d) = points.first().map(Vec::len) {
            if points.iter().any(|p| p.len() != d) {
                return Err(VerifyError::Precondition("points of different dimensions".into()));
            }
        }
        for i in 0..points.len() {
            for j in 0..i {
                if points[i] == points[j] {
                    return Err(VerifyError::Precondition(format!(
                        "points {j} and {i} coincide; the tuple is not a configuration"
                    )));
                }
            }
        }
        Ok(Self { points })
    }

    pub fn points(&self) -> &[Vec<GaussianRational>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Gaussian integer `(re, im)`.
type Gi = (BigInt, BigInt);

fn gi_mul(a: &Gi, b: &Gi) -> Gi {
    (&a.0 * &b.0 - &a.1 * &b.1, &a.0 * &b.1 + &a.1 * &b.0)
}

fn gi_sub(a: &Gi, b: &Gi) -> Gi {
    (&a.0 - &b.0, &a.1 - &b.1)
}

fn gi_is_zero(a: &Gi) -> bool {
    a.0.is_zero() && a.1.is_zero()
}

/// Exact quotient `a / b` in `ℤ[i]`; the caller guarantees divisibility.
fn gi_div_exact(a: &Gi, b: &Gi) -> Gi {
    let norm = &b.0 * &b.0 + &b.1 * &b.1;
    let conj = (b.0.clone(), -&b.1);
    let num = gi_mul(a, &conj);
    let (q0, r0) = num.0.div_rem(&norm);
    let (q1, r1) = num.1.div_rem(&norm);
    assert!(r0.is_zero() && r1.is_zero(), "inexact division in fraction-free elimination");
    (q0, q1)
}

/// Scales a row of Gaussian rationals to Gaussian integers by the lcm of all
/// denominators.
fn clear_denominators(row: &[GaussianRational]) -> Vec<Gi> {
    let l = row.iter().fold(BigInt::one(), |l, z| l.lcm(z.re.denom()).lcm(z.im.denom()));
    row.iter()
        .map(|z| {
            (
                z.re.numer() * (&l / z.re.denom()),
                z.im.numer() * (&l / z.im.denom()),
            )
        })
        .collect()
}

/// Exact rank of a matrix of Gaussian rationals (rows may be ragged only if
/// empty).
pub fn rank_exact(rows: &[Vec<GaussianRational>]) -> usize {
    let mut m: Vec<Vec<Gi>> = rows.iter().map(|r| clear_denominators(r)).collect();
    let n_rows = m.len();
    let n_cols = m.first().map_or(0, Vec::len);
    let mut prev: Gi = (BigInt::one(), BigInt::zero());
    let mut rank = 0;
    for col in 0..n_cols {
        if rank == n_rows {
            break;
        }
        let Some(piv) = (rank..n_rows).find(|&r| !gi_is_zero(&m[r][col])) else {
            continue;
        };
        m.swap(rank, piv);
        let pivot = m[rank][col].clone();
        let (top, below) = m.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        for row in below {
            let factor = row[col].clone();
            for (x, y) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                let v = gi_sub(&gi_mul(&pivot, x), &gi_mul(&factor, y));
                *x = gi_div_exact(&v, &prev);
            }
        }
        prev = pivot;
        rank += 1;
    }
    rank
}

/// True iff the images of the sample points are linearly independent.
pub fn check_k_regular_on_sample(f: &PolyMapC, sample: &ConfigSample) -> Result<bool> {
    if let Some(p) = sample.points().first() {
        if p.len() != f.arity() {
            return Err(VerifyError::Precondition(format!(
                "sample points live in C^{} but the map has arity {}",
                p.len(),
                f.arity()
            )));
        }
    }
    let rows: Vec<_> = sample.points().iter().map(|p| f.evaluate(p)).collect();
    Ok(rank_exact(&rows) == sample.len())
}

pub const MAX_REJECTIONS: u32 = 10_000;

fn random_rational(rng: &mut ChaCha8Rng, bound: i64) -> BigRational {
    let num = rng.gen_range(-bound..=bound);
    let den = rng.gen_range(1..=bound);
    BigRational::new(num.into(), den.into())
}

/// `k` distinct points of `ℂ^d` whose coordinates have numerators in
/// `[−box, box]` and denominators in `[1, box]`, drawn from `seed`.
pub fn random_config(seed: u64, k: usize, d: usize, bound: u32) -> Result<ConfigSample> {
    if bound == 0 || d == 0 {
        return Err(VerifyError::Precondition("box and d must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points: Vec<Vec<GaussianRational>> = Vec::with_capacity(k);
    let mut rejections = 0;
    while points.len() < k {
        let p: Vec<_> = (0..d)
            .map(|_| {
                let re = random_rational(&mut rng, bound as i64);
                let im = random_rational(&mut rng, bound as i64);
                GaussianRational::new(re, im)
            })
            .collect();
        if points.contains(&p) {
            rejections += 1;
            if rejections >= MAX_REJECTIONS {
                return Err(VerifyError::Sampling(format!(
                    "no {k} distinct points after {MAX_REJECTIONS} rejections (box {bound})"
                )));
            }
            continue;
        }
        points.push(p);
    }
    ConfigSample::new(points)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SampleOutcome {
    pub sample: usize,
    pub seed: u64,
    pub independent: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub k: usize,
    pub samples: usize,
    pub seed: u64,
    pub passed: usize,
    pub failed: usize,
    pub outcomes: Vec<SampleOutcome>,
    pub note: String,
}

/// Checks `f` on `samples` random configurations; sample `i` uses seed
/// `seed + i`.
pub fn verify_map(f: &PolyMapC, k: usize, samples: usize, seed: u64, bound: u32) -> Result<VerifyReport> {
    let mut outcomes = Vec::with_capacity(samples);
    for i in 0..samples {
        let s = seed.wrapping_add(i as u64);
        let sample = random_config(s, k, f.arity(), bound)?;
        outcomes.push(SampleOutcome { sample: i, seed: s, independent: check_k_regular_on_sample(f, &sample)? });
    }
    let passed = outcomes.iter().filter(|o| o.independent).count();
    Ok(VerifyReport {
        k,
        samples,
        seed,
        passed,
        failed: samples - passed,
        outcomes,
        note: "a failing sample certifies the map is not k-regular; passing samples are evidence, not proof".into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gr(re: i64, im: i64) -> GaussianRational {
        GaussianRational::from_parts(re, 1, im, 1).unwrap()
    }

    #[test]
    fn vandermonde_shape() {
        let f = vandermonde_map(3);
        assert_eq!(f.num_components(), 3);
        assert_eq!(f.evaluate(&[gr(2, 0)]), vec![gr(1, 0), gr(2, 0), gr(4, 0)]);
        assert_eq!(vandermonde_map(1).num_components(), 1);
        assert_eq!(vandermonde_map(5).num_components(), 5);
    }

    #[test]
    fn rank_examples() {
        let id: Vec<Vec<_>> =
            (0..3).map(|i| (0..3).map(|j| gr((i == j) as i64, 0)).collect()).collect();
        assert_eq!(rank_exact(&id), 3);
        let f = vandermonde_map(3);
        let rows: Vec<_> = [gr(0, 0), gr(1, 0), gr(1, 1)].iter().map(|z| f.evaluate(std::slice::from_ref(z))).collect();
        assert_eq!(rank_exact(&rows), 3);
        let dup = vec![rows[0].clone(), rows[1].clone(), rows[1].clone()];
        assert!(rank_exact(&dup) < 3);
        assert_eq!(rank_exact(&[vec![gr(0, 0), gr(0, 0)]]), 0);
    }

    #[test]
    fn regularity_examples() {
        let pts: Vec<_> = (0..4).map(|i| vec![gr(i, 0)]).collect();
        let s = ConfigSample::new(pts).unwrap();
        assert!(check_k_regular_on_sample(&vandermonde_map(4), &s).unwrap());
        let s3 = random_config(3, 3, 1, 10).unwrap();
        assert!(!check_k_regular_on_sample(&truncated_vandermonde(2), &s3).unwrap());
        assert!(ConfigSample::new(vec![vec![gr(1, 1)], vec![gr(1, 1)]]).is_err());
    }

    #[test]
    fn sampling_is_deterministic() {
        let a = random_config(1, 2, 1, 10).unwrap();
        assert_eq!(a.len(), 2);
        assert_ne!(a.points()[0], a.points()[1]);
        assert_eq!(a, random_config(1, 2, 1, 10).unwrap());
        let s = random_config(7, 8, 1, 100).unwrap();
        assert!(check_k_regular_on_sample(&vandermonde_map(8), &s).unwrap());
    }

    #[test]
    fn sampling_gives_up() {
        // box 1 has 9 possible points in C
        assert!(random_config(0, 10, 1, 1).is_err());
    }

    #[test]
    fn map_json() {
        let f = PolyMapC::from_json(
            r#"{"arity": 1, "components": [[[[1,1,0,1],[0]]], [[[1,2,1,1],[1]]]]}"#,
        )
        .unwrap();
        assert_eq!(f.num_components(), 2);
        let v = f.evaluate(&[gr(2, 0)]);
        assert_eq!(v[1], gr(1, 2));
        let g = PolyMapC::from_json(
            r#"{"arity": 1, "components": [[[1,1,0,1],[0]], [[1,2,1,1],[1]]]}"#,
        )
        .unwrap();
        assert_eq!(f, g);
        assert!(PolyMapC::from_json(r#"{"arity": 1, "components": [[[[1,0,0,1],[0]]]]}"#).is_err());
        assert!(PolyMapC::from_json(r#"{"arity": 2, "components": [[[[1,1,0,1],[0]]]]}"#).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(gr(1, -2).to_string(), "1-2i");
        assert_eq!(GaussianRational::from_parts(1, 2, 0, 1).unwrap().to_string(), "1/2");
        assert_eq!(GaussianRational::i().to_string(), "1i");
    }
}
