//! Prime-field and p-adic combinatorics.
//!
//! Everything here works on `u64` inputs with checked arithmetic: an
//! intermediate that would overflow is reported as [`ArithError::Overflow`]
//! rather than wrapping.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("modulus {0} is not a prime")]
    InvalidModulus(u64),
    #[error("modulus {0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("contract violation: {0}")]
    Contract(String),
    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),
}

pub type Result<T> = std::result::Result<T, ArithError>;

const TRIAL_DIVISION_LIMIT: u64 = 1_000_000;

/// Deterministic primality test: trial division below 10^6, Miller-Rabin
/// with the first twelve prime bases above (exact for all 64-bit inputs).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    if n <= TRIAL_DIVISION_LIMIT {
        let mut q = 3;
        while q * q <= n {
            if n.is_multiple_of(q) {
                return false;
            }
            q += 2;
        }
        return true;
    }
    miller_rabin(n)
}

fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod_u64(acc, base, m);
        }
        base = mul_mod_u64(base, base, m);
        exp >>= 1;
    }
    acc
}

fn miller_rabin(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
        if a % n == 0 {
            continue;
        }
        let mut x = pow_mod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(ArithError::InvalidModulus(p))
    }
}

pub fn require_odd_prime(p: u64) -> Result<()> {
    if p != 2 && is_prime(p) {
        Ok(())
    } else {
        Err(ArithError::NotOddPrime(p))
    }
}

/// An element of F_p.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ModPInt {
    value: u64,
    p: u64,
}

impl ModPInt {
    /// Reduces `value` modulo the prime `p`.
    pub fn new(value: u64, p: u64) -> Result<Self> {
        require_prime(p)?;
        Ok(Self::reduce(value, p))
    }

    /// Reduces a signed integer modulo `p`. The caller guarantees `p` is prime.
    pub(crate) fn from_i64(value: i64, p: u64) -> Self {
        let r = value.rem_euclid(p as i64) as u64;
        Self { value: r, p }
    }

    pub(crate) fn reduce(value: u64, p: u64) -> Self {
        Self { value: value % p, p }
    }

    pub fn zero(p: u64) -> Self {
        Self { value: 0, p }
    }

    pub fn one(p: u64) -> Self {
        Self { value: 1 % p, p }
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> u64 {
        self.p
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn pow(self, exp: u64) -> Self {
        Self { value: pow_mod_u64(self.value, exp, self.p), p: self.p }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(self) -> Option<Self> {
        if self.value == 0 {
            None
        } else {
            Some(self.pow(self.p - 2))
        }
    }

    fn check(self, other: Self) {
        assert_eq!(self.p, other.p, "mixed moduli {} and {}", self.p, other.p);
    }
}

impl Add for ModPInt {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.check(rhs);
        let s = self.value + rhs.value;
        Self { value: if s >= self.p { s - self.p } else { s }, p: self.p }
    }
}

impl Sub for ModPInt {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for ModPInt {
    type Output = Self;
    fn neg(self) -> Self {
        Self { value: if self.value == 0 { 0 } else { self.p - self.value }, p: self.p }
    }
}

impl Mul for ModPInt {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.check(rhs);
        Self { value: mul_mod_u64(self.value, rhs.value, self.p), p: self.p }
    }
}

impl fmt::Display for ModPInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// Base-p expansion `k = sum beta_r p^r`, least significant digit first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PAdicDigits {
    p: u64,
    digits: Vec<u64>,
}

impl PAdicDigits {
    pub fn prime(&self) -> u64 {
        self.p
    }

    /// Digits indexed by position; the last one is nonzero (empty for 0).
    pub fn digits(&self) -> &[u64] {
        &self.digits
    }

    /// The nonzero digits as `(position r, digit beta)` pairs, ascending in r.
    pub fn nonzero_terms(&self) -> impl Iterator<Item = (u32, u64)> + '_ {
        self.digits
            .iter()
            .enumerate()
            .filter(|(_, &b)| b != 0)
            .map(|(r, &b)| (r as u32, b))
    }

    pub fn digit_sum(&self) -> u64 {
        self.digits.iter().sum()
    }

    pub fn value(&self) -> u128 {
        self.digits
            .iter()
            .rev()
            .fold(0u128, |acc, &b| acc * self.p as u128 + b as u128)
    }
}

pub fn p_adic_digits(k: u64, p: u64) -> Result<PAdicDigits> {
    require_prime(p)?;
    Ok(digits_unchecked(k, p))
}

fn digits_unchecked(mut k: u64, p: u64) -> PAdicDigits {
    let mut digits = Vec::new();
    while k > 0 {
        digits.push(k % p);
        k /= p;
    }
    PAdicDigits { p, digits }
}

/// Sum of the base-p digits of `k`.
pub fn alpha_p(k: u64, p: u64) -> Result<u64> {
    if k == 0 {
        return Err(ArithError::Contract("alpha_p is defined for k >= 1".into()));
    }
    Ok(p_adic_digits(k, p)?.digit_sum())
}

/// `C(n, m) mod p` for `n, m < p`.
fn small_binom(n: u64, m: u64, p: u64) -> u64 {
    if m > n {
        return 0;
    }
    let m = m.min(n - m);
    let mut num = 1u64;
    let mut den = 1u64;
    for j in 0..m {
        num = mul_mod_u64(num, (n - j) % p, p);
        den = mul_mod_u64(den, (j + 1) % p, p);
    }
    mul_mod_u64(num, pow_mod_u64(den, p - 2, p), p)
}

fn lucas(mut n: u64, mut m: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    while m > 0 || n > 0 {
        let (nd, md) = (n % p, m % p);
        if md > nd {
            return 0;
        }
        acc = mul_mod_u64(acc, small_binom(nd, md, p), p);
        n /= p;
        m /= p;
    }
    acc
}

/// `C(n, m) mod p` digit by digit (Lucas); zero when `m > n`.
pub fn binom_mod_p(n: u64, m: u64, p: u64) -> Result<ModPInt> {
    require_prime(p)?;
    if m > n {
        return Ok(ModPInt::zero(p));
    }
    Ok(ModPInt::reduce(lucas(n, m, p), p))
}

/// The multinomial coefficient `n! / (parts_0! parts_1! ...)` mod p, as a
/// telescoping product of Lucas binomials.
pub fn multinom_mod_p(n: u64, parts: &[u64], p: u64) -> Result<ModPInt> {
    require_prime(p)?;
    let mut total = 0u64;
    for &part in parts {
        total = total
            .checked_add(part)
            .ok_or(ArithError::Overflow("multinomial part sum"))?;
    }
    if total != n {
        return Err(ArithError::Contract(format!(
            "multinomial parts sum to {total}, expected {n}"
        )));
    }
    let mut acc = ModPInt::one(p);
    let mut running = 0u64;
    for &part in parts {
        running += part;
        acc = acc * ModPInt::reduce(lucas(running, part, p), p);
        if acc.is_zero() {
            break;
        }
    }
    Ok(acc)
}

/// Largest `k` in `[0, d-1]` with `C(d+k, d)` not divisible by `l`.
pub fn f_dl(d: u64, l: u64) -> Result<u64> {
    require_odd_prime(l)?;
    if d == 0 {
        return Err(ArithError::Contract("f(d, l) needs d >= 1".into()));
    }
    d.checked_add(d).ok_or(ArithError::Overflow("d + k"))?;
    Ok((0..d)
        .rev()
        .find(|&k| lucas(d + k, d, l) != 0)
        .expect("k = 0 always qualifies"))
}

/// One entry `(epsilon, s)` of an admissible-sequence index. For p = 2 the
/// Bockstein exponent is always 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DlEntry {
    pub epsilon: u8,
    pub s: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DlSequence {
    p: u64,
    entries: Vec<DlEntry>,
}

impl DlSequence {
    /// A p = 2 sequence `(s_1, ..., s_k)`.
    pub fn mod_two(s: &[u64]) -> Self {
        Self {
            p: 2,
            entries: s.iter().map(|&s| DlEntry { epsilon: 0, s }).collect(),
        }
    }

    /// An odd-prime sequence `(eps_1, s_1, ..., eps_k, s_k)`.
    pub fn odd(p: u64, pairs: &[(u8, u64)]) -> Result<Self> {
        require_odd_prime(p)?;
        for &(epsilon, s) in pairs {
            if epsilon > 1 {
                return Err(ArithError::Contract(format!("epsilon {epsilon} not in {{0,1}}")));
            }
            if s < epsilon as u64 {
                return Err(ArithError::Contract(format!("s = {s} < epsilon = {epsilon}")));
            }
        }
        Ok(Self {
            p,
            entries: pairs.iter().map(|&(epsilon, s)| DlEntry { epsilon, s }).collect(),
        })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn entries(&self) -> &[DlEntry] {
        &self.entries
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Excess {
    Finite(i64),
    Infinite,
}

impl fmt::Display for Excess {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Excess::Finite(e) => write!(f, "{e}"),
            Excess::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DlStats {
    pub degree: i64,
    pub length: usize,
    pub excess: Excess,
    pub b: u8,
    pub admissible: bool,
}

fn to_i64(v: u64) -> Result<i64> {
    i64::try_from(v).map_err(|_| ArithError::Overflow("sequence statistic"))
}

pub fn dl_sequence_stats(seq: &DlSequence) -> Result<DlStats> {
    let entries = &seq.entries;
    let p = seq.p;
    if entries.is_empty() {
        return Ok(DlStats {
            degree: 0,
            length: 0,
            excess: Excess::Infinite,
            b: 0,
            admissible: true,
        });
    }
    // per-entry degree contribution; for p = 2 it is s itself
    let weight = |e: &DlEntry| -> Result<i64> {
        if p == 2 {
            to_i64(e.s)
        } else {
            let s = to_i64(e.s)?;
            s.checked_mul(to_i64(p - 1)?)
                .ok_or(ArithError::Overflow("s(p-1)"))
                .map(|v| v - e.epsilon as i64)
        }
    };
    let mut degree = 0i64;
    for e in entries {
        let w = if p == 2 {
            weight(e)?
        } else {
            let s = to_i64(e.s)?;
            s.checked_mul(2 * to_i64(p - 1)?)
                .ok_or(ArithError::Overflow("2s(p-1)"))?
                - e.epsilon as i64
        };
        degree = degree.checked_add(w).ok_or(ArithError::Overflow("degree"))?;
    }
    let mut excess = to_i64(entries[0].s)?;
    for e in &entries[1..] {
        excess = excess
            .checked_sub(weight(e)?)
            .ok_or(ArithError::Overflow("excess"))?;
    }
    let admissible = entries.windows(2).all(|w| {
        let (prev, cur) = (w[0], w[1]);
        if p == 2 {
            2 * cur.s as u128 >= prev.s as u128
        } else {
            p as u128 * cur.s as u128 >= prev.s as u128 + cur.epsilon as u128
        }
    });
    Ok(DlStats {
        degree,
        length: entries.len(),
        excess: Excess::Finite(excess),
        b: if p == 2 { 0 } else { entries[0].epsilon },
        admissible,
    })
}

/// Primes `<= n` by a sieve of Eratosthenes.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            for j in (i * i..=n).step_by(i) {
                sieve[j] = false;
            }
        }
        i += 1;
    }
    sieve
        .iter()
        .enumerate()
        .filter(|(_, &b)| b)
        .map(|(i, _)| i as u64)
        .collect()
}

/// Returns `t >= 1` with `d == p^t`, if any.
pub fn prime_power_exponent(d: u64, p: u64) -> Option<u32> {
    if p < 2 || d < p {
        return None;
    }
    let mut t = 0;
    let mut v = d;
    while v.is_multiple_of(p) {
        v /= p;
        t += 1;
    }
    (v == 1).then_some(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digits_of_fourteen_base_three() {
        let d = p_adic_digits(14, 3).unwrap();
        assert_eq!(d.digits(), &[2, 1, 1]);
        assert_eq!(d.value(), 14);
        assert_eq!(p_adic_digits(9, 3).unwrap().nonzero_terms().collect::<Vec<_>>(), vec![(2, 1)]);
        assert!(p_adic_digits(0, 5).unwrap().digits().is_empty());
        assert_eq!(p_adic_digits(5, 4), Err(ArithError::InvalidModulus(4)));
    }

    #[test]
    fn alpha_values() {
        assert_eq!(alpha_p(14, 7).unwrap(), 2);
        assert_eq!(alpha_p(14, 2).unwrap(), 3);
        assert_eq!(alpha_p(9, 3).unwrap(), 1);
        assert_eq!(alpha_p(8, 3).unwrap(), 4);
        assert_eq!(alpha_p(125, 5).unwrap(), 1);
        assert_eq!(alpha_p(6, 7).unwrap(), 6);
        assert!(alpha_p(0, 3).is_err());
        assert!(alpha_p(10, 1).is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binom_mod_p(14, 7, 7).unwrap().value(), 2);
        assert_eq!(binom_mod_p(5, 2, 3).unwrap().value(), 1);
        assert_eq!(binom_mod_p(17, 0, 5).unwrap().value(), 1);
        assert_eq!(binom_mod_p(3, 5, 5).unwrap().value(), 0);
    }

    #[test]
    fn multinomials() {
        assert_eq!(multinom_mod_p(4, &[2, 2], 3).unwrap().value(), 0);
        assert_eq!(multinom_mod_p(2, &[1, 1], 3).unwrap().value(), 2);
        assert_eq!(multinom_mod_p(8, &[0, 0, 0, 8], 3).unwrap().value(), 1);
        assert!(matches!(multinom_mod_p(4, &[1, 2], 3), Err(ArithError::Contract(_))));
    }

    #[test]
    fn f_values() {
        assert_eq!(f_dl(2, 3).unwrap(), 0);
        for l in [5, 7, 11, 13] {
            assert_eq!(f_dl(2, l).unwrap(), 1);
        }
        assert_eq!(f_dl(1, 3).unwrap(), 0);
        assert_eq!(f_dl(3, 2), Err(ArithError::NotOddPrime(2)));
    }

    #[test]
    fn dl_stats_examples() {
        let s = dl_sequence_stats(&DlSequence::mod_two(&[2, 1])).unwrap();
        assert_eq!(
            s,
            DlStats { degree: 3, length: 2, excess: Excess::Finite(1), b: 0, admissible: true }
        );
        let empty = dl_sequence_stats(&DlSequence::mod_two(&[])).unwrap();
        assert_eq!(empty.excess, Excess::Infinite);
        assert!(empty.admissible);
        let odd = DlSequence::odd(3, &[(1, 2), (0, 1)]).unwrap();
        assert_eq!(
            dl_sequence_stats(&odd).unwrap(),
            DlStats { degree: 11, length: 2, excess: Excess::Finite(0), b: 1, admissible: true }
        );
        assert!(!dl_sequence_stats(&DlSequence::mod_two(&[5, 2])).unwrap().admissible);
    }

    #[test]
    fn malformed_dl_entries() {
        assert!(DlSequence::odd(3, &[(2, 4)]).is_err());
        assert!(DlSequence::odd(3, &[(1, 0)]).is_err());
        assert!(DlSequence::odd(2, &[(0, 1)]).is_err());
    }

    #[test]
    fn primality() {
        let small: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, primes_up_to(59));
        assert!(is_prime(1_000_003));
        assert!(!is_prime(1_000_001));
        assert!(is_prime(18_446_744_073_709_551_557));
        assert!(!is_prime(3_215_031_751));
    }

    #[test]
    fn mod_p_field_ops() {
        let a = ModPInt::new(3, 7).unwrap();
        assert_eq!((a * a.inv().unwrap()).value(), 1);
        assert_eq!((-a).value(), 4);
        assert_eq!((a - ModPInt::new(5, 7).unwrap()).value(), 5);
        assert!(ModPInt::zero(7).inv().is_none());
        assert_eq!(prime_power_exponent(27, 3), Some(3));
        assert_eq!(prime_power_exponent(1, 3), None);
        assert_eq!(prime_power_exponent(12, 3), None);
    }
}
