//! Independent exact oracles shared by the integration tests.

#![allow(dead_code)]

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};

/// Digit sum via Legendre: `α_p(k) = k − (p−1)·v_p(k!)`.
pub fn alpha_legendre(k: u64, p: u64) -> u64 {
    let mut v = 0;
    let mut q = k / p;
    while q > 0 {
        v += q;
        q /= p;
    }
    k - (p - 1) * v
}

/// Digit sum from the big-integer radix expansion.
pub fn alpha_radix(k: u64, p: u64) -> u64 {
    BigUint::from(k).to_radix_le(p as u32).iter().map(|&d| d as u64).sum()
}

pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * i)
}

pub fn binomial(n: u64, m: u64) -> BigUint {
    if m > n {
        return BigUint::zero();
    }
    let m = m.min(n - m);
    let mut acc = BigUint::one();
    for i in 0..m {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

pub fn big_mod(x: &BigUint, p: u64) -> u64 {
    (x % p).to_u64().expect("residue fits")
}

/// Rows `0..=n` of Pascal's triangle.
pub fn pascal(n: usize) -> Vec<Vec<BigUint>> {
    let mut rows: Vec<Vec<BigUint>> = vec![vec![BigUint::one()]];
    for r in 1..=n {
        let prev = &rows[r - 1];
        let mut row = Vec::with_capacity(r + 1);
        row.push(BigUint::one());
        for j in 1..r {
            row.push(&prev[j - 1] + &prev[j]);
        }
        row.push(BigUint::one());
        rows.push(row);
    }
    rows
}

/// Integer coefficients of `∏ (1 + j·T)^mult` for `j = 1..p−1`.
pub fn wilson_product(p: u64, mult: u64) -> Vec<BigInt> {
    let mut poly = vec![BigInt::one()];
    for j in 1..p {
        for _ in 0..mult {
            let mut next = vec![BigInt::zero(); poly.len() + 1];
            for (i, c) in poly.iter().enumerate() {
                next[i] += c;
                next[i + 1] += c * BigInt::from(j);
            }
            poly = next;
        }
    }
    poly
}

pub fn bigint_mod(x: &BigInt, p: u64) -> u64 {
    let r = x % BigInt::from(p);
    let r = if r < BigInt::zero() { r + BigInt::from(p) } else { r };
    r.to_u64().expect("residue fits")
}

pub fn small_primes() -> Vec<u64> {
    (2u64..=100).filter(|&n| (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)).collect()
}
