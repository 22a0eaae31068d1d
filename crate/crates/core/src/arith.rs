// SPDX-License-Identifier: Apache-2.0

//! Small integer helpers shared across modules: primality, trial-division
//! factoring, divisor lists, and exact prime-power logarithms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    (a as u128 * b as u128 % m as u128) as u64
}

fn pow_mod_u64(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin; the first twelve prime bases are a proof of
/// primality for every 64-bit integer.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &q in &BASES {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'bases: for &a in &BASES {
        let mut x = pow_mod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Prime factorization of `n > 0` by trial division, stopping as soon as
/// the unfactored part is provably prime.
pub fn factor_u128(mut n: u128) -> Vec<(u128, u32)> {
    let mut out = Vec::new();
    let provably_prime = |m: u128| m < 1u128 << 64 && is_prime(m as u64);
    let mut rest_is_prime = provably_prime(n);
    let mut q: u128 = 2;
    while !rest_is_prime && q * q <= n {
        let mut e = 0;
        while n.is_multiple_of(q) {
            n /= q;
            e += 1;
        }
        if e > 0 {
            out.push((q, e));
            rest_is_prime = provably_prime(n);
        }
        q += if q == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// All divisors of `n > 0` in `[lo, hi]`, in increasing order.
pub fn divisors_between(n: u128, lo: u128, hi: u128) -> Vec<u128> {
    let mut divisors = vec![1u128];
    for (q, e) in factor_u128(n) {
        let count = divisors.len();
        let mut power = 1u128;
        for _ in 0..e {
            power *= q;
            for i in 0..count {
                let d = divisors[i] * power;
                if d <= hi {
                    divisors.push(d);
                }
            }
        }
    }
    divisors.retain(|&d| d >= lo && d <= hi);
    divisors.sort_unstable();
    divisors
}

/// Returns `k` when `n == p^k`, otherwise `None`.
pub fn exact_log(n: u64, p: u64) -> Option<u32> {
    if n == 0 || p < 2 {
        return None;
    }
    let mut m = n;
    let mut k = 0;
    while m.is_multiple_of(p) {
        m /= p;
        k += 1;
    }
    (m == 1).then_some(k)
}

/// Distinct prime divisors of `|n|` by trial division, with multiplicities.
pub fn factor(n: &BigInt) -> Vec<(BigInt, u32)> {
    let mut m = n.abs();
    let mut out = Vec::new();
    if m.is_zero() {
        return out;
    }
    let two = BigInt::from(2);
    let mut e = 0;
    while m.is_even() {
        m /= &two;
        e += 1;
    }
    if e > 0 {
        out.push((two, e));
    }
    let mut q = BigInt::from(3);
    while &q * &q <= m {
        let mut e = 0;
        while (&m % &q).is_zero() {
            m /= &q;
            e += 1;
        }
        if e > 0 {
            out.push((q.clone(), e));
        }
        q += 2;
    }
    if !m.is_one() {
        out.push((m, 1));
    }
    out
}

pub fn is_squarefree(n: &BigInt) -> bool {
    !n.is_zero() && factor(n).iter().all(|(_, e)| *e == 1)
}

/// Multiplicative inverse of `a` modulo the prime `p`.
pub fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

pub fn pow_mod(a: u32, mut e: u32, p: u32) -> u32 {
    let p64 = p as u64;
    let mut base = a as u64 % p64;
    let mut acc = 1u64 % p64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p64;
        }
        base = base * base % p64;
        e >>= 1;
    }
    acc as u32
}

/// Reduces a signed integer into `0..p`.
pub fn residue(x: i64, p: u32) -> u32 {
    x.rem_euclid(p as i64) as u32
}
