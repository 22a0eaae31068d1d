// SPDX-License-Identifier: Apache-2.0

//! Non-commutative power series over the prime field, truncated at a fixed
//! total degree, and the Magnus embedding of free-group words into them.

use std::collections::BTreeMap;
use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::word::Word;
use crate::arith::{inv_mod, pow_mod};

/// A monomial `X_{i1} X_{i2} …` stored as 0-based variable indices.
pub type Monomial = Vec<u8>;

/// An element of `F_p⟨X_1, …, X_d⟩ / (degree > N)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    p: u32,
    rank: usize,
    truncation: usize,
    terms: BTreeMap<Monomial, u32>,
}

impl TruncatedSeries {
    pub fn zero(p: u32, rank: usize, truncation: usize) -> Self {
        assert!(rank >= 1 && rank <= u8::MAX as usize, "unsupported rank {rank}");
        assert!(truncation >= 1, "truncation degree must be at least 1");
        TruncatedSeries { p, rank, truncation, terms: BTreeMap::new() }
    }

    pub fn one(p: u32, rank: usize, truncation: usize) -> Self {
        let mut s = Self::zero(p, rank, truncation);
        s.terms.insert(Vec::new(), 1);
        s
    }

    /// `(1 + X_g)^e` for the 1-based generator `g`, any integer `e`.
    pub fn generator_power(p: u32, rank: usize, truncation: usize, g: usize, e: i64) -> Self {
        assert!((1..=rank).contains(&g), "generator {g} outside rank {rank}");
        let mut s = Self::zero(p, rank, truncation);
        // (1 + X)^(p^m) = 1 + X^(p^m), which is 1 once p^m exceeds the
        // truncation degree, so the exponent only matters modulo p^m.
        let mut modulus: u128 = p as u128;
        while modulus <= truncation as u128 {
            modulus *= p as u128;
        }
        let e = (e as i128).rem_euclid(modulus as i128) as u128;
        let var = (g - 1) as u8;
        for k in 0..=truncation {
            let c = lucas_binomial(e, k as u128, p);
            if c != 0 {
                s.terms.insert(vec![var; k], c);
            }
        }
        s
    }

    /// Builds a series from explicit terms, reducing coefficients mod `p` and
    /// dropping zeros and monomials beyond the truncation.
    pub fn from_terms<I>(p: u32, rank: usize, truncation: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, i64)>,
    {
        let mut s = Self::zero(p, rank, truncation);
        for (m, c) in terms {
            assert!(m.iter().all(|&v| (v as usize) < rank), "variable outside rank");
            if m.len() <= truncation {
                s.add_term(m, c.rem_euclid(p as i64) as u32);
            }
        }
        s
    }

    fn add_term(&mut self, m: Monomial, c: u32) {
        if c == 0 {
            return;
        }
        let p = self.p as u64;
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = ((*o.get() as u64 + c as u64) % p) as u32;
                if sum == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    /// Non-zero terms in monomial order (shorter monomials first within a
    /// common prefix).
    pub fn terms(&self) -> &BTreeMap<Monomial, u32> {
        &self.terms
    }

    pub fn coefficient(&self, m: &[u8]) -> u32 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.coefficient(&[]) == 1
    }

    fn check_compatible(&self, other: &Self) {
        assert!(
            self.p == other.p && self.rank == other.rank && self.truncation == other.truncation,
            "series from different algebras"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_compatible(other);
        let mut s = self.clone();
        for (m, &c) in &other.terms {
            s.add_term(m.clone(), c);
        }
        s
    }

    pub fn scale(&self, c: u32) -> Self {
        let p = self.p as u64;
        let mut s = Self::zero(self.p, self.rank, self.truncation);
        for (m, &a) in &self.terms {
            s.add_term(m.clone(), ((a as u64 * c as u64) % p) as u32);
        }
        s
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_compatible(other);
        let p = self.p as u64;
        let mut s = Self::zero(self.p, self.rank, self.truncation);
        for (a, &ca) in &self.terms {
            for (b, &cb) in &other.terms {
                if a.len() + b.len() > self.truncation {
                    continue;
                }
                let mut m = Vec::with_capacity(a.len() + b.len());
                m.extend_from_slice(a);
                m.extend_from_slice(b);
                s.add_term(m, ((ca as u64 * cb as u64) % p) as u32);
            }
        }
        s
    }

    /// Multiplicative inverse; the constant term must be non-zero.
    pub fn inverse(&self) -> Self {
        let c = self.coefficient(&[]);
        assert!(c != 0, "series with zero constant term is not invertible");
        let c_inv = inv_mod(c, self.p);
        // self = c (1 + u)  ⇒  self⁻¹ = c⁻¹ Σ (−u)^k, finite since u is nilpotent.
        let normalized = self.scale(c_inv);
        let mut minus_u = normalized.clone();
        minus_u.terms.remove(&Vec::new());
        let minus_u = minus_u.scale(self.p - 1);
        let mut sum = Self::one(self.p, self.rank, self.truncation);
        let mut power = sum.clone();
        for _ in 0..self.truncation {
            power = power.mul(&minus_u);
            if power.terms.is_empty() {
                break;
            }
            sum = sum.add(&power);
        }
        sum.scale(c_inv)
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut result = Self::one(self.p, self.rank, self.truncation);
        let mut square = base;
        let mut e = k.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&square);
            }
            e >>= 1;
            if e > 0 {
                square = square.mul(&square);
            }
        }
        result
    }

    /// Lowest total degree of a non-zero term of `self − 1`, or `None` when
    /// `self = 1` within the truncation.
    pub fn valuation(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for (m, &c) in &self.terms {
            let nonzero = if m.is_empty() { c != 1 } else { true };
            if nonzero && best.is_none_or(|b| m.len() < b) {
                best = Some(m.len());
            }
        }
        best
    }

    /// The degree-`k` component as a dense vector over all `rank^k`
    /// monomials, indexed by reading the monomial as a base-`rank` numeral.
    pub fn homogeneous(&self, k: usize) -> Vec<u32> {
        let mut v = vec![0u32; self.rank.pow(k as u32)];
        for (m, &c) in self.terms.iter().filter(|(m, _)| m.len() == k) {
            v[monomial_index(m, self.rank)] = c;
        }
        v
    }

    /// The same series with every term of degree above `truncation` dropped.
    pub fn truncate(&self, truncation: usize) -> Self {
        assert!(truncation >= 1 && truncation <= self.truncation);
        let mut s = Self::zero(self.p, self.rank, truncation);
        s.terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.len() <= truncation)
            .map(|(m, &c)| (m.clone(), c))
            .collect();
        s
    }

    fn monomial_name(&self, m: &[u8]) -> String {
        if m.is_empty() {
            return "1".into();
        }
        m.iter()
            .map(|&v| {
                if self.rank <= 2 {
                    if v == 0 {
                        "X".to_string()
                    } else {
                        "Y".to_string()
                    }
                } else {
                    format!("X{}", v + 1)
                }
            })
            .collect()
    }

    fn ordered_terms(&self) -> Vec<(&Monomial, u32)> {
        let mut terms: Vec<_> = self.terms.iter().map(|(m, &c)| (m, c)).collect();
        terms.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(b.0)));
        terms
    }
}

pub(crate) fn monomial_index(m: &[u8], rank: usize) -> usize {
    m.iter().fold(0, |acc, &v| acc * rank + v as usize)
}

/// `C(n, k) mod p` by Lucas' theorem.
fn lucas_binomial(mut n: u128, mut k: u128, p: u32) -> u32 {
    let pp = p as u128;
    let mut result: u64 = 1;
    while k > 0 {
        let (ni, ki) = ((n % pp) as u64, (k % pp) as u64);
        if ki > ni {
            return 0;
        }
        result = result * small_binomial(ni, ki, p as u64) % p as u64;
        n /= pp;
        k /= pp;
    }
    result as u32
}

fn small_binomial(n: u64, k: u64, p: u64) -> u64 {
    let k = k.min(n - k);
    let (mut num, mut den) = (1u64, 1u64);
    for j in 0..k {
        num = num * ((n - j) % p) % p;
        den = den * ((j + 1) % p) % p;
    }
    num * pow_mod(den as u32, (p - 2) as u32, p as u32) as u64 % p
}

/// The Magnus expansion of `w`: `x_i ↦ 1 + X_i`, `x_i⁻¹ ↦ Σ (−X_i)^k`,
/// truncated above degree `truncation`.
pub fn expand(w: &Word, p: u32, truncation: usize) -> TruncatedSeries {
    let mut s = TruncatedSeries::one(p, w.rank(), truncation);
    for &(g, e) in w.letters() {
        s = s.mul(&TruncatedSeries::generator_power(p, w.rank(), truncation, g, e));
    }
    s
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.ordered_terms();
        if terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in terms.into_iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            match (m.is_empty(), c) {
                (true, _) => write!(f, "{c}")?,
                (false, 1) => f.write_str(&self.monomial_name(m))?,
                (false, _) => write!(f, "{c}{}", self.monomial_name(m))?,
            }
        }
        Ok(())
    }
}

impl Serialize for TruncatedSeries {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let terms: Vec<(String, u32)> =
            self.ordered_terms().into_iter().map(|(m, c)| (self.monomial_name(m), c)).collect();
        let mut st = serializer.serialize_struct("TruncatedSeries", 4)?;
        st.serialize_field("p", &self.p)?;
        st.serialize_field("rank", &self.rank)?;
        st.serialize_field("truncation", &self.truncation)?;
        st.serialize_field("terms", &terms)?;
        st.end()
    }
}
