// SPDX-License-Identifier: Apache-2.0

//! Words in a free group, their Magnus expansions over the prime field, and
//! everything read off from them: Zassenhaus levels, degree-3 coefficients
//! of level-3 relations, and graded level profiles of relation sets.
//!
//! Membership of a word in the n-th Zassenhaus subgroup `F_n` of the free
//! pro-p group is decided by whether its expansion minus one has no terms
//! below degree `n`.

mod parse;
mod quotient;
mod series;
mod word;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::arith;
use crate::linalg::{self, Echelon};

pub use parse::{parse_word, parse_word_with_rank};
pub use quotient::FreeQuotient;
pub use series::{expand, Monomial, TruncatedSeries};
pub use word::Word;

/// Truncation degree used when callers do not choose one.
pub const DEFAULT_TRUNCATION: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MagnusError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("relation has level {level}, but level at least 3 is required")]
    LevelTooLow { level: usize },
    #[error("rank {rank} is not supported here; only rank 2 is")]
    RankUnsupported { rank: usize },
    #[error("no relations given")]
    EmptyInput,
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("truncation degree {0} is out of range")]
    BadTruncation(usize),
    #[error("internal error: {0}")]
    Internal(String),
}

impl MagnusError {
    pub fn name(&self) -> &'static str {
        match self {
            MagnusError::Syntax { .. } => "SyntaxError",
            MagnusError::LevelTooLow { .. } => "LevelTooLow",
            MagnusError::RankUnsupported { .. } => "RankUnsupported",
            MagnusError::EmptyInput => "EmptyInput",
            MagnusError::NotPrime(_) => "NotPrime",
            MagnusError::BadTruncation(_) => "BadTruncation",
            MagnusError::Internal(_) => "InternalError",
        }
    }
}

pub type Result<T> = std::result::Result<T, MagnusError>;

fn check_prime(p: u32) -> Result<()> {
    if arith::is_prime(p as u64) {
        Ok(())
    } else {
        Err(MagnusError::NotPrime(p))
    }
}

/// Largest truncation degree accepted by the checked entry points; keeps the
/// dense degree components of rank-2 series small.
pub const MAX_TRUNCATION: usize = 16;

fn check_truncation(n: usize) -> Result<()> {
    if (1..=MAX_TRUNCATION).contains(&n) {
        Ok(())
    } else {
        Err(MagnusError::BadTruncation(n))
    }
}

/// The level of a word: exact when the expansion detects it, otherwise a
/// lower bound one past the truncation degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Level {
    Exact(usize),
    AtLeast(usize),
}

impl Level {
    /// The guaranteed lower bound.
    pub fn lower_bound(self) -> usize {
        match self {
            Level::Exact(k) | Level::AtLeast(k) => k,
        }
    }

    pub fn exact(self) -> Option<usize> {
        match self {
            Level::Exact(k) => Some(k),
            Level::AtLeast(_) => None,
        }
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Level::Exact(k) => write!(f, "{k}"),
            Level::AtLeast(k) => write!(f, ">={k}"),
        }
    }
}

/// Exact levels serialize as numbers, bounds as strings like `">=9"`.
impl Serialize for Level {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Level::Exact(k) => serializer.serialize_u64(*k as u64),
            Level::AtLeast(_) => serializer.collect_str(self),
        }
    }
}

fn level_of_series(s: &TruncatedSeries) -> Level {
    match s.valuation() {
        Some(k) => Level::Exact(k),
        None => Level::AtLeast(s.truncation() + 1),
    }
}

/// The level of `w` as seen through expansions truncated at degree `n`.
pub fn level(w: &Word, p: u32, n: usize) -> Result<Level> {
    check_prime(p)?;
    check_truncation(n)?;
    Ok(level_of_series(&expand(w, p, n)))
}

/// Coordinates of a level-3 rank-2 word modulo `F_4`.
///
/// `a` and `b` multiply `[x,y,x]` and `[x,y,y]`; `e1` and `e2` multiply `x³`
/// and `y³` and are always zero unless `p = 3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Deg3Coefficients {
    pub a: u32,
    pub b: u32,
    pub e1: u32,
    pub e2: u32,
}

impl Deg3Coefficients {
    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0 && self.e1 == 0 && self.e2 == 0
    }
}

/// Basis words for `F_3/F_4` in rank 2, in the order `[x,y,x], [x,y,y]`
/// followed by `x³, y³` when `p = 3`.
pub fn deg3_basis(p: u32) -> Vec<Word> {
    let mut basis = vec![parse_word("[x,y,x]").unwrap(), parse_word("[x,y,y]").unwrap()];
    if p == 3 {
        basis.push(parse_word("x^3").unwrap());
        basis.push(parse_word("y^3").unwrap());
    }
    basis
}

/// Expresses `w` modulo `F_4` in the degree-3 basis by matching the
/// degree-3 components of the expansions.
pub fn deg3_coefficients(w: &Word, p: u32) -> Result<Deg3Coefficients> {
    check_prime(p)?;
    if w.rank() != 2 {
        return Err(MagnusError::RankUnsupported { rank: w.rank() });
    }
    let s = expand(w, p, 3);
    if let Level::Exact(level) = level_of_series(&s) {
        if level < 3 {
            return Err(MagnusError::LevelTooLow { level });
        }
    }
    let columns: Vec<Vec<u32>> =
        deg3_basis(p).iter().map(|b| expand(b, p, 3).homogeneous(3)).collect();
    let x = linalg::solve(&columns, &s.homogeneous(3), p).ok_or_else(|| {
        MagnusError::Internal(format!("degree-3 component of {w} is outside the basis span"))
    })?;
    Ok(Deg3Coefficients {
        a: x[0],
        b: x[1],
        e1: x.get(2).copied().unwrap_or(0),
        e2: x.get(3).copied().unwrap_or(0),
    })
}

/// The coefficient matrix `[[a₁, b₁], [a₂, b₂]]` of two level-3 relations,
/// with the power coordinates `[[e1₁, e2₁], [e1₂, e2₂]]` exposed for `p = 3`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MasseyMatrix {
    pub p: u32,
    pub matrix: [[u32; 2]; 2],
    #[serde(skip_serializing_if = "Option::is_none")]
    pub powers: Option<[[u32; 2]; 2]>,
}

impl MasseyMatrix {
    pub fn determinant(&self) -> u32 {
        let p = self.p as u64;
        let [[a1, b1], [a2, b2]] = self.matrix.map(|r| r.map(u64::from));
        ((a1 * b2 % p + p - a2 * b1 % p) % p) as u32
    }

    pub fn is_invertible(&self) -> bool {
        self.determinant() != 0
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.iter().flatten().all(|&c| c == 0)
    }
}

pub fn massey_trace_matrix(rho1: &Word, rho2: &Word, p: u32) -> Result<MasseyMatrix> {
    let c1 = deg3_coefficients(rho1, p)?;
    let c2 = deg3_coefficients(rho2, p)?;
    Ok(MasseyMatrix {
        p,
        matrix: [[c1.a, c1.b], [c2.a, c2.b]],
        powers: (p == 3).then_some([[c1.e1, c1.e2], [c2.e1, c2.e2]]),
    })
}

/// How many relations were assigned to each level.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelProfile {
    /// `r_k` for every level `k` that received a relation.
    pub counts: BTreeMap<usize, usize>,
    /// Relations whose reduced expansion is trivial through the truncation.
    pub unresolved: usize,
    pub truncation: usize,
    /// False only when the graded elimination provably agrees with a minimal
    /// normal generating set (all relations independent at one level).
    pub approximate: bool,
    /// The level each input relation ended up at, in input order.
    pub assignments: Vec<Level>,
}

impl LevelProfile {
    pub fn total(&self) -> usize {
        self.counts.values().sum::<usize>() + self.unresolved
    }
}

/// Greedy graded elimination on leading terms.
///
/// At each degree `k`, relations whose current expansion has valuation `k`
/// are taken in input order. A relation whose leading component is a
/// combination `Σ c_j ℓ_j` of leading components already accepted at `k` is
/// replaced by `ρ · Π ρ_j^{−c_j}`, which strictly raises its valuation; the
/// rest are accepted and counted in `r_k`.
pub fn level_profile(relations: &[Word], p: u32, n: usize) -> Result<LevelProfile> {
    check_prime(p)?;
    check_truncation(n)?;
    if relations.is_empty() {
        return Err(MagnusError::EmptyInput);
    }
    let rank = relations.iter().map(Word::rank).max().unwrap();
    let mut current: Vec<TruncatedSeries> =
        relations.iter().map(|w| expand(&w.with_rank(rank), p, n)).collect();
    let mut assignments: Vec<Option<Level>> = vec![None; relations.len()];
    let mut counts = BTreeMap::new();
    let mut eliminated = false;

    for k in 0..=n {
        let mut accepted: Vec<usize> = Vec::new();
        let mut leads: Vec<Vec<u32>> = Vec::new();
        for i in 0..relations.len() {
            if assignments[i].is_some() || current[i].valuation() != Some(k) {
                continue;
            }
            let lead = current[i].homogeneous(k);
            match (!leads.is_empty()).then(|| linalg::solve(&leads, &lead, p)).flatten() {
                Some(coeffs) => {
                    let mut s = current[i].clone();
                    for (&j, &c) in accepted.iter().zip(&coeffs) {
                        if c != 0 {
                            s = s.mul(&current[j].pow(-(c as i64)));
                        }
                    }
                    debug_assert!(s.valuation().is_none_or(|v| v > k));
                    current[i] = s;
                    eliminated = true;
                }
                None => {
                    accepted.push(i);
                    leads.push(lead);
                    assignments[i] = Some(Level::Exact(k));
                    *counts.entry(k).or_insert(0) += 1;
                }
            }
        }
    }
    let assignments: Vec<Level> =
        assignments.into_iter().map(|a| a.unwrap_or(Level::AtLeast(n + 1))).collect();
    let unresolved = assignments.iter().filter(|a| matches!(a, Level::AtLeast(_))).count();
    let approximate = eliminated || unresolved > 0 || counts.len() > 1;
    Ok(LevelProfile { counts, unresolved, truncation: n, approximate, assignments })
}

/// Even levels carrying relations. A profile coming from a p-class tower
/// group with p odd must have none.
pub fn koch_venkov_violations(profile: &LevelProfile) -> Vec<usize> {
    profile
        .counts
        .iter()
        .filter(|&(&k, &r)| k % 2 == 0 && k > 0 && r > 0)
        .map(|(&k, _)| k)
        .collect()
}

/// `dim F_3/F_4` for the free pro-p group of rank 2.
///
/// Computed, not tabulated: the span of the degree-3 components of the
/// generators of `F_3` predicted by Lazard's formula — left-normed weight-3
/// commutators of generators and of short products of generators, and
/// `g^{p^j}` with `p^j ≥ 3` for the same elements — restricted to those
/// candidates whose expansion really starts at degree 3 or later.
pub fn free_dimension_factor_deg3(p: u32, rank: usize) -> Result<usize> {
    check_prime(p)?;
    if rank != 2 {
        return Err(MagnusError::RankUnsupported { rank });
    }
    let x = Word::generator(2, 1);
    let y = Word::generator(2, 2);
    let elements = vec![
        x.clone(),
        y.clone(),
        x.mul(&y),
        x.mul(&y.inverse()),
        x.pow(2).mul(&y),
        x.mul(&y.pow(2)),
    ];
    let mut candidates = Vec::new();
    for a in &elements {
        for b in &elements {
            for c in &elements {
                candidates.push(Word::left_normed(&[a.clone(), b.clone(), c.clone()]));
            }
            // Weight-2 commutators to the powers p^j with 2·p^j ≥ 3.
            candidates.push(Word::commutator(a, b).pow(p as i64));
        }
        // Generators to the powers p^j with p^j ≥ 3 (only p^j ≤ 3 can land
        // at degree 3, but include the next power for good measure).
        let mut q = p as i64;
        while q < 3 {
            q *= p as i64;
        }
        candidates.push(a.pow(q));
        candidates.push(a.pow(q * p as i64));
    }
    let mut span = Echelon::new(p, 8);
    for w in &candidates {
        let s = expand(w, p, 3);
        match level_of_series(&s) {
            Level::Exact(k) if k < 3 => {
                return Err(MagnusError::Internal(format!("candidate {w} has level {k}")));
            }
            _ => {
                span.insert(s.homogeneous(3));
            }
        }
    }
    Ok(span.rank())
}
