// SPDX-License-Identifier: Apache-2.0

//! Exact Golod–Shafarevich checks.
//!
//! A finite p-group with `d` generators and `r_k` relations of level `k`
//! has `Z(t) = Σ r_k t^k − d t + 1 > 0` on the open unit interval. This
//! module decides, in exact rational arithmetic, whether that positivity
//! fails, produces small rational witnesses when it does, and enumerates the
//! level pairs of two-relation groups that survive the test.

mod poly;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

pub use poly::{roots_between, sign_changes, sturm_sequence, Poly};

use crate::magnus::LevelProfile;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GsError {
    #[error("relation level {0} is not allowed; levels start at 2")]
    InvalidLevel(u32),
    #[error("rank {rank} is not supported here; only rank 2 is")]
    RankUnsupported { rank: u64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("cannot parse {0}")]
    Parse(String),
}

impl GsError {
    pub fn name(&self) -> &'static str {
        match self {
            GsError::InvalidLevel(_) => "InvalidLevel",
            GsError::RankUnsupported { .. } => "RankUnsupported",
            GsError::InvalidArgument(_) => "InvalidArgument",
            GsError::Parse(_) => "ParseError",
        }
    }
}

pub type Result<T> = std::result::Result<T, GsError>;

/// `Z(t) = Σ r_k t^k − d t + 1`.
///
/// Serialized as `{"d": 2, "levels": {"5": 2}}`; zero counts are dropped.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawPolynomial")]
pub struct ZassenhausPolynomial {
    d: u64,
    levels: BTreeMap<u32, u64>,
    /// Set when the level counts came from leading-term elimination rather
    /// than an exact minimal presentation.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    approximate: bool,
}

#[derive(Deserialize)]
struct RawPolynomial {
    d: u64,
    levels: BTreeMap<u32, u64>,
    #[serde(default)]
    approximate: bool,
}

impl TryFrom<RawPolynomial> for ZassenhausPolynomial {
    type Error = GsError;

    fn try_from(raw: RawPolynomial) -> Result<Self> {
        let mut z = ZassenhausPolynomial::new(raw.d, raw.levels)?;
        z.approximate = raw.approximate;
        Ok(z)
    }
}

impl ZassenhausPolynomial {
    pub fn new<I: IntoIterator<Item = (u32, u64)>>(d: u64, levels: I) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (k, r) in levels {
            if k < 2 {
                return Err(GsError::InvalidLevel(k));
            }
            if r > 0 {
                *map.entry(k).or_insert(0) += r;
            }
        }
        Ok(ZassenhausPolynomial { d, levels: map, approximate: false })
    }

    /// The polynomial of a rank-`d` relation profile. Relations the
    /// elimination reduced to the identity through the truncation are left
    /// out, and the approximation flag is carried over.
    pub fn from_profile(d: u64, profile: &LevelProfile) -> Result<Self> {
        let mut z = ZassenhausPolynomial::new(
            d,
            profile.counts.iter().map(|(&k, &r)| (k as u32, r as u64)),
        )?;
        z.approximate = profile.approximate;
        Ok(z)
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn levels(&self) -> &BTreeMap<u32, u64> {
        &self.levels
    }

    pub fn is_approximate(&self) -> bool {
        self.approximate
    }

    /// Total relation count `Σ r_k`.
    pub fn relation_count(&self) -> u64 {
        self.levels.values().sum()
    }

    pub fn to_poly(&self) -> Poly {
        let degree = self.levels.keys().next_back().copied().unwrap_or(1).max(1) as usize;
        let mut c = vec![BigInt::zero(); degree + 1];
        c[0] = BigInt::one();
        c[1] = -BigInt::from(self.d);
        for (&k, &r) in &self.levels {
            c[k as usize] += BigInt::from(r);
        }
        Poly::from_integers(c)
    }
}

impl fmt::Display for ZassenhausPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .levels
            .iter()
            .rev()
            .map(|(&k, &r)| if r == 1 { format!("t^{k}") } else { format!("{r}t^{k}") })
            .collect();
        let mut text = terms.join(" + ");
        if self.d > 0 {
            text = if text.is_empty() {
                format!("-{}t", self.d)
            } else {
                format!("{text} - {}t", self.d)
            };
        }
        if text.is_empty() {
            f.write_str("1")
        } else {
            write!(f, "{text} + 1")
        }
    }
}

pub fn evaluate(z: &ZassenhausPolynomial, t: &BigRational) -> BigRational {
    z.to_poly().eval(t)
}

/// Renders a rational as `"num/den"` (always with a denominator).
pub fn format_rational(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Parses `"num/den"` or a bare integer.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let bad = || GsError::Parse(format!("rational {text:?}"));
    let (n, d) = match text.trim().split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text.trim(), "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

fn serialize_rational_opt<S: Serializer>(
    q: &Option<BigRational>,
    serializer: S,
) -> std::result::Result<S::Ok, S::Error> {
    match q {
        Some(q) => serializer.serialize_str(&format_rational(q)),
        None => serializer.serialize_none(),
    }
}

/// Whether `Z` fails to be positive somewhere on `(0, 1)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RootReport {
    pub has_nonpositive_point: bool,
    /// A rational `t ∈ (0, 1)` with `Z(t) ≤ 0`. It is absent only when the
    /// polynomial merely touches zero at irrational points.
    #[serde(serialize_with = "serialize_rational_opt")]
    pub witness: Option<BigRational>,
    /// Number of distinct roots in the open interval.
    pub roots_in_unit_interval: usize,
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// The square-free part of `Z` with factors `t − 1` removed, its Sturm
/// sequence, and the number of distinct roots of `Z` in `(0, 1)`.
fn unit_interval_roots(full: &Poly) -> Option<(Poly, Vec<Poly>, usize)> {
    let mut reduced = full.clone();
    reduced.deflate(&BigRational::one());
    if reduced.degree().unwrap_or(0) == 0 {
        return None;
    }
    let g = reduced.squarefree_part();
    let seq = sturm_sequence(&g);
    let roots = roots_between(&seq, &BigRational::zero(), &BigRational::one());
    Some((g, seq, roots))
}

/// Whether `Z(t) ≤ 0` somewhere on `(0, 1)`, without producing a witness.
pub fn has_nonpositive_point(z: &ZassenhausPolynomial) -> bool {
    unit_interval_roots(&z.to_poly()).is_some_and(|(_, _, roots)| roots > 0)
}

/// Decides exactly whether `Z(t) ≤ 0` for some `t ∈ (0, 1)`.
///
/// `Z(0) = 1`, so this happens iff `Z` has a root in the open interval.
/// Roots are counted with a Sturm sequence of the square-free part of `Z`
/// after dividing out any factors `t − 1`.
///
/// For the witness, the roots are isolated by dyadic bisection until each
/// interval holds at most one root and none ends at 1. Every stretch of
/// `(0, 1)` between consecutive roots then contains an interval endpoint,
/// so the endpoints with `Z ≤ 0` meet every non-positive stretch. Walking
/// the Stern–Brocot tree toward such an endpoint, the first node with
/// `Z ≤ 0` is the simplest rational of its stretch; the simplest over all
/// stretches is returned. Tangential rational roots (`1/q` with `q`
/// dividing the leading coefficient) are tried last.
pub fn gs_contradiction(z: &ZassenhausPolynomial) -> RootReport {
    let full = z.to_poly();
    let (g, seq, roots) = match unit_interval_roots(&full) {
        Some(found) if found.2 > 0 => found,
        _ => {
            return RootReport {
                has_nonpositive_point: false,
                witness: None,
                roots_in_unit_interval: 0,
            }
        }
    };

    let one = BigRational::one();
    let mut targets: Vec<BigRational> = Vec::new();
    let mut stack = vec![(BigRational::zero(), one.clone(), roots)];
    while let Some((a, b, count)) = stack.pop() {
        if count == 0 || (count == 1 && b < one) {
            for end in [&a, &b] {
                if end.is_positive() && end < &one && !full.eval(end).is_positive() {
                    targets.push(end.clone());
                }
            }
            continue;
        }
        let m = split_point(&g, &a, &b);
        let left = roots_between(&seq, &a, &m);
        stack.push((m.clone(), b, count - left));
        stack.push((a, m, left));
    }

    let mut witness: Option<BigRational> = None;
    for t in &targets {
        let w = stern_brocot_witness(&full, t);
        if witness.as_ref().is_none_or(|cur| simpler(&w, cur)) {
            witness = Some(w);
        }
    }
    if witness.is_none() {
        witness = unit_fraction_root(&full);
    }
    RootReport { has_nonpositive_point: true, witness, roots_in_unit_interval: roots }
}

/// A dyadic point of `(a, b)` that is not a root of `g`; the midpoint unless
/// that happens to be a root.
fn split_point(g: &Poly, a: &BigRational, b: &BigRational) -> BigRational {
    let width = b - a;
    let mut denom = 2i64;
    loop {
        for k in (1..denom).step_by(2) {
            let m = a + &width * q(k, denom);
            if !g.eval(&m).is_zero() {
                return m;
            }
        }
        denom *= 2;
    }
}

fn simpler(a: &BigRational, b: &BigRational) -> bool {
    (a.denom(), a.numer()) < (b.denom(), b.numer())
}

/// Walks the Stern–Brocot tree from 1/2 toward `target` and returns the
/// first node where `Z ≤ 0` (at worst `target` itself).
fn stern_brocot_witness(z: &Poly, target: &BigRational) -> BigRational {
    let (mut ln, mut ld) = (BigInt::zero(), BigInt::one());
    let (mut rn, mut rd) = (BigInt::one(), BigInt::one());
    loop {
        let node = BigRational::new(&ln + &rn, &ld + &rd);
        if !z.eval(&node).is_positive() {
            return node;
        }
        if &node == target {
            return node;
        }
        if target < &node {
            rn = node.numer().clone();
            rd = node.denom().clone();
        } else {
            ln = node.numer().clone();
            ld = node.denom().clone();
        }
    }
}

/// A root of the form `1/q` in `(0, 1)`. By the rational root theorem these
/// are the only possible rational roots, since the constant term is 1.
fn unit_fraction_root(full: &Poly) -> Option<BigRational> {
    let lead = full.leading()?.numer().abs().to_u64()?;
    let mut divisors = Vec::new();
    let mut k = 1u64;
    while k * k <= lead {
        if lead % k == 0 {
            divisors.push(k);
            divisors.push(lead / k);
        }
        k += 1;
    }
    divisors.sort_unstable();
    divisors.dedup();
    divisors
        .into_iter()
        .filter(|&q| q >= 2)
        .map(|q| BigRational::new(BigInt::one(), BigInt::from(q)))
        .find(|t| full.eval(t).is_zero())
}

/// `d^m (m − 1)^(m − 1) / m^m`, the relation count below which a group all
/// of whose relations have level at least `m` cannot be finite.
pub fn medium_bound(d: u64, m: u32) -> Result<BigRational> {
    if d < 1 || m < 2 {
        return Err(GsError::InvalidArgument(format!(
            "medium bound needs d ≥ 1, m ≥ 2 (got d = {d}, m = {m})"
        )));
    }
    let num = num_traits::pow(BigInt::from(d), m as usize)
        * num_traits::pow(BigInt::from(m - 1), (m - 1) as usize);
    let den = num_traits::pow(BigInt::from(m), m as usize);
    Ok(BigRational::new(num, den))
}

/// True iff `r ≤ medium_bound(d, m)`, i.e. finiteness is contradicted.
pub fn medium_contradiction(d: u64, r: u64, m: u32) -> Result<bool> {
    Ok(BigRational::from_integer(BigInt::from(r)) <= medium_bound(d, m)?)
}

/// A level pair `(i, j)` with `i ≤ j`.
pub type ZassenhausType = (u32, u32);

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdmissibleTypes {
    pub types: BTreeSet<ZassenhausType>,
    pub max_level: u32,
    /// Every pair with a level beyond `max_level` is ruled out, because the
    /// shallowest such pairs already fail positivity and raising a level
    /// only lowers the polynomial on `(0, 1)`.
    pub tail_excluded: bool,
}

fn pair_contradiction(i: u32, j: u32) -> bool {
    let z = ZassenhausPolynomial::new(2, [(i, 1), (j, 1)]).expect("levels ≥ 3");
    has_nonpositive_point(&z)
}

/// Odd level pairs `3 ≤ i ≤ j ≤ max_level` for two generators and two
/// relations whose polynomial stays positive on `(0, 1)`.
pub fn admissible_types(d: u64, max_level: u32) -> Result<AdmissibleTypes> {
    if d != 2 {
        return Err(GsError::RankUnsupported { rank: d });
    }
    if max_level < 3 {
        return Err(GsError::InvalidArgument(format!("max level {max_level} is below 3")));
    }
    let odd = |k: &u32| k.is_odd();
    let mut types = BTreeSet::new();
    for i in (3..=max_level).filter(odd) {
        for j in (i..=max_level).filter(odd) {
            if !pair_contradiction(i, j) {
                types.insert((i, j));
            }
        }
    }
    let beyond = if max_level.is_odd() { max_level + 2 } else { max_level + 1 };
    let tail_excluded = (3..=max_level).filter(odd).all(|i| pair_contradiction(i, beyond))
        && pair_contradiction(beyond, beyond);
    Ok(AdmissibleTypes { types, max_level, tail_excluded })
}
