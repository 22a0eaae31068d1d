// SPDX-License-Identifier: Apache-2.0

//! Deciding the length of the p-class field tower of an imaginary quadratic
//! field, p odd.
//!
//! The unconditional rules are the p-rank case split (ranks 0 and 1 give
//! length 0 and 1, rank at least 3 gives an infinite tower through the
//! Golod–Shafarevich bound) and, for rank 2, the degree-3 criterion: if both
//! defining relations vanish modulo `F_4`, the tower is infinite. Under the
//! (3,3) conjecture two further deciders close the rank-2 case.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::arith;
use crate::gsineq::{self, format_rational, ZassenhausPolynomial};
use crate::magnus::{self, MagnusError, Word};
use crate::quadforms::{self, QuadFormError};

/// The assumption string attached to every conjectural verdict.
pub const CONJECTURE_33: &str = "(3,3) conjecture";

/// For p odd, a minimal presentation of a p-tower group over an imaginary
/// quadratic field has exactly as many relations as generators.
pub const RELATIONS_EQUAL_GENERATORS: &str =
    "a p-tower group over an imaginary quadratic field has r = d for p odd (Shafarevich)";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TowerError {
    #[error("p = {0} is even; only odd primes are supported")]
    EvenPrime(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a negative fundamental discriminant")]
    BadDiscriminant(BigInt),
    #[error("p = {0} is too small; the matrix criterion needs p > 3")]
    PrimeTooSmall(u64),
    #[error("this rule is conditional on the (3,3) conjecture; pass the assumption explicitly")]
    ConjectureNotAssumed,
    #[error("dim G3/G4 = {dim} is not a possible value for p = {p}")]
    InconsistentDimension { dim: u32, p: u64 },
    #[error("internal consistency: {relations} relations for {generators} generators")]
    RelationCountMismatch { generators: u32, relations: u32 },
    #[error(transparent)]
    Magnus(#[from] MagnusError),
    #[error(transparent)]
    QuadForm(#[from] QuadFormError),
    #[error("internal error: {0}")]
    Internal(String),
}

impl TowerError {
    pub fn name(&self) -> &'static str {
        match self {
            TowerError::EvenPrime(_) => "EvenPrime",
            TowerError::NotPrime(_) => "NotPrime",
            TowerError::BadDiscriminant(_) => "BadDiscriminant",
            TowerError::PrimeTooSmall(_) => "PrimeTooSmall",
            TowerError::ConjectureNotAssumed => "ConjectureNotAssumed",
            TowerError::InconsistentDimension { .. } => "InconsistentDimension",
            TowerError::RelationCountMismatch { .. } => "InternalError",
            TowerError::Magnus(e) => e.name(),
            TowerError::QuadForm(e) => e.name(),
            TowerError::Internal(_) => "InternalError",
        }
    }
}

pub type Result<T> = std::result::Result<T, TowerError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TowerStatus {
    FiniteLength(u32),
    Infinite,
    ConjecturallyFinite,
    ConjecturallyInfinite,
    Undecided,
}

impl TowerStatus {
    pub fn label(&self) -> &'static str {
        match self {
            TowerStatus::FiniteLength(_) => "FiniteLength",
            TowerStatus::Infinite => "Infinite",
            TowerStatus::ConjecturallyFinite => "ConjecturallyFinite",
            TowerStatus::ConjecturallyInfinite => "ConjecturallyInfinite",
            TowerStatus::Undecided => "Undecided",
        }
    }

    pub fn is_conjectural(&self) -> bool {
        matches!(self, TowerStatus::ConjecturallyFinite | TowerStatus::ConjecturallyInfinite)
    }
}

impl fmt::Display for TowerStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TowerStatus::FiniteLength(l) => write!(f, "finite, length {l}"),
            TowerStatus::Infinite => f.write_str("infinite"),
            TowerStatus::ConjecturallyFinite => {
                f.write_str("finite, assuming the (3,3) conjecture")
            }
            TowerStatus::ConjecturallyInfinite => {
                f.write_str("infinite, assuming the (3,3) conjecture")
            }
            TowerStatus::Undecided => f.write_str("undecided"),
        }
    }
}

/// A decision with the rules consulted, the assumptions made, and
/// literature remarks that are not used for the decision itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TowerVerdict {
    pub status: TowerStatus,
    pub justification: Vec<String>,
    pub assumptions: Vec<String>,
    pub notes: Vec<String>,
}

impl TowerVerdict {
    fn new(status: TowerStatus, justification: impl Into<String>) -> Self {
        TowerVerdict {
            status,
            justification: vec![justification.into()],
            assumptions: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn conjectural(status: TowerStatus, justification: impl Into<String>) -> Self {
        let mut v = TowerVerdict::new(status, justification);
        v.assumptions.push(CONJECTURE_33.to_string());
        v
    }
}

/// `{"status", "length"?, "justification", "assumptions", "notes"}`.
impl Serialize for TowerVerdict {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(None)?;
        map.serialize_entry("status", self.status.label())?;
        if let TowerStatus::FiniteLength(l) = self.status {
            map.serialize_entry("length", &l)?;
        }
        map.serialize_entry("justification", &self.justification)?;
        map.serialize_entry("assumptions", &self.assumptions)?;
        map.serialize_entry("notes", &self.notes)?;
        map.end()
    }
}

/// Everything `decide` may use about a field and prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TowerInput {
    pub discriminant: BigInt,
    pub p: u64,
    /// The two defining relations of the tower group, when known.
    pub relations: Option<(Word, Word)>,
    /// `dim G_3/G_4` of the tower group, when known.
    pub dim_g3_g4: Option<u32>,
    pub assume_33: bool,
}

impl TowerInput {
    pub fn new(discriminant: BigInt, p: u64) -> Self {
        TowerInput { discriminant, p, relations: None, dim_g3_g4: None, assume_33: false }
    }
}

fn check_odd_prime(p: u64) -> Result<()> {
    if p == 2 {
        return Err(TowerError::EvenPrime(p));
    }
    if !arith::is_prime(p) {
        return Err(TowerError::NotPrime(p));
    }
    Ok(())
}

fn check_relation_count(generators: u32, relations: u32) -> Result<()> {
    if generators == relations {
        Ok(())
    } else {
        Err(TowerError::RelationCountMismatch { generators, relations })
    }
}

/// The verdict determined by the p-rank alone.
pub fn verdict_from_rank(rank: u32, p: u64) -> Result<TowerVerdict> {
    check_odd_prime(p)?;
    Ok(match rank {
        0 => TowerVerdict::new(
            TowerStatus::FiniteLength(0),
            format!("d_{p} = 0: the {p}-class group is trivial, so K is its own {p}-class field"),
        ),
        1 => TowerVerdict::new(
            TowerStatus::FiniteLength(1),
            format!(
                "d_{p} = 1: by Burnside's basis theorem the tower group is cyclic, hence abelian, \
                 so the tower stops at the first {p}-class field"
            ),
        ),
        2 => TowerVerdict::new(
            TowerStatus::Undecided,
            format!("d_{p} = 2: the rank rules do not decide the tower length"),
        ),
        d => {
            // r = d relations, all of level ≥ 3 since r_1 = r_2 = 0.
            let r = d;
            check_relation_count(d, r)?;
            let bound = gsineq::medium_bound(d as u64, 3)
                .map_err(|e| TowerError::Internal(e.to_string()))?;
            let contradiction = gsineq::medium_contradiction(d as u64, r as u64, 3)
                .map_err(|e| TowerError::Internal(e.to_string()))?;
            if !contradiction {
                return Err(TowerError::Internal(format!(
                    "medium bound failed for d = {d}, r = {r}"
                )));
            }
            let mut v = TowerVerdict::new(
                TowerStatus::Infinite,
                format!(
                    "d_{p} = {d} ≥ 3: with r = d = {d} relations of level ≥ 3, \
                     r ≤ 4d³/27 = {} contradicts the Golod–Shafarevich inequality",
                    bound
                ),
            );
            v.justification.push(RELATIONS_EQUAL_GENERATORS.to_string());
            v
        }
    })
}

fn check_field(discriminant: &BigInt) -> Result<()> {
    if !discriminant.is_negative() || !quadforms::is_fundamental(discriminant) {
        return Err(TowerError::BadDiscriminant(discriminant.clone()));
    }
    Ok(())
}

/// Computes `d_p Cl(K)` and applies the rank rules.
pub fn rank_verdict(discriminant: &BigInt, p: u64) -> Result<TowerVerdict> {
    check_odd_prime(p)?;
    check_field(discriminant)?;
    let rank = quadforms::p_rank(discriminant, p)?;
    verdict_from_rank(rank, p)
}

fn zero_coefficients(c: &magnus::Deg3Coefficients, p: u64) -> bool {
    c.a == 0 && c.b == 0 && (p != 3 || (c.e1 == 0 && c.e2 == 0))
}

/// The degree-3 criterion for two relations of level at least 3.
///
/// When both relations vanish modulo `F_4` they lie in `F_5` (even levels
/// carry no relations), and `2t⁵ − 2t + 1` is negative at a rational point
/// of the unit interval, so the group cannot be finite.
pub fn massey_vanishing_criterion(rho1: &Word, rho2: &Word, p: u64) -> Result<TowerVerdict> {
    check_odd_prime(p)?;
    let pp = u32::try_from(p).map_err(|_| TowerError::Internal(format!("prime {p} too large")))?;
    check_relation_count(2, 2)?;
    let c1 = magnus::deg3_coefficients(rho1, pp)?;
    let c2 = magnus::deg3_coefficients(rho2, pp)?;
    let coeffs = |c: &magnus::Deg3Coefficients| {
        if p == 3 {
            format!("(a, b, e1, e2) = ({}, {}, {}, {})", c.a, c.b, c.e1, c.e2)
        } else {
            format!("(a, b) = ({}, {})", c.a, c.b)
        }
    };
    if !(zero_coefficients(&c1, p) && zero_coefficients(&c2, p)) {
        return Ok(TowerVerdict::new(
            TowerStatus::Undecided,
            format!("degree-3 coefficients {} and {} do not both vanish", coeffs(&c1), coeffs(&c2)),
        ));
    }
    let z = ZassenhausPolynomial::new(2, [(5, 2)]).expect("valid levels");
    let report = gsineq::gs_contradiction(&z);
    let witness: BigRational = match (report.has_nonpositive_point, report.witness) {
        (true, Some(w)) => w,
        _ => return Err(TowerError::Internal("2t^5 - 2t + 1 has no witness".into())),
    };
    let value = gsineq::evaluate(&z, &witness);
    Ok(TowerVerdict::new(
        TowerStatus::Infinite,
        format!(
            "both relations vanish modulo F_4 (degree-3 coefficients, i.e. the traces of the \
             triple Massey products, are zero), hence lie in F_5 since even levels carry no \
             relations; then Z(t) ≤ 2t^5 - 2t + 1, which equals {} at t = {}",
            format_rational(&value),
            format_rational(&witness)
        ),
    ))
}

/// Under the (3,3) conjecture, p > 3: the tower is finite iff the degree-3
/// coefficient matrix of the two relations is invertible.
pub fn conjectural_matrix_decision(
    rho1: &Word,
    rho2: &Word,
    p: u64,
    assume_33: bool,
) -> Result<TowerVerdict> {
    if !assume_33 {
        return Err(TowerError::ConjectureNotAssumed);
    }
    check_odd_prime(p)?;
    if p <= 3 {
        return Err(TowerError::PrimeTooSmall(p));
    }
    let pp = u32::try_from(p).map_err(|_| TowerError::Internal(format!("prime {p} too large")))?;
    let m = magnus::massey_trace_matrix(rho1, rho2, pp)?;
    let [[a1, b1], [a2, b2]] = m.matrix;
    let (status, word) = if m.is_invertible() {
        (TowerStatus::ConjecturallyFinite, "invertible")
    } else {
        (TowerStatus::ConjecturallyInfinite, "singular")
    };
    let mut v = TowerVerdict::conjectural(
        status,
        format!(
            "coefficient matrix [[{a1}, {b1}], [{a2}, {b2}]] is {word} over F_{p} \
             (determinant {}); it differs from the Massey trace matrix by non-zero column \
             scalings, which preserve invertibility",
            m.determinant()
        ),
    );
    if status == TowerStatus::ConjecturallyInfinite && m.is_zero() {
        v.notes.push(
            "the matrix is zero, so the unconditional degree-3 criterion applies as well".into(),
        );
    }
    Ok(v)
}

/// Under the (3,3) conjecture: `dim G_3/G_4` separates type (3,3) from types
/// (3,5) and (3,7). Only the tabulated values are accepted.
pub fn conjectural_g4_decision(dim: u32, p: u64, assume_33: bool) -> Result<TowerVerdict> {
    if !assume_33 {
        return Err(TowerError::ConjectureNotAssumed);
    }
    check_odd_prime(p)?;
    let (finite, infinite) = if p == 3 { (2, 3) } else { (0, 1) };
    let status = if dim == finite {
        TowerStatus::ConjecturallyFinite
    } else if dim == infinite {
        TowerStatus::ConjecturallyInfinite
    } else {
        return Err(TowerError::InconsistentDimension { dim, p });
    };
    let kind = if status == TowerStatus::ConjecturallyFinite {
        "type (3,3)"
    } else {
        "type (3,5) or (3,7)"
    };
    let mut v = TowerVerdict::conjectural(
        status,
        format!(
            "dim G_3/G_4 = {dim} for p = {p} indicates Zassenhaus {kind} \
             (possible values: {finite} for (3,3), {infinite} otherwise)"
        ),
    );
    if status == TowerStatus::ConjecturallyInfinite && p > 7 {
        v.notes.push(format!(
            "for p > 7, a finite tower group of type (3,7) with Cl_p(K) ≅ (p^a, p^b) would have \
             order at least p^(21+a+b) ≥ {p}^23; no such group is known"
        ));
    }
    Ok(v)
}

/// Remarks from the literature about specific fields. They never change a
/// verdict.
pub fn literature_notes(discriminant: &BigInt, p: u64) -> Vec<String> {
    let d = discriminant.to_string();
    match (d.as_str(), p) {
        ("-3299", 3) => {
            vec!["literature (Scholz and Taussky): Q(sqrt(-3299)) has a 3-class field tower of \
             length 2"
                .into()]
        }
        ("-3321607", 3) => {
            vec!["literature: Q(sqrt(-3321607)) is a classical example of an infinite 3-tower"
                .into()]
        }
        ("-222637549223", 5) => {
            vec!["literature: Q(sqrt(-222637549223)) is a classical example of an infinite 5-tower"
                .into()]
        }
        _ => Vec::new(),
    }
}

/// The full pipeline: rank rules, then the degree-3 criterion on supplied
/// relations, then the conjectural deciders when the conjecture is assumed.
pub fn decide(input: &TowerInput) -> Result<TowerVerdict> {
    let p = input.p;
    let mut verdict = rank_verdict(&input.discriminant, p)?;
    verdict.notes.extend(literature_notes(&input.discriminant, p));
    if verdict.status != TowerStatus::Undecided {
        if input.relations.is_some() || input.dim_g3_g4.is_some() {
            verdict
                .notes
                .push("relation and G_3/G_4 data not needed: the rank rule decides".into());
        }
        return Ok(verdict);
    }

    if let Some((rho1, rho2)) = &input.relations {
        let step = massey_vanishing_criterion(rho1, rho2, p)?;
        verdict.justification.extend(step.justification);
        if step.status == TowerStatus::Infinite {
            verdict.status = TowerStatus::Infinite;
            return Ok(verdict);
        }
    }

    if !input.assume_33 {
        if input.dim_g3_g4.is_some() {
            verdict.notes.push("dim G_3/G_4 is only used under the (3,3) conjecture".into());
        }
        return Ok(verdict);
    }

    let step = match (&input.relations, input.dim_g3_g4) {
        (Some((rho1, rho2)), _) if p > 3 => Some(conjectural_matrix_decision(rho1, rho2, p, true)?),
        (_, Some(dim)) => Some(conjectural_g4_decision(dim, p, true)?),
        (Some(_), None) => {
            verdict
                .notes
                .push("the matrix criterion needs p > 3; supply dim G_3/G_4 instead".into());
            None
        }
        (None, None) => None,
    };
    if let Some(step) = step {
        verdict.status = step.status;
        verdict.justification.extend(step.justification);
        verdict.assumptions.extend(step.assumptions);
        verdict.notes.extend(step.notes);
    }
    Ok(verdict)
}
