// SPDX-License-Identifier: Apache-2.0

//! Class groups of imaginary quadratic fields, realized as reduced positive
//! definite binary quadratic forms under Dirichlet composition.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::{ExtendedGcd, Integer};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::{Serialize, SerializeSeq, Serializer};
use thiserror::Error;

use crate::arith;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuadFormError {
    #[error("radicand {0} is not negative")]
    NotNegative(BigInt),
    #[error("radicand {0} is not squarefree")]
    NotSquarefree(BigInt),
    #[error("form {0} is not positive definite")]
    NotPositiveDefinite(QuadForm),
    #[error("bad discriminant {0}")]
    BadDiscriminant(BigInt),
    #[error("discriminant {0} is too large for trial-division enumeration")]
    OutOfRange(BigInt),
    #[error("discriminants differ: {0} vs {1}")]
    DiscriminantMismatch(BigInt, BigInt),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("internal error: {0}")]
    InternalError(String),
}

impl QuadFormError {
    pub fn name(&self) -> &'static str {
        match self {
            QuadFormError::NotNegative(_) => "NotNegative",
            QuadFormError::NotSquarefree(_) => "NotSquarefree",
            QuadFormError::NotPositiveDefinite(_) => "NotPositiveDefinite",
            QuadFormError::BadDiscriminant(_) => "BadDiscriminant",
            QuadFormError::OutOfRange(_) => "OutOfRange",
            QuadFormError::DiscriminantMismatch(..) => "DiscriminantMismatch",
            QuadFormError::NotPrime(_) => "NotPrime",
            QuadFormError::InternalError(_) => "InternalError",
        }
    }
}

pub type Result<T> = std::result::Result<T, QuadFormError>;

/// An imaginary quadratic field `Q(sqrt(m))` with its fundamental discriminant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldSpec {
    pub m: BigInt,
    pub discriminant: BigInt,
}

pub fn fundamental_discriminant(m: &BigInt) -> Result<FieldSpec> {
    if !m.is_negative() {
        return Err(QuadFormError::NotNegative(m.clone()));
    }
    if !arith::is_squarefree(m) {
        return Err(QuadFormError::NotSquarefree(m.clone()));
    }
    let discriminant = if m.mod_floor(&BigInt::from(4)).is_one() { m.clone() } else { m * 4 };
    Ok(FieldSpec { m: m.clone(), discriminant })
}

/// `D < 0` and `D = 0, 1 (mod 4)`.
fn check_discriminant(d: &BigInt) -> Result<()> {
    let r = d.mod_floor(&BigInt::from(4));
    if d.is_negative() && (r.is_zero() || r.is_one()) {
        Ok(())
    } else {
        Err(QuadFormError::BadDiscriminant(d.clone()))
    }
}

pub fn is_fundamental(d: &BigInt) -> bool {
    let four = BigInt::from(4);
    match d.mod_floor(&four).to_u8() {
        Some(1) => arith::is_squarefree(d),
        Some(0) => {
            let m = d / &four;
            let r = m.mod_floor(&four).to_u8();
            matches!(r, Some(2) | Some(3)) && arith::is_squarefree(&m)
        }
        _ => false,
    }
}

/// The form `a x^2 + b x y + c y^2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadForm {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
}

impl QuadForm {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>) -> Self {
        QuadForm { a: a.into(), b: b.into(), c: c.into() }
    }

    /// The form with leading coefficient `a` and middle coefficient `b`;
    /// `c` is recovered from the discriminant.
    pub fn from_a_b(a: BigInt, b: BigInt, discriminant: &BigInt) -> Self {
        let c = (&b * &b - discriminant) / (&a * 4);
        QuadForm { a, b, c }
    }

    pub fn discriminant(&self) -> BigInt {
        &self.b * &self.b - &self.a * &self.c * 4
    }

    /// The principal form `(1, D mod 2, (D mod 2 - D) / 4)`.
    pub fn principal(discriminant: &BigInt) -> Self {
        let b = if discriminant.is_even() { BigInt::zero() } else { BigInt::one() };
        QuadForm::from_a_b(BigInt::one(), b, discriminant)
    }

    pub fn is_positive_definite(&self) -> bool {
        self.a.is_positive() && self.discriminant().is_negative()
    }

    pub fn is_reduced(&self) -> bool {
        let abs_b = self.b.abs();
        if !self.is_positive_definite() || abs_b > self.a || self.a > self.c {
            return false;
        }
        !((abs_b == self.a || self.a == self.c) && self.b.is_negative())
    }

    /// The inverse class `(a, -b, c)`.
    pub fn inverse(&self) -> Self {
        QuadForm { a: self.a.clone(), b: -&self.b, c: self.c.clone() }
    }

    pub fn reduce(&self) -> Result<QuadForm> {
        reduce(self)
    }

    pub fn is_primitive(&self) -> bool {
        self.a.gcd(&self.b).gcd(&self.c).is_one()
    }
}

impl fmt::Display for QuadForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

/// Coefficients are emitted as JSON numbers when they fit in `i64`, and as
/// decimal strings otherwise.
impl Serialize for QuadForm {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(3))?;
        for x in [&self.a, &self.b, &self.c] {
            match x.to_i64() {
                Some(v) => seq.serialize_element(&v)?,
                None => seq.serialize_element(&x.to_string())?,
            }
        }
        seq.end()
    }
}

/// Gauss reduction of a positive definite form.
pub fn reduce(f: &QuadForm) -> Result<QuadForm> {
    if !f.is_positive_definite() {
        return Err(QuadFormError::NotPositiveDefinite(f.clone()));
    }
    let d = f.discriminant();
    let (mut a, mut b) = (f.a.clone(), f.b.clone());
    let mut c = f.c.clone();
    loop {
        // Translate b into (-a, a].
        if b > a || b <= -&a {
            let two_a = &a * 2;
            let k = (&a - &b).div_floor(&two_a);
            b += &two_a * k;
            c = (&b * &b - &d) / (&a * 4);
        }
        if a > c {
            std::mem::swap(&mut a, &mut c);
            b = -b;
            continue;
        }
        if a == c && b.is_negative() {
            b = -b;
        }
        return Ok(QuadForm { a, b, c });
    }
}

/// Dirichlet composition followed by reduction.
pub fn compose(f1: &QuadForm, f2: &QuadForm) -> Result<QuadForm> {
    let d = f1.discriminant();
    let d2 = f2.discriminant();
    if d != d2 {
        return Err(QuadFormError::DiscriminantMismatch(d, d2));
    }
    let beta: BigInt = (&f1.b + &f2.b) / 2;
    // u a1 + v a2 + w beta = g
    let ExtendedGcd { gcd: g1, x: s, y: t, .. } = f1.a.extended_gcd(&f2.a);
    let ExtendedGcd { gcd: g, x: s2, y: w, .. } = g1.extended_gcd(&beta);
    let u = &s2 * &s;
    let v = &s2 * &t;

    let a3 = &f1.a * &f2.a / (&g * &g);
    let numerator: BigInt = &u * &f1.a * &f2.b + &v * &f2.a * &f1.b + &w * (&f1.b * &f2.b + &d) / 2;
    let b3 = (numerator / &g).mod_floor(&(&a3 * 2));
    let four_a3 = &a3 * 4;
    let (c3, rem) = (&b3 * &b3 - &d).div_rem(&four_a3);
    if !rem.is_zero() {
        return Err(QuadFormError::InternalError(format!(
            "composition of {f1} and {f2} produced non-integral c"
        )));
    }
    reduce(&QuadForm { a: a3, b: b3, c: c3 })
}

/// `f^n` for `n >= 0` by repeated squaring.
pub fn power(f: &QuadForm, mut n: u64) -> Result<QuadForm> {
    let d = f.discriminant();
    let mut acc = QuadForm::principal(&d);
    let mut base = reduce(f)?;
    while n > 0 {
        if n & 1 == 1 {
            acc = compose(&acc, &base)?;
        }
        n >>= 1;
        if n > 0 {
            base = compose(&base, &base)?;
        }
    }
    Ok(acc)
}

fn isqrt_u128(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u128;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

/// All reduced primitive forms of discriminant `D`, sorted by `(a, b, c)`.
pub fn enumerate_reduced_forms(discriminant: &BigInt) -> Result<Vec<QuadForm>> {
    check_discriminant(discriminant)?;
    let abs_d: u128 = (-discriminant)
        .to_u128()
        .filter(|&v| v < (1u128 << 100))
        .ok_or_else(|| QuadFormError::OutOfRange(discriminant.clone()))?;
    let mut forms = Vec::new();
    let b_max = isqrt_u128(abs_d / 3);
    let mut b = abs_d % 2;
    while b <= b_max {
        let n = (b * b + abs_d) / 4;
        for a in arith::divisors_between(n, b.max(1), isqrt_u128(n)) {
            let c = n / a;
            let (ai, bi, ci) = (BigInt::from(a), BigInt::from(b), BigInt::from(c));
            if b > 0 && b < a && a < c {
                let neg = QuadForm::new(ai.clone(), -bi.clone(), ci.clone());
                if neg.is_primitive() {
                    forms.push(neg);
                }
            }
            let f = QuadForm::new(ai, bi, ci);
            if f.is_primitive() {
                forms.push(f);
            }
        }
        b += 2;
    }
    forms.sort();
    Ok(forms)
}

pub fn class_number(discriminant: &BigInt) -> Result<usize> {
    Ok(enumerate_reduced_forms(discriminant)?.len())
}

/// Elementary divisors `d_1 | d_2 | ... | d_t` of a finite abelian group.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct AbelianStructure {
    pub elementary_divisors: Vec<u64>,
    pub order: u64,
}

impl AbelianStructure {
    /// Number of elementary divisors divisible by `p`.
    pub fn p_rank(&self, p: u64) -> usize {
        self.elementary_divisors.iter().filter(|&&d| d % p == 0).count()
    }
}

/// The class group of one discriminant, with its forms enumerated once.
#[derive(Debug, Clone)]
pub struct ClassGroup {
    discriminant: BigInt,
    forms: Vec<QuadForm>,
    identity: QuadForm,
}

impl ClassGroup {
    pub fn new(discriminant: &BigInt) -> Result<Self> {
        let forms = enumerate_reduced_forms(discriminant)?;
        Ok(ClassGroup {
            discriminant: discriminant.clone(),
            identity: QuadForm::principal(discriminant),
            forms,
        })
    }

    pub fn discriminant(&self) -> &BigInt {
        &self.discriminant
    }

    pub fn forms(&self) -> &[QuadForm] {
        &self.forms
    }

    pub fn identity(&self) -> &QuadForm {
        &self.identity
    }

    pub fn order(&self) -> usize {
        self.forms.len()
    }

    /// Order of one class, by stripping prime factors off the class number.
    pub fn element_order(&self, f: &QuadForm) -> Result<u64> {
        let h = self.order() as u64;
        let mut ord = h;
        for (q, e) in arith::factor(&BigInt::from(h)) {
            let q = q.to_u64().expect("factor of a u64");
            for _ in 0..e {
                if power(f, ord / q)? == self.identity {
                    ord /= q;
                } else {
                    break;
                }
            }
        }
        if power(f, ord)? != self.identity {
            return Err(QuadFormError::InternalError(format!(
                "{f} does not have order dividing the class number {h}"
            )));
        }
        Ok(ord)
    }

    /// `log_p #{g : g^p = 1}`, counted by composing every class with itself.
    pub fn p_rank(&self, p: u64) -> Result<u32> {
        if !arith::is_prime(p) {
            return Err(QuadFormError::NotPrime(p));
        }
        let mut count = 0u64;
        for f in &self.forms {
            if power(f, p)? == self.identity {
                count += 1;
            }
        }
        arith::exact_log(count, p).ok_or_else(|| {
            QuadFormError::InternalError(format!(
                "{count} classes are killed by {p}, which is not a power of {p}"
            ))
        })
    }

    /// Elementary divisors from the distribution of element orders: for each
    /// prime `q | h`, the counts `#{g : g^(q^k) = 1}` determine the
    /// `q`-primary part.
    pub fn structure(&self) -> Result<AbelianStructure> {
        let h = self.order() as u64;
        let orders =
            self.forms.iter().map(|f| self.element_order(f)).collect::<Result<Vec<_>>>()?;
        // exponents[q] = exponents of the cyclic q-factors, largest first
        let mut primary: Vec<(u64, Vec<u32>)> = Vec::new();
        for (q, e) in arith::factor(&BigInt::from(h)) {
            let q = q.to_u64().expect("factor of a u64");
            let mut counts = Vec::with_capacity(e as usize + 1);
            let mut qk = 1u64;
            for _ in 0..=e {
                counts.push(orders.iter().filter(|&&o| qk.is_multiple_of(o)).count() as u64);
                qk *= q;
            }
            // at_least[k] = number of cyclic factors of order >= q^(k+1)
            let mut at_least = Vec::with_capacity(e as usize);
            for k in 1..counts.len() {
                if counts[k] % counts[k - 1] != 0 {
                    return Err(QuadFormError::InternalError(format!(
                        "torsion counts {counts:?} for q = {q} are not a chain"
                    )));
                }
                let step = arith::exact_log(counts[k] / counts[k - 1], q).ok_or_else(|| {
                    QuadFormError::InternalError(format!(
                        "torsion counts {counts:?} for q = {q} are not q-powers"
                    ))
                })?;
                at_least.push(step);
            }
            let mut exps = Vec::new();
            for (k, &n) in at_least.iter().enumerate() {
                let next = at_least.get(k + 1).copied().unwrap_or(0);
                for _ in 0..n.saturating_sub(next) {
                    exps.push(k as u32 + 1);
                }
            }
            exps.sort_unstable_by(|a, b| b.cmp(a));
            primary.push((q, exps));
        }
        let t = primary.iter().map(|(_, e)| e.len()).max().unwrap_or(0);
        let mut divisors = vec![1u64; t];
        for (q, exps) in &primary {
            for (i, &e) in exps.iter().enumerate() {
                divisors[t - 1 - i] *= q.pow(e);
            }
        }
        let order: u64 = divisors.iter().product();
        if order != h {
            return Err(QuadFormError::InternalError(format!(
                "structure {divisors:?} has order {order}, expected {h}"
            )));
        }
        Ok(AbelianStructure { elementary_divisors: divisors, order })
    }
}

pub fn class_group_structure(discriminant: &BigInt) -> Result<AbelianStructure> {
    ClassGroup::new(discriminant)?.structure()
}

pub fn p_rank(discriminant: &BigInt, p: u64) -> Result<u32> {
    ClassGroup::new(discriminant)?.p_rank(p)
}

/// Genus theory: the 2-rank is one less than the number of primes dividing `D`.
pub fn two_rank_genus(discriminant: &BigInt) -> Result<u32> {
    if !discriminant.is_negative() || !is_fundamental(discriminant) {
        return Err(QuadFormError::BadDiscriminant(discriminant.clone()));
    }
    Ok(arith::factor(discriminant).len() as u32 - 1)
}

/// Indexes the classes for fast lookup of compositions.
pub fn index_forms(forms: &[QuadForm]) -> HashMap<QuadForm, usize> {
    forms.iter().cloned().enumerate().map(|(i, f)| (f, i)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn form(a: i64, b: i64, c: i64) -> QuadForm {
        QuadForm::new(a, b, c)
    }

    #[test]
    fn fundamental_discriminants() {
        assert_eq!(fundamental_discriminant(&big(-1)).unwrap().discriminant, big(-4));
        assert_eq!(fundamental_discriminant(&big(-3299)).unwrap().discriminant, big(-3299));
        assert_eq!(fundamental_discriminant(&big(-4849845)).unwrap().discriminant, big(-19399380));
        assert_eq!(
            fundamental_discriminant(&big(-12)),
            Err(QuadFormError::NotSquarefree(big(-12)))
        );
        assert_eq!(fundamental_discriminant(&big(5)), Err(QuadFormError::NotNegative(big(5))));
        assert_eq!(fundamental_discriminant(&big(0)), Err(QuadFormError::NotNegative(big(0))));
    }

    #[test]
    fn fundamental_predicate() {
        for d in [-3, -4, -7, -8, -23, -3299, -19399380] {
            assert!(is_fundamental(&big(d)), "{d}");
        }
        for d in [-12, -16, -27, -5, -1] {
            assert!(!is_fundamental(&big(d)), "{d}");
        }
    }

    #[test]
    fn reduction_examples() {
        assert_eq!(reduce(&form(1, 0, 1)).unwrap(), form(1, 0, 1));
        assert_eq!(reduce(&form(6, 1, 1)).unwrap(), form(1, 1, 6));
        assert_eq!(reduce(&form(2, -1, 3)).unwrap(), form(2, -1, 3));
        // boundary normalisations
        assert_eq!(reduce(&form(2, -2, 3)).unwrap(), form(2, 2, 3));
        assert_eq!(reduce(&form(3, -1, 3)).unwrap(), form(3, 1, 3));
        assert!(matches!(reduce(&form(-1, 0, -1)), Err(QuadFormError::NotPositiveDefinite(_))));
        assert!(matches!(reduce(&form(1, 3, 1)), Err(QuadFormError::NotPositiveDefinite(_))));
    }

    #[test]
    fn reduce_far_from_reduced() {
        // (1,0,1) conjugated by a long product of generators
        let f = form(1, 0, 1);
        let mut g = f.clone();
        for k in 1..20i64 {
            // x -> x + k y, then swap
            let k = BigInt::from(k);
            let (a, b, c) = (g.a.clone(), g.b.clone(), g.c.clone());
            let b2: BigInt = &b + &a * 2 * &k;
            let c2: BigInt = &a * &k * &k + &b * &k + &c;
            g = QuadForm { a: c2, b: -b2, c: a };
        }
        assert_eq!(g.discriminant(), big(-4));
        assert_eq!(reduce(&g).unwrap(), f);
    }

    #[test]
    fn enumerate_small() {
        assert_eq!(enumerate_reduced_forms(&big(-4)).unwrap(), vec![form(1, 0, 1)]);
        assert_eq!(
            enumerate_reduced_forms(&big(-23)).unwrap(),
            vec![form(1, 1, 6), form(2, -1, 3), form(2, 1, 3)]
        );
        assert!(matches!(
            enumerate_reduced_forms(&big(-5)),
            Err(QuadFormError::BadDiscriminant(_))
        ));
        assert!(matches!(enumerate_reduced_forms(&big(8)), Err(QuadFormError::BadDiscriminant(_))));
    }

    #[test]
    fn non_fundamental_keeps_only_primitive() {
        // D = -12: (1,0,3) and the imprimitive (2,2,2) is dropped.
        assert_eq!(enumerate_reduced_forms(&big(-12)).unwrap(), vec![form(1, 0, 3)]);
    }

    #[test]
    fn compose_examples() {
        assert_eq!(compose(&form(1, 1, 6), &form(2, 1, 3)).unwrap(), form(2, 1, 3));
        assert_eq!(compose(&form(2, 1, 3), &form(2, -1, 3)).unwrap(), form(1, 1, 6));
        assert_eq!(compose(&form(2, 1, 3), &form(2, 1, 3)).unwrap(), form(2, -1, 3));
        assert!(matches!(
            compose(&form(1, 1, 6), &form(1, 0, 1)),
            Err(QuadFormError::DiscriminantMismatch(..))
        ));
    }

    #[test]
    fn structures() {
        assert_eq!(class_group_structure(&big(-4)).unwrap().elementary_divisors, Vec::<u64>::new());
        assert_eq!(class_group_structure(&big(-23)).unwrap().elementary_divisors, vec![3]);
        assert_eq!(class_group_structure(&big(-84)).unwrap().elementary_divisors, vec![2, 2]);
        let s = class_group_structure(&big(-3299)).unwrap();
        assert_eq!(s.elementary_divisors, vec![3, 9]);
        assert_eq!(s.p_rank(3), 2);
    }

    #[test]
    fn ranks() {
        assert_eq!(p_rank(&big(-4), 3).unwrap(), 0);
        assert_eq!(p_rank(&big(-23), 3).unwrap(), 1);
        assert_eq!(p_rank(&big(-3299), 3).unwrap(), 2);
        assert_eq!(p_rank(&big(-420), 2).unwrap(), 3);
        assert_eq!(p_rank(&big(-23), 4), Err(QuadFormError::NotPrime(4)));
    }

    #[test]
    fn genus() {
        assert_eq!(two_rank_genus(&big(-4)).unwrap(), 0);
        assert_eq!(two_rank_genus(&big(-23)).unwrap(), 0);
        assert_eq!(two_rank_genus(&big(-19399380)).unwrap(), 7);
        assert!(two_rank_genus(&big(-12)).is_err());
    }

    #[test]
    fn orders() {
        let g = ClassGroup::new(&big(-23)).unwrap();
        assert_eq!(g.element_order(&form(1, 1, 6)).unwrap(), 1);
        assert_eq!(g.element_order(&form(2, 1, 3)).unwrap(), 3);
    }

    #[test]
    fn json_form() {
        let s = serde_json::to_string(&form(2, -1, 3)).unwrap();
        assert_eq!(s, "[2,-1,3]");
        let huge = QuadForm::new(BigInt::from(1) << 70, 0, 1);
        assert_eq!(serde_json::to_string(&huge).unwrap(), "[\"1180591620717411303424\",0,1]");
    }
}
