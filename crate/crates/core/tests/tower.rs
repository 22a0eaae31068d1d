// SPDX-License-Identifier: Apache-2.0

//! Tower decisions: assumption hygiene, agreement with the rank rules, and
//! the classical fields.

use num_bigint::BigInt;
use proptest::prelude::*;
use ptower_core::magnus::{parse_word, Word};
use ptower_core::quadforms;
use ptower_core::towerdecide::{
    conjectural_g4_decision, conjectural_matrix_decision, decide, massey_vanishing_criterion,
    verdict_from_rank, TowerError, TowerInput, TowerStatus, CONJECTURE_33,
};

fn w(text: &str) -> Word {
    parse_word(text).unwrap()
}

fn input(d: i64, p: u64) -> TowerInput {
    TowerInput::new(BigInt::from(d), p)
}

#[test]
fn rank_rules_over_small_fields() {
    for d in (-1500i64..=-3).filter(|&d| quadforms::is_fundamental(&BigInt::from(d))) {
        for p in [3u64, 5, 7] {
            let rank = quadforms::p_rank(&BigInt::from(d), p).unwrap();
            let v = decide(&input(d, p)).unwrap();
            let expected = match rank {
                0 => TowerStatus::FiniteLength(0),
                1 => TowerStatus::FiniteLength(1),
                2 => TowerStatus::Undecided,
                _ => TowerStatus::Infinite,
            };
            assert_eq!(v.status, expected, "D = {d}, p = {p}");
            assert!(v.assumptions.is_empty());
        }
    }
}

#[test]
fn conjectural_verdicts_always_carry_the_assumption() {
    let relation_pairs =
        [("[x,y,x]", "[x,y,y]"), ("[x,y,x]", "[x,y,x]^2"), ("[x,y,x,y]", "[x,y,y,y]")];
    for p in [5u64, 7, 11] {
        for (a, b) in relation_pairs {
            let v = conjectural_matrix_decision(&w(a), &w(b), p, true).unwrap();
            assert!(v.status.is_conjectural());
            assert_eq!(v.assumptions, vec![CONJECTURE_33.to_string()]);
            assert_eq!(
                conjectural_matrix_decision(&w(a), &w(b), p, false),
                Err(TowerError::ConjectureNotAssumed)
            );
        }
    }
    for (p, dim) in [(3u64, 2u32), (3, 3), (5, 0), (5, 1), (11, 1)] {
        let v = conjectural_g4_decision(dim, p, true).unwrap();
        assert_eq!(v.assumptions, vec![CONJECTURE_33.to_string()]);
    }
}

#[test]
fn unconditional_verdicts_never_carry_assumptions() {
    for rank in 0..6 {
        assert!(verdict_from_rank(rank, 3).unwrap().assumptions.is_empty());
    }
    let v = massey_vanishing_criterion(&w("[x,y,x,y]"), &w("[x,y,y,y]"), 5).unwrap();
    assert_eq!(v.status, TowerStatus::Infinite);
    assert!(v.assumptions.is_empty());
}

#[test]
fn the_33_field() {
    let mut i = input(-3299, 3);
    let v = decide(&i).unwrap();
    assert_eq!(v.status, TowerStatus::Undecided);
    assert!(v.notes.iter().any(|n| n.contains("Scholz")));
    i.assume_33 = true;
    i.dim_g3_g4 = Some(2);
    let v = decide(&i).unwrap();
    assert_eq!(v.status, TowerStatus::ConjecturallyFinite);
    assert!(v.assumptions.contains(&CONJECTURE_33.to_string()));
    i.dim_g3_g4 = Some(4);
    assert_eq!(decide(&i), Err(TowerError::InconsistentDimension { dim: 4, p: 3 }));
}

#[test]
fn input_validation() {
    assert_eq!(decide(&input(-23, 2)), Err(TowerError::EvenPrime(2)));
    assert_eq!(decide(&input(-23, 9)), Err(TowerError::NotPrime(9)));
    assert!(matches!(decide(&input(-12, 3)), Err(TowerError::BadDiscriminant(_))));
    assert!(matches!(decide(&input(5, 3)), Err(TowerError::BadDiscriminant(_))));
}

fn level3_word() -> impl Strategy<Value = Word> {
    (0u32..5, 0u32..5).prop_map(|(s, t)| {
        let a = w("[x,y,x]").pow(s as i64);
        let b = w("[x,y,y]").pow(t as i64);
        a.mul(&b)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    /// The matrix decision depends only on the coefficients modulo p, and a
    /// zero matrix also triggers the unconditional criterion.
    #[test]
    fn matrix_decision_is_determinant_test(r1 in level3_word(), r2 in level3_word()) {
        let p = 5u64;
        let v = conjectural_matrix_decision(&r1, &r2, p, true).unwrap();
        let c1 = ptower_core::magnus::deg3_coefficients(&r1, 5).unwrap();
        let c2 = ptower_core::magnus::deg3_coefficients(&r2, 5).unwrap();
        let det = (c1.a * c2.b + 25 - (c2.a * c1.b) % 5) % 5;
        let expected = if det != 0 { TowerStatus::ConjecturallyFinite } else { TowerStatus::ConjecturallyInfinite };
        prop_assert_eq!(v.status, expected);
        let zero = c1.is_zero() && c2.is_zero();
        let criterion = massey_vanishing_criterion(&r1, &r2, p).unwrap();
        prop_assert_eq!(criterion.status == TowerStatus::Infinite, zero);
    }
}

/// The classical infinite 5-tower field. The class number 434625 was
/// confirmed independently with the analytic series
/// `h = Σ χ(n) (erfc(n √(π/|D|)) + √|D| / (π n) · exp(−π n² / |D|))`.
#[test]
fn the_p5_field() {
    let d = BigInt::from(-222637549223i64);
    assert!(quadforms::is_fundamental(&d));
    let group = quadforms::ClassGroup::new(&d).unwrap();
    assert_eq!(group.order(), 434625);
    assert_eq!(group.p_rank(5).unwrap(), 3);
    let v = decide(&TowerInput::new(d, 5)).unwrap();
    assert_eq!(v.status, TowerStatus::Infinite);
    assert!(v.notes.iter().any(|n| n.contains("222637549223")));
}
