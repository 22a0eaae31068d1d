// SPDX-License-Identifier: Apache-2.0

//! Dimension subgroups: the group-ring oracle against Lazard's formula on
//! every builtin group, and both against Magnus levels on free quotients.

use std::sync::OnceLock;

use proptest::prelude::*;
use ptower_core::groupcore::{
    self, dimension_subgroup_lazard, dimension_subgroup_lazard_all_pairs,
    dimension_subgroups_oracle, frattini, library, GroupTable,
};
use ptower_core::magnus::{self, FreeQuotient, Level, Word};

fn check_lazard_against_oracle(name: &str, g: &GroupTable) {
    let oracle = dimension_subgroups_oracle(g);
    assert!(oracle.last().unwrap().is_trivial(), "{name}: oracle did not reach 1");
    for (i, h) in oracle.iter().enumerate() {
        let n = i + 1;
        assert_eq!(*h, dimension_subgroup_lazard(g, n), "{name}: G_{n}");
        assert_eq!(*h, dimension_subgroup_lazard_all_pairs(g, n), "{name}: G_{n} (all pairs)");
        assert!(g.is_normal(h), "{name}: G_{n} not normal");
    }
    // Past stabilization Lazard's product stays trivial.
    assert!(dimension_subgroup_lazard(g, oracle.len() + 3).is_trivial(), "{name}");
    if g.order() > 1 {
        assert_eq!(oracle[1], frattini(g), "{name}: G_2 = G^p [G, G]");
    }
}

#[test]
fn lazard_matches_oracle_on_every_builtin() {
    for name in library::NAMES {
        let g = library::builtin(name).unwrap();
        check_lazard_against_oracle(name, &g);
    }
}

#[test]
fn dimension_factors_sum_to_log_order() {
    for name in library::NAMES {
        let g = library::builtin(name).unwrap();
        let factors = groupcore::dimension_factors(&g).unwrap();
        assert_eq!(factors.iter().sum::<u32>(), g.log_order(), "{name}");
        if g.order() > 1 {
            assert_eq!(factors[0] as usize, g.generators().len(), "{name}: Burnside basis");
        }
    }
}

#[test]
fn free_quotients_agree_with_oracle() {
    for (p, class) in [(2u32, 3usize), (3, 3), (5, 3), (2, 4)] {
        let q = FreeQuotient::new(p, 2, class).unwrap();
        check_lazard_against_oracle(&format!("F/F_{class} (p = {p})"), q.table());
    }
}

#[test]
fn free_quotient_factor_orders() {
    // dim F_n/F_(n+1) for rank 2, read off the Lazard filtration.
    for (p, class, expected) in [
        (2u32, 3usize, vec![2u32, 3]),
        (3, 3, vec![2, 1]),
        (5, 3, vec![2, 1]),
        (2, 4, vec![2, 3, 2]),
        (3, 4, vec![2, 1, 4]),
        (5, 4, vec![2, 1, 2]),
    ] {
        let q = FreeQuotient::new(p, 2, class).unwrap();
        assert_eq!(
            groupcore::dimension_factors(q.table()).unwrap(),
            expected,
            "p = {p}, F/F_{class}"
        );
    }
}

#[test]
fn g3_mod_g4_of_free_quotients_matches_magnus_count() {
    for p in [2u32, 3, 5] {
        let q = FreeQuotient::new(p, 2, 4).unwrap();
        let dim = groupcore::dim_g3_mod_g4(q.table()).unwrap() as usize;
        assert_eq!(dim, magnus::free_dimension_factor_deg3(p, 2).unwrap(), "p = {p}");
    }
}

/// F/F_n with its oracle filtration, built once for all proptest cases.
fn quotients() -> &'static [(FreeQuotient, Vec<groupcore::Subgroup>)] {
    static CELL: OnceLock<Vec<(FreeQuotient, Vec<groupcore::Subgroup>)>> = OnceLock::new();
    CELL.get_or_init(|| {
        [(2u32, 4usize), (3, 3)]
            .into_iter()
            .map(|(p, class)| {
                let q = FreeQuotient::new(p, 2, class).unwrap();
                let series = dimension_subgroups_oracle(q.table());
                (q, series)
            })
            .collect()
    })
}

fn word_strategy() -> impl Strategy<Value = Word> {
    prop::collection::vec((1usize..=2, -4i64..=4), 0..10)
        .prop_map(|letters| Word::from_letters(2, letters))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    /// The image of `w` in F/F_n lies in the k-th dimension subgroup
    /// exactly when its Magnus level is at least k.
    #[test]
    fn membership_is_magnus_level(
        u in word_strategy(), v in word_strategy(), commute in any::<bool>(),
    ) {
        let w = if commute { Word::commutator(&u, &v) } else { u.mul(&v) };
        for (q, series) in quotients() {
            let (p, class) = (q.p(), q.class());
            let x = q.element_of(&w);
            let lvl = match magnus::level(&w, p, class - 1).unwrap() {
                Level::Exact(k) => k,
                Level::AtLeast(k) => k,
            };
            for (i, h) in series.iter().enumerate() {
                let k = i + 1;
                prop_assert_eq!(h.contains(x), lvl >= k, "p = {}, k = {}, w = {}", p, k, w);
            }
        }
    }
}
