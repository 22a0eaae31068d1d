// SPDX-License-Identifier: Apache-2.0

use super::algebra::{ideal_powers, AlgebraElement};
use super::{GroupError, GroupTable, Result, Subgroup};
use crate::arith;

/// `gamma_1 = G`, `gamma_(i+1) = [gamma_i, G]`, listed until it stabilizes.
/// For a p-group the last entry is the trivial subgroup.
pub fn lower_central_series(group: &GroupTable) -> Vec<Subgroup> {
    let whole = group.whole();
    let mut series = vec![whole.clone()];
    loop {
        let last = series.last().expect("non-empty");
        let next = group.commutator_subgroup(last, &whole);
        if &next == last {
            break;
        }
        series.push(next);
    }
    series
}

/// The subgroup generated by `{h^q : h in H}`.
pub fn power_subgroup(group: &GroupTable, h: &Subgroup, q: u64) -> Subgroup {
    let mut hit = vec![false; group.order()];
    for &x in h.elements() {
        hit[group.pow(x, q)] = true;
    }
    group.generate((0..group.order()).filter(|&x| hit[x]))
}

/// `G^p [G, G]`.
pub fn frattini(group: &GroupTable) -> Subgroup {
    let whole = group.whole();
    let derived = group.commutator_subgroup(&whole, &whole);
    let powers = power_subgroup(group, &whole, group.p() as u64);
    group.join(&[powers, derived]).expect("power and derived subgroups are characteristic")
}

/// `G_n = {g : g - 1 in I^n}`, straight from the group ring.
pub fn dimension_subgroup_oracle(group: &GroupTable, n: usize) -> Subgroup {
    assert!(n >= 1, "dimension subgroups start at G_1");
    let powers = ideal_powers(group);
    let ideal = &powers[(n - 1).min(powers.len() - 1)];
    let members = (0..group.order())
        .filter(|&g| ideal.contains(&AlgebraElement::group_minus_one(group, g)))
        .collect();
    Subgroup::from_sorted(members)
}

/// `[G_1, G_2, ...]` by the oracle, ending with the first trivial term.
pub fn dimension_subgroups_oracle(group: &GroupTable) -> Vec<Subgroup> {
    let powers = ideal_powers(group);
    let mut out = Vec::new();
    for ideal in &powers {
        let members: Vec<usize> = (0..group.order())
            .filter(|&g| ideal.contains(&AlgebraElement::group_minus_one(group, g)))
            .collect();
        let trivial = members.len() == 1;
        out.push(Subgroup::from_sorted(members));
        if trivial {
            break;
        }
    }
    out
}

/// The non-redundant `(i, j)` with `i p^j >= n` for Lazard's formula: for
/// each `j` with `p^j` below the exponent only the smallest admissible `i`
/// matters, only while `gamma_i` is non-trivial, and only when `i` is smaller
/// than for every smaller `j`.
pub fn lazard_pairs(group: &GroupTable, n: usize) -> Vec<(usize, u32)> {
    let class_plus_one = lower_central_series(group).len();
    let exponent = group.exponent();
    let p = group.p() as u64;
    let mut pairs = Vec::new();
    let mut pj = 1u64;
    let mut j = 0u32;
    while pj < exponent {
        let i = (n as u64).div_ceil(pj).max(1) as usize;
        // (i, j) is dominated by an earlier (i', j') with i' <= i.
        let dominated = pairs.last().is_some_and(|&(prev, _)| prev <= i);
        if i < class_plus_one && !dominated {
            pairs.push((i, j));
        }
        pj *= p;
        j += 1;
    }
    pairs
}

fn lazard_product(
    group: &GroupTable,
    series: &[Subgroup],
    pairs: impl IntoIterator<Item = (usize, u32)>,
) -> Subgroup {
    let p = group.p() as u64;
    let parts: Vec<Subgroup> =
        pairs.into_iter().map(|(i, j)| power_subgroup(group, &series[i - 1], p.pow(j))).collect();
    group.join(&parts).expect("powers of lower central terms are normal")
}

/// `G_n = prod_{i p^j >= n} gamma_i(G)^(p^j)`.
pub fn dimension_subgroup_lazard(group: &GroupTable, n: usize) -> Subgroup {
    assert!(n >= 1, "dimension subgroups start at G_1");
    let series = lower_central_series(group);
    lazard_product(group, &series, lazard_pairs(group, n))
}

/// Lazard's product over every pair with `i <= class + 1` and `p^j <=
/// exponent`, without dropping dominated terms.
pub fn dimension_subgroup_lazard_all_pairs(group: &GroupTable, n: usize) -> Subgroup {
    let series = lower_central_series(group);
    let exponent = group.exponent();
    let p = group.p() as u64;
    let mut pairs = Vec::new();
    let mut pj = 1u64;
    let mut j = 0;
    while pj <= exponent {
        for i in 1..=series.len() {
            if i as u64 * pj >= n as u64 {
                pairs.push((i, j));
            }
        }
        pj *= p;
        j += 1;
    }
    lazard_product(group, &series, pairs)
}

fn log_index(group: &GroupTable, big: &Subgroup, small: &Subgroup) -> Result<u32> {
    let (b, s) = (big.order() as u64, small.order() as u64);
    if b % s != 0 {
        return Err(GroupError::Internal(format!("{s} does not divide {b}")));
    }
    arith::exact_log(b / s, group.p() as u64).ok_or_else(|| {
        GroupError::Internal(format!("index {} is not a power of {}", b / s, group.p()))
    })
}

/// `[log_p |G_n / G_(n+1)|]` for `n = 1, 2, ...` until `G_n` is trivial.
pub fn dimension_factors(group: &GroupTable) -> Result<Vec<u32>> {
    let mut out = Vec::new();
    let mut n = 1;
    let mut current = dimension_subgroup_lazard(group, 1);
    while !current.is_trivial() {
        let next = dimension_subgroup_lazard(group, n + 1);
        if !next.is_subset_of(&current) {
            return Err(GroupError::Internal(format!("G_{} is not inside G_{n}", n + 1)));
        }
        out.push(log_index(group, &current, &next)?);
        current = next;
        n += 1;
    }
    Ok(out)
}

/// `log_p |G_3 / G_4|`.
pub fn dim_g3_mod_g4(group: &GroupTable) -> Result<u32> {
    let g3 = dimension_subgroup_lazard(group, 3);
    let g4 = dimension_subgroup_lazard(group, 4);
    log_index(group, &g3, &g4)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupcore::library::builtin;

    fn orders(series: &[Subgroup]) -> Vec<usize> {
        series.iter().map(Subgroup::order).collect()
    }

    #[test]
    fn lower_central_examples() {
        assert_eq!(orders(&lower_central_series(&builtin("C4").unwrap())), vec![4, 1]);
        assert_eq!(orders(&lower_central_series(&builtin("Q8").unwrap())), vec![8, 2, 1]);
        let h = builtin("heisenberg_27").unwrap();
        let lcs = lower_central_series(&h);
        assert_eq!(orders(&lcs), vec![27, 3, 1]);
        // gamma_2 is the center
        let center: Vec<usize> =
            (0..27).filter(|&z| (0..27).all(|g| h.mul(z, g) == h.mul(g, z))).collect();
        assert_eq!(lcs[1].elements(), center.as_slice());
        assert_eq!(orders(&lower_central_series(&builtin("C1").unwrap())), vec![1]);
    }

    #[test]
    fn power_subgroups() {
        let c4 = builtin("C4").unwrap();
        assert_eq!(power_subgroup(&c4, &c4.whole(), 1), c4.whole());
        assert_eq!(power_subgroup(&c4, &c4.whole(), 2).order(), 2);
        let q8 = builtin("Q8").unwrap();
        assert!(power_subgroup(&q8, &q8.whole(), 4).is_trivial());
    }

    #[test]
    fn oracle_examples() {
        let c4 = builtin("C4").unwrap();
        assert_eq!(dimension_subgroup_oracle(&c4, 1), c4.whole());
        assert!(dimension_subgroup_oracle(&c4, 3).is_trivial());
        assert_eq!(dimension_subgroup_oracle(&c4, 2).order(), 2);
        let h = builtin("heisenberg_27").unwrap();
        let g2 = dimension_subgroup_oracle(&h, 2);
        assert_eq!(g2, lower_central_series(&h)[1]);
        assert_eq!(g2, dimension_subgroup_lazard(&h, 2));
    }

    #[test]
    fn lazard_examples() {
        let c4 = builtin("C4").unwrap();
        assert!(dimension_subgroup_lazard(&c4, 3).is_trivial());
        let h = builtin("heisenberg_27").unwrap();
        assert!(dimension_subgroup_lazard(&h, 3).is_trivial());
        for name in ["Q8", "D4", "C9", "heisenberg_27", "C2xC4"] {
            let g = builtin(name).unwrap();
            assert_eq!(dimension_subgroup_lazard(&g, 2), frattini(&g), "{name}");
        }
    }

    #[test]
    fn factors() {
        assert_eq!(dimension_factors(&builtin("C3").unwrap()).unwrap(), vec![1]);
        assert_eq!(dimension_factors(&builtin("C4").unwrap()).unwrap(), vec![1, 1]);
        assert_eq!(dimension_factors(&builtin("heisenberg_27").unwrap()).unwrap(), vec![2, 1]);
        assert_eq!(dimension_factors(&builtin("C1").unwrap()).unwrap(), Vec::<u32>::new());
        // C8: G_n = <g^(2^ceil(log2 n))>: orders 8,4,2,2,1
        assert_eq!(dimension_factors(&builtin("C8").unwrap()).unwrap(), vec![1, 1, 0, 1]);
    }

    #[test]
    fn g3_mod_g4() {
        assert_eq!(dim_g3_mod_g4(&builtin("C3").unwrap()).unwrap(), 0);
        assert_eq!(dim_g3_mod_g4(&builtin("heisenberg_27").unwrap()).unwrap(), 0);
    }

    #[test]
    fn pairs_are_minimal() {
        let c8 = builtin("C8").unwrap();
        // exponent 8, class 1: j = 0, 1, 2 with i = ceil(n / 2^j) <= 1
        assert_eq!(lazard_pairs(&c8, 3), vec![(1, 2)]);
        assert_eq!(lazard_pairs(&c8, 1), vec![(1, 0)]);
        let q8 = builtin("Q8").unwrap();
        // class 2, exponent 4
        assert_eq!(lazard_pairs(&q8, 2), vec![(2, 0), (1, 1)]);
    }
}
