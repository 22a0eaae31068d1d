// SPDX-License-Identifier: Apache-2.0

//! Named groups bundled with the crate, built from concrete representations.

use super::{GroupError, GroupTable, Result};

/// Every name accepted by [`builtin`], smallest orders first.
pub const NAMES: &[&str] = &[
    "C1",
    "C2",
    "C3",
    "C4",
    "C5",
    "C7",
    "C2xC2",
    "C8",
    "C2xC4",
    "C2xC2xC2",
    "D4",
    "Q8",
    "C9",
    "C3xC3",
    "C16",
    "C2xC8",
    "C4xC4",
    "C2xC2xC2xC2",
    "C2xD4",
    "C2xQ8",
    "D8",
    "Q16",
    "SD16",
    "M16",
    "C5xC5",
    "C27",
    "C3xC9",
    "C3xC3xC3",
    "heisenberg_27",
    "extraspecial_27_exp9",
    "C3xC27",
    "C9xC9",
    "heisenberg_27xC3",
    "heisenberg_125",
];

pub fn builtin(name: &str) -> Result<GroupTable> {
    let g = match name {
        "C1" => cyclic(2, 1),
        "C2" => cyclic(2, 2),
        "C3" => cyclic(3, 3),
        "C4" => cyclic(2, 4),
        "C5" => cyclic(5, 5),
        "C7" => cyclic(7, 7),
        "C8" => cyclic(2, 8),
        "C9" => cyclic(3, 9),
        "C16" => cyclic(2, 16),
        "C27" => cyclic(3, 27),
        "C2xC2" => direct_product(&cyclic(2, 2)?, &cyclic(2, 2)?),
        "C2xC4" => direct_product(&cyclic(2, 2)?, &cyclic(2, 4)?),
        "C2xC8" => direct_product(&cyclic(2, 2)?, &cyclic(2, 8)?),
        "C4xC4" => direct_product(&cyclic(2, 4)?, &cyclic(2, 4)?),
        "C2xC2xC2" => direct_product(&builtin("C2xC2")?, &cyclic(2, 2)?),
        "C2xC2xC2xC2" => direct_product(&builtin("C2xC2xC2")?, &cyclic(2, 2)?),
        "C3xC3" => direct_product(&cyclic(3, 3)?, &cyclic(3, 3)?),
        "C3xC9" => direct_product(&cyclic(3, 3)?, &cyclic(3, 9)?),
        "C3xC27" => direct_product(&cyclic(3, 3)?, &cyclic(3, 27)?),
        "C9xC9" => direct_product(&cyclic(3, 9)?, &cyclic(3, 9)?),
        "C3xC3xC3" => direct_product(&builtin("C3xC3")?, &cyclic(3, 3)?),
        "C5xC5" => direct_product(&cyclic(5, 5)?, &cyclic(5, 5)?),
        // <a, b | a^m, b^k = a^t, b^-1 a b = a^r>
        "D4" => metacyclic(2, 4, 2, 3, 0),
        "D8" => metacyclic(2, 8, 2, 7, 0),
        "Q8" => metacyclic(2, 4, 2, 3, 2),
        "Q16" => metacyclic(2, 8, 2, 7, 4),
        "SD16" => metacyclic(2, 8, 2, 3, 0),
        "M16" => metacyclic(2, 8, 2, 5, 0),
        "extraspecial_27_exp9" => metacyclic(3, 9, 3, 4, 0),
        "C2xD4" => direct_product(&cyclic(2, 2)?, &builtin("D4")?),
        "C2xQ8" => direct_product(&cyclic(2, 2)?, &builtin("Q8")?),
        "heisenberg_27" => heisenberg(3),
        "heisenberg_125" => heisenberg(5),
        "heisenberg_27xC3" => direct_product(&heisenberg(3)?, &cyclic(3, 3)?),
        _ => Err(GroupError::UnknownGroup(name.to_string())),
    }?;
    Ok(g)
}

pub fn cyclic(p: u32, n: u32) -> Result<GroupTable> {
    GroupTable::from_representation(p, 0u32, &[1 % n], |a, b| (a + b) % n)
}

/// Pairs `(i, j)` standing for `a^i b^j`, multiplied with `b^j a = a^(r^j) b^j`
/// and `b^k = a^t`.
pub fn metacyclic(p: u32, m: u64, k: u64, r: u64, t: u64) -> Result<GroupTable> {
    let r_pow = |j: u64| (0..j).fold(1u64, |acc, _| acc * r % m);
    GroupTable::from_representation(p, (0u64, 0u64), &[(1, 0), (0, 1)], |x, y| {
        let (i1, j1) = *x;
        let (i2, j2) = *y;
        let mut i = i1 + r_pow(j1) * i2;
        let mut j = j1 + j2;
        if j >= k {
            j -= k;
            i += t;
        }
        (i % m, j)
    })
}

/// Upper unitriangular 3x3 matrices over `F_p`, stored as `(a, b, c)` for
/// `[[1, a, c], [0, 1, b], [0, 0, 1]]`.
pub fn heisenberg(p: u32) -> Result<GroupTable> {
    let q = p as u64;
    GroupTable::from_representation(p, (0u64, 0u64, 0u64), &[(1, 0, 0), (0, 1, 0)], |x, y| {
        ((x.0 + y.0) % q, (x.1 + y.1) % q, (x.2 + y.2 + x.0 * y.1) % q)
    })
}

pub fn direct_product(g: &GroupTable, h: &GroupTable) -> Result<GroupTable> {
    if g.p() != h.p() {
        return Err(GroupError::Schema(format!(
            "cannot multiply a {}-group by a {}-group",
            g.p(),
            h.p()
        )));
    }
    let (n1, n2) = (g.order(), h.order());
    let n = n1 * n2;
    let mut table = vec![0u32; n * n];
    for a in 0..n {
        for b in 0..n {
            let (a1, a2) = (a / n2, a % n2);
            let (b1, b2) = (b / n2, b % n2);
            table[a * n + b] = (g.mul(a1, b1) * n2 + h.mul(a2, b2)) as u32;
        }
    }
    GroupTable::from_associative(g.p(), n, table)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_builtin_builds() {
        for name in NAMES {
            let g = builtin(name).unwrap_or_else(|e| panic!("{name}: {e}"));
            assert!(g.order() >= 1, "{name}");
        }
        assert!(matches!(builtin("nope"), Err(GroupError::UnknownGroup(_))));
    }

    #[test]
    fn orders_and_exponents() {
        let cases = [
            ("Q8", 8, 4, false),
            ("D4", 8, 4, false),
            ("heisenberg_27", 27, 3, false),
            ("extraspecial_27_exp9", 27, 9, false),
            ("Q16", 16, 8, false),
            ("C2xC2xC2xC2", 16, 2, true),
            ("heisenberg_125", 125, 5, false),
            ("C9xC9", 81, 9, true),
        ];
        for (name, order, exponent, abelian) in cases {
            let g = builtin(name).unwrap();
            assert_eq!(g.order(), order, "{name}");
            assert_eq!(g.exponent(), exponent, "{name}");
            assert_eq!(g.is_abelian(), abelian, "{name}");
        }
    }

    #[test]
    fn quaternion_has_unique_involution() {
        let q8 = builtin("Q8").unwrap();
        let involutions = (1..8).filter(|&x| q8.mul(x, x) == 0).count();
        assert_eq!(involutions, 1);
        let d4 = builtin("D4").unwrap();
        assert_eq!((1..8).filter(|&x| d4.mul(x, x) == 0).count(), 5);
    }

    #[test]
    fn products_of_mixed_primes_are_rejected() {
        let e = direct_product(&cyclic(2, 2).unwrap(), &cyclic(3, 3).unwrap()).unwrap_err();
        assert!(matches!(e, GroupError::Schema(_)));
    }
}
