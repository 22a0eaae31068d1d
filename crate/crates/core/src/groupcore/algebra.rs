// SPDX-License-Identifier: Apache-2.0

use super::GroupTable;
use crate::linalg::Echelon;

/// An element of the group ring `F_p[G]`, indexed by group element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraElement {
    pub coeffs: Vec<u32>,
}

impl AlgebraElement {
    pub fn zero(n: usize) -> Self {
        AlgebraElement { coeffs: vec![0; n] }
    }

    pub fn basis(n: usize, g: usize) -> Self {
        let mut e = Self::zero(n);
        e.coeffs[g] = 1;
        e
    }

    /// `g - 1`.
    pub fn group_minus_one(group: &GroupTable, g: usize) -> Self {
        let p = group.p();
        let mut e = Self::zero(group.order());
        e.coeffs[g] = (e.coeffs[g] + 1) % p;
        e.coeffs[0] = (e.coeffs[0] + p - 1) % p;
        e
    }

    /// The augmentation (coefficient sum).
    pub fn degree(&self, p: u32) -> u32 {
        (self.coeffs.iter().map(|&c| c as u64).sum::<u64>() % p as u64) as u32
    }

    pub fn add(&self, other: &Self, p: u32) -> Self {
        AlgebraElement {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(&a, &b)| (a + b) % p).collect(),
        }
    }

    pub fn mul(&self, other: &Self, group: &GroupTable) -> Self {
        let p = group.p() as u64;
        let n = group.order();
        let mut out = vec![0u64; n];
        for (g, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (h, &b) in other.coeffs.iter().enumerate() {
                if b != 0 {
                    let gh = group.mul(g, h);
                    out[gh] = (out[gh] + a as u64 * b as u64) % p;
                }
            }
        }
        AlgebraElement { coeffs: out.into_iter().map(|c| c as u32).collect() }
    }

    /// `self * (g - 1)`, computed by shifting coefficients.
    fn times_g_minus_one(&self, group: &GroupTable, g: usize) -> Vec<u32> {
        let p = group.p();
        let mut out: Vec<u32> = self.coeffs.iter().map(|&c| (p - c) % p).collect();
        for (x, &c) in self.coeffs.iter().enumerate() {
            if c != 0 {
                let xg = group.mul(x, g);
                out[xg] = (out[xg] + c) % p;
            }
        }
        out
    }
}

/// A subspace of `F_p[G]` in canonical echelon form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace(Echelon);

impl Subspace {
    pub fn dim(&self) -> usize {
        self.0.rank()
    }

    pub fn basis(&self) -> impl Iterator<Item = AlgebraElement> + '_ {
        self.0.rows().iter().map(|r| AlgebraElement { coeffs: r.clone() })
    }

    pub fn contains(&self, x: &AlgebraElement) -> bool {
        self.0.contains(&x.coeffs)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.0.is_subspace_of(&other.0)
    }

    pub fn echelon(&self) -> &Echelon {
        &self.0
    }
}

/// The kernel of the augmentation map, spanned by the `g - 1`.
pub fn augmentation_ideal(group: &GroupTable) -> Subspace {
    let n = group.order();
    Subspace(Echelon::from_vectors(
        group.p(),
        n,
        (1..n).map(|g| AlgebraElement::group_minus_one(group, g).coeffs),
    ))
}

/// `I^n = I^(n-1) * I`. Since `I^(n-1)` is a two-sided ideal and `I` is
/// generated as a left ideal by `s - 1` for generators `s` of `G`, the
/// products `u (s - 1)` with `u` running over a basis of `I^(n-1)` already
/// span `I^n`.
fn next_power(group: &GroupTable, prev: &Subspace, gens: &[usize]) -> Subspace {
    let n = group.order();
    let mut e = Echelon::new(group.p(), n);
    for u in prev.basis() {
        for &s in gens {
            e.insert(u.times_g_minus_one(group, s));
        }
    }
    Subspace(e)
}

pub fn ideal_power(group: &GroupTable, n: usize) -> Subspace {
    assert!(n >= 1, "ideal powers start at I^1");
    let gens = group.generators();
    let mut cur = augmentation_ideal(group);
    for _ in 1..n {
        if cur.dim() == 0 {
            break;
        }
        cur = next_power(group, &cur, &gens);
    }
    cur
}

/// `[I, I^2, ..., I^k]` where `I^k = 0` is the first zero power.
pub fn ideal_powers(group: &GroupTable) -> Vec<Subspace> {
    let gens = group.generators();
    let mut out = vec![augmentation_ideal(group)];
    while out.last().expect("non-empty").dim() > 0 {
        let next = next_power(group, out.last().expect("non-empty"), &gens);
        out.push(next);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupcore::library;

    fn dims(name: &str) -> Vec<usize> {
        ideal_powers(&library::builtin(name).unwrap()).iter().map(Subspace::dim).collect()
    }

    #[test]
    fn augmentation_dims() {
        assert_eq!(augmentation_ideal(&library::builtin("C1").unwrap()).dim(), 0);
        assert_eq!(augmentation_ideal(&library::builtin("C2").unwrap()).dim(), 1);
        assert_eq!(augmentation_ideal(&library::builtin("Q8").unwrap()).dim(), 7);
    }

    #[test]
    fn cyclic_powers() {
        assert_eq!(dims("C4"), vec![3, 2, 1, 0]);
        assert_eq!(dims("C2"), vec![1, 0]);
        for (name, p) in [("C3", 3usize), ("C5", 5), ("C7", 7)] {
            let expected: Vec<usize> = (1..=p).map(|k| p - k).collect();
            assert_eq!(dims(name), expected, "{name}");
        }
        assert_eq!(ideal_power(&library::builtin("C1").unwrap(), 1).dim(), 0);
    }

    #[test]
    fn restricted_generators_match_full_products() {
        // I^2 computed from all products u * v against the generator shortcut
        for name in ["Q8", "D4", "heisenberg_27", "C2xC4"] {
            let g = library::builtin(name).unwrap();
            let i1 = augmentation_ideal(&g);
            let full = Echelon::from_vectors(
                g.p(),
                g.order(),
                i1.basis()
                    .flat_map(|u| i1.basis().map(move |v| (u.clone(), v)))
                    .map(|(u, v)| u.mul(&v, &g).coeffs),
            );
            assert_eq!(&full, ideal_power(&g, 2).echelon(), "{name}");
        }
    }

    #[test]
    fn ring_laws() {
        let g = library::builtin("Q8").unwrap();
        let x = AlgebraElement::group_minus_one(&g, 3);
        let y = AlgebraElement::group_minus_one(&g, 5);
        assert_eq!(x.degree(2), 0);
        assert_eq!(x.mul(&y, &g).degree(2), 0);
        let one = AlgebraElement::basis(8, 0);
        assert_eq!(x.mul(&one, &g), x);
        assert_eq!(x.add(&x, 2), AlgebraElement::zero(8));
    }
}
