// SPDX-License-Identifier: Apache-2.0

//! The finite quotients `F/F_n` of a free pro-p group, realized as the group
//! of units `1 + X_i` generate inside `F_p⟨X⟩ / (degree ≥ n)`.

use std::collections::{HashMap, VecDeque};

use super::series::{expand, monomial_index, TruncatedSeries};
use super::word::Word;
use super::{check_prime, MagnusError, Result};
use crate::groupcore::GroupTable;

/// Largest quotient order this builder will tabulate.
pub const MAX_QUOTIENT_ORDER: usize = 4096;

/// `F/F_n` for the free group of rank `rank`, with the map from words.
#[derive(Debug, Clone)]
pub struct FreeQuotient {
    p: u32,
    rank: usize,
    class: usize,
    table: GroupTable,
    index: HashMap<Vec<u8>, usize>,
}

/// Dense coordinates over all monomials of degree `< class`.
struct Layout {
    p: u32,
    rank: usize,
    offsets: Vec<usize>,
    products: Vec<(usize, usize, usize)>,
    width: usize,
}

impl Layout {
    fn new(p: u32, rank: usize, class: usize) -> Self {
        let mut offsets = vec![0];
        for k in 0..class {
            offsets.push(offsets[k] + rank.pow(k as u32));
        }
        let width = offsets[class];
        let mut products = Vec::new();
        for da in 0..class {
            for db in 0..class - da {
                for i in 0..rank.pow(da as u32) {
                    for j in 0..rank.pow(db as u32) {
                        let target = offsets[da + db] + i * rank.pow(db as u32) + j;
                        products.push((offsets[da] + i, offsets[db] + j, target));
                    }
                }
            }
        }
        Layout { p, rank, offsets, products, width }
    }

    fn mul(&self, a: &[u8], b: &[u8]) -> Vec<u8> {
        let p = self.p;
        let mut acc = vec![0u32; self.width];
        for &(i, j, t) in &self.products {
            acc[t] = (acc[t] + a[i] as u32 * b[j] as u32) % p;
        }
        acc.into_iter().map(|c| c as u8).collect()
    }

    fn encode(&self, s: &TruncatedSeries) -> Vec<u8> {
        let mut v = vec![0u8; self.width];
        for (m, &c) in s.terms() {
            if m.len() + 1 < self.offsets.len() {
                v[self.offsets[m.len()] + monomial_index(m, self.rank)] = c as u8;
            }
        }
        v
    }
}

impl FreeQuotient {
    /// Builds `F/F_class`; fails when the order would exceed
    /// [`MAX_QUOTIENT_ORDER`] or `p` does not fit the dense coefficients.
    pub fn new(p: u32, rank: usize, class: usize) -> Result<Self> {
        check_prime(p)?;
        if p > u8::MAX as u32 {
            return Err(MagnusError::Internal(format!("prime {p} too large for quotient tables")));
        }
        if !(1..=8).contains(&rank) || class < 1 {
            return Err(MagnusError::Internal(format!(
                "unsupported quotient F/F_{class} of rank {rank}"
            )));
        }
        let layout = Layout::new(p, rank, class);
        let generators: Vec<Vec<u8>> = (1..=rank)
            .map(|g| layout.encode(&expand(&Word::generator(rank, g), p, class.max(2) - 1)))
            .collect();
        let identity = layout.encode(&TruncatedSeries::one(p, rank, class.max(2) - 1));

        let mut elements = vec![identity.clone()];
        let mut index = HashMap::from([(identity, 0usize)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in &generators {
                let y = layout.mul(&elements[i], g);
                if !index.contains_key(&y) {
                    if elements.len() == MAX_QUOTIENT_ORDER {
                        return Err(MagnusError::Internal(format!(
                            "F/F_{class} for p = {p}, rank {rank} exceeds order {MAX_QUOTIENT_ORDER}"
                        )));
                    }
                    index.insert(y.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(y);
                }
            }
        }
        let table = GroupTable::tabulate(p, &elements, &index, |a, b| layout.mul(a, b))
            .map_err(|e| MagnusError::Internal(e.to_string()))?;
        Ok(FreeQuotient { p, rank, class, table, index })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// The `n` of `F/F_n`.
    pub fn class(&self) -> usize {
        self.class
    }

    pub fn table(&self) -> &GroupTable {
        &self.table
    }

    /// The table index of the image of `w`.
    pub fn element_of(&self, w: &Word) -> usize {
        let layout = Layout::new(self.p, self.rank, self.class);
        let s = expand(&w.with_rank(self.rank), self.p, self.class.max(2) - 1);
        self.index[&layout.encode(&s)]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::magnus::parse_word;

    #[test]
    fn small_quotients() {
        // F/F_2 is elementary abelian of rank d.
        let q = FreeQuotient::new(3, 2, 2).unwrap();
        assert_eq!(q.table().order(), 9);
        assert!(q.table().is_abelian());
        // F/F_3 for p = 3 is the Heisenberg group of order 27 and exponent 3.
        let q = FreeQuotient::new(3, 2, 3).unwrap();
        assert_eq!(q.table().order(), 27);
        assert_eq!(q.table().exponent(), 3);
        assert!(!q.table().is_abelian());
        // F/F_3 for p = 2 has order 2^(2 + 3).
        let q = FreeQuotient::new(2, 2, 3).unwrap();
        assert_eq!(q.table().order(), 32);
        assert!(FreeQuotient::new(7, 2, 5).is_err());
    }

    #[test]
    fn words_map_to_elements() {
        let q = FreeQuotient::new(3, 2, 3).unwrap();
        let x = q.element_of(&parse_word("x").unwrap());
        let y = q.element_of(&parse_word("y").unwrap());
        let xy = q.element_of(&parse_word("x y").unwrap());
        assert_eq!(q.table().mul(x, y), xy);
        let c = q.element_of(&parse_word("[x,y]").unwrap());
        assert_eq!(q.table().commutator(x, y), c);
        assert_eq!(q.element_of(&parse_word("[x,y,x]").unwrap()), 0);
        assert_eq!(q.element_of(&parse_word("x^3").unwrap()), 0);
    }
}
