// SPDX-License-Identifier: Apache-2.0

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{GroupAxiom, GroupError, Result, Subgroup};
use crate::arith;

/// Tables up to this order are checked for associativity on every triple.
pub const FULL_ASSOCIATIVITY_LIMIT: usize = 256;

/// A finite p-group given by its multiplication table. Element 0 is the
/// identity.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupTable {
    p: u32,
    n: usize,
    table: Vec<u32>,
    inverses: Vec<u32>,
}

#[derive(Debug, Serialize, Deserialize)]
struct GroupFile {
    p: u32,
    order: usize,
    table: Vec<Vec<u32>>,
}

impl fmt::Debug for GroupTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GroupTable")
            .field("p", &self.p)
            .field("order", &self.n)
            .finish_non_exhaustive()
    }
}

impl GroupTable {
    /// Validates and builds a table. Associativity is checked exhaustively up
    /// to [`FULL_ASSOCIATIVITY_LIMIT`] and on `10 n^2` seeded random triples
    /// above it.
    pub fn new(p: u32, rows: Vec<Vec<u32>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(GroupError::Schema(format!("table must be {n} x {n}")));
        }
        let table: Vec<u32> = rows.into_iter().flatten().collect();
        let g = Self::checked(p, n, table)?;
        g.check_associativity()?;
        Ok(g)
    }

    /// Builds a table whose associativity is inherited from an associative
    /// representation; only closure, identity and the Latin-square property
    /// are checked.
    pub(crate) fn from_associative(p: u32, n: usize, table: Vec<u32>) -> Result<Self> {
        Self::checked(p, n, table)
    }

    fn checked(p: u32, n: usize, table: Vec<u32>) -> Result<Self> {
        if !arith::is_prime(p as u64) {
            return Err(GroupError::Axiom(GroupAxiom::PrimeInvalid { p }));
        }
        if n == 0 {
            return Err(GroupError::Schema("empty table".into()));
        }
        if arith::exact_log(n as u64, p as u64).is_none() {
            return Err(GroupError::Axiom(GroupAxiom::OrderNotPPower { order: n, p }));
        }
        for (i, &v) in table.iter().enumerate() {
            if v as usize >= n {
                return Err(GroupError::Axiom(GroupAxiom::Closure {
                    row: i / n,
                    col: i % n,
                    value: v as usize,
                }));
            }
        }
        for x in 0..n {
            if table[x] as usize != x || table[x * n] as usize != x {
                return Err(GroupError::Axiom(GroupAxiom::Identity { element: x }));
            }
        }
        let mut seen = vec![usize::MAX; n];
        for r in 0..n {
            for c in 0..n {
                let v = table[r * n + c] as usize;
                if seen[v] == r {
                    return Err(GroupError::Axiom(GroupAxiom::RowNotBijective { row: r }));
                }
                seen[v] = r;
            }
        }
        seen.fill(usize::MAX);
        for c in 0..n {
            for r in 0..n {
                let v = table[r * n + c] as usize;
                if seen[v] == c {
                    return Err(GroupError::Axiom(GroupAxiom::ColumnNotBijective { col: c }));
                }
                seen[v] = c;
            }
        }
        let mut inverses = vec![0u32; n];
        for (a, inv) in inverses.iter_mut().enumerate() {
            let b = (0..n).find(|&b| table[a * n + b] == 0).expect("Latin rows contain 0");
            *inv = b as u32;
        }
        Ok(GroupTable { p, n, table, inverses })
    }

    fn check_associativity(&self) -> Result<()> {
        let n = self.n;
        let assoc = |a: usize, b: usize, c: usize| -> Result<()> {
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                Err(GroupError::Axiom(GroupAxiom::Associativity { a, b, c }))
            } else {
                Ok(())
            }
        };
        if n <= FULL_ASSOCIATIVITY_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        assoc(a, b, c)?;
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x05a5_5e4a_u64);
            for _ in 0..10 * n * n {
                assoc(rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n))?;
            }
        }
        Ok(())
    }

    /// Closes `generators` under `op` and tabulates the result. `op` must be
    /// associative with two-sided identity `identity`.
    pub fn from_representation<T, F>(p: u32, identity: T, generators: &[T], op: F) -> Result<Self>
    where
        T: Clone + Eq + Hash,
        F: Fn(&T, &T) -> T,
    {
        let (elements, index) = close_under(identity, generators, &op);
        Self::tabulate(p, &elements, &index, op)
    }

    /// Tabulates `op` on an already closed element list whose position map is
    /// `index`; element 0 must be the identity.
    pub(crate) fn tabulate<T, F>(
        p: u32,
        elements: &[T],
        index: &HashMap<T, usize>,
        op: F,
    ) -> Result<Self>
    where
        T: Clone + Eq + Hash,
        F: Fn(&T, &T) -> T,
    {
        let n = elements.len();
        let mut table = vec![0u32; n * n];
        for (i, x) in elements.iter().enumerate() {
            for (j, y) in elements.iter().enumerate() {
                let z = op(x, y);
                let k = *index.get(&z).ok_or_else(|| {
                    GroupError::Schema("representation is not closed under products".into())
                })?;
                table[i * n + j] = k as u32;
            }
        }
        if n <= FULL_ASSOCIATIVITY_LIMIT {
            let g = Self::checked(p, n, table)?;
            g.check_associativity()?;
            Ok(g)
        } else {
            Self::from_associative(p, n, table)
        }
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let file: GroupFile =
            serde_json::from_str(text).map_err(|e| GroupError::Schema(e.to_string()))?;
        if file.table.len() != file.order {
            return Err(GroupError::Schema(format!(
                "order {} does not match table with {} rows",
                file.order,
                file.table.len()
            )));
        }
        Self::new(file.p, file.table)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let rows: Vec<Vec<u32>> = self.table.chunks(self.n).map(|r| r.to_vec()).collect();
        serde_json::json!({ "p": self.p, "order": self.n, "table": rows })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// `log_p` of the order.
    pub fn log_order(&self) -> u32 {
        arith::exact_log(self.n as u64, self.p as u64).expect("validated on construction")
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a] as usize
    }

    /// `[a, b] = a^-1 b^-1 a b`.
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        let ab = self.mul(a, b);
        let ba = self.mul(b, a);
        self.mul(self.inv(ba), ab)
    }

    pub fn pow(&self, a: usize, mut k: u64) -> usize {
        let mut acc = 0;
        let mut base = a;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn element_order(&self, a: usize) -> u64 {
        let mut k = 1;
        let mut x = a;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> u64 {
        (0..self.n).map(|a| self.element_order(a)).max().unwrap_or(1)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup::from_sorted((0..self.n).collect())
    }

    pub fn trivial(&self) -> Subgroup {
        Subgroup::from_sorted(vec![0])
    }

    /// The subgroup generated by `gens`.
    pub fn generate<I: IntoIterator<Item = usize>>(&self, gens: I) -> Subgroup {
        let mut member = vec![false; self.n];
        member[0] = true;
        let mut elements = vec![0usize];
        let mut effective: Vec<usize> = Vec::new();
        for g in gens {
            if member[g] {
                continue;
            }
            effective.push(g);
            // Re-close from the current elements with the enlarged generating set.
            let mut queue = elements.clone();
            let mut head = 0;
            while head < queue.len() {
                let x = queue[head];
                head += 1;
                for &s in &effective {
                    let y = self.mul(x, s);
                    if !member[y] {
                        member[y] = true;
                        elements.push(y);
                        queue.push(y);
                    }
                }
            }
        }
        elements.sort_unstable();
        Subgroup::from_sorted(elements)
    }

    /// A generating set found greedily in index order.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut current = self.trivial();
        for g in 1..self.n {
            if current.order() == self.n {
                break;
            }
            if !current.contains(g) {
                gens.push(g);
                current = self.generate(gens.iter().copied());
            }
        }
        gens
    }

    pub fn is_subgroup(&self, h: &Subgroup) -> bool {
        h.contains(0)
            && h.elements()
                .iter()
                .all(|&a| h.elements().iter().all(|&b| h.contains(self.mul(a, self.inv(b)))))
    }

    pub fn is_normal(&self, h: &Subgroup) -> bool {
        (0..self.n).all(|g| {
            let gi = self.inv(g);
            h.elements().iter().all(|&x| h.contains(self.mul(self.mul(gi, x), g)))
        })
    }

    /// The product of normal subgroups. Fails if any input is not normal.
    pub fn join(&self, parts: &[Subgroup]) -> Result<Subgroup> {
        for h in parts {
            if !self.is_normal(h) {
                return Err(GroupError::NotNormal);
            }
        }
        Ok(self.generate(parts.iter().flat_map(|h| h.elements().iter().copied())))
    }

    /// `[H, K]`, generated by all commutators `[h, k]`.
    pub fn commutator_subgroup(&self, h: &Subgroup, k: &Subgroup) -> Subgroup {
        let mut hit = vec![false; self.n];
        for &a in h.elements() {
            for &b in k.elements() {
                hit[self.commutator(a, b)] = true;
            }
        }
        self.generate((0..self.n).filter(|&x| hit[x]))
    }
}

/// Breadth-first closure of `generators` under `op`; element 0 is `identity`.
fn close_under<T, F>(identity: T, generators: &[T], op: &F) -> (Vec<T>, HashMap<T, usize>)
where
    T: Clone + Eq + Hash,
    F: Fn(&T, &T) -> T,
{
    let mut elements = vec![identity.clone()];
    let mut index = HashMap::new();
    index.insert(identity, 0usize);
    let mut head = 0;
    while head < elements.len() {
        let x = elements[head].clone();
        head += 1;
        for g in generators {
            let y = op(&x, g);
            if !index.contains_key(&y) {
                index.insert(y.clone(), elements.len());
                elements.push(y);
            }
        }
    }
    (elements, index)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c2_rows() -> Vec<Vec<u32>> {
        vec![vec![0, 1], vec![1, 0]]
    }

    #[test]
    fn accepts_c2() {
        let g = GroupTable::new(2, c2_rows()).unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(g.inv(1), 1);
        assert_eq!(g.exponent(), 2);
        assert!(g.is_abelian());
    }

    #[test]
    fn rejects_bad_tables() {
        let e = GroupTable::new(2, vec![vec![0, 1], vec![1, 1]]).unwrap_err();
        assert!(matches!(e, GroupError::Axiom(GroupAxiom::RowNotBijective { row: 1 })), "{e}");
        let e = GroupTable::new(2, vec![vec![0, 2], vec![1, 0]]).unwrap_err();
        assert!(matches!(e, GroupError::Axiom(GroupAxiom::Closure { .. })));
        let e = GroupTable::new(2, vec![vec![1, 0], vec![0, 1]]).unwrap_err();
        assert!(matches!(e, GroupError::Axiom(GroupAxiom::Identity { .. })));
        let e = GroupTable::new(3, c2_rows()).unwrap_err();
        assert!(matches!(e, GroupError::Axiom(GroupAxiom::OrderNotPPower { .. })));
        let e = GroupTable::new(4, c2_rows()).unwrap_err();
        assert!(matches!(e, GroupError::Axiom(GroupAxiom::PrimeInvalid { .. })));
        let e = GroupTable::new(2, vec![vec![0, 1]]).unwrap_err();
        assert!(matches!(e, GroupError::Schema(_)));
    }

    #[test]
    fn rejects_non_associative_latin_square() {
        // Every element squares to the identity, impossible in C5, so this
        // order-5 loop is not a group.
        let rows = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let e = GroupTable::new(5, rows).unwrap_err();
        assert!(matches!(e, GroupError::Axiom(GroupAxiom::Associativity { .. })), "{e}");
    }

    #[test]
    fn json_round_trip() {
        let g = GroupTable::new(2, c2_rows()).unwrap();
        let text = g.to_json_value().to_string();
        let expected: serde_json::Value =
            serde_json::from_str(r#"{"p":2,"order":2,"table":[[0,1],[1,0]]}"#).unwrap();
        assert_eq!(g.to_json_value(), expected);
        assert_eq!(GroupTable::from_json_str(&text).unwrap(), g);
        let e =
            GroupTable::from_json_str(r#"{"p":2,"order":3,"table":[[0,1],[1,0]]}"#).unwrap_err();
        assert!(matches!(e, GroupError::Schema(_)));
        let e = GroupTable::from_json_str("{").unwrap_err();
        assert!(matches!(e, GroupError::Schema(_)));
    }

    #[test]
    fn representation_closure() {
        // Z/8 under addition
        let g = GroupTable::from_representation(2, 0u32, &[1], |a, b| (a + b) % 8).unwrap();
        assert_eq!(g.order(), 8);
        assert_eq!(g.exponent(), 8);
        assert_eq!(g.generators().len(), 1);
    }
}
