// SPDX-License-Identifier: Apache-2.0

//! Freely reduced words in a free group of finite rank.

use std::fmt;

use serde::{Serialize, Serializer};

/// A freely reduced word on generators `1..=rank`.
///
/// Letters are `(generator, exponent)` pairs with non-zero exponents and no
/// two adjacent letters on the same generator, so structural equality is
/// equality in the free group.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    rank: usize,
    letters: Vec<(usize, i64)>,
}

impl Word {
    pub fn identity(rank: usize) -> Self {
        Word { rank, letters: Vec::new() }
    }

    /// The generator `x_index` (1-based).
    pub fn generator(rank: usize, index: usize) -> Self {
        assert!((1..=rank).contains(&index), "generator {index} outside rank {rank}");
        Word { rank, letters: vec![(index, 1)] }
    }

    /// Builds a word from arbitrary letters, applying free reduction.
    ///
    /// Panics if a generator index is 0 or exceeds `rank`.
    pub fn from_letters<I: IntoIterator<Item = (usize, i64)>>(rank: usize, letters: I) -> Self {
        let mut w = Word::identity(rank);
        for (g, e) in letters {
            assert!((1..=rank).contains(&g), "generator {g} outside rank {rank}");
            w.push(g, e);
        }
        w
    }

    fn push(&mut self, g: usize, e: i64) {
        if e == 0 {
            return;
        }
        match self.letters.last_mut() {
            Some((h, f)) if *h == g => {
                let sum = f.checked_add(e).expect("exponent overflow");
                if sum == 0 {
                    self.letters.pop();
                } else {
                    *f = sum;
                }
            }
            _ => self.letters.push((g, e)),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn letters(&self) -> &[(usize, i64)] {
        &self.letters
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    /// Total number of generator occurrences, counting multiplicity.
    pub fn length(&self) -> u64 {
        self.letters.iter().map(|&(_, e)| e.unsigned_abs()).sum()
    }

    /// The same word viewed in a free group of larger rank.
    pub fn with_rank(&self, rank: usize) -> Self {
        assert!(
            self.letters.iter().all(|&(g, _)| g <= rank),
            "word uses a generator beyond rank {rank}"
        );
        Word { rank, letters: self.letters.clone() }
    }

    pub fn mul(&self, other: &Word) -> Word {
        let mut w = Word { rank: self.rank.max(other.rank), letters: self.letters.clone() };
        for &(g, e) in &other.letters {
            w.push(g, e);
        }
        w
    }

    pub fn inverse(&self) -> Word {
        Word {
            rank: self.rank,
            letters: self.letters.iter().rev().map(|&(g, e)| (g, -e)).collect(),
        }
    }

    pub fn pow(&self, k: i64) -> Word {
        if let [(g, e)] = self.letters[..] {
            let e = e.checked_mul(k).expect("exponent overflow");
            return Word::from_letters(self.rank, [(g, e)]);
        }
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut w = Word::identity(self.rank);
        for _ in 0..k.unsigned_abs() {
            w = w.mul(&base);
        }
        w
    }

    /// The commutator `[u, v] = u⁻¹ v⁻¹ u v`.
    pub fn commutator(u: &Word, v: &Word) -> Word {
        u.inverse().mul(&v.inverse()).mul(u).mul(v)
    }

    /// The left-normed commutator `[w1, w2, …, wk] = [[w1, w2], …, wk]`.
    ///
    /// Panics on an empty slice; a single entry is returned unchanged.
    pub fn left_normed(words: &[Word]) -> Word {
        let (first, rest) = words.split_first().expect("empty commutator");
        rest.iter().fold(first.clone(), |acc, w| Word::commutator(&acc, w))
    }

    fn generator_name(&self, g: usize) -> String {
        if self.rank <= 2 {
            if g == 1 {
                "x".into()
            } else {
                "y".into()
            }
        } else {
            format!("x{g}")
        }
    }
}

/// Prints in the input grammar: `x^3 y^-3`, `1` for the identity, and
/// `x1 … xd` names once the rank exceeds two.
impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        for (i, &(g, e)) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str(&self.generator_name(g))?;
            if e != 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Word {
        Word::generator(2, 1)
    }

    fn y() -> Word {
        Word::generator(2, 2)
    }

    #[test]
    fn free_reduction() {
        assert!(x().mul(&x().inverse()).is_identity());
        let w = Word::from_letters(2, [(1, 2), (1, -2), (2, 1), (2, 2)]);
        assert_eq!(w.letters(), &[(2, 3)]);
        let w = Word::from_letters(2, [(1, 1), (2, 1), (2, -1), (1, 2)]);
        assert_eq!(w.letters(), &[(1, 3)]);
    }

    #[test]
    fn commutators() {
        let c = Word::commutator(&x(), &y());
        assert_eq!(c.letters(), &[(1, -1), (2, -1), (1, 1), (2, 1)]);
        assert!(Word::commutator(&x(), &x()).is_identity());
        let xyx = Word::left_normed(&[x(), y(), x()]);
        assert_eq!(xyx, Word::commutator(&c, &x()));
        assert_eq!(xyx.length(), 8);
    }

    #[test]
    fn powers() {
        assert_eq!(x().pow(5).letters(), &[(1, 5)]);
        let c = Word::commutator(&x(), &y());
        assert_eq!(c.pow(2).length(), 8);
        assert!(c.pow(3).mul(&c.pow(-3)).is_identity());
        assert!(c.pow(0).is_identity());
    }

    #[test]
    fn display() {
        let w = Word::from_letters(2, [(1, 3), (2, -3)]);
        assert_eq!(w.to_string(), "x^3 y^-3");
        assert_eq!(Word::identity(2).to_string(), "1");
        let w = Word::from_letters(3, [(3, 1), (1, -1)]);
        assert_eq!(w.to_string(), "x3 x1^-1");
    }
}
