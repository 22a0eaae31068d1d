// SPDX-License-Identifier: Apache-2.0

//! Row reduction over the prime field with `p` elements.
//!
//! Vectors are dense `Vec<u32>` with entries in `0..p`. [`Echelon`] keeps its
//! rows in reduced row echelon form, so two spans are equal exactly when
//! their row lists are equal.

use crate::arith::inv_mod;

/// A subspace of `F_p^width` stored as a reduced row echelon basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Echelon {
    p: u32,
    width: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(p: u32, width: usize) -> Self {
        Echelon { p, width, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn from_vectors<I: IntoIterator<Item = Vec<u32>>>(
        p: u32,
        width: usize,
        vectors: I,
    ) -> Self {
        let mut e = Echelon::new(p, width);
        for v in vectors {
            e.insert(v);
        }
        e
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Remainder of `v` after clearing every pivot column.
    pub fn reduce(&self, mut v: Vec<u32>) -> Vec<u32> {
        assert_eq!(v.len(), self.width, "vector width mismatch");
        let p = self.p as u64;
        for (row, &col) in self.rows.iter().zip(&self.pivots) {
            let c = v[col] as u64;
            if c == 0 {
                continue;
            }
            for (x, &r) in v.iter_mut().zip(row).skip(col) {
                if r != 0 {
                    *x = ((*x as u64 + (p - c) * r as u64) % p) as u32;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v.to_vec()).iter().all(|&x| x == 0)
    }

    /// Adds `v` to the span. Returns `false` if it was already contained.
    pub fn insert(&mut self, v: Vec<u32>) -> bool {
        let mut v = self.reduce(v);
        let Some(col) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let p = self.p as u64;
        let s = inv_mod(v[col], self.p) as u64;
        for x in v.iter_mut().skip(col) {
            *x = (*x as u64 * s % p) as u32;
        }
        // Clear the new pivot column from the existing rows.
        for row in &mut self.rows {
            let c = row[col] as u64;
            if c == 0 {
                continue;
            }
            for (x, &r) in row.iter_mut().zip(&v).skip(col) {
                if r != 0 {
                    *x = ((*x as u64 + (p - c) * r as u64) % p) as u32;
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < col);
        self.pivots.insert(at, col);
        self.rows.insert(at, v);
        true
    }

    /// `true` when every row of `self` lies in `other`.
    pub fn is_subspace_of(&self, other: &Echelon) -> bool {
        self.rows.iter().all(|r| other.contains(r))
    }
}

/// Finds coefficients `c` with `sum c_i * columns[i] == target`, or `None`
/// if `target` is outside the span. The solution is unique when the columns
/// are linearly independent.
pub fn solve(columns: &[Vec<u32>], target: &[u32], p: u32) -> Option<Vec<u32>> {
    let n = columns.len();
    let m = target.len();
    let p64 = p as u64;
    // Augmented matrix, one row per coordinate.
    let mut a: Vec<Vec<u32>> = (0..m)
        .map(|i| {
            let mut row: Vec<u32> = columns.iter().map(|c| c[i] % p).collect();
            row.push(target[i] % p);
            row
        })
        .collect();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(k) = (r..m).find(|&k| a[k][col] != 0) else {
            continue;
        };
        a.swap(r, k);
        let s = inv_mod(a[r][col], p) as u64;
        for x in a[r].iter_mut() {
            *x = (*x as u64 * s % p64) as u32;
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[col] == 0 {
                continue;
            }
            let c = row[col] as u64;
            for (x, &y) in row.iter_mut().zip(&pivot_row) {
                *x = ((*x as u64 + (p64 - c) * y as u64) % p64) as u32;
            }
        }
        pivot_cols.push(col);
        r += 1;
        if r == m {
            break;
        }
    }
    if a[r..].iter().any(|row| row[n] != 0) {
        return None;
    }
    let mut x = vec![0u32; n];
    for (i, &col) in pivot_cols.iter().enumerate() {
        x[col] = a[i][n];
    }
    Some(x)
}
