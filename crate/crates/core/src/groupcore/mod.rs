// SPDX-License-Identifier: Apache-2.0

//! Finite p-groups as multiplication tables: group algebras over the prime
//! field, powers of the augmentation ideal, the Zassenhaus filtration by
//! definition and by Lazard's product formula, and the lower central series.

mod algebra;
mod filtration;
pub mod library;
mod table;

use std::fmt;

use thiserror::Error;

pub use algebra::{augmentation_ideal, ideal_power, ideal_powers, AlgebraElement, Subspace};
pub use filtration::{
    dim_g3_mod_g4, dimension_factors, dimension_subgroup_lazard,
    dimension_subgroup_lazard_all_pairs, dimension_subgroup_oracle, dimension_subgroups_oracle,
    frattini, lazard_pairs, lower_central_series, power_subgroup,
};
pub use table::{GroupTable, FULL_ASSOCIATIVITY_LIMIT};

/// Which group axiom a table violates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupAxiom {
    PrimeInvalid { p: u32 },
    OrderNotPPower { order: usize, p: u32 },
    Closure { row: usize, col: usize, value: usize },
    Identity { element: usize },
    RowNotBijective { row: usize },
    ColumnNotBijective { col: usize },
    Associativity { a: usize, b: usize, c: usize },
}

impl fmt::Display for GroupAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupAxiom::PrimeInvalid { p } => write!(f, "{p} is not prime"),
            GroupAxiom::OrderNotPPower { order, p } => {
                write!(f, "order {order} is not a power of {p}")
            }
            GroupAxiom::Closure { row, col, value } => {
                write!(f, "closure: entry ({row}, {col}) = {value} is out of range")
            }
            GroupAxiom::Identity { element } => {
                write!(f, "identity: element 0 does not fix element {element}")
            }
            GroupAxiom::RowNotBijective { row } => {
                write!(f, "inverses: row {row} is not a permutation")
            }
            GroupAxiom::ColumnNotBijective { col } => {
                write!(f, "inverses: column {col} is not a permutation")
            }
            GroupAxiom::Associativity { a, b, c } => {
                write!(f, "associativity fails on ({a}, {b}, {c})")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("schema error: {0}")]
    Schema(String),
    #[error("group axiom violated: {0}")]
    Axiom(GroupAxiom),
    #[error("unknown builtin group {0:?}")]
    UnknownGroup(String),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("internal error: {0}")]
    Internal(String),
}

impl GroupError {
    pub fn name(&self) -> &'static str {
        match self {
            GroupError::Schema(_) => "SchemaError",
            GroupError::Axiom(_) => "GroupAxiomError",
            GroupError::UnknownGroup(_) => "UnknownGroup",
            GroupError::NotNormal => "NotNormal",
            GroupError::Internal(_) => "InternalError",
        }
    }
}

pub type Result<T> = std::result::Result<T, GroupError>;

/// A subgroup as a sorted list of element indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subgroup {
    elements: Vec<usize>,
}

impl Subgroup {
    pub(crate) fn from_sorted(elements: Vec<usize>) -> Self {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        Subgroup { elements }
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&x| other.contains(x))
    }
}
