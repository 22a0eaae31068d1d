// SPDX-License-Identifier: Apache-2.0

//! Computational tools for p-class field towers of imaginary quadratic
//! fields: class groups from binary quadratic forms, Zassenhaus filtrations
//! of finite p-groups, Magnus expansions of relation words, exact
//! Golod–Shafarevich checks, and the resulting tower-length decisions.

pub mod arith;
pub mod groupcore;
pub mod gsineq;
pub mod linalg;
pub mod magnus;
pub mod quadforms;
pub mod towerdecide;

use thiserror::Error;

/// Any error raised by the library, tagged by module.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    QuadForm(#[from] quadforms::QuadFormError),
    #[error(transparent)]
    Group(#[from] groupcore::GroupError),
    #[error(transparent)]
    Magnus(#[from] magnus::MagnusError),
    #[error(transparent)]
    Gs(#[from] gsineq::GsError),
    #[error(transparent)]
    Tower(#[from] towerdecide::TowerError),
}

impl Error {
    /// The error kind as reported to users, e.g. `"BadDiscriminant"`.
    pub fn name(&self) -> &'static str {
        match self {
            Error::QuadForm(e) => e.name(),
            Error::Group(e) => e.name(),
            Error::Magnus(e) => e.name(),
            Error::Gs(e) => e.name(),
            Error::Tower(e) => e.name(),
        }
    }
}
