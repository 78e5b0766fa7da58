//! Small dg categories: presentation, validation, Hochschild cohomology,
//! cyclic homology and the pairing-induced dualization.
//!
//! Composition is written in diagrammatic order. Complexes are built from the
//! shifted A∞ structure `m₁(x) = -dx`, `m₂(x, y) = (-1)^(|x|-1) x·y` on
//! `A[1]`, where a basis vector `x` has shifted degree `|x| - 1`.

mod cyclic;
mod hochschild;
mod pairing;
mod presentation;
pub mod samples;
mod structure;
mod validate;

pub use cyclic::{cyclic_complex, cyclic_homology, CyclicChain, CyclicComplex};
pub use hochschild::{
    hh0_cocycles, hochschild_bicomplex, hochschild_cohomology, Cochain, CochainKey, HochschildBicomplex,
    HochschildComplex,
};
pub use pairing::{pairing_dualize, CyclicFunctional, PairingTarget};
pub use presentation::{BasisElement, DgCategory, DgCategoryBuilder};
pub use structure::AInfinity;
pub use validate::{validate, ValidationReport, Violation};

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::graded::GradedError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DgCatError {
    #[error("duplicate object {0:?}")]
    DuplicateObject(String),
    #[error("unknown object {0:?}")]
    UnknownObject(String),
    #[error("duplicate basis label {label:?} in Hom({domain}, {codomain})")]
    DuplicateBasis { domain: String, codomain: String, label: String },
    #[error("unknown basis label {label:?} in Hom({domain}, {codomain})")]
    UnknownBasis { domain: String, codomain: String, label: String },
    #[error("object {0:?} has no identity")]
    MissingIdentity(String),
    #[error("exact arithmetic required; the category has approximate scalars")]
    NotExact,
    #[error("max_column must be at least 1")]
    ColumnTooSmall,
    #[error("invalid dg category: {0}")]
    Invalid(String),
    #[error("degree mismatch: word of degree {found} in a functional of degree {expected}")]
    DegreeMismatch { expected: i32, found: i32 },
    #[error("pairing: {0}")]
    Pairing(String),
    #[error(transparent)]
    Graded(#[from] GradedError),
}

/// Homology dimensions over a degree window of a truncated complex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomologyTable {
    pub max_column: usize,
    pub window: (i32, i32),
    pub dims: BTreeMap<i32, usize>,
    /// Largest degree whose value does not depend on the truncation, if any.
    /// `None` with `window_reliable = false` means no degree is certified.
    pub reliable_max: Option<i32>,
    /// Every degree of the window is at most `reliable_max`.
    pub window_reliable: bool,
    /// The dims in the window agree with those at `max_column - 1`.
    pub stable: bool,
}

#[cfg(test)]
mod tests;
