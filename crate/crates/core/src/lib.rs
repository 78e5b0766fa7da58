//! Computable pieces of the Hodge correlator construction.
//!
//! * [`graded`]: exact graded linear algebra, Koszul signs, signed cyclic words.
//! * [`dgcat`]: small dg categories, Hochschild cohomology, cyclic homology and
//!   the pairing-induced map from cyclic functionals to Hochschild cochains.
//! * [`trees`]: plane trivalent trees dual to polygon triangulations.
//! * [`sphere`]: Green kernel, harmonic projector and forms on the Riemann sphere.
//! * [`correlator`]: tree integrands, the ξ-operator, integration and summation.

pub mod correlator;
pub mod dgcat;
pub mod graded;
pub mod linalg;
pub mod reduce;
pub mod sphere;
pub mod trees;
