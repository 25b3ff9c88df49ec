//! Numerical core for shadow-vertex simplex experiments.
//!
//! The crate is organised bottom-up:
//!
//! * [`numerics`] holds dense matrices, seeded random streams, a one-sided
//!   Jacobi SVD and exact integer determinants.
//! * [`polytope`] covers V- and H-representations, polar duality, brute-force
//!   facet enumeration, planar sections and vertex-edge graphs.
//! * [`simplex`] is a vertex-walking simplex engine with pluggable pivot rules.
//! * [`shadow`] implements the shadow-vertex rule as an exact parametric sweep.
//! * [`ensembles`] generates the random and adversarial instances.

pub mod ensembles;
pub mod error;
pub mod numerics;
pub mod polytope;
pub mod shadow;
pub mod simplex;

pub use error::{Error, Result};
