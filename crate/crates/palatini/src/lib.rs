//! Exact computation with webs of linear line complexes in P^5.
//!
//! The library constructs the degeneracy locus of a web (a 3-space of
//! 6x6 skew-symmetric forms), computes its equations, Hilbert function and
//! degree, tests the 4-secant structure of the base congruence, classifies
//! webs by the geometry of their pfaffian cubic, and checks the intersection
//! numbers of the scroll by Riemann-Roch. All arithmetic is exact: rationals
//! for symbolic identities, prime fields for sampled genericity checks.

pub mod algebra;
pub mod chern;
pub mod classify;
pub mod error;
pub mod fixtures;
pub mod grass;
pub mod schubert;
pub mod skew;
pub mod verify;
pub mod web;

pub use error::{Error, Result};
