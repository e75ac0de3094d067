//! Computational laboratory for finite-dimensional nonassociative order-unit
//! algebras: *-rings built by Cayley–Dickson doubling, Hermitian matrix
//! algebras H_n(R), spin factors, spectral resolutions, the quantum-event
//! layer (projections U_e, conditional probabilities, compatibility levels),
//! and exact certificates for the concrete counterexample computations.
//!
//! Arithmetic is exact (ℚ or ℚ(√5)) wherever an identity is being decided;
//! floats only enter for spectral data with irrational eigenvalues, always
//! behind explicit conversions and declared tolerances.

pub mod algebra;
pub mod certificates;
pub mod compat;
pub mod events;
pub mod hermitian;
pub mod identities;
pub mod linalg;
pub mod poly;
pub mod sample;
pub mod scalar;
pub mod spec_io;
pub mod spectral;
pub mod starring;

pub use algebra::{CommAlgebra, Element, Provenance, State};
pub use scalar::{Rat, Scalar, Sqrt5};
pub use starring::{RingElement, StarRing};
