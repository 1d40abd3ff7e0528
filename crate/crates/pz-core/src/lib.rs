//! Symbolic-numeric analysis of the parametric planar family
//! `ẋ = y`, `ẏ = (αx^{m+k-1} + βx^{m-k-1})y − γ(x)·x^{2m-2k-1}` in its linear
//! regime: reduction to the nine linear families, finite and infinity
//! equilibrium classification, bifurcation-region membership, differential
//! Galois group of the reduced second-order equation, and the Darboux
//! integrability elements of the associated Riccati system - each identity
//! machine-checked against an independent numeric oracle.

pub mod bifurcation;
pub mod darboux;
pub mod equilibria;
pub mod expr;
pub mod galois;
pub mod infinity;
pub mod model;
pub mod numerics;
pub mod oracle;
pub mod scalar;

pub use model::{FamilyTag, LinearFamily, PZField, Params};
pub use scalar::{Scalar, Sign};
