//! Exact verification of line-bundle cocycles, connections and bundle gerbes on tori.
//!
//! Functions are trigonometric polynomials with coefficients in ℚ[π, π⁻¹], so most identities are
//! checked symbolically; the finite-dimensional operator checks use floating point with a tolerance.

pub mod cli;
pub mod cohomology;
pub mod forms;
pub mod gerbes;
pub mod hilbert;
pub mod magnetic;
pub mod polytrig;
pub mod report;
