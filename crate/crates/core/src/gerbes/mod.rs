//! Gerbes on tori described by ℤ^d 2-cocycles `f_{i,j} = e^{iφ_{i,j}}` with
//! connective structure `(A_i, B)`, and the resulting higher translation
//! operators.

mod data;
mod higher;

use thiserror::Error;

use crate::forms::FormError;

pub use data::{
    check_gerbe_cocycle, check_gerbe_connection, flux_class, lattice_triples, FluxClass, GerbeData,
};
pub use higher::{
    b_gauge_check, check_higher_section, check_pi_intertwines, higher_section,
    lie_decomposition_check, omega_3cocycle, omega_cochain, omega_cocycle_check, pentagon_check,
    pi_cochain, pi_isomorphism, transgress, transgression_curvature_check,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GerbeError {
    #[error("{0}")]
    Dimension(String),
    #[error("curvature does not descend: {0}")]
    NotInvariant(String),
    #[error("non-integer period {value} on face {face}")]
    NonIntegerFlux { face: String, value: String },
    #[error("gauge 1-form is not periodic: {0}")]
    NotPeriodic(String),
    #[error(transparent)]
    Form(#[from] FormError),
}
