//! Line bundles on tori: transition cocycles, connections, magnetic
//! translations, holonomy and the path-group extension.

mod holonomy;
mod line;
mod sym;

use thiserror::Error;

use crate::forms::FormError;

pub use holonomy::{holonomy, winding_holonomy, Holonomy};
pub use line::{
    check_connection, check_line_cocycle, check_section_membership, chern_numbers, lattice_box,
    lattice_pairs, translation_section, two_cocycle, verify_projective_relation, CocycleFamily,
    LineData,
};
pub(crate) use line::{substitute_lattice, unit};
pub use sym::{
    check_associativity, check_equivalent_pair, check_unit, normal_form, path_transport,
    random_periodic_gauge, random_sym_element, sym_equivalence_check, sym_product, SymElement,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MagneticError {
    #[error("no connection 1-form given")]
    MissingConnection,
    #[error("{0}")]
    Dimension(String),
    #[error("path from {0} to {1} is not closed")]
    OpenPath(String, String),
    #[error("displacement {0} is not a lattice vector")]
    NotALoop(String),
    #[error("paths end at different points: {0} and {1}")]
    EndpointMismatch(String, String),
    #[error("path must start at the origin, starts at {0}")]
    NotBased(String),
    #[error("gauge exponent {0} does not descend to the torus")]
    NotPeriodic(String),
    #[error("non-integer period {value} on face {face}")]
    NonIntegerFlux { face: String, value: String },
    #[error(transparent)]
    Form(#[from] FormError),
}
