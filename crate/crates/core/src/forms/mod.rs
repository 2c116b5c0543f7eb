//! Exterior calculus with exact integration over simplices, paths and cells.

pub mod cell;
pub mod form;
pub mod path;
pub mod selftest;
pub mod simplex;

use thiserror::Error;

use crate::polytrig::PolyTrigError;

pub use cell::{integrate_cell, BilinearCell};
pub use form::Form;
pub use path::{integrate_path, integrate_path_at, integrate_path_symbolic, PLPath};
pub use selftest::stokes_selftest;
pub use simplex::{integrate_simplex, AffineSimplex, Chain};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FormError {
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("wedge product of degree {degree} exceeds dimension {dim}")]
    DegreeOverflow { degree: usize, dim: usize },
    #[error("interior product of a 0-form")]
    InteriorOfFunction,
    #[error("a point has no boundary")]
    BoundaryOfPoint,
    #[error("path needs at least one vertex and matching knots")]
    EmptyPath,
    #[error("knots must increase strictly from 0 to 1")]
    BadKnots,
    #[error("path ends at {end} but the next one starts at {start}")]
    EndpointMismatch { end: String, start: String },
    #[error(transparent)]
    PolyTrig(#[from] PolyTrigError),
}
