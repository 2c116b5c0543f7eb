//! Exact polynomial-times-trigonometric functions on ℝ^d.

pub mod affine;
pub mod expr;
pub mod parse;
pub mod scalar;
pub mod u1;

pub use affine::AffineMap;
pub use expr::{Monomial, PolyTrig, PolyTrigError, Wave};
pub use parse::{parse_expr, parse_with, ParseError, VarScheme};
pub use scalar::{q, qi, QVec, Residue, Scalar, DEFAULT_TOLERANCE, Q};
pub use u1::{constant_mod_2pi, winding_number, U1Function};
