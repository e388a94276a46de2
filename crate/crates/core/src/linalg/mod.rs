//! Exact scalar and dense-matrix arithmetic over the rationals and small
//! prime fields.

mod matrix;
mod scalar;
mod unipoly;

#[cfg(test)]
pub(crate) use matrix::bareiss_det;
pub use matrix::{det_pencil, LinalgError, Matrix};
pub use scalar::{
    lift, parse_rational, reduce_rational, Fp, Rational, Scalar, ScalarParseError, F11, F13, F3,
    F5, F7, SUPPORTED_MODULI,
};
pub use unipoly::{rational_roots, UniPoly};
