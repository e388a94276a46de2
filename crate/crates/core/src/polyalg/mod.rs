//! Multivariate polynomials over ℚ in lex order, and Gröbner bases.

mod groebner;
mod poly;

pub use groebner::{buchberger, eliminate, ideal_equal, normal_form, s_polynomial, GroebnerBasis};
pub use poly::{lex_compare, parse_poly, Monomial, MultiPoly, Term, VarTable};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("parse error at byte {position} of {input:?}: {message}")]
    Parse {
        input: String,
        position: usize,
        message: String,
    },
    #[error("invalid variable name {0:?}")]
    BadVariableName(String),
    #[error("variable {0:?} listed twice")]
    DuplicateVariable(String),
    #[error("unknown variable {0:?}")]
    UnknownVariable(String),
    #[error("variable tables differ: {left} vs {right} variables")]
    VarTableMismatch { left: usize, right: usize },
    #[error("s-polynomial of the zero polynomial")]
    ZeroInput,
    #[error("cannot keep {keep} of {nvars} variables")]
    KeepOutOfRange { keep: usize, nvars: usize },
}
