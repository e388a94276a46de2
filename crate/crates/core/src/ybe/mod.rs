//! The coupled system `AXA = XBX`, `BXB = XAX`: verification, necessary
//! conditions, reductions and polynomial encodings.
//!
//! Written with the residual orientation `R1 = AXA − XBX`,
//! `R2 = BXB − XAX`. The same pair is sometimes stated as `XAX = BXB`,
//! `XBX = AXA`; only the names of the two equations differ.

mod conditions;
mod embed;
mod equations;
mod idempotent;
mod transform;

use serde::Serialize;

use crate::linalg::{LinalgError, Matrix, Scalar};
use crate::polyalg::PolyError;

pub use conditions::{
    charpoly_annihilation, commuting_solution_check, det_cube_condition, eigen_pair_sum_zero,
    eigenspace_annihilation_check, kernel_lemma_checks, pencil_conditions, poly_intertwine_check,
    power_identity_check, spectrum_square_check, sylvester_pair_check, CommutingReport,
    DetCubeReport, EigenPairReport, EigenspaceReport, KernelReport, PencilReport,
    SpectrumSquareReport, SylvesterPairReport,
};
pub use embed::{block_embed, iprime_check, EmbeddedSystem, IPrimeReport};
pub use equations::{
    entry_variable_names, equations_from_polys, equations_from_system, PolyMatrix,
};
pub(crate) use idempotent::unit_block;
pub use idempotent::{simultaneous_diagonalize, IdempotentComplementPair};
pub use transform::{
    conjugate_solution, extend_solution, sum_compatibility, ExtensionReport, SumReport,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum YbeError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("A and B must be square of equal size, got {a:?} and {b:?}")]
    Shape {
        a: (usize, usize),
        b: (usize, usize),
    },
    #[error("X is not a solution of the system")]
    NotSolution,
    #[error("precondition not met: {0}")]
    Precondition(String),
    #[error("expected {expected} variables for X, got {got}")]
    VariableCount { expected: usize, got: usize },
}

/// A coefficient pair `(A, B)` of equal-size square matrices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(bound = "")]
pub struct SystemInstance<T: Scalar> {
    #[serde(rename = "A")]
    a: Matrix<T>,
    #[serde(rename = "B")]
    b: Matrix<T>,
}

impl<T: Scalar> SystemInstance<T> {
    pub fn new(a: Matrix<T>, b: Matrix<T>) -> Result<Self, YbeError> {
        if !a.is_square() || a.shape() != b.shape() {
            return Err(YbeError::Shape {
                a: a.shape(),
                b: b.shape(),
            });
        }
        Ok(SystemInstance { a, b })
    }

    pub fn a(&self) -> &Matrix<T> {
        &self.a
    }

    pub fn b(&self) -> &Matrix<T> {
        &self.b
    }

    pub fn n(&self) -> usize {
        self.a.rows()
    }

    /// `C = A + B`, the coefficient of the associated single equation.
    pub fn c(&self) -> Matrix<T> {
        &self.a + &self.b
    }

    /// Conjugate both coefficients: `(SAS⁻¹, SBS⁻¹)`.
    pub fn conjugated(&self, s: &Matrix<T>) -> Result<Self, YbeError> {
        let s_inv = s.inverse()?;
        Self::new(&(s * &self.a) * &s_inv, &(s * &self.b) * &s_inv)
    }

    pub(crate) fn check_x(&self, x: &Matrix<T>) -> Result<(), YbeError> {
        if x.shape() != self.a.shape() {
            return Err(LinalgError::DimensionMismatch {
                op: "system residual",
                left: self.a.shape(),
                right: x.shape(),
            }
            .into());
        }
        Ok(())
    }

    pub(crate) fn require_solution(&self, x: &Matrix<T>) -> Result<(), YbeError> {
        if is_solution(self, x)? {
            Ok(())
        } else {
            Err(YbeError::NotSolution)
        }
    }
}

/// `(AXA − XBX, BXB − XAX)`
pub fn residuals<T: Scalar>(
    sys: &SystemInstance<T>,
    x: &Matrix<T>,
) -> Result<(Matrix<T>, Matrix<T>), YbeError> {
    sys.check_x(x)?;
    let (a, b) = (&sys.a, &sys.b);
    let r1 = &(&(a * x) * a) - &(&(x * b) * x);
    let r2 = &(&(b * x) * b) - &(&(x * a) * x);
    Ok((r1, r2))
}

pub fn is_solution<T: Scalar>(sys: &SystemInstance<T>, x: &Matrix<T>) -> Result<bool, YbeError> {
    let (r1, r2) = residuals(sys, x)?;
    Ok(r1.is_zero() && r2.is_zero())
}

/// True when `X` solves the single equation `CXC = XCX`.
pub fn solves_single_ybe<T: Scalar>(c: &Matrix<T>, x: &Matrix<T>) -> bool {
    (&(c * x) * c) == (&(x * c) * x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Rational;

    fn m(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_i64(rows)
    }

    #[test]
    fn residual_examples() {
        let sys = SystemInstance::new(m(&[&[1, 1], &[0, 1]]), m(&[&[-1, 1], &[0, -1]])).unwrap();
        let x = m(&[&[1, -2], &[1, -1]]);
        let (r1, r2) = residuals(&sys, &x).unwrap();
        assert!(r1.is_zero() && r2.is_zero());
        assert!(is_solution(&sys, &Matrix::zeros(2, 2)).unwrap());

        let sys = SystemInstance::new(m(&[&[1, 0], &[0, 0]]), m(&[&[0, 0], &[0, 1]])).unwrap();
        let (r1, r2) = residuals(&sys, &Matrix::identity(2)).unwrap();
        assert_eq!(r1, sys.a() - sys.b());
        assert_eq!(r2, sys.b() - sys.a());
        assert!(!is_solution(&sys, &Matrix::identity(2)).unwrap());
        assert!(residuals(&sys, &Matrix::identity(3)).is_err());
    }

    #[test]
    fn shape_validation() {
        assert!(SystemInstance::new(Matrix::<Rational>::identity(2), Matrix::identity(3)).is_err());
        assert!(SystemInstance::new(Matrix::<Rational>::zeros(2, 3), Matrix::zeros(2, 3)).is_err());
    }
}
