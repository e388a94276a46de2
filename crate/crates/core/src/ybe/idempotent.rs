use serde::Serialize;

use crate::linalg::{Matrix, Scalar};

use super::{SystemInstance, YbeError};

/// Idempotent orthogonal complements `A² = A`, `B² = B`, `AB = BA = 0`,
/// with a simultaneous diagonalizer `S`:
/// `SAS⁻¹ = diag(I_r, 0)` and `SBS⁻¹ = diag(0_r, I_s, 0)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(bound = "")]
pub struct IdempotentComplementPair<T: Scalar> {
    pub base: SystemInstance<T>,
    pub s: Matrix<T>,
    pub s_inv: Matrix<T>,
    pub rank_a: usize,
    pub rank_b: usize,
    pub ja: Matrix<T>,
    pub jb: Matrix<T>,
}

impl<T: Scalar> IdempotentComplementPair<T> {
    /// The system `(J_A, J_B)`.
    pub fn canonical_system(&self) -> SystemInstance<T> {
        SystemInstance::new(self.ja.clone(), self.jb.clone()).expect("square canonical forms")
    }

    /// `Y = SXS⁻¹`
    pub fn to_canonical(&self, x: &Matrix<T>) -> Matrix<T> {
        &(&self.s * x) * &self.s_inv
    }

    /// `X = S⁻¹YS`
    pub fn from_canonical(&self, y: &Matrix<T>) -> Matrix<T> {
        &(&self.s_inv * y) * &self.s
    }

    /// `n − r − s`, the common kernel dimension.
    pub fn nullity_both(&self) -> usize {
        self.base.n() - self.rank_a - self.rank_b
    }
}

/// Diagonal 0/1 matrix with ones at `range`.
pub(crate) fn unit_block<T: Scalar>(n: usize, range: std::ops::Range<usize>) -> Matrix<T> {
    Matrix::from_fn(n, n, |i, j| {
        if i == j && range.contains(&i) {
            T::one()
        } else {
            T::zero()
        }
    })
}

/// `S⁻¹` has as columns a basis of col(A), then col(B), then
/// Ker(A) ∩ Ker(B), each taken from echelon forms.
pub fn simultaneous_diagonalize<T: Scalar>(
    sys: &SystemInstance<T>,
) -> Result<IdempotentComplementPair<T>, YbeError> {
    let (a, b) = (sys.a(), sys.b());
    let fail = |what: &str| Err(YbeError::Precondition(format!("{what} does not hold")));
    if &(a * a) != a {
        return fail("A² = A");
    }
    if &(b * b) != b {
        return fail("B² = B");
    }
    if !(a * b).is_zero() || !(b * a).is_zero() {
        return fail("AB = BA = 0");
    }
    let n = sys.n();
    let col_a = a.column_space();
    let col_b = b.column_space();
    let common = Matrix::vstack(a, b)?.null_space();
    let (r, s) = (col_a.len(), col_b.len());
    let cols: Vec<Matrix<T>> = col_a.into_iter().chain(col_b).chain(common).collect();
    let p = Matrix::hstack(&cols)?;
    let s_mat = p.inverse()?;
    let ja = &(&s_mat * a) * &p;
    let jb = &(&s_mat * b) * &p;
    debug_assert_eq!(ja, unit_block(n, 0..r));
    debug_assert_eq!(jb, unit_block(n, r..r + s));
    Ok(IdempotentComplementPair {
        base: sys.clone(),
        s: s_mat,
        s_inv: p,
        rank_a: r,
        rank_b: s,
        ja,
        jb,
    })
}
