use serde::Serialize;

use crate::linalg::{Matrix, Scalar, UniPoly};

use super::{SystemInstance, YbeError};

/// `A′ = diag(B, A)`, `B′ = diag(A, B)` and the swap `I′ = [[0, I], [I, 0]]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(bound = "")]
pub struct EmbeddedSystem<T: Scalar> {
    pub a_prime: Matrix<T>,
    pub b_prime: Matrix<T>,
    pub i_prime: Matrix<T>,
}

impl<T: Scalar> EmbeddedSystem<T> {
    /// `A′YA′ − YB′Y` for `Y = diag(X, X)`.
    pub fn residual(&self, x: &Matrix<T>) -> Matrix<T> {
        let y = Matrix::block_diag(x, x);
        &(&(&self.a_prime * &y) * &self.a_prime) - &(&(&y * &self.b_prime) * &y)
    }
}

pub fn block_embed<T: Scalar>(sys: &SystemInstance<T>) -> EmbeddedSystem<T> {
    let n = sys.n();
    let (i, z) = (Matrix::identity(n), Matrix::zeros(n, n));
    EmbeddedSystem {
        a_prime: Matrix::block_diag(sys.b(), sys.a()),
        b_prime: Matrix::block_diag(sys.a(), sys.b()),
        i_prime: Matrix::from_blocks(&z, &i, &i, &z).expect("square blocks"),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(bound = "")]
pub struct IPrimeReport<T: Scalar> {
    /// `A′I′Z − Z·YI′` with `Y = diag(X, X)`, `Z = YI′A′`.
    pub commutator: Matrix<T>,
    pub identity_holds: bool,
    pub z_is_zero: bool,
    pub char_poly_a_iprime: UniPoly<T>,
    pub char_poly_y_iprime: UniPoly<T>,
    pub spectrum_gcd: UniPoly<T>,
    pub spectra_intersect: bool,
    /// Present when the identity holds with `Z ≠ 0`; a nonzero solution of
    /// the Sylvester equation forces the spectra to meet. With `Z = 0` the
    /// identity carries no spectral information (`A = B = 0`, `X = I` has
    /// disjoint spectra).
    pub necessary_condition: Option<bool>,
}

pub fn iprime_check<T: Scalar>(
    sys: &SystemInstance<T>,
    x: &Matrix<T>,
) -> Result<IPrimeReport<T>, YbeError> {
    sys.check_x(x)?;
    let e = block_embed(sys);
    let y = Matrix::block_diag(x, x);
    let ai = &e.a_prime * &e.i_prime;
    let yi = &y * &e.i_prime;
    let z = &yi * &e.a_prime;
    let commutator = &(&ai * &z) - &(&z * &yi);
    let p = ai.char_poly()?;
    let q = yi.char_poly()?;
    let g = p.gcd(&q);
    let spectra_intersect = g.degree().is_some_and(|d| d > 0);
    let identity_holds = commutator.is_zero();
    let z_is_zero = z.is_zero();
    Ok(IPrimeReport {
        identity_holds,
        z_is_zero,
        necessary_condition: (identity_holds && !z_is_zero).then_some(spectra_intersect),
        commutator,
        char_poly_a_iprime: p,
        char_poly_y_iprime: q,
        spectrum_gcd: g,
        spectra_intersect,
    })
}
