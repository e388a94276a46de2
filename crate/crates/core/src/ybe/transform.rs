use serde::Serialize;

use crate::linalg::{Matrix, Scalar};

use super::{is_solution, residuals, SystemInstance, YbeError};

/// `P⁻¹XP` for an invertible `P` commuting with A and B; the result is
/// residual-verified.
pub fn conjugate_solution<T: Scalar>(
    sys: &SystemInstance<T>,
    x: &Matrix<T>,
    p: &Matrix<T>,
) -> Result<Matrix<T>, YbeError> {
    sys.check_x(p)?;
    let p_inv = p
        .inverse()
        .map_err(|_| YbeError::Precondition("P is singular".into()))?;
    for (name, m) in [("A", sys.a()), ("B", sys.b())] {
        if p * m != m * p {
            return Err(YbeError::Precondition(format!(
                "P does not commute with {name}"
            )));
        }
    }
    sys.require_solution(x)?;
    let y = &(&p_inv * x) * p;
    sys.require_solution(&y)?;
    Ok(y)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(bound = "")]
pub struct ExtensionReport<T: Scalar> {
    /// `X + αC`
    pub candidate: Matrix<T>,
    pub residual_1: Matrix<T>,
    pub residual_2: Matrix<T>,
    /// `XAC + CAX + αCAC`
    pub cross_a: Matrix<T>,
    /// `XBC + CBX + αCBC`
    pub cross_b: Matrix<T>,
    pub is_solution: bool,
}

pub fn extend_solution<T: Scalar>(
    sys: &SystemInstance<T>,
    x: &Matrix<T>,
    c: &Matrix<T>,
    alpha: &T,
) -> Result<ExtensionReport<T>, YbeError> {
    sys.check_x(c)?;
    for (name, m) in [("A", sys.a()), ("B", sys.b())] {
        if !(m * c).is_zero() || !(c * m).is_zero() {
            return Err(YbeError::Precondition(format!(
                "{name}C = C{name} = 0 does not hold"
            )));
        }
    }
    sys.require_solution(x)?;
    let ac = c.scale(alpha);
    let candidate = x + &ac;
    let cross = |m: &Matrix<T>| &(&(&(x * m) * c) + &(&(c * m) * x)) + &(&(&ac * m) * c);
    let (residual_1, residual_2) = residuals(sys, &candidate)?;
    Ok(ExtensionReport {
        is_solution: residual_1.is_zero() && residual_2.is_zero(),
        cross_a: cross(sys.a()),
        cross_b: cross(sys.b()),
        candidate,
        residual_1,
        residual_2,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(bound = "")]
pub struct SumReport<T: Scalar> {
    /// `X₁AX₂ + X₂AX₁`
    pub cross_a: Matrix<T>,
    /// `X₁BX₂ + X₂BX₁`
    pub cross_b: Matrix<T>,
    pub conditions_hold: bool,
    pub sum_is_solution: bool,
    /// Both sides of the equivalence agree.
    pub agrees: bool,
}

pub fn sum_compatibility<T: Scalar>(
    sys: &SystemInstance<T>,
    x1: &Matrix<T>,
    x2: &Matrix<T>,
) -> Result<SumReport<T>, YbeError> {
    sys.require_solution(x1)?;
    sys.require_solution(x2)?;
    let cross = |m: &Matrix<T>| &(&(x1 * m) * x2) + &(&(x2 * m) * x1);
    let cross_a = cross(sys.a());
    let cross_b = cross(sys.b());
    let conditions_hold = cross_a.is_zero() && cross_b.is_zero();
    let sum_is_solution = is_solution(sys, &(x1 + x2))?;
    Ok(SumReport {
        cross_a,
        cross_b,
        conditions_hold,
        sum_is_solution,
        agrees: conditions_hold == sum_is_solution,
    })
}
