//! Families for 2×2 coefficients that are diagonal or single Jordan blocks.
//!
//! Side conditions are the ones that make the residual vanish identically,
//! checked exactly. Some are stronger than the bare shape suggests: for a
//! nonzero `α`, `P51-i` also needs `a = b` and `cd² = b³`, and `P51-iv`
//! needs `a = b` and `a²b = c²d`.

use crate::linalg::{LinalgError, Matrix, Scalar, UniPoly};
use crate::ybe::SystemInstance;

use super::{holds, required, verified, FamilyCase, FamilyError, FamilyInstance, FamilyParams};

/// `[[a, 1], [0, a]]`
pub fn jordan_block<T: Scalar>(a: T) -> Matrix<T> {
    Matrix::from_rows(vec![vec![a.clone(), T::one()], vec![T::zero(), a]]).expect("2×2")
}

fn m2<T: Scalar>(x1: T, x2: T, x3: T, x4: T) -> Matrix<T> {
    Matrix::from_rows(vec![vec![x1, x2], vec![x3, x4]]).expect("2×2")
}

fn diag2<T: Scalar>(p: T, q: T) -> Matrix<T> {
    Matrix::diag(&[p, q])
}

fn scalar<T: Scalar>(
    case: FamilyCase,
    v: &Option<T>,
    name: &'static str,
) -> Result<T, FamilyError> {
    required(case, v, name).cloned()
}

fn nonzero<T: Scalar>(
    case: FamilyCase,
    v: &Option<T>,
    name: &'static str,
) -> Result<T, FamilyError> {
    let x = scalar(case, v, name)?;
    holds(case, !x.is_zero(), &format!("{name} ≠ 0"))?;
    Ok(x)
}

/// Coefficients a case fixes to zero may be omitted.
fn zero_entry<T: Scalar>(
    case: FamilyCase,
    v: &Option<T>,
    name: &'static str,
) -> Result<T, FamilyError> {
    if let Some(x) = v {
        holds(case, x.is_zero(), &format!("{name} = 0"))?;
    }
    Ok(T::zero())
}

fn div<T: Scalar>(p: T, q: &T) -> T {
    p.checked_div(q).expect("divisor checked nonzero")
}

fn cube<T: Scalar>(x: &T) -> T {
    x.pow(3)
}

fn variant(
    case: FamilyCase,
    p: &FamilyParams<impl Scalar>,
    count: usize,
) -> Result<usize, FamilyError> {
    let v = p.variant.unwrap_or(0);
    if v < count {
        Ok(v)
    } else {
        Err(FamilyError::Dimension {
            case,
            reason: format!("variant must be below {count}, got {v}"),
        })
    }
}

fn system<T: Scalar>(a: Matrix<T>, b: Matrix<T>) -> SystemInstance<T> {
    SystemInstance::new(a, b).expect("2×2 coefficients")
}

/// Cases `P51-*` through `P55-*`.
pub fn construct_2x2<T: Scalar>(
    case: FamilyCase,
    p: &FamilyParams<T>,
) -> Result<FamilyInstance<T>, FamilyError> {
    use FamilyCase::*;
    let zero = T::zero;
    let (sys, x) = match case {
        P51I | P51II | P51III | P51IV => {
            let a = nonzero(case, &p.a, "a")?;
            let b = nonzero(case, &p.b, "b")?;
            let c = nonzero(case, &p.c, "c")?;
            let d = nonzero(case, &p.d, "d")?;
            let alpha = scalar(case, &p.alpha, "alpha")?;
            let x11 = div(a.clone() * a.clone(), &c);
            let x22 = div(b.clone() * b.clone(), &d);
            let x = match case {
                P51I => {
                    holds(case, cube(&b) == cube(&d), "b³ = d³")?;
                    if !alpha.is_zero() {
                        holds(case, a == b, "a = b")?;
                        holds(
                            case,
                            c.clone() * d.clone() * d.clone() == cube(&b),
                            "cd² = b³",
                        )?;
                    }
                    match variant(case, p, 2)? {
                        0 => m2(zero(), alpha, zero(), x22),
                        _ => m2(zero(), zero(), alpha, x22),
                    }
                }
                P51II | P51III => {
                    holds(case, cube(&a) == cube(&c), "a³ = c³")?;
                    holds(case, cube(&b) == cube(&d), "b³ = d³")?;
                    if !alpha.is_zero() {
                        holds(
                            case,
                            a.clone() * b.clone() == a.clone() * a.clone() + b.clone() * b.clone(),
                            "ab = a² + b²",
                        )?;
                        holds(
                            case,
                            c.clone() * d.clone() == c.clone() * c.clone() + d.clone() * d.clone(),
                            "cd = c² + d²",
                        )?;
                    }
                    if case == P51II {
                        m2(x11, zero(), alpha, x22)
                    } else {
                        m2(x11, alpha, zero(), x22)
                    }
                }
                _ => {
                    holds(case, cube(&a) == cube(&c), "a³ = c³")?;
                    if !alpha.is_zero() {
                        holds(case, a == b, "a = b")?;
                        holds(
                            case,
                            a.clone() * a.clone() * b.clone() == c.clone() * c.clone() * d.clone(),
                            "a²b = c²d",
                        )?;
                    }
                    match variant(case, p, 2)? {
                        0 => m2(x11, alpha, zero(), zero()),
                        _ => m2(x11, zero(), alpha, zero()),
                    }
                }
            };
            (system(diag2(a, b), diag2(c, d)), x)
        }
        P51V => return Err(FamilyError::NoClosedForm { case }),
        P52I => {
            let a = zero_entry(case, &p.a, "a")?;
            let b = nonzero(case, &p.b, "b")?;
            let c = nonzero(case, &p.c, "c")?;
            let d = nonzero(case, &p.d, "d")?;
            holds(case, cube(&b) == cube(&d), "b³ = d³")?;
            let x = diag2(zero(), div(d.clone() * d.clone(), &b));
            (system(diag2(a, b), diag2(c, d)), x)
        }
        P52II => {
            let a = nonzero(case, &p.a, "a")?;
            let b = zero_entry(case, &p.b, "b")?;
            let c = nonzero(case, &p.c, "c")?;
            let d = nonzero(case, &p.d, "d")?;
            holds(case, cube(&a) == cube(&c), "a³ = c³")?;
            let x = diag2(div(c.clone() * c.clone(), &a), zero());
            (system(diag2(a, b), diag2(c, d)), x)
        }
        P53 => {
            let a = zero_entry(case, &p.a, "a")?;
            let c = zero_entry(case, &p.c, "c")?;
            let b = nonzero(case, &p.b, "b")?;
            let d = nonzero(case, &p.d, "d")?;
            let alpha = scalar(case, &p.alpha, "alpha")?;
            let x = match variant(case, p, 3)? {
                0 => m2(alpha, zero(), scalar(case, &p.beta, "beta")?, zero()),
                1 => m2(alpha, scalar(case, &p.beta, "beta")?, zero(), zero()),
                _ => {
                    holds(case, cube(&b) == cube(&d), "b³ = d³")?;
                    m2(alpha, zero(), zero(), div(b.clone() * b.clone(), &d))
                }
            };
            (system(diag2(a, b), diag2(c, d)), x)
        }
        P54AI | P54B | P55III => return Err(FamilyError::TrivialOnly { case }),
        P54AII => {
            let a = zero_entry(case, &p.a, "a")?;
            let b = zero_entry(case, &p.b, "b")?;
            let c = nonzero(case, &p.c, "c")?;
            let alpha = scalar(case, &p.alpha, "alpha")?;
            let beta = scalar(case, &p.beta, "beta")?;
            (
                system(jordan_block(a), diag2(b, c)),
                m2(alpha, beta, zero(), zero()),
            )
        }
        P54AIII => {
            let a = zero_entry(case, &p.a, "a")?;
            let b = nonzero(case, &p.b, "b")?;
            let c = zero_entry(case, &p.c, "c")?;
            let alpha = scalar(case, &p.alpha, "alpha")?;
            let beta = scalar(case, &p.beta, "beta")?;
            (
                system(jordan_block(a), diag2(b, c)),
                m2(zero(), alpha, zero(), beta),
            )
        }
        P55I => {
            let a = nonzero(case, &p.a, "a")?;
            let b = nonzero(case, &p.b, "b")?;
            holds(case, a == b, "a = b")?;
            let x = match variant(case, p, 3)? {
                0 => jordan_block(a.clone()),
                v => {
                    let s = scalar(case, &p.sqrt_alpha, "sqrt_alpha")?;
                    let s2 = s.clone() * s.clone();
                    if let Some(alpha) = &p.alpha {
                        holds(case, *alpha == s2, "alpha = s²")?;
                    }
                    let sign = if v == 1 { s } else { -s };
                    let shift = a.clone() * sign;
                    m2(
                        a.clone() + shift.clone(),
                        s2,
                        -(a.clone() * a.clone()),
                        a.clone() - shift,
                    )
                }
            };
            (system(jordan_block(a), jordan_block(b)), x)
        }
        P55II => {
            let a = nonzero(case, &p.a, "a")?;
            let b = nonzero(case, &p.b, "b")?;
            holds(case, a != b, "a ≠ b")?;
            holds(
                case,
                a.clone() * a.clone() == b.clone() * b.clone(),
                "a² = b²",
            )?;
            let alpha = scalar(case, &p.alpha, "alpha")?;
            let sum = a.clone() + b.clone();
            let ab = a.clone() * b.clone();
            let x2 = div(
                b.clone() * b.clone() + alpha.clone() * alpha.clone() - alpha.clone() * sum.clone(),
                &ab,
            );
            let x = m2(alpha.clone(), x2, -ab, sum - alpha);
            (system(jordan_block(a), jordan_block(b)), x)
        }
        _ => {
            return Err(FamilyError::WrongConstructor {
                case,
                constructor: "construct_2x2",
            })
        }
    };
    verified(case, sys, x)
}

/// For nonsingular `X` with `A = diag(a, b)`, `B = diag(c, d)`: the
/// characteristic polynomial of `X²` is `(λ − ac)(λ − bd)`.
pub fn p51_spectrum_holds<T: Scalar>(
    a: &T,
    b: &T,
    c: &T,
    d: &T,
    x: &Matrix<T>,
) -> Result<bool, LinalgError> {
    let x2 = x.mat_mul(x)?;
    let expected = UniPoly::from_roots(&[a.clone() * c.clone(), b.clone() * d.clone()]);
    Ok(x2.char_poly()? == expected)
}
