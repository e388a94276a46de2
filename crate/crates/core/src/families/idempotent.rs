//! Families for canonical idempotent orthogonal complements.
//!
//! `X = [[Y1, C], [D, Y2]]` with `Y1` of size `r` and `Y2` of size
//! `m = n − r`. The `T41` conventions that pass residual verification are
//! `C = ZU⁻¹, D = UW, Y2 = UJU⁻¹` (ii), `C = VZ, D = WV⁻¹, Y1 = VJV⁻¹`
//! (iii), and for (iv) `C = U1Z1, D = W1U1⁻¹` with `Z2 = CU2`,
//! `W2 = U2⁻¹D`.

use crate::linalg::{Matrix, Scalar};
use crate::ybe::{unit_block, SystemInstance};

use super::{
    check_shape, holds, inverse_of, required, verified, FamilyCase, FamilyError, FamilyInstance,
    FamilyParams,
};

/// `A = diag(I_r, 0)`, `B = diag(0_r, I_s, 0)`.
pub fn canonical_idempotent_system<T: Scalar>(n: usize, r: usize, s: usize) -> SystemInstance<T> {
    assert!(r + s <= n, "r + s must not exceed n");
    SystemInstance::new(unit_block(n, 0..r), unit_block(n, r..r + s))
        .expect("square blocks of equal size")
}

/// `(r, s)` when the pair is in canonical idempotent form with `r, s ≥ 1`.
pub fn idempotent_shape<T: Scalar>(sys: &SystemInstance<T>) -> Option<(usize, usize)> {
    let n = sys.n();
    let a = sys.a();
    let r = (0..n).take_while(|&i| a.get(i, i).is_one()).count();
    let b = sys.b();
    let s = (r..n).take_while(|&i| b.get(i, i).is_one()).count();
    let ok = r >= 1 && s >= 1 && *a == unit_block(n, 0..r) && *b == unit_block(n, r..r + s);
    ok.then_some((r, s))
}

/// For `Y² = 0` with rank one, an invertible `U` with `Y = U·J·U⁻¹`.
pub fn nilpotent_shift_basis<T: Scalar>(y: &Matrix<T>) -> Option<Matrix<T>> {
    let k = y.rows();
    if k < 2 || !y.is_square() || y.rank() != 1 || !(y * y).is_zero() {
        return None;
    }
    let j = (0..k).find(|&j| !y.column(j).is_zero())?;
    let w = Matrix::unit(k, 1, j, 0);
    let u0 = y * &w;
    let mut cols = vec![u0, w];
    // remaining columns from Ker(Y), which contains u0
    for v in y.null_space() {
        if cols.len() == k {
            break;
        }
        let mut trial = cols.clone();
        trial.push(v);
        let t = Matrix::hstack(&trial).ok()?;
        if t.rank() == trial.len() {
            cols = trial;
        }
    }
    let u = Matrix::hstack(&cols).ok()?;
    u.is_invertible().then_some(u)
}

fn dims(case: FamilyCase, p: &FamilyParams<impl Scalar>) -> Result<(usize, usize), FamilyError> {
    let n = *required(case, &p.n, "n")?;
    let r = *required(case, &p.r, "r")?;
    if r == 0 || r >= n {
        return Err(FamilyError::Dimension {
            case,
            reason: format!("need 0 < r < n, got r = {r}, n = {n}"),
        });
    }
    Ok((n, r))
}

fn need_shift(case: FamilyCase, size: usize, block: &str) -> Result<(), FamilyError> {
    if size < 2 {
        return Err(FamilyError::Dimension {
            case,
            reason: format!("{block} must be at least 2×2 to carry a nonzero nilpotent block"),
        });
    }
    Ok(())
}

fn assemble<T: Scalar>(
    y1: &Matrix<T>,
    c: &Matrix<T>,
    d: &Matrix<T>,
    y2: &Matrix<T>,
) -> Result<Matrix<T>, FamilyError> {
    Ok(Matrix::from_blocks(y1, c, d, y2)?)
}

/// Cases `T41-i` through `T41-iv`, for `A = diag(I_r, 0)`, `B = diag(0, I_{n−r})`.
pub fn construct_thm41<T: Scalar>(
    case: FamilyCase,
    p: &FamilyParams<T>,
) -> Result<FamilyInstance<T>, FamilyError> {
    let (n, r) = dims(case, p)?;
    let m = n - r;
    let sys = canonical_idempotent_system(n, r, m);
    let x = match case {
        FamilyCase::T41I => {
            let c = required(case, &p.c_block, "C")?;
            let d = required(case, &p.d_block, "D")?;
            check_shape(case, c, "C", (r, m))?;
            check_shape(case, d, "D", (m, r))?;
            holds(case, (c * d).is_zero(), "CD = 0")?;
            holds(case, (d * c).is_zero(), "DC = 0")?;
            assemble(&Matrix::zeros(r, r), c, d, &Matrix::zeros(m, m))?
        }
        FamilyCase::T41II => {
            need_shift(case, m, "Y2")?;
            let u = required(case, &p.u, "U")?;
            let z = required(case, &p.z, "Z")?;
            let w = required(case, &p.w, "W")?;
            check_shape(case, u, "U", (m, m))?;
            check_shape(case, z, "Z", (r, m))?;
            check_shape(case, w, "W", (m, r))?;
            let u_inv = inverse_of(case, u, "U")?;
            let j = Matrix::shift(m);
            holds(case, (z * &j).is_zero(), "ZJ = 0")?;
            holds(case, (&j * w).is_zero(), "JW = 0")?;
            holds(case, (z * w).is_zero(), "ZW = 0")?;
            holds(case, w * z == j, "WZ = J")?;
            let y2 = &(u * &j) * &u_inv;
            assemble(&Matrix::zeros(r, r), &(z * &u_inv), &(u * w), &y2)?
        }
        FamilyCase::T41III => {
            need_shift(case, r, "Y1")?;
            let v = required(case, &p.v, "V")?;
            let z = required(case, &p.z, "Z")?;
            let w = required(case, &p.w, "W")?;
            check_shape(case, v, "V", (r, r))?;
            check_shape(case, z, "Z", (r, m))?;
            check_shape(case, w, "W", (m, r))?;
            let v_inv = inverse_of(case, v, "V")?;
            let j = Matrix::shift(r);
            holds(case, (&j * z).is_zero(), "JZ = 0")?;
            holds(case, (w * &j).is_zero(), "WJ = 0")?;
            holds(case, z * w == j, "ZW = J")?;
            holds(case, (w * z).is_zero(), "WZ = 0")?;
            let y1 = &(v * &j) * &v_inv;
            assemble(&y1, &(v * z), &(w * &v_inv), &Matrix::zeros(m, m))?
        }
        FamilyCase::T41IV => {
            need_shift(case, r, "Y1")?;
            need_shift(case, m, "Y2")?;
            let u1 = required(case, &p.u1, "U1")?;
            let u2 = required(case, &p.u2, "U2")?;
            let z1 = required(case, &p.z1, "Z1")?;
            let w1 = required(case, &p.w1, "W1")?;
            check_shape(case, u1, "U1", (r, r))?;
            check_shape(case, u2, "U2", (m, m))?;
            check_shape(case, z1, "Z1", (r, m))?;
            check_shape(case, w1, "W1", (m, r))?;
            let u1_inv = inverse_of(case, u1, "U1")?;
            let u2_inv = inverse_of(case, u2, "U2")?;
            let (jr, jm) = (Matrix::shift(r), Matrix::shift(m));
            holds(case, (&jr * z1).is_zero(), "JZ1 = 0")?;
            holds(case, (w1 * &jr).is_zero(), "W1J = 0")?;
            holds(case, z1 * w1 == jr, "Z1W1 = J")?;
            let c = u1 * z1;
            let d = w1 * &u1_inv;
            let z2 = &c * u2;
            let w2 = &u2_inv * &d;
            holds(case, (&z2 * &jm).is_zero(), "Z2J = 0")?;
            holds(case, (&jm * &w2).is_zero(), "JW2 = 0")?;
            if &w2 * &z2 != jm {
                let eq = if &z2 * &w2 == jr {
                    "W2Z2 = J (only the ordering Z2W2 = J holds, which does not give a solution)"
                } else {
                    "W2Z2 = J"
                };
                return Err(FamilyError::Constraint {
                    case,
                    equation: eq.to_string(),
                });
            }
            let y1 = &(u1 * &jr) * &u1_inv;
            let y2 = &(u2 * &jm) * &u2_inv;
            assemble(&y1, &c, &d, &y2)?
        }
        _ => {
            return Err(FamilyError::WrongConstructor {
                case,
                constructor: "construct_thm41",
            })
        }
    };
    verified(case, sys, x)
}

/// Cases `T42-i` and `T42-ii`, for `A = diag(I_r, 0)`,
/// `B = diag(0_r, B′)` with `B′ = diag(I_s, 0)` of size `m = n − r`.
pub fn construct_thm42<T: Scalar>(
    case: FamilyCase,
    p: &FamilyParams<T>,
) -> Result<FamilyInstance<T>, FamilyError> {
    let (n, r) = dims(case, p)?;
    let m = n - r;
    let s = *required(case, &p.s, "s")?;
    if s == 0 || s >= m {
        return Err(FamilyError::Dimension {
            case,
            reason: format!("need 1 ≤ s < n − r, got s = {s}, n − r = {m}"),
        });
    }
    let sys = canonical_idempotent_system(n, r, s);
    let bp: Matrix<T> = unit_block(m, 0..s);
    let y2 = required(case, &p.y2, "Y2")?;
    check_shape(case, y2, "Y2", (m, m))?;
    let bpy2 = &bp * y2;
    let y2bp = y2 * &bp;
    holds(case, (&y2bp * y2).is_zero(), "Y2B′Y2 = 0")?;
    let x = match case {
        FamilyCase::T42I => {
            let c = required(case, &p.c_block, "C")?;
            let d = required(case, &p.d_block, "D")?;
            check_shape(case, c, "C", (r, m))?;
            check_shape(case, d, "D", (m, r))?;
            holds(case, (&(c * &bp) * d).is_zero(), "CB′D = Y1")?;
            holds(case, d * c == &bpy2 * &bp, "DC = B′Y2B′")?;
            holds(case, (c * &bpy2).is_zero(), "CB′Y2 = 0")?;
            holds(case, (&y2bp * d).is_zero(), "Y2B′D = 0")?;
            assemble(&Matrix::zeros(r, r), c, d, y2)?
        }
        FamilyCase::T42II => {
            need_shift(case, r, "Y1")?;
            let u = required(case, &p.u, "U")?;
            let z = required(case, &p.z, "Z")?;
            let w = required(case, &p.w, "W")?;
            check_shape(case, u, "U", (r, r))?;
            check_shape(case, z, "Z", (r, m))?;
            check_shape(case, w, "W", (m, r))?;
            let u_inv = inverse_of(case, u, "U")?;
            let j = Matrix::shift(r);
            holds(case, (&j * z).is_zero(), "JZ = 0")?;
            holds(case, (w * &j).is_zero(), "WJ = 0")?;
            holds(case, &(z * &bp) * w == j, "ZB′W = J")?;
            holds(case, w * z == &bpy2 * &bp, "WZ = B′Y2B′")?;
            holds(case, (z * &bpy2).is_zero(), "ZB′Y2 = 0")?;
            holds(case, (&y2bp * w).is_zero(), "Y2B′W = 0")?;
            let y1 = &(u * &j) * &u_inv;
            assemble(&y1, &(u * z), &(w * &u_inv), y2)?
        }
        _ => {
            return Err(FamilyError::WrongConstructor {
                case,
                constructor: "construct_thm42",
            })
        }
    };
    verified(case, sys, x)
}
