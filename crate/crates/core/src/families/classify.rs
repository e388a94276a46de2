//! Inverse of the constructors: recover a case and parameters from `X`.
//!
//! Parameters are read off `X`, the constructor is rerun (which
//! revalidates every constraint) and its output must reproduce `X` and the
//! coefficient pair exactly.

use serde::Serialize;

use crate::linalg::{Matrix, Scalar};
use crate::ybe::{is_solution, SystemInstance};

use super::idempotent::{idempotent_shape, nilpotent_shift_basis};
use super::two_by_two::p51_spectrum_holds;
use super::{construct, FamilyCase, FamilyParams};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "coverage", rename_all = "snake_case", bound = "")]
pub enum Coverage<T: Scalar> {
    /// `X = 0`, produced by every case with zero parameters.
    Trivial,
    Family {
        case: FamilyCase,
        params: FamilyParams<T>,
    },
    Unclassified,
}

impl<T: Scalar> Coverage<T> {
    pub fn case(&self) -> Option<FamilyCase> {
        match self {
            Coverage::Family { case, .. } => Some(*case),
            _ => None,
        }
    }

    pub fn is_classified(&self) -> bool {
        !matches!(self, Coverage::Unclassified)
    }

    /// `"trivial"`, a case tag, or `"unclassified"`.
    pub fn label(&self) -> String {
        match self {
            Coverage::Trivial => "trivial".to_string(),
            Coverage::Family { case, .. } => case.tag().to_string(),
            Coverage::Unclassified => "unclassified".to_string(),
        }
    }
}

/// Which family produces `X` for this pair. Recognized pairs are canonical
/// idempotent complements and 2×2 diagonal or Jordan coefficients.
pub fn family_covers<T: Scalar>(sys: &SystemInstance<T>, x: &Matrix<T>) -> Coverage<T> {
    if x.shape() != sys.a().shape() {
        return Coverage::Unclassified;
    }
    if x.is_zero() {
        return Coverage::Trivial;
    }
    let found = if let Some((r, s)) = idempotent_shape(sys) {
        idempotent_cover(sys, r, s, x)
    } else if sys.n() == 2 {
        two_by_two_cover(sys, x)
    } else {
        None
    };
    found.unwrap_or(Coverage::Unclassified)
}

fn attempt<T: Scalar>(
    sys: &SystemInstance<T>,
    x: &Matrix<T>,
    case: FamilyCase,
    params: FamilyParams<T>,
) -> Option<Coverage<T>> {
    let inst = construct(case, &params).ok()?;
    (inst.solution == *x && inst.system == *sys).then_some(Coverage::Family { case, params })
}

fn idempotent_cover<T: Scalar>(
    sys: &SystemInstance<T>,
    r: usize,
    s: usize,
    x: &Matrix<T>,
) -> Option<Coverage<T>> {
    let n = sys.n();
    let m = n - r;
    let y1 = x.block(0, 0, r, r);
    let c = x.block(0, r, r, m);
    let d = x.block(r, 0, m, r);
    let y2 = x.block(r, r, m, m);
    let base = FamilyParams {
        n: Some(n),
        r: Some(r),
        ..Default::default()
    };
    if s == m {
        match (y1.is_zero(), y2.is_zero()) {
            (true, true) => {
                let p = FamilyParams {
                    c_block: Some(c),
                    d_block: Some(d),
                    ..base
                };
                attempt(sys, x, FamilyCase::T41I, p)
            }
            (true, false) => {
                let u = nilpotent_shift_basis(&y2)?;
                let u_inv = u.inverse().ok()?;
                let p = FamilyParams {
                    z: Some(&c * &u),
                    w: Some(&u_inv * &d),
                    u: Some(u),
                    ..base
                };
                attempt(sys, x, FamilyCase::T41II, p)
            }
            (false, true) => {
                let v = nilpotent_shift_basis(&y1)?;
                let v_inv = v.inverse().ok()?;
                let p = FamilyParams {
                    z: Some(&v_inv * &c),
                    w: Some(&d * &v),
                    v: Some(v),
                    ..base
                };
                attempt(sys, x, FamilyCase::T41III, p)
            }
            (false, false) => {
                let u1 = nilpotent_shift_basis(&y1)?;
                let u2 = nilpotent_shift_basis(&y2)?;
                let u1_inv = u1.inverse().ok()?;
                let p = FamilyParams {
                    z1: Some(&u1_inv * &c),
                    w1: Some(&d * &u1),
                    u1: Some(u1),
                    u2: Some(u2),
                    ..base
                };
                attempt(sys, x, FamilyCase::T41IV, p)
            }
        }
    } else {
        let base = FamilyParams {
            s: Some(s),
            y2: Some(y2),
            ..base
        };
        if y1.is_zero() {
            let p = FamilyParams {
                c_block: Some(c),
                d_block: Some(d),
                ..base
            };
            attempt(sys, x, FamilyCase::T42I, p)
        } else {
            let u = nilpotent_shift_basis(&y1)?;
            let u_inv = u.inverse().ok()?;
            let p = FamilyParams {
                z: Some(&u_inv * &c),
                w: Some(&d * &u),
                u: Some(u),
                ..base
            };
            attempt(sys, x, FamilyCase::T42II, p)
        }
    }
}

fn is_diagonal<T: Scalar>(m: &Matrix<T>) -> bool {
    m.get(0, 1).is_zero() && m.get(1, 0).is_zero()
}

fn is_jordan<T: Scalar>(m: &Matrix<T>) -> bool {
    m.get(0, 1).is_one() && m.get(1, 0).is_zero() && m.get(0, 0) == m.get(1, 1)
}

fn two_by_two_cover<T: Scalar>(sys: &SystemInstance<T>, x: &Matrix<T>) -> Option<Coverage<T>> {
    let (am, bm) = (sys.a(), sys.b());
    let [x1, x2, x3, x4] = [x.get(0, 0), x.get(0, 1), x.get(1, 0), x.get(1, 1)].map(T::clone);
    let nz = |v: &T| !v.is_zero();
    let with = |a: &T, b: &T, c: Option<&T>, d: Option<&T>| FamilyParams {
        a: Some(a.clone()),
        b: Some(b.clone()),
        c: c.cloned(),
        d: d.cloned(),
        ..Default::default()
    };
    let first = |cands: Vec<(FamilyCase, FamilyParams<T>)>| {
        cands
            .into_iter()
            .find_map(|(case, p)| attempt(sys, x, case, p))
    };
    let (a, b) = (am.get(0, 0).clone(), am.get(1, 1).clone());

    if is_diagonal(am) && is_diagonal(bm) {
        let (c, d) = (bm.get(0, 0).clone(), bm.get(1, 1).clone());
        let base = with(&a, &b, Some(&c), Some(&d));
        let alpha = |v: &T, variant: usize| FamilyParams {
            alpha: Some(v.clone()),
            variant: Some(variant),
            ..base.clone()
        };
        return match (nz(&a), nz(&b), nz(&c), nz(&d)) {
            (true, true, true, true) => first(vec![
                (FamilyCase::P51I, alpha(&x2, 0)),
                (FamilyCase::P51I, alpha(&x3, 1)),
                (FamilyCase::P51II, alpha(&x3, 0)),
                (FamilyCase::P51III, alpha(&x2, 0)),
                (FamilyCase::P51IV, alpha(&x2, 0)),
                (FamilyCase::P51IV, alpha(&x3, 1)),
            ])
            .or_else(|| {
                let nonsingular = x.is_invertible() && is_solution(sys, x).unwrap_or(false);
                (nonsingular && p51_spectrum_holds(&a, &b, &c, &d, x).unwrap_or(false)).then(|| {
                    Coverage::Family {
                        case: FamilyCase::P51V,
                        params: base.clone(),
                    }
                })
            }),
            (false, true, true, true) => first(vec![(FamilyCase::P52I, base.clone())]),
            (true, false, true, true) => first(vec![(FamilyCase::P52II, base.clone())]),
            (false, true, false, true) => {
                let ab = |beta: &T, variant| FamilyParams {
                    alpha: Some(x1.clone()),
                    beta: Some(beta.clone()),
                    variant: Some(variant),
                    ..base.clone()
                };
                first(vec![
                    (FamilyCase::P53, ab(&x3, 0)),
                    (FamilyCase::P53, ab(&x2, 1)),
                    (FamilyCase::P53, ab(&T::zero(), 2)),
                ])
            }
            _ => None,
        };
    }

    if is_jordan(am) && is_diagonal(bm) {
        let (b, c) = (bm.get(0, 0).clone(), bm.get(1, 1).clone());
        let base = FamilyParams {
            a: Some(a.clone()),
            b: Some(b.clone()),
            c: Some(c.clone()),
            ..Default::default()
        };
        let ab = |alpha: &T, beta: &T| FamilyParams {
            alpha: Some(alpha.clone()),
            beta: Some(beta.clone()),
            ..base.clone()
        };
        return match (nz(&a), nz(&b), nz(&c)) {
            (false, false, true) => first(vec![(FamilyCase::P54AII, ab(&x1, &x2))]),
            (false, true, false) => first(vec![(FamilyCase::P54AIII, ab(&x2, &x4))]),
            _ => None,
        };
    }

    if is_jordan(am) && is_jordan(bm) {
        let b = bm.get(0, 0).clone();
        let base = with(&a, &b, None, None);
        if !nz(&a) || !nz(&b) {
            return None;
        }
        if a == b {
            let s = (x1.clone() - a.clone()).checked_div(&a)?;
            return first(vec![
                (
                    FamilyCase::P55I,
                    FamilyParams {
                        variant: Some(0),
                        ..base.clone()
                    },
                ),
                (
                    FamilyCase::P55I,
                    FamilyParams {
                        sqrt_alpha: Some(s),
                        variant: Some(1),
                        ..base.clone()
                    },
                ),
            ]);
        }
        return first(vec![(
            FamilyCase::P55II,
            FamilyParams {
                alpha: Some(x1),
                ..base
            },
        )]);
    }
    None
}
