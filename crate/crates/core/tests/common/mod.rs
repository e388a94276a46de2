//! Shared test support: random family parameters that satisfy each case's
//! constraints by construction, and the published fixtures.

#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ybx_core::families::{nilpotent_shift_basis, FamilyCase, FamilyParams};
use ybx_core::linalg::{parse_rational, Matrix, Rational, Scalar};
use ybx_core::polyalg::{parse_poly, MultiPoly, VarTable};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Cases with a constructor that can return a nonzero solution.
pub const CONSTRUCTIBLE: [FamilyCase; 17] = [
    FamilyCase::T41I,
    FamilyCase::T41II,
    FamilyCase::T41III,
    FamilyCase::T41IV,
    FamilyCase::T42I,
    FamilyCase::T42II,
    FamilyCase::P51I,
    FamilyCase::P51II,
    FamilyCase::P51III,
    FamilyCase::P51IV,
    FamilyCase::P52I,
    FamilyCase::P52II,
    FamilyCase::P53,
    FamilyCase::P54AII,
    FamilyCase::P54AIII,
    FamilyCase::P55I,
    FamilyCase::P55II,
];

/// `num/den` with small numerator and denominator; over F_p the
/// denominator stays a unit.
pub fn scalar<T: Scalar>(rng: &mut ChaCha8Rng) -> T {
    let num = rng.gen_range(-9..=9);
    let max_den = if T::CHARACTERISTIC == 0 {
        5
    } else {
        (T::CHARACTERISTIC as i64 - 1).min(5)
    };
    let den = rng.gen_range(1..=max_den);
    T::from_i64(num) * T::from_i64(den).inverse().expect("unit denominator")
}

pub fn nonzero<T: Scalar>(rng: &mut ChaCha8Rng) -> T {
    loop {
        let x = scalar::<T>(rng);
        if !x.is_zero() {
            return x;
        }
    }
}

/// Zero about a third of the time, otherwise a random nonzero value.
pub fn sparse<T: Scalar>(rng: &mut ChaCha8Rng) -> T {
    if rng.gen_bool(1.0 / 3.0) {
        T::zero()
    } else {
        nonzero(rng)
    }
}

pub fn matrix<T: Scalar>(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> Matrix<T> {
    Matrix::from_fn(rows, cols, |_, _| sparse(rng))
}

pub fn invertible<T: Scalar>(rng: &mut ChaCha8Rng, n: usize) -> Matrix<T> {
    loop {
        let m = matrix::<T>(rng, n, n);
        if m.is_invertible() {
            return m;
        }
    }
}

fn column<T: Scalar>(m: &Matrix<T>, j: usize) -> Matrix<T> {
    m.column(j)
}

fn row<T: Scalar>(m: &Matrix<T>, i: usize) -> Matrix<T> {
    m.block(i, 0, 1, m.cols())
}

fn zeros<T: Scalar>(rows: usize, cols: usize) -> Matrix<T> {
    Matrix::zeros(rows, cols)
}

/// Random vector, zero with probability 1/4.
fn maybe_vec<T: Scalar>(rng: &mut ChaCha8Rng, rows: usize) -> Matrix<T> {
    if rng.gen_bool(0.25) {
        zeros(rows, 1)
    } else {
        matrix(rng, rows, 1)
    }
}

/// `e_i` as an `n×1` column.
fn unit_col<T: Scalar>(n: usize, i: usize) -> Matrix<T> {
    Matrix::unit(n, 1, i, 0)
}

fn unit_row<T: Scalar>(n: usize, i: usize) -> Matrix<T> {
    Matrix::unit(1, n, 0, i)
}

fn dims<T: Scalar>(n: usize, r: usize) -> FamilyParams<T> {
    FamilyParams {
        n: Some(n),
        r: Some(r),
        ..Default::default()
    }
}

/// `(v, w)` with `wᵀv = 1` and a second pair `(v⊥, w⊥)` with
/// `wᵀv⊥ = w⊥ᵀv = 0`, `w⊥ᵀv⊥ = 1`, from a random basis and its dual.
/// The second pair is zero in dimension 1.
fn dual_pairs<T: Scalar>(rng: &mut ChaCha8Rng, k: usize) -> [Matrix<T>; 4] {
    let p = invertible::<T>(rng, k);
    let q = p.inverse().expect("invertible");
    let (v2, w2) = if k >= 2 {
        (column(&p, 1), row(&q, 1))
    } else {
        (zeros(k, 1), zeros(1, k))
    };
    [column(&p, 0), row(&q, 0), v2, w2]
}

/// Random parameters for `case` satisfying its constraints.
pub fn random_params<T: Scalar>(case: FamilyCase, rng: &mut ChaCha8Rng) -> FamilyParams<T> {
    use FamilyCase::*;
    match case {
        T41I => {
            let n = rng.gen_range(2..=5);
            let r = rng.gen_range(1..n);
            let m = n - r;
            let k = rng.gen_range(0..=r.min(m));
            // CD = DC = 0 in a conjugated block pattern
            let c0 = Matrix::from_fn(r, m, |i, j| {
                if i < k && j < k {
                    sparse(rng)
                } else {
                    T::zero()
                }
            });
            let d0 = Matrix::from_fn(m, r, |i, j| {
                if i >= k && j >= k {
                    sparse(rng)
                } else {
                    T::zero()
                }
            });
            let p = invertible::<T>(rng, r);
            let q = invertible::<T>(rng, m);
            let c = &(&p * &c0) * &q;
            let d = &(&q.inverse().unwrap() * &d0) * &p.inverse().unwrap();
            FamilyParams {
                c_block: Some(c),
                d_block: Some(d),
                ..dims(n, r)
            }
        }
        T41II => {
            let r = rng.gen_range(1..=3);
            let m = rng.gen_range(2..=4);
            let [u, v, u_perp, v_perp] = dual_pairs::<T>(rng, r);
            // Z = u e1ᵀ (+ u⊥ tᵀ on columns ≥ 2), W = e0 vᵀ (+ rows ≥ 2 along v⊥)
            let mut z = &u * &unit_row(m, 1);
            let mut w = &unit_col(m, 0) * &v;
            if m > 2 {
                let tail =
                    Matrix::from_fn(1, m, |_, j| if j >= 2 { sparse(rng) } else { T::zero() });
                if rng.gen_bool(0.5) {
                    z = &z + &(&u_perp * &tail);
                } else {
                    w = &w + &(&tail.transpose() * &v_perp);
                }
            }
            FamilyParams {
                u: Some(invertible(rng, m)),
                z: Some(z),
                w: Some(w),
                ..dims(r + m, r)
            }
        }
        T41III => {
            let r = rng.gen_range(2..=4);
            let m = rng.gen_range(1..=3);
            let [v, u, v_perp, u_perp] = dual_pairs::<T>(rng, m);
            let mut z = &unit_col(r, 0) * &u;
            let mut w = &v * &unit_row(r, 1);
            if r > 2 {
                let tail =
                    Matrix::from_fn(r, 1, |i, _| if i >= 2 { sparse(rng) } else { T::zero() });
                if rng.gen_bool(0.5) {
                    z = &z + &(&tail * &u_perp);
                } else {
                    w = &w + &(&v_perp * &tail.transpose());
                }
            }
            FamilyParams {
                v: Some(invertible(rng, r)),
                z: Some(z),
                w: Some(w),
                ..dims(r + m, r)
            }
        }
        T41IV => {
            let r = rng.gen_range(3..=4);
            let m = rng.gen_range(3..=4);
            let p = invertible::<T>(rng, m);
            let q = p.inverse().unwrap();
            let (s, t) = (nonzero::<T>(rng), nonzero::<T>(rng));
            // Z1 rows: u0 = q₀, u2 = s·q₂; W1 columns: v1 = p₀, v2 = t·p₁.
            // Z1W1 = J and W1Z1 = v2·u2ᵀ is a nonzero square-zero block.
            let mut z1 = zeros::<T>(r, m);
            let mut w1 = zeros::<T>(m, r);
            for j in 0..m {
                z1.set(0, j, q.get(0, j).clone());
                z1.set(2, j, s.clone() * q.get(2, j).clone());
                w1.set(j, 1, p.get(j, 0).clone());
                w1.set(j, 2, t.clone() * p.get(j, 1).clone());
            }
            let y2 = &w1 * &z1;
            let u2 = nilpotent_shift_basis(&y2).expect("rank-one square-zero block");
            FamilyParams {
                u1: Some(invertible(rng, r)),
                u2: Some(u2),
                z1: Some(z1),
                w1: Some(w1),
                ..dims(r + m, r)
            }
        }
        T42I => {
            let r = rng.gen_range(1..=3);
            let s = rng.gen_range(1..=3);
            let t = rng.gen_range(1..=2);
            let m = s + t;
            let [x, q_row, x_perp, g] = dual_pairs::<T>(rng, r);
            let [pv, _, _, y] = dual_pairs::<T>(rng, s);
            // yᵀp = 0; in dimension 1 one of them is dropped
            let (pv, y) = if s == 1 {
                if rng.gen_bool(0.5) {
                    (pv, zeros(1, 1))
                } else {
                    (zeros(1, 1), matrix(rng, 1, 1))
                }
            } else {
                (pv, y)
            };
            let lambda = sparse::<T>(rng);
            let c1 = (&x * &y).scale(&sparse(rng));
            let d_top = &pv * &q_row.scale(&lambda);
            let y11 = &d_top * &c1;
            let y12 = &pv * &matrix(rng, 1, t);
            let y21 = &matrix(rng, t, 1) * &y;
            let y22 = matrix(rng, t, t);
            let (c2, d_bot) = if rng.gen_bool(0.5) {
                (&x_perp * &matrix(rng, 1, t), zeros(t, r))
            } else {
                (zeros(r, t), &maybe_vec(rng, t) * &g)
            };
            let c = Matrix::hstack(&[c1, c2]).unwrap();
            let d = Matrix::vstack(&d_top, &d_bot).unwrap();
            let y2 = Matrix::from_blocks(&y11, &y12, &y21, &y22).unwrap();
            FamilyParams {
                s: Some(s),
                c_block: Some(c),
                d_block: Some(d),
                y2: Some(y2),
                ..dims(r + m, r)
            }
        }
        T42II => {
            let r = rng.gen_range(2..=3);
            let s = rng.gen_range(1..=3);
            let t = rng.gen_range(1..=2);
            let m = s + t;
            let [v, u, p_perp, w_perp] = dual_pairs::<T>(rng, s);
            // Z1 = e0 uᵀ, W1 = v e1ᵀ with uᵀv = 1, so ZB′W = J
            let z1 = &unit_col(r, 0) * &u;
            let w1 = &v * &unit_row(r, 1);
            let (y12, y21) = if rng.gen_bool(0.5) {
                (&p_perp * &matrix(rng, 1, t), zeros(t, s))
            } else {
                (zeros(s, t), &matrix(rng, t, 1) * &w_perp)
            };
            let y2 = Matrix::from_blocks(&zeros(s, s), &y12, &y21, &matrix(rng, t, t)).unwrap();
            // Z2 has row 1 zero, W2 has column 0 zero, W2Z2 = 0
            let (z2, w2) = if rng.gen_bool(0.5) {
                let h = Matrix::from_fn(r, 1, |i, _| if i == 1 { T::zero() } else { sparse(rng) });
                (&h * &matrix(rng, 1, t), zeros(t, r))
            } else {
                let g = Matrix::from_fn(1, r, |_, j| if j == 0 { T::zero() } else { sparse(rng) });
                (zeros(r, t), &matrix(rng, t, 1) * &g)
            };
            FamilyParams {
                s: Some(s),
                u: Some(invertible(rng, r)),
                z: Some(Matrix::hstack(&[z1, z2]).unwrap()),
                w: Some(Matrix::vstack(&w1, &w2).unwrap()),
                y2: Some(y2),
                ..dims(r + m, r)
            }
        }
        P51I => {
            let b = nonzero::<T>(rng);
            let variant = Some(rng.gen_range(0..2));
            if rng.gen_bool(0.5) {
                FamilyParams {
                    a: Some(nonzero(rng)),
                    b: Some(b.clone()),
                    c: Some(nonzero(rng)),
                    d: Some(b),
                    alpha: Some(T::zero()),
                    variant,
                    ..Default::default()
                }
            } else {
                FamilyParams {
                    a: Some(b.clone()),
                    b: Some(b.clone()),
                    c: Some(b.clone()),
                    d: Some(b),
                    alpha: Some(nonzero(rng)),
                    variant,
                    ..Default::default()
                }
            }
        }
        P51II | P51III => {
            let (a, b) = (nonzero::<T>(rng), nonzero::<T>(rng));
            FamilyParams {
                a: Some(a.clone()),
                b: Some(b.clone()),
                c: Some(a),
                d: Some(b),
                alpha: Some(T::zero()),
                ..Default::default()
            }
        }
        P51IV => {
            let a = nonzero::<T>(rng);
            let variant = Some(rng.gen_range(0..2));
            if rng.gen_bool(0.5) {
                FamilyParams {
                    a: Some(a.clone()),
                    b: Some(nonzero(rng)),
                    c: Some(a),
                    d: Some(nonzero(rng)),
                    alpha: Some(T::zero()),
                    variant,
                    ..Default::default()
                }
            } else {
                FamilyParams {
                    a: Some(a.clone()),
                    b: Some(a.clone()),
                    c: Some(a.clone()),
                    d: Some(a),
                    alpha: Some(nonzero(rng)),
                    variant,
                    ..Default::default()
                }
            }
        }
        P52I => {
            let b = nonzero::<T>(rng);
            FamilyParams {
                a: Some(T::zero()),
                b: Some(b.clone()),
                c: Some(nonzero(rng)),
                d: Some(b),
                ..Default::default()
            }
        }
        P52II => {
            let a = nonzero::<T>(rng);
            FamilyParams {
                a: Some(a.clone()),
                b: Some(T::zero()),
                c: Some(a),
                d: Some(nonzero(rng)),
                ..Default::default()
            }
        }
        P53 => {
            let variant = rng.gen_range(0..3);
            let b = nonzero::<T>(rng);
            let d = if variant == 2 {
                b.clone()
            } else {
                nonzero(rng)
            };
            FamilyParams {
                a: Some(T::zero()),
                b: Some(b),
                c: Some(T::zero()),
                d: Some(d),
                alpha: Some(scalar(rng)),
                beta: Some(scalar(rng)),
                variant: Some(variant),
                ..Default::default()
            }
        }
        P54AII => FamilyParams {
            a: Some(T::zero()),
            b: Some(T::zero()),
            c: Some(nonzero(rng)),
            alpha: Some(scalar(rng)),
            beta: Some(scalar(rng)),
            ..Default::default()
        },
        P54AIII => FamilyParams {
            a: Some(T::zero()),
            b: Some(nonzero(rng)),
            c: Some(T::zero()),
            alpha: Some(scalar(rng)),
            beta: Some(scalar(rng)),
            ..Default::default()
        },
        P55I => {
            let a = nonzero::<T>(rng);
            let s = scalar::<T>(rng);
            FamilyParams {
                a: Some(a.clone()),
                b: Some(a),
                alpha: Some(s.clone() * s.clone()),
                sqrt_alpha: Some(s),
                variant: Some(rng.gen_range(0..3)),
                ..Default::default()
            }
        }
        P55II => {
            let a = nonzero::<T>(rng);
            FamilyParams {
                a: Some(a.clone()),
                b: Some(-a),
                alpha: Some(scalar(rng)),
                ..Default::default()
            }
        }
        other => panic!("{other} has no nonzero constructor"),
    }
}

/// Nonzero-α parameters for `P51-ii` / `P51-iii`, which need a primitive
/// cube root of unity: `(a, b) = (1, 3)` over F7 and `(1, 4)` over F13,
/// each scaled by a random unit.
pub fn p51_cube_root_params<T: Scalar>(rng: &mut ChaCha8Rng) -> FamilyParams<T> {
    let omega_ratio = match T::CHARACTERISTIC {
        7 => 3,
        13 => 4,
        p => panic!("no cube-root pair prepared for characteristic {p}"),
    };
    let k = nonzero::<T>(rng);
    let a = k.clone();
    let b = k * T::from_i64(omega_ratio);
    FamilyParams {
        a: Some(a.clone()),
        b: Some(b.clone()),
        c: Some(a),
        d: Some(b),
        alpha: Some(nonzero(rng)),
        ..Default::default()
    }
}

pub fn polys(vars: &VarTable, texts: &[&str]) -> Vec<MultiPoly> {
    texts
        .iter()
        .map(|t| parse_poly(t, vars).expect("fixture polynomial"))
        .collect()
}

pub fn q_matrix(rows: &[&[&str]]) -> Matrix<Rational> {
    Matrix::from_rows(
        rows.iter()
            .map(|r| {
                r.iter()
                    .map(|e| parse_rational(e).expect("rational"))
                    .collect()
            })
            .collect(),
    )
    .expect("rectangular")
}

/// 3×3 idempotent complements with entries over 1/31 and a diagonalizer.
pub mod three_by_three {
    use super::*;

    pub fn a() -> Matrix<Rational> {
        q_matrix(&[
            &["-39/31", "-20/31", "-50/31"],
            &["14/31", "35/31", "10/31"],
            &["49/31", "14/31", "66/31"],
        ])
    }

    pub fn b() -> Matrix<Rational> {
        q_matrix(&[
            &["70/31", "20/31", "50/31"],
            &["-14/31", "-4/31", "-10/31"],
            &["-49/31", "-14/31", "-35/31"],
        ])
    }

    pub fn u() -> Matrix<Rational> {
        q_matrix(&[&["3", "1", "4"], &["2", "3", "2"], &["7", "2", "5"]])
    }

    pub fn u_inv() -> Matrix<Rational> {
        q_matrix(&[
            &["-11/31", "-3/31", "10/31"],
            &["-4/31", "13/31", "-2/31"],
            &["17/31", "-1/31", "-7/31"],
        ])
    }

    pub const VARIABLES: &str = "a,b,c,d,e,f,g,h,i";

    pub const BASIS: [&str; 18] = [
        "a+e-i", "i^2", "h*i", "g*i", "f*i", "e*i", "d*i", "c*i", "b*i", "f*h-e", "c*h-b", "f*g-d",
        "e*g-d*h", "c*g+e-i", "b*g+e*h", "c*e-b*f", "c*d+e*f", "b*d+e^2",
    ];
}

/// 4×4 idempotent complements with half-integer entries and a diagonalizer.
pub mod four_by_four {
    use super::*;

    pub fn a() -> Matrix<Rational> {
        q_matrix(&[
            &["29/2", "24", "12", "33/2"],
            &["-1/2", "-2", "-1", "-7/2"],
            &["-43/2", "-34", "-17", "-41/2"],
            &["9/2", "8", "4", "13/2"],
        ])
    }

    pub fn b() -> Matrix<Rational> {
        q_matrix(&[
            &["-12", "-15", "-9", "-6"],
            &["0", "0", "0", "0"],
            &["20", "25", "15", "10"],
            &["-4", "-5", "-3", "-2"],
        ])
    }

    pub fn u() -> Matrix<Rational> {
        q_matrix(&[
            &["1", "2", "1", "2"],
            &["3", "4", "2", "1"],
            &["4", "5", "3", "2"],
            &["1", "6", "2", "7"],
        ])
    }

    pub fn u_inv() -> Matrix<Rational> {
        q_matrix(&[
            &["7", "5/2", "-3", "-3/2"],
            &["-2", "1/2", "0", "1/2"],
            &["-8", "-9/2", "5", "3/2"],
            &["3", "1/2", "-1", "-1/2"],
        ])
    }

    pub const VARIABLES: &str = "a,b,c,d,e,f,g,h,i,j,k,l,m,n,p,q";

    pub const BASIS: [&str; 45] = [
        "a+f-k",
        "l*p",
        "k*p",
        "j*p",
        "i*p",
        "f*p",
        "e*p",
        "b*p",
        "f*m-k*m-e*n",
        "d*m+h*n",
        "c*m+g*n",
        "b*m+f*n",
        "k*l",
        "g*l",
        "f*l",
        "e*l",
        "c*l",
        "b*l",
        "k^2",
        "j*k",
        "i*k",
        "g*k",
        "f*k",
        "e*k",
        "c*k",
        "b*k",
        "g*j-f",
        "c*j-b",
        "g*i-e",
        "f*i-e*j",
        "d*i+h*j",
        "c*i+f-k",
        "b*i+f*j",
        "d*f-b*h-d*k",
        "c*f-b*g",
        "d*e+f*h",
        "c*e+f*g",
        "b*e+f^2",
        "h*k*n",
        "d*k*n",
        "d*g*n-c*h*n",
        "h*k*m",
        "h*j*m-h*i*n",
        "e*j*m-e*i*n",
        "b*d*g-b*c*h",
    ];
}

/// Symbolic 2×2 runs with the coefficients as trailing variables.
pub mod symbolic_2x2 {
    /// `A = diag(0, b)`, `B = diag(0, d)`, unknown entries `x1..x4`.
    pub const DIAGONAL_VARIABLES: &str = "x1,x2,x3,x4,b,d";
    pub const DIAGONAL_A: [[&str; 2]; 2] = [["0", "0"], ["0", "b"]];
    pub const DIAGONAL_B: [[&str; 2]; 2] = [["0", "0"], ["0", "d"]];
    pub const DIAGONAL_X: [[&str; 2]; 2] = [["x1", "x2"], ["x3", "x4"]];
    pub const DIAGONAL_BASIS: [&str; 9] = [
        "x3*x4*d",
        "x2*x4*d",
        "x2*x3*d",
        "x4*b^2-x4^2*d",
        "x4^2*b-x4*d^2",
        "x3*x4*b",
        "x2*x4*b",
        "x2*x3*b",
        "x4^3*d-x4*b*d^2",
    ];

    /// `A = J`, `B = diag(b, c)`, unknown upper triangular.
    pub const JORDAN_VARIABLES: &str = "x1,x2,x4,b,c";
    pub const JORDAN_A: [[&str; 2]; 2] = [["0", "1"], ["0", "0"]];
    pub const JORDAN_B: [[&str; 2]; 2] = [["b", "0"], ["0", "c"]];
    pub const JORDAN_X: [[&str; 2]; 2] = [["x1", "x2"], ["0", "x4"]];
    pub const JORDAN_BASIS: [&str; 9] = [
        "x4*c^2",
        "x2*b*c-x1*x4",
        "x4^2*c",
        "x1*b^2",
        "x1*x2*b+x2*x4*c",
        "x1^2*b",
        "x1*x4^2",
        "x1^2*x4",
        "x1*x2*x4*c",
    ];
}
