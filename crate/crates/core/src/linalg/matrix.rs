//! Dense rectangular matrices over an exact field.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::scalar::Scalar;
use super::unipoly::UniPoly;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("dimension mismatch in {op}: {left:?} vs {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("{op} needs a square matrix, got {rows}x{cols}")]
    NotSquare {
        op: &'static str,
        rows: usize,
        cols: usize,
    },
    #[error("matrix is singular")]
    Singular,
    #[error("matrix needs at least one row and one column, got {rows}x{cols}")]
    Empty { rows: usize, cols: usize },
    #[error("entry count {got} does not match {rows}x{cols}")]
    EntryCount {
        rows: usize,
        cols: usize,
        got: usize,
    },
}

/// Row-major dense matrix. All entries share the scalar type `T`, so
/// rational and prime-field matrices cannot be mixed.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self, LinalgError> {
        if rows == 0 || cols == 0 {
            return Err(LinalgError::Empty { rows, cols });
        }
        if data.len() != rows * cols {
            return Err(LinalgError::EntryCount {
                rows,
                cols,
                got: data.len(),
            });
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self, LinalgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(LinalgError::EntryCount {
                rows: r,
                cols: c,
                got: rows.iter().map(Vec::len).sum(),
            });
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    /// Convenience constructor from small integers. Panics on ragged input.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| T::from_i64(v)).collect())
                .collect(),
        )
        .expect("rectangular integer matrix")
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn diag(entries: &[T]) -> Self {
        let n = entries.len();
        Self::from_fn(n, n, |i, j| {
            if i == j {
                entries[i].clone()
            } else {
                T::zero()
            }
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Single 1 at `(i, j)`.
    pub fn unit(rows: usize, cols: usize, i: usize, j: usize) -> Self {
        Self::from_fn(rows, cols, |a, b| {
            if (a, b) == (i, j) {
                T::one()
            } else {
                T::zero()
            }
        })
    }

    /// The shift matrix `J`: a single 1 in position (1,2), zeros elsewhere.
    pub fn shift(n: usize) -> Self {
        assert!(n >= 2, "shift matrix needs n >= 2");
        Self::unit(n, n, 0, 1)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn row_vecs(&self) -> Vec<Vec<T>> {
        self.data.chunks(self.cols).map(<[T]>::to_vec).collect()
    }

    pub fn column(&self, j: usize) -> Self {
        Self::from_fn(self.rows, 1, |i, _| self.get(i, j).clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(T::is_zero)
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(|v| v.clone() * c.clone())
    }

    pub fn mat_mul(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch {
                op: "mat_mul",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = out.data[idx].clone() + a.clone() * b.clone();
                }
            }
        }
        Ok(out)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, LinalgError> {
        self.zip_with(other, "add", |a, b| a.clone() + b.clone())
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, LinalgError> {
        self.zip_with(other, "sub", |a, b| a.clone() - b.clone())
    }

    fn zip_with(
        &self,
        other: &Self,
        op: &'static str,
        f: impl Fn(&T, &T) -> T,
    ) -> Result<Self, LinalgError> {
        if self.shape() != other.shape() {
            return Err(LinalgError::DimensionMismatch {
                op,
                left: self.shape(),
                right: other.shape(),
            });
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| f(a, b))
                .collect(),
        })
    }

    fn require_square(&self, op: &'static str) -> Result<usize, LinalgError> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(LinalgError::NotSquare {
                op,
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    pub fn pow(&self, k: u32) -> Result<Self, LinalgError> {
        let n = self.require_square("pow")?;
        let mut acc = Self::identity(n);
        for _ in 0..k {
            acc = &acc * self;
        }
        Ok(acc)
    }

    pub fn trace(&self) -> Result<T, LinalgError> {
        let n = self.require_square("trace")?;
        Ok((0..n).fold(T::zero(), |acc, i| acc + self.get(i, i).clone()))
    }

    /// Copy of the `rows × cols` block whose top-left corner is `(r0, c0)`.
    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        assert!(
            r0 + rows <= self.rows && c0 + cols <= self.cols,
            "block out of range"
        );
        Self::from_fn(rows, cols, |i, j| self.get(r0 + i, c0 + j).clone())
    }

    /// Assemble `[[a, b], [c, d]]`; block shapes must be compatible.
    pub fn from_blocks(a: &Self, b: &Self, c: &Self, d: &Self) -> Result<Self, LinalgError> {
        if a.rows != b.rows || c.rows != d.rows || a.cols != c.cols || b.cols != d.cols {
            return Err(LinalgError::DimensionMismatch {
                op: "from_blocks",
                left: (a.rows, a.cols),
                right: (d.rows, d.cols),
            });
        }
        let (r, c0) = (a.rows, a.cols);
        Ok(Self::from_fn(
            a.rows + c.rows,
            a.cols + b.cols,
            |i, j| match (i < r, j < c0) {
                (true, true) => a.get(i, j).clone(),
                (true, false) => b.get(i, j - c0).clone(),
                (false, true) => c.get(i - r, j).clone(),
                (false, false) => d.get(i - r, j - c0).clone(),
            },
        ))
    }

    pub fn block_diag(a: &Self, d: &Self) -> Self {
        Self::from_blocks(
            a,
            &Self::zeros(a.rows, d.cols),
            &Self::zeros(d.rows, a.cols),
            d,
        )
        .expect("block_diag shapes are always compatible")
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<T, LinalgError> {
        let n = self.require_square("det")?;
        Ok(bareiss_det(n, self.data.clone()))
    }

    /// Exact inverse by Gauss–Jordan elimination.
    pub fn inverse(&self) -> Result<Self, LinalgError> {
        let n = self.require_square("inverse")?;
        let aug = Self::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if j - n == i {
                T::one()
            } else {
                T::zero()
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(LinalgError::Singular);
        }
        Ok(r.block(0, n, n, n))
    }

    pub fn is_invertible(&self) -> bool {
        self.det().map(|d| !d.is_zero()).unwrap_or(false)
    }

    /// Reduced row echelon form and the pivot column indices.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&i| !m.get(i, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m.get(row, col).inverse().expect("nonzero pivot");
            for j in col..m.cols {
                let v = m.get(row, j).clone() * inv.clone();
                m.set(row, j, v);
            }
            for i in 0..m.rows {
                if i == row {
                    continue;
                }
                let f = m.get(i, col).clone();
                if f.is_zero() {
                    continue;
                }
                for j in col..m.cols {
                    let v = m.get(i, j).clone() - f.clone() * m.get(row, j).clone();
                    m.set(i, j, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Rank by fraction-free forward elimination.
    pub fn rank(&self) -> usize {
        bareiss_rank(self.rows, self.cols, self.data.clone())
    }

    /// Null-space basis as column vectors. One vector per non-pivot
    /// column of the reduced echelon form, with that free variable set to 1
    /// and the other free variables set to 0.
    pub fn null_space(&self) -> Vec<Self> {
        let (r, pivots) = self.rref();
        (0..self.cols)
            .filter(|c| !pivots.contains(c))
            .map(|free| {
                let mut v = Self::zeros(self.cols, 1);
                v.set(free, 0, T::one());
                for (i, &pc) in pivots.iter().enumerate() {
                    v.set(pc, 0, -r.get(i, free).clone());
                }
                v
            })
            .collect()
    }

    /// Basis of the column space: the original columns at pivot positions.
    pub fn column_space(&self) -> Vec<Self> {
        let (_, pivots) = self.rref();
        pivots.into_iter().map(|c| self.column(c)).collect()
    }

    /// Horizontal concatenation of column vectors (or wider blocks).
    pub fn hstack(parts: &[Self]) -> Result<Self, LinalgError> {
        let Some(first) = parts.first() else {
            return Err(LinalgError::Empty { rows: 0, cols: 0 });
        };
        let rows = first.rows;
        if parts.iter().any(|p| p.rows != rows) {
            return Err(LinalgError::DimensionMismatch {
                op: "hstack",
                left: first.shape(),
                right: parts
                    .iter()
                    .find(|p| p.rows != rows)
                    .expect("exists")
                    .shape(),
            });
        }
        let cols: usize = parts.iter().map(|p| p.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let mut c0 = 0;
        for p in parts {
            for i in 0..rows {
                for j in 0..p.cols {
                    out.set(i, c0 + j, p.get(i, j).clone());
                }
            }
            c0 += p.cols;
        }
        Ok(out)
    }

    pub fn vstack(top: &Self, bottom: &Self) -> Result<Self, LinalgError> {
        Ok(Self::hstack(&[top.transpose(), bottom.transpose()])?.transpose())
    }

    /// Characteristic polynomial `det(λI − M)`, monic of degree n.
    ///
    /// Faddeev–LeVerrier when every `k ≤ n` is invertible in the field,
    /// otherwise Bareiss elimination over the polynomial ring.
    pub fn char_poly(&self) -> Result<UniPoly<T>, LinalgError> {
        let n = self.require_square("char_poly")?;
        if T::CHARACTERISTIC == 0 || T::CHARACTERISTIC > n as u64 {
            Ok(self.faddeev_leverrier(n))
        } else {
            Ok(det_pencil(&self.neg_ref(), &Self::identity(n))?)
        }
    }

    fn faddeev_leverrier(&self, n: usize) -> UniPoly<T> {
        // coeffs[k] is the coefficient of λ^k
        let mut coeffs = vec![T::zero(); n + 1];
        coeffs[n] = T::one();
        let mut m = Self::zeros(n, n);
        let id = Self::identity(n);
        for k in 1..=n {
            m = &(self * &m) + &id.scale(&coeffs[n - k + 1]);
            let am = self * &m;
            let tr = am.trace().expect("square");
            let k_inv = T::from_i64(k as i64).inverse().expect("k invertible");
            coeffs[n - k] = -(tr * k_inv);
        }
        UniPoly::new(coeffs)
    }

    fn neg_ref(&self) -> Self {
        self.map(|v| -v.clone())
    }

    /// `p(M) = Σ pᵢ Mⁱ` by Horner's rule.
    pub fn poly_eval(&self, p: &UniPoly<T>) -> Result<Self, LinalgError> {
        let n = self.require_square("poly_eval")?;
        let id = Self::identity(n);
        Ok(p.coeffs()
            .iter()
            .rev()
            .fold(Self::zeros(n, n), |acc, c| &(&acc * self) + &id.scale(c)))
    }

    /// Aligned plain-text rendering, one row per line.
    pub fn to_pretty(&self) -> String {
        let cells: Vec<String> = self.data.iter().map(|v| v.to_string()).collect();
        let width = cells.iter().map(String::len).max().unwrap_or(1);
        cells
            .chunks(self.cols)
            .map(|row| {
                row.iter()
                    .map(|c| format!("{c:>width$}"))
                    .collect::<Vec<_>>()
                    .join("  ")
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}

impl<T: Scalar> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_pretty())
    }
}

impl<T: Scalar> Mul for &Matrix<T> {
    type Output = Matrix<T>;
    /// Panics on incompatible shapes; use [`Matrix::mat_mul`] for a checked product.
    fn mul(self, rhs: Self) -> Matrix<T> {
        self.mat_mul(rhs).expect("matrix product shape mismatch")
    }
}

impl<T: Scalar> Add for &Matrix<T> {
    type Output = Matrix<T>;
    fn add(self, rhs: Self) -> Matrix<T> {
        self.checked_add(rhs).expect("matrix sum shape mismatch")
    }
}

impl<T: Scalar> Sub for &Matrix<T> {
    type Output = Matrix<T>;
    fn sub(self, rhs: Self) -> Matrix<T> {
        self.checked_sub(rhs)
            .expect("matrix difference shape mismatch")
    }
}

impl<T: Scalar> Neg for &Matrix<T> {
    type Output = Matrix<T>;
    fn neg(self) -> Matrix<T> {
        self.neg_ref()
    }
}

/// Entries admitting exact division, as Bareiss elimination requires.
pub(crate) trait ExactRing: Clone {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn mul(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// `self / rhs`, known to be exact.
    fn exact_div(&self, rhs: &Self) -> Self;
}

impl<T: Scalar> ExactRing for T {
    fn zero() -> Self {
        <T as num_traits::Zero>::zero()
    }
    fn one() -> Self {
        <T as num_traits::One>::one()
    }
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn mul(&self, rhs: &Self) -> Self {
        self.clone() * rhs.clone()
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.clone() - rhs.clone()
    }
    fn neg(&self) -> Self {
        -self.clone()
    }
    fn exact_div(&self, rhs: &Self) -> Self {
        self.checked_div(rhs).expect("Bareiss divisor is nonzero")
    }
}

impl<T: Scalar> ExactRing for UniPoly<T> {
    fn zero() -> Self {
        UniPoly::zero()
    }
    fn one() -> Self {
        UniPoly::one()
    }
    fn is_zero(&self) -> bool {
        UniPoly::is_zero(self)
    }
    fn mul(&self, rhs: &Self) -> Self {
        self.clone() * rhs.clone()
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.clone() - rhs.clone()
    }
    fn neg(&self) -> Self {
        -self.clone()
    }
    fn exact_div(&self, rhs: &Self) -> Self {
        UniPoly::exact_div(self, rhs).expect("Bareiss division is exact")
    }
}

/// Bareiss determinant of an `n × n` row-major array.
pub(crate) fn bareiss_det<R: ExactRing>(n: usize, mut m: Vec<R>) -> R {
    let mut sign_flip = false;
    let mut prev = R::one();
    for k in 0..n.saturating_sub(1) {
        if m[k * n + k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i * n + k].is_zero()) else {
                return R::zero();
            };
            for j in 0..n {
                m.swap(k * n + j, p * n + j);
            }
            sign_flip = !sign_flip;
        }
        let pivot = m[k * n + k].clone();
        for i in k + 1..n {
            for j in k + 1..n {
                let v = m[i * n + j]
                    .mul(&pivot)
                    .sub(&m[i * n + k].mul(&m[k * n + j]))
                    .exact_div(&prev);
                m[i * n + j] = v;
            }
            m[i * n + k] = R::zero();
        }
        prev = pivot;
    }
    let d = m[n * n - 1].clone();
    if sign_flip {
        d.neg()
    } else {
        d
    }
}

fn bareiss_rank<R: ExactRing>(rows: usize, cols: usize, mut m: Vec<R>) -> usize {
    let mut prev = R::one();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&i| !m[i * cols + col].is_zero()) else {
            continue;
        };
        for j in 0..cols {
            m.swap(rank * cols + j, p * cols + j);
        }
        let pivot = m[rank * cols + col].clone();
        for i in rank + 1..rows {
            for j in col + 1..cols {
                let v = m[i * cols + j]
                    .mul(&pivot)
                    .sub(&m[i * cols + col].mul(&m[rank * cols + j]))
                    .exact_div(&prev);
                m[i * cols + j] = v;
            }
            m[i * cols + col] = R::zero();
        }
        prev = pivot;
        rank += 1;
    }
    rank
}

/// `det(M0 + λ·M1)` as a polynomial in λ, by Bareiss elimination over the
/// polynomial ring.
pub fn det_pencil<T: Scalar>(m0: &Matrix<T>, m1: &Matrix<T>) -> Result<UniPoly<T>, LinalgError> {
    let n = m0.require_square("det_pencil")?;
    if m0.shape() != m1.shape() {
        return Err(LinalgError::DimensionMismatch {
            op: "det_pencil",
            left: m0.shape(),
            right: m1.shape(),
        });
    }
    let entries = m0
        .entries()
        .iter()
        .zip(m1.entries())
        .map(|(a, b)| UniPoly::new(vec![a.clone(), b.clone()]))
        .collect();
    Ok(bareiss_det(n, entries))
}

/// Serializes as an array of rows of entry strings.
impl<T: Scalar> serde::Serialize for Matrix<T> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.rows))?;
        for row in self.data.chunks(self.cols) {
            let strs: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            seq.serialize_element(&strs)?;
        }
        seq.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::scalar::{parse_rational, Rational, F3, F5};

    type Q = Rational;

    fn qm(rows: &[&[i64]]) -> Matrix<Q> {
        Matrix::from_i64(rows)
    }

    fn ex41_a() -> Matrix<Q> {
        qm(&[&[-39, -20, -50], &[14, 35, 10], &[49, 14, 66]])
            .scale(&parse_rational("1/31").unwrap())
    }

    fn ex41_u() -> Matrix<Q> {
        qm(&[&[3, 1, 4], &[2, 3, 2], &[7, 2, 5]])
    }

    #[test]
    fn product_examples() {
        let m = qm(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 10]]);
        assert_eq!(&Matrix::identity(3) * &m, m);
        let a = qm(&[&[1, 1], &[0, 1]]);
        let b = qm(&[&[1, -2], &[1, -1]]);
        assert_eq!(&a * &b, qm(&[&[2, -3], &[1, -1]]));
        assert!(matches!(
            a.mat_mul(&m),
            Err(LinalgError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn example_41_conjugation() {
        let u = ex41_u();
        let u_inv = u.inverse().unwrap();
        let expected_inv = qm(&[&[-11, -3, 10], &[-4, 13, -2], &[17, -1, -7]])
            .scale(&parse_rational("1/31").unwrap());
        assert_eq!(u_inv, expected_inv);
        let ja = &(&u * &ex41_a()) * &u_inv;
        assert_eq!(
            ja,
            Matrix::diag(&[Q::from_i64(1), Q::from_i64(1), Q::from_i64(0)])
        );
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(Matrix::<Q>::identity(4).det().unwrap(), Q::from_i64(1));
        assert_eq!(ex41_a().det().unwrap(), Q::from_i64(0));
        assert_eq!(qm(&[&[2, 1], &[0, 2]]).det().unwrap(), Q::from_i64(4));
        // needs a row swap
        assert_eq!(qm(&[&[0, 1], &[1, 0]]).det().unwrap(), Q::from_i64(-1));
        assert!(matches!(
            qm(&[&[1, 2, 3]]).det(),
            Err(LinalgError::NotSquare { .. })
        ));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(
            Matrix::<Q>::identity(3).inverse().unwrap(),
            Matrix::identity(3)
        );
        let d = qm(&[&[2, 0], &[0, 4]]);
        let half = parse_rational("1/2").unwrap();
        let quarter = parse_rational("1/4").unwrap();
        assert_eq!(d.inverse().unwrap(), Matrix::diag(&[half, quarter]));
        assert_eq!(ex41_a().inverse(), Err(LinalgError::Singular));
    }

    #[test]
    fn rank_and_null_space() {
        let z = Matrix::<Q>::zeros(3, 3);
        assert_eq!(z.rank(), 0);
        let basis = z.null_space();
        assert_eq!(
            basis,
            (0..3).map(|i| Matrix::unit(3, 1, i, 0)).collect::<Vec<_>>()
        );
        assert_eq!(ex41_a().rank(), 2);
        assert_eq!(ex41_a().null_space().len(), 1);
        let v = &ex41_a().null_space()[0];
        assert!((&ex41_a() * v).is_zero());
        assert_eq!(qm(&[&[0, 1], &[0, 0]]).rank(), 1);
    }

    #[test]
    fn char_poly_examples() {
        let p = Matrix::<Q>::zeros(2, 2).char_poly().unwrap();
        assert_eq!(p, UniPoly::monomial(Q::from_i64(1), 2));
        let d = Matrix::diag(&[Q::from_i64(1), Q::from_i64(1), Q::from_i64(0)]);
        // λ³ − 2λ² + λ
        assert_eq!(
            d.char_poly().unwrap().to_string(),
            "lambda^3 - 2*lambda^2 + lambda"
        );
        assert_eq!(
            qm(&[&[0, 1], &[0, 0]]).char_poly().unwrap(),
            UniPoly::monomial(Q::from_i64(1), 2)
        );
    }

    #[test]
    fn cayley_hamilton_and_poly_eval() {
        let a = ex41_a();
        let p = a.char_poly().unwrap();
        assert!(a.poly_eval(&p).unwrap().is_zero());
        let m = qm(&[&[1, 2], &[3, 4]]);
        assert_eq!(
            m.poly_eval(&UniPoly::monomial(Q::from_i64(1), 2)).unwrap(),
            &m * &m
        );
        let lm1 = UniPoly::new(vec![Q::from_i64(-1), Q::from_i64(1)]);
        assert!(Matrix::<Q>::identity(3).poly_eval(&lm1).unwrap().is_zero());
    }

    #[test]
    fn char_poly_small_characteristic_fallback() {
        // 3x3 over F3 cannot use Faddeev–LeVerrier (division by 3)
        let m = Matrix::<F3>::from_i64(&[&[1, 2, 0], &[0, 1, 1], &[2, 0, 2]]);
        let p = m.char_poly().unwrap();
        assert_eq!(p.degree(), Some(3));
        assert!(m.poly_eval(&p).unwrap().is_zero());
        // agrees with Faddeev–LeVerrier over F5 for a 3x3 input
        let m5 = Matrix::<F5>::from_i64(&[&[1, 2, 0], &[0, 1, 1], &[2, 0, 2]]);
        let fl = m5.char_poly().unwrap();
        let bareiss = det_pencil(&-&m5, &Matrix::identity(3)).unwrap();
        assert_eq!(fl, bareiss);
    }

    #[test]
    fn pencil_determinant() {
        // det(A + λB) for A = diag(1,0), B = diag(0,1) is λ
        let a = Matrix::<Q>::diag(&[Q::from_i64(1), Q::from_i64(0)]);
        let b = Matrix::<Q>::diag(&[Q::from_i64(0), Q::from_i64(1)]);
        assert_eq!(det_pencil(&a, &b).unwrap(), UniPoly::x());
    }
}
