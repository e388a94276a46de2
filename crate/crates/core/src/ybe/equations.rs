use crate::linalg::{LinalgError, Matrix, Rational};
use crate::polyalg::{parse_poly, MultiPoly, VarTable};

use super::{SystemInstance, YbeError};

/// Square matrix of polynomials sharing one variable table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    n: usize,
    nvars: usize,
    entries: Vec<MultiPoly>,
}

impl PolyMatrix {
    pub fn from_rows(nvars: usize, rows: Vec<Vec<MultiPoly>>) -> Result<Self, YbeError> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(LinalgError::NotSquare {
                op: "polynomial matrix",
                rows: n,
                cols: rows.first().map_or(0, Vec::len),
            }
            .into());
        }
        let entries: Vec<MultiPoly> = rows.into_iter().flatten().collect();
        assert!(
            entries.iter().all(|p| p.nvars() == nvars),
            "variable table width"
        );
        Ok(PolyMatrix { n, nvars, entries })
    }

    pub fn from_rational(m: &Matrix<Rational>, nvars: usize) -> Self {
        PolyMatrix {
            n: m.rows(),
            nvars,
            entries: m
                .entries()
                .iter()
                .map(|c| MultiPoly::constant(nvars, c.clone()))
                .collect(),
        }
    }

    /// Entries given as polynomial strings, e.g. `[["0", "x2"], ["x3", "b"]]`.
    pub fn parse<S: AsRef<str>>(rows: &[Vec<S>], vars: &VarTable) -> Result<Self, YbeError> {
        let parsed = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|s| parse_poly(s.as_ref(), vars))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_rows(vars.len(), parsed)
    }

    /// `n × n` matrix whose entries are the variables `first, first+1, …`
    /// in row-major order.
    pub fn variables(n: usize, nvars: usize, first: usize) -> Self {
        PolyMatrix {
            n,
            nvars,
            entries: (0..n * n)
                .map(|k| MultiPoly::variable(nvars, first + k))
                .collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &MultiPoly {
        &self.entries[i * self.n + j]
    }

    pub fn entries(&self) -> &[MultiPoly] {
        &self.entries
    }

    fn check(&self, other: &Self) -> Result<(), YbeError> {
        if self.n != other.n {
            return Err(LinalgError::DimensionMismatch {
                op: "polynomial matrix",
                left: (self.n, self.n),
                right: (other.n, other.n),
            }
            .into());
        }
        assert_eq!(self.nvars, other.nvars, "variable table width");
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self, YbeError> {
        self.check(other)?;
        let n = self.n;
        let entries = (0..n * n)
            .map(|k| {
                let (i, j) = (k / n, k % n);
                (0..n).fold(MultiPoly::zero(self.nvars), |acc, l| {
                    acc.add(&self.get(i, l).mul(other.get(l, j)))
                })
            })
            .collect();
        Ok(PolyMatrix {
            n,
            nvars: self.nvars,
            entries,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, YbeError> {
        self.check(other)?;
        Ok(PolyMatrix {
            n: self.n,
            nvars: self.nvars,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(p, q)| p.sub(q))
                .collect(),
        })
    }

    pub fn eval(&self, point: &[Rational]) -> Matrix<Rational> {
        Matrix::new(
            self.n,
            self.n,
            self.entries.iter().map(|p| p.eval(point)).collect(),
        )
        .expect("square shape")
    }

    pub fn to_strings(&self, vars: &VarTable) -> Vec<Vec<String>> {
        self.entries
            .chunks(self.n)
            .map(|r| r.iter().map(|p| p.to_text(vars)).collect())
            .collect()
    }
}

/// Entries of `AXA − XBX` then `BXB − XAX`, row-major, zeros included.
pub fn equations_from_polys(
    a: &PolyMatrix,
    b: &PolyMatrix,
    x: &PolyMatrix,
) -> Result<Vec<MultiPoly>, YbeError> {
    let r1 = a.mul(x)?.mul(a)?.sub(&x.mul(b)?.mul(x)?)?;
    let r2 = b.mul(x)?.mul(b)?.sub(&x.mul(a)?.mul(x)?)?;
    Ok(r1.entries.into_iter().chain(r2.entries).collect())
}

/// The `2n²` residual entries over a symbolic `X` whose entries are the
/// variables of `vars` in row-major order.
pub fn equations_from_system(
    sys: &SystemInstance<Rational>,
    vars: &VarTable,
) -> Result<Vec<MultiPoly>, YbeError> {
    let n = sys.n();
    if vars.len() != n * n {
        return Err(YbeError::VariableCount {
            expected: n * n,
            got: vars.len(),
        });
    }
    let a = PolyMatrix::from_rational(sys.a(), n * n);
    let b = PolyMatrix::from_rational(sys.b(), n * n);
    equations_from_polys(&a, &b, &PolyMatrix::variables(n, n * n, 0))
}

/// Default names for the entries of an `n×n` unknown: single letters
/// `a, b, …` skipping `o` while they last, then `x1, x2, …`.
pub fn entry_variable_names(n: usize) -> Vec<String> {
    let letters: Vec<char> = ('a'..='z').filter(|&c| c != 'o').collect();
    if n * n <= letters.len() {
        letters[..n * n].iter().map(char::to_string).collect()
    } else {
        (1..=n * n).map(|i| format!("x{i}")).collect()
    }
}
