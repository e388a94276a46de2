//! Parameterized solution families, with validating constructors and the
//! inverse classifier.
//!
//! Two coefficient settings are covered. Idempotent orthogonal complements
//! in canonical form `A = diag(I_r, 0)`, `B = diag(0_r, I_s, 0)`, where
//! `s = n − r` gives the `T41-*` cases and `s < n − r` the `T42-*` cases.
//! And 2×2 coefficients that are diagonal or single Jordan blocks, giving
//! the `P5*` cases.

mod classify;
mod idempotent;
mod two_by_two;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::linalg::{LinalgError, Matrix, Scalar};
use crate::serde_util::display_opt;
use crate::ybe::{SystemInstance, YbeError};

pub use classify::{family_covers, Coverage};
pub use idempotent::{
    canonical_idempotent_system, construct_thm41, construct_thm42, idempotent_shape,
    nilpotent_shift_basis,
};
pub use two_by_two::{construct_2x2, jordan_block, p51_spectrum_holds};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyCase {
    T41I,
    T41II,
    T41III,
    T41IV,
    T42I,
    T42II,
    P51I,
    P51II,
    P51III,
    P51IV,
    P51V,
    P52I,
    P52II,
    P53,
    P54AI,
    P54AII,
    P54AIII,
    P54B,
    P55I,
    P55II,
    P55III,
}

impl FamilyCase {
    pub const ALL: [FamilyCase; 21] = [
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
        FamilyCase::P51V,
        FamilyCase::P52I,
        FamilyCase::P52II,
        FamilyCase::P53,
        FamilyCase::P54AI,
        FamilyCase::P54AII,
        FamilyCase::P54AIII,
        FamilyCase::P54B,
        FamilyCase::P55I,
        FamilyCase::P55II,
        FamilyCase::P55III,
    ];

    pub fn tag(self) -> &'static str {
        use FamilyCase::*;
        match self {
            T41I => "T41-i",
            T41II => "T41-ii",
            T41III => "T41-iii",
            T41IV => "T41-iv",
            T42I => "T42-i",
            T42II => "T42-ii",
            P51I => "P51-i",
            P51II => "P51-ii",
            P51III => "P51-iii",
            P51IV => "P51-iv",
            P51V => "P51-v",
            P52I => "P52-i",
            P52II => "P52-ii",
            P53 => "P53",
            P54AI => "P54-a-i",
            P54AII => "P54-a-ii",
            P54AIII => "P54-a-iii",
            P54B => "P54-b",
            P55I => "P55-i",
            P55II => "P55-ii",
            P55III => "P55-iii",
        }
    }

    pub fn is_idempotent_case(self) -> bool {
        matches!(self.tag().as_bytes()[0], b'T')
    }

    /// Cases whose coefficient shape admits only `X = 0`.
    pub fn is_trivial_only(self) -> bool {
        matches!(
            self,
            FamilyCase::P54AI | FamilyCase::P54B | FamilyCase::P55III
        )
    }
}

impl fmt::Display for FamilyCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown family case {0:?}")]
pub struct UnknownCase(pub String);

impl FromStr for FamilyCase {
    type Err = UnknownCase;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FamilyCase::ALL
            .into_iter()
            .find(|c| c.tag().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| UnknownCase(s.to_string()))
    }
}

impl Serialize for FamilyCase {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.tag())
    }
}

/// Inputs to the constructors. Each case reads only the fields it needs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(bound = "")]
pub struct FamilyParams<T: Scalar> {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<usize>,
    #[serde(rename = "C", skip_serializing_if = "Option::is_none")]
    pub c_block: Option<Matrix<T>>,
    #[serde(rename = "D", skip_serializing_if = "Option::is_none")]
    pub d_block: Option<Matrix<T>>,
    #[serde(rename = "Y2", skip_serializing_if = "Option::is_none")]
    pub y2: Option<Matrix<T>>,
    #[serde(rename = "Z", skip_serializing_if = "Option::is_none")]
    pub z: Option<Matrix<T>>,
    #[serde(rename = "W", skip_serializing_if = "Option::is_none")]
    pub w: Option<Matrix<T>>,
    #[serde(rename = "Z1", skip_serializing_if = "Option::is_none")]
    pub z1: Option<Matrix<T>>,
    #[serde(rename = "W1", skip_serializing_if = "Option::is_none")]
    pub w1: Option<Matrix<T>>,
    #[serde(rename = "U", skip_serializing_if = "Option::is_none")]
    pub u: Option<Matrix<T>>,
    #[serde(rename = "V", skip_serializing_if = "Option::is_none")]
    pub v: Option<Matrix<T>>,
    #[serde(rename = "U1", skip_serializing_if = "Option::is_none")]
    pub u1: Option<Matrix<T>>,
    #[serde(rename = "U2", skip_serializing_if = "Option::is_none")]
    pub u2: Option<Matrix<T>>,
    #[serde(
        serialize_with = "display_opt",
        skip_serializing_if = "Option::is_none"
    )]
    pub a: Option<T>,
    #[serde(
        serialize_with = "display_opt",
        skip_serializing_if = "Option::is_none"
    )]
    pub b: Option<T>,
    #[serde(
        serialize_with = "display_opt",
        skip_serializing_if = "Option::is_none"
    )]
    pub c: Option<T>,
    #[serde(
        serialize_with = "display_opt",
        skip_serializing_if = "Option::is_none"
    )]
    pub d: Option<T>,
    #[serde(
        serialize_with = "display_opt",
        skip_serializing_if = "Option::is_none"
    )]
    pub alpha: Option<T>,
    #[serde(
        serialize_with = "display_opt",
        skip_serializing_if = "Option::is_none"
    )]
    pub beta: Option<T>,
    /// `s` with `α = s²` for the `P55-i` square-root forms.
    #[serde(
        serialize_with = "display_opt",
        skip_serializing_if = "Option::is_none"
    )]
    pub sqrt_alpha: Option<T>,
    /// Selects among the alternative matrix shapes a case lists.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub variant: Option<usize>,
}

impl<T: Scalar> Default for FamilyParams<T> {
    fn default() -> Self {
        FamilyParams {
            n: None,
            r: None,
            s: None,
            c_block: None,
            d_block: None,
            y2: None,
            z: None,
            w: None,
            z1: None,
            w1: None,
            u: None,
            v: None,
            u1: None,
            u2: None,
            a: None,
            b: None,
            c: None,
            d: None,
            alpha: None,
            beta: None,
            sqrt_alpha: None,
            variant: None,
        }
    }
}

impl<T: Scalar> FamilyParams<T> {
    /// Reduce every entry into another scalar domain. `None` when some
    /// entry has no image (e.g. a denominator divisible by p).
    pub fn try_map<U: Scalar>(&self, f: impl Fn(&T) -> Option<U>) -> Option<FamilyParams<U>> {
        let m = |x: &Option<Matrix<T>>| -> Option<Option<Matrix<U>>> {
            match x {
                None => Some(None),
                Some(m) => {
                    let data = m.entries().iter().map(&f).collect::<Option<Vec<U>>>()?;
                    Some(Some(Matrix::new(m.rows(), m.cols(), data).ok()?))
                }
            }
        };
        let sc = |x: &Option<T>| -> Option<Option<U>> {
            match x {
                None => Some(None),
                Some(v) => f(v).map(Some),
            }
        };
        Some(FamilyParams {
            n: self.n,
            r: self.r,
            s: self.s,
            c_block: m(&self.c_block)?,
            d_block: m(&self.d_block)?,
            y2: m(&self.y2)?,
            z: m(&self.z)?,
            w: m(&self.w)?,
            z1: m(&self.z1)?,
            w1: m(&self.w1)?,
            u: m(&self.u)?,
            v: m(&self.v)?,
            u1: m(&self.u1)?,
            u2: m(&self.u2)?,
            a: sc(&self.a)?,
            b: sc(&self.b)?,
            c: sc(&self.c)?,
            d: sc(&self.d)?,
            alpha: sc(&self.alpha)?,
            beta: sc(&self.beta)?,
            sqrt_alpha: sc(&self.sqrt_alpha)?,
            variant: self.variant,
        })
    }
}

/// A constructed solution together with the coefficient pair it solves.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(bound = "")]
pub struct FamilyInstance<T: Scalar> {
    pub case: FamilyCase,
    pub system: SystemInstance<T>,
    #[serde(rename = "X")]
    pub solution: Matrix<T>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FamilyError {
    #[error("{case}: missing parameter {name}")]
    MissingParameter {
        case: FamilyCase,
        name: &'static str,
    },
    #[error("{case}: {reason}")]
    Dimension { case: FamilyCase, reason: String },
    #[error("{case}: constraint {equation} does not hold")]
    Constraint { case: FamilyCase, equation: String },
    #[error("{case}: this coefficient shape has only the trivial solution X = 0")]
    TrivialOnly { case: FamilyCase },
    #[error(
        "{case}: no closed form; nonsingular solutions are checked through the spectrum of X²"
    )]
    NoClosedForm { case: FamilyCase },
    #[error("{case} is not handled by {constructor}")]
    WrongConstructor {
        case: FamilyCase,
        constructor: &'static str,
    },
    #[error("{case}: assembled X failed residual verification")]
    NotVerified { case: FamilyCase },
    #[error(transparent)]
    Ybe(#[from] YbeError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Dispatch to the constructor owning `case`.
pub fn construct<T: Scalar>(
    case: FamilyCase,
    params: &FamilyParams<T>,
) -> Result<FamilyInstance<T>, FamilyError> {
    use FamilyCase::*;
    match case {
        T41I | T41II | T41III | T41IV => construct_thm41(case, params),
        T42I | T42II => construct_thm42(case, params),
        _ => construct_2x2(case, params),
    }
}

// Shared validation helpers.

fn required<'p, X>(
    case: FamilyCase,
    v: &'p Option<X>,
    name: &'static str,
) -> Result<&'p X, FamilyError> {
    v.as_ref()
        .ok_or(FamilyError::MissingParameter { case, name })
}

fn check_shape<T: Scalar>(
    case: FamilyCase,
    m: &Matrix<T>,
    name: &str,
    shape: (usize, usize),
) -> Result<(), FamilyError> {
    if m.shape() == shape {
        Ok(())
    } else {
        Err(FamilyError::Dimension {
            case,
            reason: format!(
                "{name} must be {}×{}, got {}×{}",
                shape.0,
                shape.1,
                m.rows(),
                m.cols()
            ),
        })
    }
}

fn holds(case: FamilyCase, ok: bool, equation: &str) -> Result<(), FamilyError> {
    if ok {
        Ok(())
    } else {
        Err(FamilyError::Constraint {
            case,
            equation: equation.to_string(),
        })
    }
}

fn inverse_of<T: Scalar>(
    case: FamilyCase,
    m: &Matrix<T>,
    name: &str,
) -> Result<Matrix<T>, FamilyError> {
    m.inverse().map_err(|_| FamilyError::Constraint {
        case,
        equation: format!("{name} invertible"),
    })
}

fn verified<T: Scalar>(
    case: FamilyCase,
    system: SystemInstance<T>,
    solution: Matrix<T>,
) -> Result<FamilyInstance<T>, FamilyError> {
    if crate::ybe::is_solution(&system, &solution)? {
        Ok(FamilyInstance {
            case,
            system,
            solution,
        })
    } else {
        Err(FamilyError::NotVerified { case })
    }
}
