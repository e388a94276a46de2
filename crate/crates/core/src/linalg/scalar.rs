//! Scalar domains: the rationals and small prime fields.

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::unipoly::UniPoly;

/// Arbitrary-precision fraction in canonical form.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse {input:?} as a scalar of {domain}: {reason}")]
pub struct ScalarParseError {
    pub input: String,
    pub domain: String,
    pub reason: String,
}

/// An exact field usable as the entry type of [`Matrix`](super::Matrix).
///
/// Implemented for [`Rational`] and for the prime fields [`Fp`]. Every
/// operation is exact; there is no notion of tolerance anywhere.
pub trait Scalar:
    Clone
    + PartialEq
    + Eq
    + Hash
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// 0 for the rationals, p for F_p.
    const CHARACTERISTIC: u64;

    fn from_i64(v: i64) -> Self;

    /// Multiplicative inverse, `None` for zero.
    fn inverse(&self) -> Option<Self>;

    fn checked_div(&self, rhs: &Self) -> Option<Self> {
        rhs.inverse().map(|inv| self.clone() * inv)
    }

    fn parse_scalar(s: &str) -> Result<Self, ScalarParseError>;

    /// Short domain label: `Q` or `F5` etc.
    fn domain_name() -> String;

    /// All field elements in ascending order, for finite fields only.
    fn elements() -> Option<Vec<Self>>;

    /// Distinct roots of `p` lying in this field, in a deterministic order.
    fn roots(p: &UniPoly<Self>) -> Vec<Self>;

    fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..exp {
            acc = acc * self.clone();
        }
        acc
    }
}

impl Scalar for Rational {
    const CHARACTERISTIC: u64 = 0;

    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }

    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn parse_scalar(s: &str) -> Result<Self, ScalarParseError> {
        parse_rational(s)
    }

    fn domain_name() -> String {
        "Q".to_string()
    }

    fn elements() -> Option<Vec<Self>> {
        None
    }

    fn roots(p: &UniPoly<Self>) -> Vec<Self> {
        super::unipoly::rational_roots(p)
    }
}

pub fn parse_rational(s: &str) -> Result<Rational, ScalarParseError> {
    let err = |reason: &str| ScalarParseError {
        input: s.to_string(),
        domain: "Q".to_string(),
        reason: reason.to_string(),
    };
    let t = s.trim();
    if t.is_empty() {
        return Err(err("empty string"));
    }
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| err("numerator is not an integer"))?;
    let den = BigInt::from_str(den).map_err(|_| err("denominator is not an integer"))?;
    if den.is_zero() {
        return Err(err("zero denominator"));
    }
    Ok(Rational::new(num, den))
}

/// Element of the prime field F_P. `P` must be an odd prime.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fp<const P: u32>(u32);

pub type F3 = Fp<3>;
pub type F5 = Fp<5>;
pub type F7 = Fp<7>;
pub type F11 = Fp<11>;
pub type F13 = Fp<13>;

/// Moduli the CLI and Python bindings dispatch over.
pub const SUPPORTED_MODULI: [u32; 5] = [3, 5, 7, 11, 13];

const fn is_odd_prime(p: u32) -> bool {
    if p < 3 || p.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

impl<const P: u32> Fp<P> {
    const VALID: () = assert!(is_odd_prime(P), "Fp modulus must be an odd prime");

    pub fn new(v: i64) -> Self {
        #[allow(clippy::let_unit_value)]
        let _ = Self::VALID;
        Fp(v.rem_euclid(P as i64) as u32)
    }

    pub fn value(self) -> u32 {
        self.0
    }

    pub const fn modulus() -> u32 {
        P
    }
}

impl<const P: u32> fmt::Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.0, P)
    }
}

impl<const P: u32> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u32> Add for Fp<P> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Fp((self.0 + rhs.0) % P)
    }
}

impl<const P: u32> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Fp((self.0 + P - rhs.0) % P)
    }
}

impl<const P: u32> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Fp(((self.0 as u64 * rhs.0 as u64) % P as u64) as u32)
    }
}

impl<const P: u32> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp((P - self.0) % P)
    }
}

impl<const P: u32> Div for Fp<P> {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Self) -> Self {
        self * rhs.inverse().expect("division by zero in prime field")
    }
}

impl<const P: u32> Zero for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u32> One for Fp<P> {
    fn one() -> Self {
        Fp(1)
    }
}

impl<const P: u32> Scalar for Fp<P> {
    const CHARACTERISTIC: u64 = P as u64;

    fn from_i64(v: i64) -> Self {
        Fp::new(v)
    }

    fn inverse(&self) -> Option<Self> {
        if self.0 == 0 {
            return None;
        }
        // extended Euclid on (value, P)
        let egcd = (self.0 as i64).extended_gcd(&(P as i64));
        Some(Fp::new(egcd.x))
    }

    fn parse_scalar(s: &str) -> Result<Self, ScalarParseError> {
        let q = parse_rational(s).map_err(|mut e| {
            e.domain = Self::domain_name();
            e
        })?;
        let reduce = |v: &BigInt| -> i64 {
            let m = v.mod_floor(&BigInt::from(P));
            i64::try_from(m).expect("residue fits in i64")
        };
        let num = Fp::new(reduce(q.numer()));
        let den = Fp::<P>::new(reduce(q.denom()));
        match den.inverse() {
            Some(inv) => Ok(num * inv),
            None => Err(ScalarParseError {
                input: s.to_string(),
                domain: Self::domain_name(),
                reason: format!("denominator divisible by {P}"),
            }),
        }
    }

    fn domain_name() -> String {
        format!("F{P}")
    }

    fn elements() -> Option<Vec<Self>> {
        Some((0..P).map(Fp).collect())
    }

    fn roots(p: &UniPoly<Self>) -> Vec<Self> {
        if p.is_zero() {
            return Self::elements().unwrap_or_default();
        }
        (0..P).map(Fp).filter(|x| p.eval(x).is_zero()).collect()
    }
}

/// Reduce a rational into F_P; `None` when P divides the denominator.
pub fn reduce_rational<const P: u32>(q: &Rational) -> Option<Fp<P>> {
    let m = |v: &BigInt| i64::try_from(v.mod_floor(&BigInt::from(P))).expect("residue fits");
    let den = Fp::<P>::new(m(q.denom()));
    den.inverse().map(|inv| Fp::new(m(q.numer())) * inv)
}

/// Lift an F_P element to its least non-negative integer representative.
pub fn lift<const P: u32>(x: Fp<P>) -> Rational {
    Rational::from_i64(x.0 as i64)
}
