//! Exact rationals and the truncated polynomial ring `Q[s]/s^n`.
//!
//! Every value of [`TruncPoly`] carries its truncation order. Binary
//! operations between values of different orders are rejected rather than
//! re-truncated, so a mixed-order bug surfaces at the first operation.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Arbitrary precision rational, always kept in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

/// Integer-valued rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `p/q` as a reduced rational. Panics if `q == 0`.
pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Renders a rational as `p` or `p/q`.
pub fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Converts a rational to `(numerator, denominator)` when both fit in `i64`.
pub fn rational_to_i64_pair(r: &Rational) -> Option<(i64, i64)> {
    Some((r.numer().to_i64()?, r.denom().to_i64()?))
}

/// Parses `p` or `p/q`.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    match text.split_once('/') {
        Some((p, q)) => {
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(Rational::new(p.trim().parse().ok()?, q))
        }
        None => Some(Rational::from_integer(text.parse().ok()?)),
    }
}

/// Serde adapter storing a [`Rational`] as the string `p` or `p/q`.
pub mod serde_rational {
    use super::{fmt_rational, parse_rational, Rational};
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).ok_or_else(|| D::Error::custom(format!("bad rational {text:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("truncation orders differ: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("truncation order must be positive")]
    ZeroOrder,
}

/// An element of `Q[s]/s^n`.
///
/// `coeffs[i]` is the coefficient of `s^i`; trailing zeros are trimmed so
/// that structural equality is ring equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TruncPoly {
    order: usize,
    coeffs: Vec<Rational>,
}

impl TruncPoly {
    /// Builds `Σ coeffs[i] s^i mod s^order`. Coefficients at index `≥ order`
    /// are discarded: this is the ring projection, not a re-truncation of an
    /// existing value.
    pub fn new(order: usize, mut coeffs: Vec<Rational>) -> Result<Self, ScalarError> {
        if order == 0 {
            return Err(ScalarError::ZeroOrder);
        }
        coeffs.truncate(order);
        let mut p = TruncPoly { order, coeffs };
        p.trim();
        Ok(p)
    }

    /// Convenience constructor from integer coefficients. Panics on `order == 0`.
    pub fn from_ints(order: usize, coeffs: &[i64]) -> Self {
        Self::new(order, coeffs.iter().map(|&c| rat(c)).collect()).expect("positive order")
    }

    pub fn zero(order: usize) -> Self {
        assert!(order > 0, "truncation order must be positive");
        TruncPoly {
            order,
            coeffs: Vec::new(),
        }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(order, Rational::one())
    }

    pub fn constant(order: usize, c: Rational) -> Self {
        Self::new(order, vec![c]).expect("positive order")
    }

    /// The deformation parameter `s` (zero when `order == 1`).
    pub fn s(order: usize) -> Self {
        Self::new(order, vec![Rational::zero(), Rational::one()]).expect("positive order")
    }

    /// `c · s^i`, zero if `i ≥ order`.
    pub fn monomial(order: usize, c: Rational, i: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); i + 1];
        coeffs[i] = c;
        Self::new(order, coeffs).expect("positive order")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `s^i` (zero beyond the stored range).
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// The constant term as a rational if the value has no `s` terms.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.coeffs.len() {
            0 => Some(Rational::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    fn check_order(&self, other: &Self) -> Result<(), ScalarError> {
        if self.order != other.order {
            Err(ScalarError::OrderMismatch(self.order, other.order))
        } else {
            Ok(())
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, ScalarError> {
        self.check_order(other)?;
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len).map(|i| self.coeff(i) + other.coeff(i)).collect();
        Self::new(self.order, coeffs)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, ScalarError> {
        self.checked_add(&-other)
    }

    /// Convolution product reduced modulo `s^n`.
    pub fn checked_mul(&self, other: &Self) -> Result<Self, ScalarError> {
        self.check_order(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.order));
        }
        let len = (self.coeffs.len() + other.coeffs.len() - 1).min(self.order);
        let mut coeffs = vec![Rational::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j < len {
                    coeffs[i + j] += a * b;
                }
            }
        }
        Self::new(self.order, coeffs)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let coeffs = self.coeffs.iter().map(|a| a * c).collect();
        Self::new(self.order, coeffs).expect("positive order")
    }

    /// Multiplication by `s^k`.
    pub fn shift(&self, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self::new(self.order, coeffs).expect("positive order")
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.order);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Smallest `i` with a nonzero coefficient of `s^i`; `None` stands for
    /// infinity (the zero element).
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// `s(s-1)...(s-b+1) mod s^n`; the empty product for `b = 0`.
    pub fn falling_factorial(b: u32, order: usize) -> Self {
        let mut acc = Self::one(order);
        for j in 0..b {
            let factor = Self::new(order, vec![rat(-i64::from(j)), Rational::one()])
                .expect("positive order");
            acc = &acc * &factor;
        }
        acc
    }
}

impl fmt::Display for TruncPoly {
    /// `c0 + c1*s + c2*s^2`, omitting zero terms and unit coefficients.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let var = match i {
                0 => String::new(),
                1 => "s".to_string(),
                _ => format!("s^{i}"),
            };
            if i == 0 {
                write!(f, "{}", fmt_rational(&mag))?;
            } else if mag.is_one() {
                write!(f, "{var}")?;
            } else {
                write!(f, "{}*{var}", fmt_rational(&mag))?;
            }
        }
        Ok(())
    }
}

impl Neg for &TruncPoly {
    type Output = TruncPoly;
    fn neg(self) -> TruncPoly {
        self.scale(&-Rational::one())
    }
}

impl Neg for TruncPoly {
    type Output = TruncPoly;
    fn neg(self) -> TruncPoly {
        -&self
    }
}

// Operator impls panic on order mismatch; use the `checked_*` methods when
// orders come from untrusted input.
impl Add for &TruncPoly {
    type Output = TruncPoly;
    fn add(self, rhs: &TruncPoly) -> TruncPoly {
        self.checked_add(rhs).expect("truncation order mismatch")
    }
}

impl Sub for &TruncPoly {
    type Output = TruncPoly;
    fn sub(self, rhs: &TruncPoly) -> TruncPoly {
        self.checked_sub(rhs).expect("truncation order mismatch")
    }
}

impl Mul for &TruncPoly {
    type Output = TruncPoly;
    fn mul(self, rhs: &TruncPoly) -> TruncPoly {
        self.checked_mul(rhs).expect("truncation order mismatch")
    }
}
