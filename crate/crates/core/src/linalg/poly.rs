//! Dense univariate polynomials with exact coefficients.
//!
//! Coefficients are stored in ascending degree order (`coeffs[k]` is the
//! coefficient of `x^k`). The zero polynomial is the empty vector and the
//! last stored coefficient is never zero.

use std::fmt;
use std::ops::Neg;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Num, One, Signed, Zero};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{LinalgError, Result};

/// Exact coefficient ring: integers or rationals.
pub trait Coefficient: Clone + Num + Signed + Neg<Output = Self> + fmt::Display + fmt::Debug + PartialOrd {
    /// `self / other` when the quotient exists in the ring.
    fn checked_exact_div(&self, other: &Self) -> Option<Self>;
    fn from_bigint(value: BigInt) -> Self;
    fn parse_decimal(s: &str) -> Option<Self>;
}

impl Coefficient for BigInt {
    fn checked_exact_div(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            return None;
        }
        let (q, r) = self.div_rem(other);
        r.is_zero().then_some(q)
    }

    fn from_bigint(value: BigInt) -> Self {
        value
    }

    fn parse_decimal(s: &str) -> Option<Self> {
        s.trim().parse().ok()
    }
}

impl Coefficient for BigRational {
    fn checked_exact_div(&self, other: &Self) -> Option<Self> {
        (!other.is_zero()).then(|| self / other)
    }

    fn from_bigint(value: BigInt) -> Self {
        BigRational::from_integer(value)
    }

    fn parse_decimal(s: &str) -> Option<Self> {
        s.trim().parse().ok()
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial<T> {
    coeffs: Vec<T>,
}

pub type IntPolynomial = Polynomial<BigInt>;
pub type RatPolynomial = Polynomial<BigRational>;

impl<T: Coefficient> Polynomial<T> {
    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::new(vec![T::one()])
    }

    pub fn x() -> Self {
        Self::new(vec![T::zero(), T::one()])
    }

    /// `x^k`.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![T::zero(); k + 1];
        coeffs[k] = T::one();
        Polynomial { coeffs }
    }

    /// `x + c`.
    pub fn linear(c: T) -> Self {
        Self::new(vec![c, T::one()])
    }

    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| T::from_bigint(BigInt::from(c))).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    /// Coefficient of `x^k` (zero past the degree).
    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..len).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..len).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn multiply(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, k: usize) -> Self {
        (0..k).fold(Self::one(), |acc, _| acc.multiply(self))
    }

    /// `(x + c)^k * self`.
    pub fn shift_power(&self, c: &T, k: usize) -> Self {
        let linear = Self::linear(c.clone());
        (0..k).fold(self.clone(), |acc, _| acc.multiply(&linear))
    }

    /// Horner evaluation.
    pub fn evaluate(&self, x0: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x0.clone() + c.clone())
    }

    /// `p(-x)`.
    pub fn reflect(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 1 { -c.clone() } else { c.clone() })
                .collect(),
        )
    }

    /// Quotient and remainder. Errors when a quotient coefficient does not
    /// exist in the coefficient ring.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let dd = divisor.degree().ok_or(LinalgError::DivisionByZeroPoly)?;
        let lead = divisor.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree() else {
            return Ok((Self::zero(), Self::zero()));
        };
        if nd < dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![T::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let top = rem[k + dd].clone();
            if top.is_zero() {
                continue;
            }
            let q = top.checked_exact_div(&lead).ok_or(LinalgError::InexactDivision)?;
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].clone() - q.clone() * d.clone();
            }
            quot[k] = q;
        }
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// `self / divisor`, required to leave no remainder.
    pub fn exact_divide(&self, divisor: &Self) -> Result<Self> {
        let (q, r) = self.div_rem(divisor)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(LinalgError::InexactDivision)
        }
    }

    /// True iff `self` divides `other` exactly.
    pub fn divides(&self, other: &Self) -> Result<bool> {
        match other.div_rem(self) {
            Ok((_, r)) => Ok(r.is_zero()),
            Err(LinalgError::InexactDivision) => Ok(false),
            Err(e) => Err(e),
        }
    }

    /// Number of sign changes in the coefficient sequence, zeros skipped.
    pub fn sign_variations(&self) -> usize {
        let signs: Vec<bool> = self
            .coeffs
            .iter()
            .filter(|c| !c.is_zero())
            .map(|c| c.is_positive())
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// Multiplicity of the root `x = 0`.
    pub fn zero_root_multiplicity(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    pub fn to_decimal_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }
}

impl IntPolynomial {
    pub fn to_rational(&self) -> RatPolynomial {
        Polynomial::new(
            self.coeffs
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        )
    }
}

impl RatPolynomial {
    /// Integer view, if every coefficient is an integer.
    pub fn to_integer(&self) -> Option<IntPolynomial> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect::<Option<Vec<_>>>()
            .map(Polynomial::new)
    }
}

impl<T: Coefficient> fmt::Display for Polynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let unit = mag.is_one();
            match k {
                0 => write!(f, "{mag}")?,
                1 if unit => write!(f, "x")?,
                1 => write!(f, "{mag}x")?,
                _ if unit => write!(f, "x^{k}")?,
                _ => write!(f, "{mag}x^{k}")?,
            }
        }
        Ok(())
    }
}

impl<T: Coefficient> fmt::Debug for Polynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

// JSON form: an array of decimal strings, index = degree.
impl<T: Coefficient> Serialize for Polynomial<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            seq.serialize_element(&c.to_string())?;
        }
        seq.end()
    }
}

impl<'de, T: Coefficient> Deserialize<'de> for Polynomial<T> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<String>::deserialize(deserializer)?;
        raw.iter()
            .map(|s| T::parse_decimal(s).ok_or_else(|| serde::de::Error::custom(format!("bad coefficient {s:?}"))))
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(Polynomial::new)
    }
}
