//! Polynomials in the marker variable `t` with rational coefficients.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::rational::{self, Rational};

/// A polynomial in `t`; `coeffs[k]` is the coefficient of `t^k`.
///
/// Always canonical: the last stored coefficient is nonzero, so the zero
/// polynomial is the empty vector and structural equality is polynomial
/// equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct TPoly {
    coeffs: Vec<Rational>,
}

impl TPoly {
    pub fn zero() -> Self {
        TPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(rational::one())
    }

    /// The monomial `t`.
    pub fn t() -> Self {
        Self::monomial(rational::one(), 1)
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn monomial(c: Rational, degree: usize) -> Self {
        let mut coeffs = vec![rational::zero(); degree + 1];
        coeffs[degree] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        TPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| rational::int(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `t^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree in `t`; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// True when the polynomial has no positive powers of `t`.
    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// The constant value, if the polynomial is constant.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.coeffs.len() {
            0 => Some(rational::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn eval(&self, at: &Rational) -> Rational {
        // Horner
        self.coeffs
            .iter()
            .rev()
            .fold(rational::zero(), |acc, c| acc * at + c)
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rational::from_integer(BigInt::from(k)))
                .collect(),
        )
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        TPoly {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }
}

impl From<Rational> for TPoly {
    fn from(c: Rational) -> Self {
        TPoly::constant(c)
    }
}

impl From<i64> for TPoly {
    fn from(c: i64) -> Self {
        TPoly::constant(rational::int(c))
    }
}

impl Add<&TPoly> for &TPoly {
    type Output = TPoly;

    fn add(self, rhs: &TPoly) -> TPoly {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c += s;
        }
        TPoly::from_coeffs(coeffs)
    }
}

impl Add for TPoly {
    type Output = TPoly;

    fn add(self, rhs: TPoly) -> TPoly {
        &self + &rhs
    }
}

impl AddAssign<&TPoly> for TPoly {
    fn add_assign(&mut self, rhs: &TPoly) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), rational::zero());
        }
        for (c, r) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *c += r;
        }
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }
}

impl Neg for &TPoly {
    type Output = TPoly;

    fn neg(self) -> TPoly {
        TPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Sub<&TPoly> for &TPoly {
    type Output = TPoly;

    fn sub(self, rhs: &TPoly) -> TPoly {
        self + &(-rhs)
    }
}

impl Mul<&TPoly> for &TPoly {
    type Output = TPoly;

    fn mul(self, rhs: &TPoly) -> TPoly {
        if self.is_zero() || rhs.is_zero() {
            return TPoly::zero();
        }
        let mut coeffs = vec![rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        TPoly::from_coeffs(coeffs)
    }
}

impl Mul for TPoly {
    type Output = TPoly;

    fn mul(self, rhs: TPoly) -> TPoly {
        &self * &rhs
    }
}

/// Ascending powers, e.g. `3 + 4*t + 3*t^2`; zero prints as `0`.
impl fmt::Display for TPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let magnitude = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{magnitude}")?,
                _ => {
                    if !magnitude.is_one() {
                        write!(f, "{magnitude}*")?;
                    }
                    if k == 1 {
                        f.write_str("t")?;
                    } else {
                        write!(f, "t^{k}")?;
                    }
                }
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}
