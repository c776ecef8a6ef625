//! Truncated power series in `z` whose coefficients are polynomials in `t`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::rational::{self, Rational};
use super::tpoly::TPoly;
use super::SeriesError;

/// `c_0 + c_1 z + ... + c_{N-1} z^{N-1} + O(z^N)`.
///
/// The order `N` is the number of stored coefficients. Binary operations
/// return a series whose order is the minimum of the operands' orders, so a
/// coefficient is never reported beyond what both inputs determine.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZSeries {
    coeffs: Vec<TPoly>,
}

impl ZSeries {
    pub fn new(coeffs: Vec<TPoly>) -> Self {
        ZSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        ZSeries {
            coeffs: vec![TPoly::zero(); order],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(order, TPoly::one())
    }

    pub fn constant(order: usize, c: impl Into<TPoly>) -> Self {
        Self::monomial(order, c, 0)
    }

    /// `c * z^power`, silently zero when `power >= order`.
    pub fn monomial(order: usize, c: impl Into<TPoly>, power: usize) -> Self {
        let mut s = Self::zero(order);
        if power < order {
            s.coeffs[power] = c.into();
        }
        s
    }

    /// The series `z`.
    pub fn z(order: usize) -> Self {
        Self::monomial(order, 1, 1)
    }

    /// The constant series `t`.
    pub fn t(order: usize) -> Self {
        Self::constant(order, TPoly::t())
    }

    /// Builds a polynomial in `z` and `t` from `(z power, t coefficients)` terms.
    ///
    /// `from_terms(n, &[(0, &[1]), (2, &[1, -1])])` is `1 + (1 - t) z^2`.
    pub fn from_terms(order: usize, terms: &[(usize, &[i64])]) -> Self {
        let mut s = Self::zero(order);
        for &(power, tcoeffs) in terms {
            if power < order {
                s.coeffs[power] += &TPoly::from_ints(tcoeffs);
            }
        }
        s
    }

    /// Builds a `t`-free series from integer coefficients.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        ZSeries {
            coeffs: coeffs.iter().map(|&c| TPoly::from(c)).collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[TPoly] {
        &self.coeffs
    }

    /// The `z^n` coefficient.
    pub fn coeff(&self, n: usize) -> Result<&TPoly, SeriesError> {
        self.coeffs.get(n).ok_or(SeriesError::OutOfOrder {
            index: n,
            order: self.order(),
        })
    }

    /// Drops coefficients at and above `order` (no-op if already shorter).
    pub fn truncate(&self, order: usize) -> Self {
        ZSeries {
            coeffs: self.coeffs.iter().take(order).cloned().collect(),
        }
    }

    /// Index of the lowest nonzero coefficient, `None` for the zero series.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.valuation().is_none()
    }

    /// First index (below the common order) where the two series differ.
    pub fn first_mismatch(&self, other: &ZSeries) -> Option<usize> {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .position(|(a, b)| a != b)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        ZSeries {
            coeffs: self.coeffs.iter().map(|p| p.scale(c)).collect(),
        }
    }

    pub fn scale_int(&self, c: i64) -> Self {
        self.scale(&rational::int(c))
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Self::one(self.order());
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Solves `q * b = a` to the attainable order.
    ///
    /// Both operands are shifted down by the valuation `v` of `b`, so the
    /// result order is `min(order(a), order(b)) - v`. The `z^v` coefficient of
    /// `b` must be a nonzero constant.
    pub fn div(&self, b: &ZSeries) -> Result<ZSeries, SeriesError> {
        let v = b.valuation().ok_or(SeriesError::DivisorNotInvertible)?;
        let lead = b.coeffs[v]
            .as_constant()
            .ok_or(SeriesError::DivisorNotInvertible)?;
        if let Some(va) = self.valuation() {
            if v > va {
                return Err(SeriesError::ValuationMismatch {
                    divisor: v,
                    dividend: va,
                });
            }
        }
        let order = self.order().min(b.order()).saturating_sub(v);
        let a = &self.coeffs[v.min(self.order())..];
        let b = &b.coeffs[v..];
        let (a, b) = (&a[..order], &b[..order]);
        let unit = lead.is_integer() && lead.abs().is_one();
        let coeffs = match (unit, integer_rows(a), integer_rows(b)) {
            (true, Some(a), Some(b)) => {
                let negate = lead.is_negative();
                from_integer_rows(div_rows(&a, &b, |row| {
                    if negate {
                        row.into_iter().map(|c| -c).collect()
                    } else {
                        row
                    }
                }))
            }
            _ => {
                let inv = rational::one() / lead;
                div_rows(&rational_rows(a), &rational_rows(b), |row| {
                    row.into_iter().map(|c| c * &inv).collect()
                })
                .into_iter()
                .map(TPoly::from_coeffs)
                .collect()
            }
        };
        Ok(ZSeries { coeffs })
    }

    /// Principal square root of a series with constant term `1`.
    ///
    /// Coefficients come from `s^2 = a`: `2 s_n = a_n - sum_{k=1}^{n-1} s_k s_{n-k}`.
    pub fn sqrt(&self) -> Result<ZSeries, SeriesError> {
        match self.coeffs.first() {
            None => return Ok(ZSeries::zero(0)),
            Some(c) if *c == TPoly::one() => {}
            Some(_) => return Err(SeriesError::BadConstantTerm),
        }
        let half = rational::ratio(1, 2);
        let mut s: Vec<TPoly> = Vec::with_capacity(self.order());
        s.push(TPoly::one());
        for n in 1..self.order() {
            let mut acc = self.coeffs[n].clone();
            for k in 1..n {
                if s[k].is_zero() || s[n - k].is_zero() {
                    continue;
                }
                acc = &acc - &(&s[k] * &s[n - k]);
            }
            s.push(acc.scale(&half));
        }
        Ok(ZSeries { coeffs: s })
    }

    /// Multiplies by `z^k`; negative `k` divides and requires the vacated
    /// low coefficients to be zero.
    pub fn shift(&self, k: isize) -> Result<ZSeries, SeriesError> {
        let order = self.order();
        if k >= 0 {
            let k = k as usize;
            let mut coeffs = vec![TPoly::zero(); k.min(order)];
            coeffs.extend(self.coeffs.iter().take(order.saturating_sub(k)).cloned());
            return Ok(ZSeries { coeffs });
        }
        let k = k.unsigned_abs();
        if let Some(index) = self.coeffs.iter().take(k).position(|c| !c.is_zero()) {
            return Err(SeriesError::NonzeroLowOrder { shift: k, index });
        }
        Ok(ZSeries {
            coeffs: self.coeffs.iter().skip(k).cloned().collect(),
        })
    }

    /// `d/dt` applied to every coefficient, then evaluated at `t = 1`.
    pub fn dt_at1(&self) -> ZSeries {
        let one = rational::one();
        ZSeries {
            coeffs: self
                .coeffs
                .iter()
                .map(|p| TPoly::constant(p.derivative().eval(&one)))
                .collect(),
        }
    }

    /// Substitutes `t = r` in every coefficient.
    pub fn eval_t(&self, r: &Rational) -> ZSeries {
        ZSeries {
            coeffs: self
                .coeffs
                .iter()
                .map(|p| TPoly::constant(p.eval(r)))
                .collect(),
        }
    }

    /// Coefficients as rationals, if the series is free of `t`.
    pub fn constant_coeffs(&self) -> Option<Vec<Rational>> {
        self.coeffs.iter().map(TPoly::as_constant).collect()
    }
}

impl Add<&ZSeries> for &ZSeries {
    type Output = ZSeries;

    fn add(self, rhs: &ZSeries) -> ZSeries {
        ZSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub<&ZSeries> for &ZSeries {
    type Output = ZSeries;

    fn sub(self, rhs: &ZSeries) -> ZSeries {
        ZSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &ZSeries {
    type Output = ZSeries;

    fn neg(self) -> ZSeries {
        ZSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul<&ZSeries> for &ZSeries {
    type Output = ZSeries;

    fn mul(self, rhs: &ZSeries) -> ZSeries {
        let order = self.order().min(rhs.order());
        let (a, b) = (&self.coeffs[..order], &rhs.coeffs[..order]);
        let coeffs = match (integer_rows(a), integer_rows(b)) {
            (Some(a), Some(b)) => from_integer_rows(mul_rows(&a, &b)),
            _ => mul_rows(&rational_rows(a), &rational_rows(b))
                .into_iter()
                .map(TPoly::from_coeffs)
                .collect(),
        };
        ZSeries { coeffs }
    }
}

// Products and quotients run on plain coefficient rows, in big integers when
// every coefficient is integral: rational normalisation dominates otherwise.

fn integer_rows(s: &[TPoly]) -> Option<Vec<Vec<BigInt>>> {
    s.iter()
        .map(|p| {
            p.coeffs()
                .iter()
                .map(|c| c.is_integer().then(|| c.numer().clone()))
                .collect()
        })
        .collect()
}

fn from_integer_rows(rows: Vec<Vec<BigInt>>) -> Vec<TPoly> {
    rows.into_iter()
        .map(|row| TPoly::from_coeffs(row.into_iter().map(Rational::from_integer).collect()))
        .collect()
}

fn rational_rows(s: &[TPoly]) -> Vec<Vec<Rational>> {
    s.iter().map(|p| p.coeffs().to_vec()).collect()
}

/// `acc += x * y` (or `-=`) as polynomials in `t`.
fn mul_acc<T>(acc: &mut Vec<T>, x: &[T], y: &[T], subtract: bool)
where
    T: Clone + Zero + AddAssign + SubAssign,
    for<'a> &'a T: Mul<&'a T, Output = T>,
{
    if x.is_empty() || y.is_empty() {
        return;
    }
    let len = x.len() + y.len() - 1;
    if acc.len() < len {
        acc.resize(len, T::zero());
    }
    for (i, a) in x.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in y.iter().enumerate() {
            if subtract {
                acc[i + j] -= a * b;
            } else {
                acc[i + j] += a * b;
            }
        }
    }
}

fn mul_rows<T>(a: &[Vec<T>], b: &[Vec<T>]) -> Vec<Vec<T>>
where
    T: Clone + Zero + AddAssign + SubAssign,
    for<'a> &'a T: Mul<&'a T, Output = T>,
{
    let order = a.len().min(b.len());
    let mut out = vec![Vec::new(); order];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().take(order - i).enumerate() {
            mul_acc(&mut out[i + j], x, y, false);
        }
    }
    out
}

/// `q` with `q * b = a`, given `finish` mapping `a_n - sum_{k>=1} b_k q_{n-k}`
/// to `q_n` (division by the constant `b_0`).
fn div_rows<T>(a: &[Vec<T>], b: &[Vec<T>], finish: impl Fn(Vec<T>) -> Vec<T>) -> Vec<Vec<T>>
where
    T: Clone + Zero + AddAssign + SubAssign,
    for<'a> &'a T: Mul<&'a T, Output = T>,
{
    let mut q: Vec<Vec<T>> = Vec::with_capacity(a.len());
    for n in 0..a.len() {
        let mut acc = a[n].clone();
        for k in 1..=n {
            mul_acc(&mut acc, &b[k], &q[n - k], true);
        }
        q.push(finish(acc));
    }
    q
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr for ZSeries {
            type Output = ZSeries;

            fn $method(self, rhs: ZSeries) -> ZSeries {
                (&self).$method(&rhs)
            }
        }

        impl $tr<&ZSeries> for ZSeries {
            type Output = ZSeries;

            fn $method(self, rhs: &ZSeries) -> ZSeries {
                (&self).$method(rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);

impl fmt::Display for ZSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let wrapped = if c.coeffs().len() > 1 {
                format!("({c})")
            } else {
                c.to_string()
            };
            match n {
                0 => write!(f, "{wrapped}")?,
                1 => write!(f, "{wrapped}*z")?,
                _ => write!(f, "{wrapped}*z^{n}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(z^{})", self.order())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::rational::int;

    const N: usize = 12;

    fn ints(s: &ZSeries) -> Vec<i64> {
        s.coeffs()
            .iter()
            .map(|c| {
                let r = c.as_constant().expect("t-free");
                assert!(r.is_integer());
                i64::try_from(r.to_integer()).unwrap()
            })
            .collect()
    }

    #[test]
    fn add_cancels_and_mixes_orders() {
        let a = ZSeries::from_ints(&[1, 1, 0, 0]);
        let b = ZSeries::from_ints(&[1, -1, 0]);
        assert_eq!(&a + &b, ZSeries::from_ints(&[2, 0, 0]));
        assert_eq!(&a + &ZSeries::zero(4), a);
        let tz = &ZSeries::t(3) * &ZSeries::z(3);
        let sum = &tz + &ZSeries::z(3);
        assert_eq!(sum.coeff(1).unwrap(), &TPoly::from_ints(&[1, 1]));
    }

    #[test]
    fn products() {
        let a = ZSeries::from_ints(&[1, 1, 0, 0]);
        let b = ZSeries::from_ints(&[1, -1, 0, 0]);
        assert_eq!(&a * &b, ZSeries::from_ints(&[1, 0, -1, 0]));
        assert_eq!(&a * &ZSeries::one(4), a);
        let c = ZSeries::from_ints(&[1, -2, 0, 0]);
        assert_eq!(&c * &c, ZSeries::from_ints(&[1, -4, 4, 0]));
    }

    #[test]
    fn geometric_series() {
        let q = ZSeries::one(N).div(&ZSeries::from_ints(&[1, -1])).unwrap();
        assert_eq!(q.order(), 2);
        let denom = ZSeries::from_terms(N, &[(0, &[1]), (1, &[-1])]);
        let q = ZSeries::one(N).div(&denom).unwrap();
        assert_eq!(ints(&q), vec![1; N]);
    }

    #[test]
    fn division_cancels_valuation() {
        let a = ZSeries::from_terms(N, &[(1, &[1]), (2, &[-1])]);
        let q = a.div(&ZSeries::z(N)).unwrap();
        assert_eq!(q.order(), N - 1);
        assert_eq!(ints(&q)[..3], [1, -1, 0]);
    }

    #[test]
    fn division_errors() {
        let a = ZSeries::one(N);
        assert_eq!(
            a.div(&ZSeries::z(N)),
            Err(SeriesError::ValuationMismatch {
                divisor: 1,
                dividend: 0
            })
        );
        assert_eq!(
            a.div(&ZSeries::t(N)),
            Err(SeriesError::DivisorNotInvertible)
        );
        assert_eq!(
            a.div(&ZSeries::zero(N)),
            Err(SeriesError::DivisorNotInvertible)
        );
        // zero dividend accepts any valuation
        let q = ZSeries::zero(N).div(&ZSeries::monomial(N, 3, 2)).unwrap();
        assert!(q.is_zero());
        assert_eq!(q.order(), N - 2);
    }

    #[test]
    fn sqrt_of_one_minus_four_z_squared() {
        let a = ZSeries::from_terms(N, &[(0, &[1]), (2, &[-4])]);
        let s = a.sqrt().unwrap();
        assert_eq!(&s * &s, a);
        assert_eq!(ints(&s)[..10], [1, 0, -2, 0, -2, 0, -4, 0, -10, 0]);
        assert_eq!(ZSeries::one(N).sqrt().unwrap(), ZSeries::one(N));
    }

    #[test]
    fn sqrt_rejects_bad_constant() {
        assert_eq!(
            ZSeries::constant(N, 4).sqrt(),
            Err(SeriesError::BadConstantTerm)
        );
        assert_eq!(ZSeries::t(N).sqrt(), Err(SeriesError::BadConstantTerm));
    }

    #[test]
    fn sqrt_specializes_at_t_one() {
        // 1 - 2(t+1)z^2 - (t+3)(1-t)z^4 collapses to 1 - 4z^2 at t = 1
        let radicand = ZSeries::from_terms(N, &[(0, &[1]), (2, &[-2, -2]), (4, &[-3, 2, 1])]);
        let at1 = radicand.sqrt().unwrap().eval_t(&int(1));
        let plain = ZSeries::from_terms(N, &[(0, &[1]), (2, &[-4])])
            .sqrt()
            .unwrap();
        assert_eq!(at1, plain);
    }

    #[test]
    fn shifts() {
        let a = ZSeries::from_ints(&[1, 1, 0, 0]);
        assert_eq!(a.shift(1).unwrap(), ZSeries::from_ints(&[0, 1, 1, 0]));
        let b = ZSeries::from_ints(&[0, 1, 1, 0]);
        assert_eq!(b.shift(-1).unwrap(), ZSeries::from_ints(&[1, 1, 0]));
        assert_eq!(
            a.shift(-1),
            Err(SeriesError::NonzeroLowOrder { shift: 1, index: 0 })
        );
    }

    #[test]
    fn derivative_at_one() {
        let a = ZSeries::from_terms(6, &[(5, &[3, 4, 3])]);
        assert_eq!(a.dt_at1(), ZSeries::monomial(6, 10, 5));
        let b = ZSeries::from_terms(6, &[(4, &[5, 1])]);
        assert_eq!(b.dt_at1(), ZSeries::monomial(6, 1, 4));
        assert!(ZSeries::from_ints(&[1, 2, 3]).dt_at1().is_zero());
    }

    #[test]
    fn eval_and_coeff() {
        let a = ZSeries::from_terms(3, &[(2, &[1, 1])]);
        assert_eq!(a.eval_t(&int(1)), ZSeries::monomial(3, 2, 2));
        assert_eq!(ZSeries::one(6).coeff(0).unwrap(), &TPoly::one());
        assert!(ZSeries::one(6).coeff(5).unwrap().is_zero());
        assert_eq!(
            ZSeries::one(6).coeff(6),
            Err(SeriesError::OutOfOrder { index: 6, order: 6 })
        );
    }

    #[test]
    fn display() {
        let a = ZSeries::from_terms(4, &[(0, &[1]), (2, &[1, 1])]);
        assert_eq!(a.to_string(), "1 + (1 + t)*z^2 + O(z^4)");
    }
}
