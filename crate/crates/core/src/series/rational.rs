//! Exact rational coefficients.
//!
//! `BigRational` already keeps values in lowest terms with a positive
//! denominator, and its `Display` prints `p/q` (or `p` when `q = 1`), which
//! is the serialization every textual output in this crate uses.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

/// Parses `p`, `-p`, or `p/q`. Rejects a zero denominator.
pub fn parse(text: &str) -> Option<Rational> {
    let text = text.trim();
    match text.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(Rational::new(p, q))
        }
        None => text.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lowest_terms_and_sign() {
        let r = ratio(6, -4);
        assert_eq!(r.to_string(), "-3/2");
        assert_eq!(ratio(0, 7).to_string(), "0");
        assert_eq!(ratio(8, 4).to_string(), "2");
    }

    #[test]
    fn parse_forms() {
        assert_eq!(parse("3"), Some(int(3)));
        assert_eq!(parse("-2/6"), Some(ratio(-1, 3)));
        assert_eq!(parse(" 1/2 "), Some(ratio(1, 2)));
        assert_eq!(parse("1/0"), None);
        assert_eq!(parse("x"), None);
    }
}
