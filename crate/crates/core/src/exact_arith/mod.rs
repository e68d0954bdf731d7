//! Exact arithmetic: rationals, multivariate Laurent polynomials, their
//! fraction field, and sparse rational linear algebra for homology ranks.

mod laurent;
mod matrix;
mod ratfunc;

pub use laurent::{Exponent, MultiLaurent};
pub use matrix::{homology_ranks, RationalMatrix};
pub use ratfunc::RationalFunction;

use num_bigint::BigInt;

/// Arbitrary-precision rationals; always reduced with a positive denominator.
pub type Rational = num_rational::BigRational;

/// Integer as a [`Rational`].
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n / d` as a [`Rational`]. Panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"a"` or `"a/b"`.
pub fn parse_rational(s: &str) -> crate::Result<Rational> {
    let s = s.trim();
    let bad = || crate::Error::Parse(format!("not a rational number: {s}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d == BigInt::from(0) {
                return Err(crate::Error::DivisionByZero);
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}
