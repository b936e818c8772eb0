//! Exact rational coefficients.
//!
//! Coefficients are arbitrary-precision rationals, always stored in lowest
//! terms with a positive denominator. The heavy lifting is done by
//! `num-rational`; this module only adds the few helpers the rest of the
//! crate leans on.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

pub use num_rational::BigRational as Rational;

/// `numer / denom` as an exact rational.
///
/// Panics if `denom` is zero.
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// The integer `value` as a rational.
pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Nearest `f64`, or NaN when the value does not fit.
pub fn to_f64(value: &Rational) -> f64 {
    value.to_f64().unwrap_or(f64::NAN)
}

/// `n!` as a rational.
pub fn factorial(n: u32) -> Rational {
    let mut acc = BigInt::from(1u32);
    for i in 2..=n {
        acc *= i;
    }
    Rational::from_integer(acc)
}
