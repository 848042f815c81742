use std::fmt::Debug;
use std::ops::Neg;

use num_traits::Num;

/// Field-like scalar used by the linear algebra and polynomial layers.
///
/// Elimination only tests for exact zero, so the results are exact for
/// [`crate::Rational`] and for floats only as far as the inputs stay
/// exactly representable.
pub trait Scalar: Num + Clone + PartialEq + Debug + Neg<Output = Self> {}

impl<T> Scalar for T where T: Num + Clone + PartialEq + Debug + Neg<Output = T> {}

/// Parses `"p/q"`, `"p"` or a plain integer into a rational.
pub fn parse_rational(s: &str) -> Option<crate::Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let num: crate::Integer = num.parse().ok()?;
    let den: crate::Integer = den.parse().ok()?;
    if num_traits::Zero::is_zero(&den) {
        return None;
    }
    Some(crate::Rational::new(num, den))
}

/// Shorthand for building small rationals in code and tests.
pub fn q(num: i64, den: i64) -> crate::Rational {
    crate::Rational::new(num.into(), den.into())
}

/// Shorthand for an integer-valued rational.
pub fn qi(num: i64) -> crate::Rational {
    crate::Rational::from_integer(num.into())
}
