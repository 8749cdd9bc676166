//! Exact rational scalars.
//!
//! Every coefficient in this crate is a [`Scalar`]: an arbitrary-precision
//! rational, always stored reduced with a positive denominator. There is no
//! floating point anywhere in the tool.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Signed, Zero};

/// Arbitrary-precision rational number.
pub type Scalar = BigRational;

/// Integer-valued scalar.
pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

/// Rational `n/d`. Panics if `d == 0`.
pub fn frac(n: i64, d: i64) -> Scalar {
    Scalar::new(BigInt::from(n), BigInt::from(d))
}

/// Parses a rational written as `p`, `-p`, or `p/q`. Anything else
/// (including decimal points) is rejected.
pub fn parse(s: &str) -> Result<Scalar, ParseScalarError> {
    let t = s.trim();
    if t.is_empty() {
        return Err(ParseScalarError(s.to_string()));
    }
    t.parse::<Scalar>().map_err(|_| ParseScalarError(s.to_string()))
}

/// Renders a scalar in the same `p` / `p/q` syntax accepted by [`parse`].
pub fn format(x: &Scalar) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn is_zero(x: &Scalar) -> bool {
    x.is_zero()
}

pub fn sign_str(x: &Scalar) -> &'static str {
    if x.is_negative() {
        "-"
    } else {
        "+"
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("not an exact rational: `{0}` (expected `p` or `p/q`)")]
pub struct ParseScalarError(pub String);
