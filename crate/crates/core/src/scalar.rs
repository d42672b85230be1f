use core::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;

/// Arbitrary-precision rational. Always stored reduced with a positive
/// denominator.
pub type Scalar = BigRational;

pub fn int(value: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(value))
}

/// `numerator / denominator`, reduced.
///
/// Panics if `denominator` is zero.
pub fn ratio(numerator: i64, denominator: i64) -> Scalar {
    BigRational::new(BigInt::from(numerator), BigInt::from(denominator))
}

/// Parses `"p/q"` or an integer string. Zero denominators and anything that
/// is not a plain integer fraction are rejected.
pub fn parse_scalar(text: &str) -> Option<Scalar> {
    let trimmed = text.trim();
    if trimmed.is_empty() || trimmed.contains(['.', 'e', 'E', ' ']) {
        return None;
    }
    BigRational::from_str(trimmed).ok()
}
